#include <evoalg/core.hpp>
#include <evoalg/matrix_io.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracle.hpp"
#include "test_util.hpp"

using namespace evoalg;
using testutil::mat2;

namespace {

const Scalar I{0.0, 1.0};

}  // namespace

TEST(Multiply, IdempotentE1) {
  const StructureMatrix e1{{1, 0}, {0, 0}};
  const auto p = multiply(e1, basis_vector(2, 0), basis_vector(2, 0));
  EXPECT_EQ(p, basis_vector(2, 0));
}

TEST(Multiply, DistinctBasisElementsAnnihilate) {
  Rng rng(7);
  const StructureMatrix a(testutil::random_matrix(rng, 2));
  EXPECT_EQ(multiply(a, basis_vector(2, 0), basis_vector(2, 1)), AlgebraElement::Zero(2));
}

TEST(Multiply, E6SecondBasisSquare) {
  const StructureMatrix e6{{0, 1}, {1, 2}};
  AlgebraElement want(2);
  want << 1, 2;
  EXPECT_EQ(multiply(e6, basis_vector(2, 1), basis_vector(2, 1)), want);
}

TEST(Multiply, DimensionMismatchThrows) {
  const StructureMatrix a{{1, 0}, {0, 1}};
  EXPECT_THROW(multiply(a, basis_vector(3, 0), basis_vector(2, 0)), DimensionError);
}

TEST(StructureMatrixTest, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(StructureMatrix(Matrix(2, 3)), DimensionError);
  EXPECT_THROW(StructureMatrix(Matrix(0, 0)), DimensionError);
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(StructureMatrix{m}, DomainError);
  EXPECT_THROW((StructureMatrix{{1, 2}, {3}}), DimensionError);
}

TEST(Multiply, CommutativeExactly) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto n = 1 + static_cast<Eigen::Index>(k % 4);
    const StructureMatrix a(testutil::random_matrix(rng, n));
    const auto x = testutil::random_vector(rng, n);
    const auto y = testutil::random_vector(rng, n);
    EXPECT_EQ(multiply(a, x, y), multiply(a, y, x));
  }
}

TEST(Multiply, Bilinear) {
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index n = 3;
    const StructureMatrix a(testutil::random_matrix(rng, n));
    const auto x = testutil::random_vector(rng, n);
    const auto y = testutil::random_vector(rng, n);
    const auto z = testutil::random_vector(rng, n);
    const Scalar al{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const Scalar be{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const AlgebraElement lhs = multiply(a, al * x + be * z, y);
    const AlgebraElement rhs = al * multiply(a, x, y) + be * multiply(a, z, y);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST(RbResidual, E1WeightZeroFamilyVanishes) {
  const StructureMatrix e1{{1, 0}, {0, 0}};
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const Scalar b{rng.uniform(-2, 2), rng.uniform(-2, 2)}, d{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    EXPECT_EQ(rb_residual_norm(e1, RotaBaxterOperator(mat2(0, b, 0, d), Weight::zero)), 0.0);
  }
}

TEST(RbResidual, ZeroOperatorVanishes) {
  Rng rng(4);
  for (auto w : {Weight::zero, Weight::one}) {
    const StructureMatrix a(testutil::random_matrix(rng, 3));
    EXPECT_EQ(rb_residual_norm(a, RotaBaxterOperator(Matrix::Zero(3, 3), w)), 0.0);
  }
}

TEST(RbResidual, E2IdempotentProjectionFrozenValue) {
  // e1e1 = e1, e2e2 = e1; P(e1) = e1. At (1,1): LHS e1, RHS P(2 e1) = 2 e1.
  const StructureMatrix e2{{1, 0}, {1, 0}};
  const auto res = rb_residual(e2, RotaBaxterOperator(mat2(1, 0, 0, 0), Weight::zero));
  AlgebraElement want(2);
  want << -1, 0;
  EXPECT_EQ(res.entry(0, 0), want);
  EXPECT_EQ(res.entry(0, 1), AlgebraElement::Zero(2));
  EXPECT_EQ(res.entry(1, 1), AlgebraElement::Zero(2));
}

TEST(RbResidualNorm, E2WeightZeroLine) {
  const StructureMatrix e2{{1, 0}, {1, 0}};
  const Scalar c = 3.0;
  EXPECT_LT(rb_residual_norm(e2, RotaBaxterOperator(mat2(0, 0, c, I * c), Weight::zero)), 1e-9);
}

TEST(RbResidualNorm, E4WeightOneFamily) {
  const StructureMatrix e4{{0, 1}, {0, 0}};
  const Scalar a = 1.0, b = 0.0;
  const RotaBaxterOperator p(mat2(a, b, 0, a * a / (1.0 + 2.0 * a)), Weight::one);
  EXPECT_LT(rb_residual_norm(e4, p), 1e-12);
}

TEST(RbResidual, DimensionMismatchThrows) {
  const StructureMatrix a{{1, 0}, {0, 1}};
  EXPECT_THROW(rb_residual(a, RotaBaxterOperator(Matrix::Zero(3, 3), Weight::zero)), DimensionError);
}

TEST(RbResidual, SymmetricInBasisPair) {
  Rng rng(5);
  const StructureMatrix a(testutil::random_matrix(rng, 3));
  const auto res = rb_residual(a, RotaBaxterOperator(testutil::random_matrix(rng, 3), Weight::one));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(res.entry(i, j), res.entry(j, i));
}

TEST(RbResidual, MatchesBruteForceExpansion) {
  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 2 + k % 2;
    const Matrix a = testutil::random_matrix(rng, n);
    const Matrix r = testutil::random_matrix(rng, n);
    const Scalar lambda = (k % 3 == 0) ? Scalar(0) : Scalar(1);
    const auto res = rb_residual(StructureMatrix(a), r, lambda);
    const auto oa = testutil::to_oracle(a), orr = testutil::to_oracle(r);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        const auto want = oracle::rb_entry(oa, orr, lambda, i, j);
        for (std::size_t l = 0; l < static_cast<std::size_t>(n); ++l)
          EXPECT_LE(std::abs(res.at(i, j, l) - want[l]), 1e-12) << i << j << l;
      }
  }
}

TEST(RbResidual, WeightNormalization) {
  // Weight-1 solutions on E4: [[a,b],[0,a^2/(1+2a)]]. Then mu*R solves weight mu.
  const StructureMatrix e4{{0, 1}, {0, 0}};
  Rng rng(8);
  for (int k = 0; k < 50; ++k) {
    const Scalar a{rng.uniform(-2, 2), rng.uniform(-2, 2)}, b{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    if (std::abs(1.0 + 2.0 * a) < 1e-2) continue;
    const Matrix r = mat2(a, b, 0, a * a / (1.0 + 2.0 * a));
    ASSERT_LT(rb_residual_norm(e4, r, 1.0), 1e-9);
    const Scalar mu{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const Matrix scaled = mu * r;
    EXPECT_LT(rb_residual_norm(e4, scaled, mu), 1e-9 * std::max(1.0, rb_residual_scale(e4, scaled, mu)));
  }
}

TEST(RbJacobian, MatchesCentralDifferences) {
  Rng rng(9);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Index n = 2 + k % 2;
    const StructureMatrix a(testutil::random_matrix(rng, n));
    const Matrix r = testutil::random_matrix(rng, n);
    const Scalar lambda = k % 2 ? 1.0 : 0.0;
    const Eigen::MatrixXcd J = rb_jacobian(a, r, lambda);
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = 0; q < n; ++q) {
        Matrix rp = r, rm = r;
        rp(p, q) += 1e-6;
        rm(p, q) -= 1e-6;
        const Eigen::VectorXcd fd =
            (rb_residual_vector(a, rp, lambda) - rb_residual_vector(a, rm, lambda)) / 2e-6;
        EXPECT_LE((J.col(p * n + q) - fd).norm(), 1e-5 * std::max(1.0, fd.norm()));
      }
  }
}

TEST(MatrixIo, ParsesFileFormat) {
  const auto m = parse_matrix("2\n0+1i -0.5+0i\n1e-3-2i 3\n");
  EXPECT_EQ(m(0, 0), I);
  EXPECT_EQ(m(0, 1), Scalar(-0.5));
  EXPECT_EQ(m(1, 0), Scalar(1e-3, -2));
  EXPECT_EQ(m(1, 1), Scalar(3));
}

TEST(MatrixIo, RoundTrip) {
  Rng rng(10);
  const Matrix a = testutil::random_matrix(rng, 3);
  EXPECT_EQ(parse_matrix(write_matrix(a)).matrix(), a);
}

TEST(MatrixIo, ErrorsCarryOffset) {
  try {
    parse_matrix("2\n1+0i 1+xi\n0 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 7u);
  }
  EXPECT_THROW(parse_matrix("2\n1 2 3\n"), ParseError);
  EXPECT_THROW(parse_matrix("2\n1 2 3 4 5\n"), ParseError);
  EXPECT_THROW(parse_matrix("0\n"), ParseError);
  EXPECT_THROW(parse_matrix(""), ParseError);
}
