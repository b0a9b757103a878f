#include <evoalg/classify2d.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numeric>

#include "oracle.hpp"
#include "test_util.hpp"

using namespace evoalg;
using testutil::mat2;

namespace {

const Scalar I{0.0, 1.0};

AlgebraClass cls(Field f, ClassTag t, std::vector<Scalar> p = {}) { return {f, t, std::move(p)}; }

// Homomorphism residual recomputed from the full structure tensor.
double independent_residual(const Matrix& a, const Matrix& b, const Matrix& t) {
  const auto c = oracle::tensor(testutil::to_oracle(a));
  double sum = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      const oracle::Vec ti{t(i, 0), t(i, 1)}, tj{t(j, 0), t(j, 1)};
      auto prod = oracle::product(c, ti, tj);
      if (i == j)
        for (int k = 0; k < 2; ++k)
          for (int m = 0; m < 2; ++m) prod[static_cast<std::size_t>(k)] -= b(i, m) * t(m, k);
      for (const auto& z : prod) sum += std::norm(z);
    }
  return sum;
}

bool params_close(const AlgebraClass& a, const AlgebraClass& b, double tol = 1e-8) {
  if (a.field != b.field || a.tag != b.tag || a.params.size() != b.params.size()) return false;
  for (std::size_t k = 0; k < a.params.size(); ++k)
    if (std::abs(a.params[k] - b.params[k]) > tol * std::max(1.0, std::abs(b.params[k]))) return false;
  return true;
}

std::vector<AlgebraClass> all_canonical(Field f) {
  std::vector<AlgebraClass> out;
  for (auto t : {ClassTag::E0, ClassTag::E1, ClassTag::E2, ClassTag::E3, ClassTag::E4}) out.push_back(cls(f, t));
  if (f == Field::real) {
    out.push_back(cls(f, ClassTag::E5));
    out.push_back(cls(f, ClassTag::E6, {0.3, 1.7}));
    out.push_back(cls(f, ClassTag::E6, {-2, 0}));
    out.push_back(cls(f, ClassTag::E7, {0}));
    out.push_back(cls(f, ClassTag::E7, {-1.5}));
  } else {
    out.push_back(cls(f, ClassTag::E5, {0.1, 0.2}));
    out.push_back(cls(f, ClassTag::E5, {Scalar(0.5, -1), Scalar(2, 0.25)}));
    out.push_back(cls(f, ClassTag::E5, {0, 0}));
    out.push_back(cls(f, ClassTag::E6, {0}));
    out.push_back(canonicalize(cls(f, ClassTag::E6, {Scalar(1.5, 0.5)})));
  }
  return out;
}

}  // namespace

TEST(IsE4Shape, Examples) {
  const auto m1 = is_E4_shape(StructureMatrix{{0, 3}, {0, 0}});
  EXPECT_TRUE(m1.matched);
  EXPECT_EQ(m1.shape, 1);
  EXPECT_EQ(m1.entry, Scalar(3));
  const auto m2 = is_E4_shape(StructureMatrix{{0, 0}, {-2, 0}});
  EXPECT_TRUE(m2.matched);
  EXPECT_EQ(m2.shape, 2);
  EXPECT_FALSE(is_E4_shape(StructureMatrix::zero(2)).matched);
  EXPECT_FALSE(is_E4_shape(StructureMatrix{{0, 3}, {1e-15, 0}}).matched);
  EXPECT_FALSE(is_E4_shape(StructureMatrix{{0, 1e-10}, {0, 0}}).matched);
  EXPECT_THROW(is_E4_shape(StructureMatrix::zero(3)), DimensionError);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(StructureMatrix{{1, 0}, {0, 0}}, Field::complex), cls(Field::complex, ClassTag::E1));
  EXPECT_EQ(classify(StructureMatrix{{1, 1}, {-1, -1}}, Field::complex), cls(Field::complex, ClassTag::E3));
  const auto scaled = change_basis(canonical_matrix(cls(Field::complex, ClassTag::E2)),
                                   BasisChange(mat2(2, 0, 0, 3)));
  EXPECT_EQ(scaled.matrix(), mat2(2, 0, 4.5, 0));
  EXPECT_EQ(classify(scaled, Field::complex), cls(Field::complex, ClassTag::E2));
  EXPECT_EQ(classify(StructureMatrix{{0, 5}, {0, 0}}, Field::complex).tag, ClassTag::E4);
  EXPECT_EQ(classify(StructureMatrix::zero(2), Field::real).tag, ClassTag::E0);
  EXPECT_EQ(classify(StructureMatrix{{1, 0.1}, {0.2, 1}}, Field::complex).to_string(), "E5(0.1, 0.2)");
  EXPECT_EQ(classify(StructureMatrix{{1, 0.2}, {0.1, 1}}, Field::complex).to_string(), "E5(0.1, 0.2)");
  EXPECT_EQ(classify(StructureMatrix{{1, 0.2}, {0.1, 1}}, Field::real).to_string(), "E6(0.1; 0.2)");
  EXPECT_THROW(classify(StructureMatrix::zero(3), Field::complex), DimensionError);
  EXPECT_THROW(classify(StructureMatrix{{I, 0}, {0, 0}}, Field::real), DomainError);
}

TEST(Classify, CanonicalFormsArePairwiseDistinct) {
  for (Field f : {Field::real, Field::complex}) {
    const auto forms = all_canonical(f);
    std::vector<ClassTag> seen;
    for (const auto& c : forms) {
      const auto r = classify_with_witness(canonical_matrix(c), f);
      EXPECT_TRUE(params_close(r.cls, canonicalize(c))) << c.to_string() << " -> " << r.cls.to_string();
      EXPECT_FALSE(r.numeric);
      if (c.params.empty() || std::find(seen.begin(), seen.end(), c.tag) == seen.end()) seen.push_back(r.cls.tag);
    }
    std::vector<ClassTag> tags = seen;
    std::sort(tags.begin(), tags.end());
    EXPECT_EQ(std::unique(tags.begin(), tags.end()), tags.end());
    EXPECT_EQ(tags.size(), f == Field::real ? 8u : 7u);
  }
}

TEST(Classify, RealFieldSeparatesE2AndE5) {
  // e1e1 = e1, e2e2 = -e1 is E2 over C but not over R.
  const StructureMatrix a{{1, 0}, {-1, 0}};
  EXPECT_EQ(classify(a, Field::complex).tag, ClassTag::E2);
  EXPECT_EQ(classify(a, Field::real).tag, ClassTag::E5);
}

TEST(Classify, InvariantUnderRescaleAndPermute) {
  Rng rng(21);
  int checked = 0;
  for (Field f : {Field::real, Field::complex}) {
    for (const auto& base : all_canonical(f)) {
      for (int k = 0; k < 20; ++k) {
        // Random A in the class: canonical table in a random natural basis.
        auto draw = [&] {
          Scalar z{rng.uniform(0.3, 3) * (rng.next() % 2 ? 1 : -1),
                   f == Field::complex ? rng.uniform(-2, 2) : 0.0};
          return z;
        };
        const bool perm = rng.next() % 2;
        const Scalar d1 = draw(), d2 = draw();
        const Matrix t = perm ? mat2(0, d1, d2, 0) : mat2(d1, 0, 0, d2);
        const StructureMatrix a = change_basis(canonical_matrix(base), BasisChange(t));
        const auto r = classify_with_witness(a, f);
        EXPECT_TRUE(params_close(r.cls, canonicalize(base), 1e-7))
            << base.to_string() << " -> " << r.cls.to_string();
        EXPECT_LT(independent_residual(a.matrix(), canonical_matrix(r.cls).matrix(), r.witness.matrix()),
                  1e-18 * std::max(1.0, std::pow(homomorphism_scale(a, canonical_matrix(r.cls), r.witness.matrix()), 2)));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 300);
}

TEST(Classify, RandomMatricesGetVerifiedWitness) {
  Rng rng(22);
  for (int k = 0; k < 300; ++k) {
    const Field f = k % 2 ? Field::real : Field::complex;
    Matrix m = testutil::random_matrix(rng, 2);
    if (f == Field::real) m = m.real().cast<Scalar>();
    // Sprinkle exact zeros and rank-one patterns.
    if (k % 5 == 1) m(0, 0) = 0;
    if (k % 7 == 2) m.row(1) = m.row(0) * Scalar(rng.uniform(-2, 2));
    if (k % 11 == 3) m.row(0).setZero();
    const StructureMatrix a(m);
    const auto r = classify_with_witness(a, f);
    const auto b = canonical_matrix(r.cls);
    EXPECT_TRUE(accept_witness(a, b, r.witness.matrix())) << r.cls.to_string();
  }
}

TEST(Canonicalize, ParameterOrbits) {
  EXPECT_EQ(canonicalize(cls(Field::complex, ClassTag::E5, {0.2, 0.1})).params,
            (std::vector<Scalar>{0.1, 0.2}));
  EXPECT_EQ(canonicalize(cls(Field::real, ClassTag::E6, {3, -1})).params, (std::vector<Scalar>{-1, 3}));
  const auto a = canonicalize(cls(Field::complex, ClassTag::E6, {2.0}));
  const auto b = canonicalize(cls(Field::complex, ClassTag::E6, {2.0 * Scalar(-0.5, std::sqrt(3.0) / 2)}));
  EXPECT_NEAR(std::abs(a.params[0] - b.params[0]), 0.0, 1e-12);
  EXPECT_LT(a.params[0].real(), 0.0);
  EXPECT_THROW(canonical_matrix(cls(Field::complex, ClassTag::E5, {2, 0.5})), ConstraintError);
  EXPECT_THROW(canonical_matrix(cls(Field::complex, ClassTag::E7, {1})), DomainError);
  EXPECT_THROW(canonical_matrix(cls(Field::real, ClassTag::E7, {I})), DomainError);
}

TEST(BasisChangeTest, RejectsSingular) {
  EXPECT_THROW(BasisChange(mat2(1, 2, 2, 4)), DomainError);
  EXPECT_THROW(BasisChange(mat2(1e-7, 0, 0, 1e-6)), DomainError);
  EXPECT_NO_THROW(BasisChange(mat2(1e-5, 0, 0, 1e-5)));
}

TEST(FindIsomorphism, IdentityOnEqualAlgebras) {
  const auto e1 = canonical_matrix(cls(Field::complex, ClassTag::E1));
  const auto t = find_isomorphism(e1, e1);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->matrix(), Matrix::Identity(2, 2));
}

TEST(FindIsomorphism, ParameterSwap) {
  const auto a = canonical_matrix(cls(Field::complex, ClassTag::E5, {0, 0.25}));
  const auto b = canonical_matrix(cls(Field::complex, ClassTag::E5, {0.25, 0}));
  const auto t = find_isomorphism(a, b);
  ASSERT_TRUE(t);
  EXPECT_LT(independent_residual(a.matrix(), b.matrix(), t->matrix()), 1e-18);
  // Inverse witness for the reverse direction.
  EXPECT_LT(homomorphism_residual(b, a, t->inverse().matrix()), 1e-9);
}

TEST(FindIsomorphism, SymmetricOnRandomPairs) {
  Rng rng(23);
  SearchOptions opt;
  opt.seed = 5;
  for (int k = 0; k < 10; ++k) {
    const StructureMatrix a(testutil::random_matrix(rng, 2));
    const Matrix t = testutil::random_matrix(rng, 2);
    if (std::abs(t.determinant()) < 0.1) continue;
    // b: table of a in a random *natural* basis (diagonal t).
    const Matrix d = mat2(t(0, 0), 0, 0, t(1, 1));
    const StructureMatrix b = change_basis(a, BasisChange(d));
    const auto w = find_isomorphism(a, b, Field::complex, opt);
    ASSERT_TRUE(w);
    EXPECT_LT(independent_residual(a.matrix(), b.matrix(), w->matrix()),
              1e-18 * std::pow(std::max(1.0, homomorphism_scale(a, b, w->matrix())), 2));
    EXPECT_LT(homomorphism_residual(b, a, w->inverse().matrix()), 1e-9);
  }
}

TEST(FindIsomorphism, NotFoundAcrossRealClasses) {
  const auto e2 = canonical_matrix(cls(Field::real, ClassTag::E2));
  const auto e5 = canonical_matrix(cls(Field::real, ClassTag::E5));
  SearchOptions opt;
  opt.starts = 40;
  EXPECT_FALSE(find_isomorphism(e2, e5, Field::real, opt));
  EXPECT_TRUE(find_isomorphism(e2, canonical_matrix(cls(Field::complex, ClassTag::E2)),
                               Field::complex, opt));
}

TEST(FindIsomorphism, DeterministicAcrossJobCounts) {
  const auto a = canonical_matrix(cls(Field::complex, ClassTag::E5, {0.3, -0.7}));
  const auto b = canonical_matrix(cls(Field::complex, ClassTag::E5, {-0.7, 0.3}));
  SearchOptions o1, o4;
  o4.jobs = 4;
  const auto t1 = find_isomorphism(a, b, Field::complex, o1);
  const auto t4 = find_isomorphism(a, b, Field::complex, o4);
  ASSERT_TRUE(t1 && t4);
  EXPECT_EQ(t1->matrix(), t4->matrix());
}
