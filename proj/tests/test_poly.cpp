#include <evoalg/poly.hpp>
#include <evoalg/rotabaxter.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "golden.hpp"
#include "test_util.hpp"

using namespace evoalg;

namespace {

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Poly, ArithmeticAndPrinting) {
  const VariableSet v(2);
  const Poly p = parse_poly("(2*a + 1)*b - b", v);
  EXPECT_EQ(p.to_string(v), "2*a*b");
  EXPECT_EQ(parse_poly("a^2 - 2*a*d + 3", v).to_string(v), "a^2 - 2*a*d + 3");
  EXPECT_EQ(parse_poly("-c^2", v).sign_normalized().to_string(v), "c^2");
  EXPECT_EQ(parse_poly("x*a^2 + b^2", v).to_string(v), "a^2*x + b^2");
}

TEST(Poly, EvalMatchesDirectComputation) {
  const VariableSet v(2);
  const Poly p = parse_poly("a^2*x - (2*d + 1)*(b*y + d)", v);
  const Scalar a(0.3, 1), b(-2, 0.5), c(1, 1), d(0.25, -0.75), x(1.5, 0), y(0, -1);
  const Scalar want = a * a * x - (2.0 * d + 1.0) * (b * y + d);
  EXPECT_LT(std::abs(p.eval({a, b, c, d, x, y}) - want), 1e-14);
}

TEST(Poly, ImaginaryUnitAndDecimals) {
  const VariableSet v(2);
  const Poly p = parse_poly("i*c + .5*d", v);
  EXPECT_EQ(p.eval({0, 0, 2, 4, 0, 0}), Scalar(2, 2));
}

TEST(Poly, ParseErrors) {
  const VariableSet v(2);
  try {
    parse_poly("a + q", v);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::unknown_identifier);
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(parse_poly("a +", v), ParseError);
  EXPECT_THROW(parse_poly("a^-1", v), ParseError);
  EXPECT_THROW(parse_poly_equation("a = b = c", v), ParseError);
  EXPECT_THROW(parse_poly("2a", v), ParseError);
}

TEST(Poly, NamesForLargerDimensions) {
  const VariableSet v(3);
  EXPECT_EQ(v.name(v.entry(1, 2)), "r23");
  EXPECT_EQ(v.name(v.x()), "x");
}

TEST(DeriveSystem, E1WeightZero) {
  const StructureMatrix e1{{1, 0}, {0, 0}};
  const PolySystem sys = derive_system(e1, Weight::zero);
  EXPECT_EQ(as_set(sys.lines()), (std::set<std::string>{"a^2 = 0", "2*a*b = 0", "c^2 = 0", "b*c = 0"}));
  std::size_t taut = 0, vac = 0;
  for (const auto& d : sys.dropped) {
    taut += d.reason == DropReason::tautology;
    vac += d.reason == DropReason::vacuous;
  }
  EXPECT_EQ(taut, 1u);
  EXPECT_EQ(vac, 1u);
  ASSERT_FALSE(sys.log().empty());
  EXPECT_NE(std::find(sys.log().begin(), sys.log().end(), "tautology (e1,e2)[1]: a*c = a*c"),
            sys.log().end());
}

TEST(DeriveSystem, ZeroAlgebraIsEmpty) {
  for (std::size_t n : {1u, 2u, 3u}) {
    const PolySystem sys = derive_system(StructureMatrix::zero(n), Weight::one);
    EXPECT_TRUE(sys.equations.empty());
    EXPECT_EQ(sys.dropped.size(), n * n * (n + 1) / 2);
  }
}

class GoldenSystems : public ::testing::TestWithParam<std::tuple<int, int>> {};

TEST_P(GoldenSystems, MatchesTranscription) {
  const auto [k, w] = GetParam();
  const auto tag = static_cast<ClassTag>(k);
  const PolySystem sys = derive_system(symbolic_algebra(tag), w ? Weight::one : Weight::zero);
  const golden::System g = golden::read(golden::path(to_string(tag), w));
  EXPECT_TRUE(same_system(sys.normalized(), g.normalized));
  EXPECT_EQ(sys.normalized().size(), g.normalized.size());
}

INSTANTIATE_TEST_SUITE_P(AllAlgebras, GoldenSystems,
                         ::testing::Combine(::testing::Range(1, 7), ::testing::Values(0, 1)));

TEST(DeriveSystem, E6SymbolicWeightOneHasSixEquations) {
  const PolySystem sys = derive_system(symbolic_algebra(ClassTag::E6), Weight::one);
  EXPECT_EQ(sys.equations.size(), 6u);
  EXPECT_TRUE(sys.dropped.empty());
}

TEST(DeriveSystem, DifferentSystemsAreDistinguished) {
  const PolySystem a = derive_system(symbolic_algebra(ClassTag::E2), Weight::zero);
  const PolySystem b = derive_system(symbolic_algebra(ClassTag::E2), Weight::one);
  EXPECT_FALSE(same_system(a.normalized(), b.normalized()));
}

// Every coordinate (kept or dropped) evaluated at R must equal the numeric
// residual coordinate.
TEST(DeriveSystem, AgreesWithNumericResidual) {
  Rng rng(2024);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      const StructureMatrix A(testutil::random_matrix(rng, n));
      const Matrix R = testutil::random_matrix(rng, n);
      for (Weight w : {Weight::zero, Weight::one}) {
        const PolySystem sys = derive_system(A, w);
        const RbResidual res = rb_residual(A, R, weight_value(w));
        const double scale = std::max(1.0, rb_residual_scale(A, R, weight_value(w)));
        const auto point = poly_point(R);
        std::size_t seen = 0;
        auto check = [&](const PolyEquation& e) {
          ++seen;
          EXPECT_LT(std::abs(e.difference().eval(point) - res.at(e.i, e.j, e.l)), 1e-12 * scale);
        };
        for (const auto& e : sys.equations) check(e);
        for (const auto& d : sys.dropped) check(d.equation);
        EXPECT_EQ(seen, static_cast<std::size_t>(n * n * (n + 1) / 2));
      }
    }
  }
}

TEST(DeriveSystem, SymbolicParametersSubstitute) {
  // E5(x,y) symbolic evaluated at (x, y) equals the numeric E5(x,y) residual.
  Rng rng(5);
  const PolySystem sys = derive_system(symbolic_algebra(ClassTag::E5), Weight::one);
  for (int trial = 0; trial < 20; ++trial) {
    const Scalar x(rng.uniform(-2, 2), rng.uniform(-2, 2)), y(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Matrix R = testutil::random_matrix(rng, 2);
    const StructureMatrix A(testutil::mat2(1, x, y, 1));
    const RbResidual res = rb_residual(A, R, 1.0);
    for (const auto& e : sys.equations)
      EXPECT_LT(std::abs(e.difference().eval(poly_point(R, x, y)) - res.at(e.i, e.j, e.l)), 1e-11);
  }
}
