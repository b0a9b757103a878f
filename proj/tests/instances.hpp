#pragma once

// Three free-function choices per chain family, shared by the unit tests and
// the acceptance run. Case-splitting functions change sign on dyadic points
// so that the zero sets land exactly on a 1/8 lattice.

#include <evoalg/cea.hpp>

#include <vector>

namespace instances {

inline std::vector<evoalg::ChainFamilySpec> for_family(evoalg::FamilyId id) {
  using evoalg::ChainFamilySpec;
  using evoalg::FamilyId;
  switch (id) {
    case FamilyId::M0: return {ChainFamilySpec::from_text(id, {})};
    case FamilyId::M1:
      return {ChainFamilySpec::from_text(id, {{"rho", "s"}, {"phi", "exp(t)"}}),
              ChainFamilySpec::from_text(id, {{"rho", "s-2"}, {"phi", "1+t^2"}}),
              ChainFamilySpec::from_text(id, {{"rho", "(s-1)*(s-3)"}, {"phi", "exp(-t)+1"}})};
    case FamilyId::M2:
      return {ChainFamilySpec::from_text(id, {{"sigma", "s-1"}}, 5.0),
              ChainFamilySpec::from_text(id, {{"sigma", "2*s-5"}}, 3.0),
              ChainFamilySpec::from_text(id, {{"sigma", "(s-0.5)*(s-4)"}}, 6.0)};
    case FamilyId::M3:
      return {ChainFamilySpec::from_text(id, {{"f", "t"}, {"phi", "exp(t)"}}),
              ChainFamilySpec::from_text(id, {{"f", "sin(t)"}, {"phi", "1+t^2"}}),
              ChainFamilySpec::from_text(id, {{"f", "0"}, {"phi", "exp(-t)"}})};
    case FamilyId::M4:
      return {ChainFamilySpec::from_text(id, {{"g", "t^2"}}, 5.0),
              ChainFamilySpec::from_text(id, {{"g", "sin(t)"}}, 3.0),
              ChainFamilySpec::from_text(id, {{"g", "1-t"}}, 7.0)};
    case FamilyId::M5:
      return {ChainFamilySpec::from_text(id, {{"Phi", "exp(t)"}}, 2.0),
              ChainFamilySpec::from_text(id, {{"Phi", "1+t^2"}}, 5.0),
              ChainFamilySpec::from_text(id, {{"Phi", "2+sin(t)"}}, 3.5)};
    case FamilyId::M6:
      return {ChainFamilySpec::from_text(id, {{"rho", "s"}, {"phi", "exp(t)"}}, 3.0),
              ChainFamilySpec::from_text(id, {{"rho", "s-1"}, {"phi", "1+t"}}, 4.0),
              ChainFamilySpec::from_text(id, {{"rho", "s-2"}, {"phi", "2+cos(t)"}}, 5.0)};
    case FamilyId::M7:
      return {ChainFamilySpec::from_text(id, {{"Psi", "exp(t)"}}, 2.0),
              ChainFamilySpec::from_text(id, {{"Psi", "1+t^2"}}, 5.0),
              ChainFamilySpec::from_text(id, {{"Psi", "3+sin(t)"}}, 7.0)};
    case FamilyId::M8:
      return {ChainFamilySpec::from_text(id, {{"sigma", "t-3"}, {"phi", "exp(s)"}}, 2.0),
              ChainFamilySpec::from_text(id, {{"sigma", "t-5"}, {"phi", "1+s^2"}}, 4.0),
              ChainFamilySpec::from_text(id, {{"sigma", "(t-2)*(t-6)"}, {"phi", "2+cos(s)"}}, 6.0)};
  }
  return {};
}

// Lattice point (i/8, j/8), 0 <= i, j < 100.
inline constexpr double lattice_step = 0.125;

struct GridResult {
  int compared = 0, agreed = 0, excluded = 0, uncovered = 0, out_of_domain = 0;
  std::string first_mismatch;
};

inline GridResult dynamics_grid(const evoalg::ChainFamilySpec& spec, int n = 100) {
  using namespace evoalg;
  GridResult r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const TimePair p{i * lattice_step, j * lattice_step};
      if (p.s > p.t) {
        ++r.out_of_domain;
        continue;
      }
      const double d = boundary_distance(spec, p);
      if (d > 0 && d < 1e-6) {
        ++r.excluded;
        continue;
      }
      const auto want = expected_dynamics(spec, p);
      if (!want) {
        ++r.uncovered;
        continue;
      }
      ++r.compared;
      std::string got;
      try {
        got = to_string(classify_dynamics(spec, p).tag);
      } catch (const Error& e) {
        got = std::string("error: ") + e.what();
      }
      if (got == to_string(*want)) ++r.agreed;
      else if (r.first_mismatch.empty())
        r.first_mismatch = to_string(p) + " expected " + to_string(*want) + " got " + got;
    }
  return r;
}

}  // namespace instances
