#pragma once

// Chains of 2-dimensional evolution algebras M^[s,t] satisfying the
// Chapman-Kolmogorov equation M^[s,t] = M^[s,tau] M^[tau,t] for s < tau < t.
//
// Families (rows of the structure matrix):
//
//   M0  0
//   M1  [0, rho(s)phi(t); 0, phi(t)/phi(s)]
//   M2  [0, sigma(s); 0, 1]        0 < s <= t < a
//       0                          t >= a
//   M3  [0, 0; f(t)/phi(s), phi(t)/phi(s)]
//   M4  [0, 0; g(t), 1]            0 < s <= t < a
//       0                          t >= a
//   M5  0                          s < t <= C
//       [0, Phi(t)/Phi(s); 0, 0]   t > C
//   M6  0                          s < t <= C
//       [0, rho(s)/phi(t); 0, 0]   t > C
//   M7  [0, 0; Psi(t)/Psi(s), 0]   s < C
//       0                          s >= C
//   M8  [0, 0; sigma(t)/phi(s), 0] s < C
//       0                          s >= C
//
// Free functions are single-argument; their expressions are evaluated with
// both s and t bound to the argument.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "evoalg/classify2d.hpp"
#include "evoalg/core.hpp"
#include "evoalg/error.hpp"
#include "evoalg/expr.hpp"
#include "evoalg/format.hpp"
#include "evoalg/numeric.hpp"

namespace evoalg {

enum class FamilyId { M0, M1, M2, M3, M4, M5, M6, M7, M8 };

inline constexpr std::array<FamilyId, 9> all_families = {
    FamilyId::M0, FamilyId::M1, FamilyId::M2, FamilyId::M3, FamilyId::M4,
    FamilyId::M5, FamilyId::M6, FamilyId::M7, FamilyId::M8};

inline std::string to_string(FamilyId f) { return "M" + std::to_string(static_cast<int>(f)); }

inline std::optional<FamilyId> parse_family_id(std::string_view s) {
  if (s.size() == 2 && s[0] == 'M' && s[1] >= '0' && s[1] <= '8')
    return static_cast<FamilyId>(s[1] - '0');
  return std::nullopt;
}

inline const std::vector<std::string>& required_functions(FamilyId f) {
  static const std::map<FamilyId, std::vector<std::string>> table = {
      {FamilyId::M0, {}},
      {FamilyId::M1, {"rho", "phi"}},
      {FamilyId::M2, {"sigma"}},
      {FamilyId::M3, {"f", "phi"}},
      {FamilyId::M4, {"g"}},
      {FamilyId::M5, {"Phi"}},
      {FamilyId::M6, {"rho", "phi"}},
      {FamilyId::M7, {"Psi"}},
      {FamilyId::M8, {"sigma", "phi"}},
  };
  return table.at(f);
}

/// "a" for M2/M4, "C" for M5-M8, nullopt otherwise.
inline std::optional<std::string> threshold_name(FamilyId f) {
  switch (f) {
    case FamilyId::M2:
    case FamilyId::M4: return "a";
    case FamilyId::M5:
    case FamilyId::M6:
    case FamilyId::M7:
    case FamilyId::M8: return "C";
    default: return std::nullopt;
  }
}

class ChainFamilySpec {
 public:
  ChainFamilySpec(FamilyId id, std::map<std::string, Expr> functions,
                  std::optional<double> threshold = std::nullopt)
      : id_(id), functions_(std::move(functions)), threshold_(threshold) {
    const auto& need = required_functions(id_);
    for (const auto& name : need)
      if (!functions_.count(name))
        throw DomainError(to_string(id_) + ": missing function '" + name + "'");
    for (const auto& [name, e] : functions_)
      if (std::find(need.begin(), need.end(), name) == need.end())
        throw DomainError(to_string(id_) + ": unexpected function '" + name + "'");
    const auto tname = threshold_name(id_);
    if (tname && !threshold_)
      throw DomainError(to_string(id_) + ": missing threshold " + *tname);
    if (!tname && threshold_)
      throw DomainError(to_string(id_) + ": family takes no threshold");
    if (threshold_ && !(std::isfinite(*threshold_) && *threshold_ > 0))
      throw DomainError(to_string(id_) + ": threshold " + *tname + " must be positive");
  }

  /// Convenience: parse every function expression.
  static ChainFamilySpec from_text(FamilyId id, const std::map<std::string, std::string>& functions,
                                   std::optional<double> threshold = std::nullopt) {
    std::map<std::string, Expr> parsed;
    for (const auto& [k, v] : functions) parsed.emplace(k, Expr::parse(v));
    return ChainFamilySpec(id, std::move(parsed), threshold);
  }

  FamilyId id() const noexcept { return id_; }
  const Expr& function(const std::string& name) const { return functions_.at(name); }
  const std::map<std::string, Expr>& functions() const noexcept { return functions_; }
  double threshold() const { return threshold_.value(); }
  bool has_threshold() const noexcept { return threshold_.has_value(); }

 private:
  FamilyId id_;
  std::map<std::string, Expr> functions_;
  std::optional<double> threshold_;
};

struct TimePair {
  double s = 0.0;
  double t = 0.0;
};

inline std::string to_string(TimePair p) {
  return "(s,t)=(" + format_double(p.s) + "," + format_double(p.t) + ")";
}

/// A time pair that no printed branch of the family covers.
class UncoveredPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

namespace detail {

inline double eval_slot(const ChainFamilySpec& spec, const char* name, double x, TimePair p) {
  try {
    return spec.function(name)(x);
  } catch (const DomainError& e) {
    throw DomainError(std::string(name) + ": " + e.what() + " at " + to_string(p));
  }
}

inline double nonzero(double v, const char* constraint, TimePair p) {
  if (v == 0.0) throw ConstraintError(constraint, "at " + to_string(p));
  return v;
}

inline Matrix entries(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline void require_time_pair(TimePair p) {
  if (!std::isfinite(p.s) || !std::isfinite(p.t) || p.s < 0 || p.s > p.t)
    throw UncoveredPointError("time pair outside 0 <= s <= t: " + to_string(p));
}

}  // namespace detail

/// Structure matrix of the family at p, branches exactly as listed above.
inline StructureMatrix family_matrix(const ChainFamilySpec& spec, TimePair p) {
  detail::require_time_pair(p);
  const double s = p.s, t = p.t;
  auto fn = [&](const char* name, double x) { return detail::eval_slot(spec, name, x, p); };
  auto uncovered = [&]() -> StructureMatrix {
    throw UncoveredPointError(to_string(spec.id()) + ": no branch covers " + to_string(p));
  };
  const StructureMatrix zero = StructureMatrix::zero(2);
  Matrix m;
  switch (spec.id()) {
    case FamilyId::M0: return zero;
    case FamilyId::M1: {
      const double phis = detail::nonzero(fn("phi", s), "phi(s) != 0", p);
      const double phit = fn("phi", t);
      m = detail::entries(0, fn("rho", s) * phit, 0, phit / phis);
      break;
    }
    case FamilyId::M2: {
      const double a = spec.threshold();
      if (t >= a) return zero;
      if (!(0 < s && s <= t)) return uncovered();
      m = detail::entries(0, fn("sigma", s), 0, 1);
      break;
    }
    case FamilyId::M3: {
      const double phis = detail::nonzero(fn("phi", s), "phi(s) != 0", p);
      m = detail::entries(0, 0, fn("f", t) / phis, fn("phi", t) / phis);
      break;
    }
    case FamilyId::M4: {
      const double a = spec.threshold();
      if (t >= a) return zero;
      if (!(0 < s && s <= t)) return uncovered();
      m = detail::entries(0, 0, fn("g", t), 1);
      break;
    }
    case FamilyId::M5: {
      const double C = spec.threshold();
      if (t > C) {
        const double phis = detail::nonzero(fn("Phi", s), "Phi(s) != 0", p);
        const double phit = detail::nonzero(fn("Phi", t), "Phi(t) != 0", p);
        m = detail::entries(0, phit / phis, 0, 0);
        break;
      }
      if (s < t) return zero;
      return uncovered();
    }
    case FamilyId::M6: {
      const double C = spec.threshold();
      if (t > C) {
        const double phit = detail::nonzero(fn("phi", t), "phi(t) != 0", p);
        m = detail::entries(0, fn("rho", s) / phit, 0, 0);
        break;
      }
      if (s < t) return zero;
      return uncovered();
    }
    case FamilyId::M7: {
      if (s >= spec.threshold()) return zero;
      const double psis = detail::nonzero(fn("Psi", s), "Psi(s) != 0", p);
      const double psit = detail::nonzero(fn("Psi", t), "Psi(t) != 0", p);
      m = detail::entries(0, 0, psit / psis, 0);
      break;
    }
    case FamilyId::M8: {
      if (s >= spec.threshold()) return zero;
      const double phis = detail::nonzero(fn("phi", s), "phi(s) != 0", p);
      m = detail::entries(0, 0, fn("sigma", t) / phis, 0);
      break;
    }
  }
  if (!m.allFinite()) throw DomainError(to_string(spec.id()) + ": non-finite entry at " + to_string(p));
  return StructureMatrix(std::move(m));
}

/// Triple sampling: s ~ U(0.1, T/3), tau ~ U(s+eps, 2T/3), t ~ U(tau+eps, T).
struct TripleSampling {
  double t_max = 10.0;
  double eps = 1e-3;
};

struct Triple {
  double s = 0, tau = 0, t = 0;
};

inline std::string to_string(const Triple& x) {
  return "(s,tau,t)=(" + format_double(x.s) + "," + format_double(x.tau) + "," + format_double(x.t) + ")";
}

inline std::vector<Triple> sample_triples(std::size_t count, std::uint64_t seed,
                                          const TripleSampling& cfg = {}) {
  Rng rng(seed);
  std::vector<Triple> out(count);
  for (auto& x : out) {
    x.s = rng.uniform(0.1, cfg.t_max / 3);
    x.tau = rng.uniform(x.s + cfg.eps, 2 * cfg.t_max / 3);
    x.t = rng.uniform(x.tau + cfg.eps, cfg.t_max);
  }
  return out;
}

struct CkReport {
  std::size_t samples = 0;
  double max_violation = 0.0;      // scaled, compared against tol
  double max_abs_violation = 0.0;  // unscaled
  std::optional<Triple> worst;     // triple attaining max_violation
  std::size_t failures = 0;        // triples above tol
  double tol = 0.0;
  bool passed = true;
};

using MatrixFamily = std::function<Matrix(double s, double t)>;

/// Samples triples and measures |M[s,tau] M[tau,t] - M[s,t]| entrywise,
/// scaled by max(1, |M[s,t]_ij|, sum_k |M[s,tau]_ik||M[tau,t]_kj|).
inline CkReport verify_ck(const MatrixFamily& family, std::size_t samples, std::uint64_t seed,
                          double tol = default_tolerance, const TripleSampling& cfg = {}) {
  if (samples < 1) throw DomainError("verify_ck: samples must be >= 1");
  CkReport rep;
  rep.samples = samples;
  rep.tol = tol;
  for (const Triple& x : sample_triples(samples, seed, cfg)) {
    Matrix a, b, c;
    try {
      a = family(x.s, x.tau);
      b = family(x.tau, x.t);
      c = family(x.s, x.t);
    } catch (const Error& e) {
      throw DomainError(std::string(e.what()) + " while checking " + to_string(x));
    }
    const Matrix prod = a * b;
    const Eigen::MatrixXd mag = a.cwiseAbs() * b.cwiseAbs();
    double worst_here = 0.0;
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index j = 0; j < c.cols(); ++j) {
        const double diff = std::abs(prod(i, j) - c(i, j));
        const double scale = std::max({1.0, std::abs(c(i, j)), mag(i, j)});
        rep.max_abs_violation = std::max(rep.max_abs_violation, diff);
        worst_here = std::max(worst_here, diff / scale);
      }
    if (worst_here > tol) ++rep.failures;
    if (!rep.worst || worst_here > rep.max_violation) {
      rep.max_violation = worst_here;
      rep.worst = x;
    }
  }
  rep.passed = rep.failures == 0;
  return rep;
}

inline CkReport verify_ck(const ChainFamilySpec& spec, std::size_t samples, std::uint64_t seed,
                          double tol = default_tolerance, const TripleSampling& cfg = {}) {
  return verify_ck([&spec](double s, double t) { return family_matrix(spec, {s, t}).matrix(); },
                   samples, seed, tol, cfg);
}

enum class CantorMode {
  second,      // delta(s,tau) delta(tau,t) = delta(s,t)
  degenerate,  // delta(s,tau) delta(tau,t) = 0
};

using ScalarFamily = std::function<double(double s, double t)>;

/// delta(s,t) = phi(t)/phi(s).
inline ScalarFamily cantor_ratio(Expr phi) {
  return [phi = std::move(phi)](double s, double t) {
    const double d = phi(s);
    if (d == 0.0) throw ConstraintError("phi(s) != 0", "at " + to_string(TimePair{s, t}));
    return phi(t) / d;
  };
}

/// Piecewise witness of the degenerate equation for threshold C:
/// 0 when C <= s < t or s < t <= C, f(s,t) when s < C < t.
inline ScalarFamily cantor_threshold_witness(double C, Expr f) {
  if (!(C > 0)) throw DomainError("threshold C must be positive");
  return [C, f = std::move(f)](double s, double t) -> double {
    if (!(0 < s && s < t)) throw UncoveredPointError("no branch covers " + to_string(TimePair{s, t}));
    if (s < C && C < t) return f.eval(s, t);
    return 0.0;
  };
}

inline CkReport verify_cantor(const ScalarFamily& delta, CantorMode mode, std::size_t samples,
                              std::uint64_t seed, double tol = default_tolerance,
                              const TripleSampling& cfg = {}) {
  if (samples < 1) throw DomainError("verify_cantor: samples must be >= 1");
  CkReport rep;
  rep.samples = samples;
  rep.tol = tol;
  for (const Triple& x : sample_triples(samples, seed, cfg)) {
    double a, b, c = 0.0;
    try {
      a = delta(x.s, x.tau);
      b = delta(x.tau, x.t);
      if (mode == CantorMode::second) c = delta(x.s, x.t);
    } catch (const Error& e) {
      throw DomainError(std::string(e.what()) + " while checking " + to_string(x));
    }
    const double diff = std::abs(a * b - c);
    const double v = diff / std::max({1.0, std::abs(c), std::abs(a * b)});
    rep.max_abs_violation = std::max(rep.max_abs_violation, diff);
    if (v > tol) ++rep.failures;
    if (!rep.worst || v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst = x;
    }
  }
  rep.passed = rep.failures == 0;
  return rep;
}

/// Class of E^[s,t]. Complex by default: over R the M1/M2 clauses split
/// further (e2 e2 = k e1 with k < 0 is E5).
inline AlgebraClass classify_dynamics(const ChainFamilySpec& spec, TimePair p,
                                      Field field = Field::complex,
                                      const ClassifyOptions& opt = {}) {
  return classify(family_matrix(spec, p), field, opt);
}

/// Region table of the dynamics theorem. nullopt where the table says
/// nothing (e.g. s = t for strict-inequality regions).
inline std::optional<ClassTag> expected_dynamics(const ChainFamilySpec& spec, TimePair p) {
  const double s = p.s, t = p.t;
  if (!(0 <= s && s <= t)) return std::nullopt;
  auto fn = [&](const char* name, double x) { return spec.function(name)(x); };
  switch (spec.id()) {
    case FamilyId::M0: return ClassTag::E0;
    case FamilyId::M1:
      if (!(s < t)) return std::nullopt;
      return fn("rho", s) == 0.0 ? ClassTag::E1 : ClassTag::E2;
    case FamilyId::M2: {
      const double a = spec.threshold();
      if (t >= a) return ClassTag::E0;
      if (!(0 < s && s < t)) return std::nullopt;  // s = 0 is not covered by the family
      return fn("sigma", s) == 0.0 ? ClassTag::E1 : ClassTag::E2;
    }
    case FamilyId::M3: return ClassTag::E1;
    case FamilyId::M4: {
      if (t >= spec.threshold()) return ClassTag::E0;
      if (!(0 < s && s < t)) return std::nullopt;
      return ClassTag::E1;
    }
    case FamilyId::M5: {
      const double C = spec.threshold();
      if (t > C) return ClassTag::E4;
      return s < t ? std::optional(ClassTag::E0) : std::nullopt;
    }
    case FamilyId::M6: {
      const double C = spec.threshold();
      if (t > C) return fn("rho", s) == 0.0 ? ClassTag::E0 : ClassTag::E4;
      return s < t ? std::optional(ClassTag::E0) : std::nullopt;
    }
    case FamilyId::M7: return s < spec.threshold() ? ClassTag::E4 : ClassTag::E0;
    case FamilyId::M8:
      if (s >= spec.threshold()) return ClassTag::E0;
      return fn("sigma", t) == 0.0 ? ClassTag::E0 : ClassTag::E4;
  }
  return std::nullopt;
}

/// Distance-like measure from p to the nearest region boundary of the
/// table: the diagonal, s = 0, threshold lines, and the zero sets of the
/// case-splitting functions (measured by |rho(s)|, |sigma(.)|).
inline double boundary_distance(const ChainFamilySpec& spec, TimePair p) {
  const double s = p.s, t = p.t;
  double d = std::numeric_limits<double>::infinity();
  auto consider = [&](double v) { d = std::min(d, std::abs(v)); };
  auto fn_abs = [&](const char* name, double x) {
    try {
      consider(spec.function(name)(x));
    } catch (const DomainError&) {
    }
  };
  switch (spec.id()) {
    case FamilyId::M0:
    case FamilyId::M3: break;
    case FamilyId::M1: consider(t - s); fn_abs("rho", s); break;
    case FamilyId::M2: consider(t - s); consider(s); consider(t - spec.threshold()); fn_abs("sigma", s); break;
    case FamilyId::M4: consider(t - s); consider(s); consider(t - spec.threshold()); break;
    case FamilyId::M5: consider(t - s); consider(t - spec.threshold()); break;
    case FamilyId::M6: consider(t - s); consider(t - spec.threshold()); fn_abs("rho", s); break;
    case FamilyId::M7: consider(s - spec.threshold()); break;
    case FamilyId::M8: consider(s - spec.threshold()); fn_abs("sigma", t); break;
  }
  return d;
}

struct DynamicsWitness {
  ClassTag tag;
  BasisChange t;
};

/// Closed-form basis change e' = T e taking E^[s,t] to the canonical table
/// of its class (complex field).
inline DynamicsWitness dynamics_witness(const ChainFamilySpec& spec, TimePair p) {
  const auto expected = expected_dynamics(spec, p);
  if (!expected) throw UncoveredPointError("dynamics table does not cover " + to_string(p));
  if (*expected == ClassTag::E0) return {ClassTag::E0, BasisChange::identity()};
  const double s = p.s, t = p.t;
  auto fn = [&](const char* name, double x) { return spec.function(name)(x); };
  auto rows = [](Scalar a, Scalar b, Scalar c, Scalar d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return BasisChange(m);
  };
  switch (spec.id()) {
    case FamilyId::M1: {
      const double rho = fn("rho", s), phis = fn("phi", s), phit = fn("phi", t);
      if (rho == 0.0) return {ClassTag::E1, rows(0, phis / phit, 1, 0)};
      const Scalar k = std::sqrt(Scalar(rho * phis)) / (rho * phit);
      return {ClassTag::E2, rows(0, phis / phit, k, 0)};
    }
    case FamilyId::M2: {
      const double sigma = fn("sigma", s);
      if (sigma == 0.0) return {ClassTag::E1, rows(0, 1, 1, 0)};
      return {ClassTag::E2, rows(0, 1, 1.0 / std::sqrt(Scalar(sigma)), 0)};
    }
    case FamilyId::M3: {
      const double f = fn("f", t), phis = fn("phi", s), phit = fn("phi", t);
      return {ClassTag::E1, rows(f * phis / (phit * phit), phis / phit, 1, 0)};
    }
    case FamilyId::M4: return {ClassTag::E1, rows(fn("g", t), 1, 1, 0)};
    case FamilyId::M5: {
      const double k = fn("Phi", s) / fn("Phi", t);
      return {ClassTag::E4, rows(k, 0, 0, k)};
    }
    case FamilyId::M6: {
      const double k = fn("phi", t) / fn("rho", s);
      return {ClassTag::E4, rows(k, 0, 0, k)};
    }
    case FamilyId::M7: {
      const double k = fn("Psi", s) / fn("Psi", t);
      return {ClassTag::E4, rows(0, k, k, 0)};
    }
    case FamilyId::M8: {
      const double k = fn("phi", s) / fn("sigma", t);
      return {ClassTag::E4, rows(0, k, k, 0)};
    }
    default: break;
  }
  throw DomainError("no witness for " + to_string(spec.id()));
}

struct Window {
  double s_min = 0, s_max = 1, t_min = 0, t_max = 1;
};

enum class CellKind { in_property, not_in_property, out_of_domain, error };

struct DiagramCell {
  double s = 0, t = 0;
  CellKind kind = CellKind::out_of_domain;
  std::optional<ClassTag> tag;
  std::string message;  // error text for CellKind::error
};

struct PropertyDiagram {
  FamilyId family = FamilyId::M0;
  std::optional<ClassTag> property;  // nullopt: "is an evolution algebra"
  Window window;
  int resolution = 0;
  std::vector<DiagramCell> cells;  // row-major: index = j * resolution + i (i along s, j along t)

  std::size_t count(CellKind k) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [k](const DiagramCell& c) { return c.kind == k; }));
  }
};

/// Rasterizes classify_dynamics over cell centers of a resolution x
/// resolution grid.
inline PropertyDiagram property_diagram(const ChainFamilySpec& spec, std::optional<ClassTag> property,
                                        const Window& w, int resolution, Field field = Field::complex,
                                        unsigned jobs = 1) {
  if (resolution < 2) throw DomainError("property_diagram: resolution must be >= 2");
  if (!(w.s_max > w.s_min) || !(w.t_max > w.t_min) || !std::isfinite(w.s_max - w.s_min) ||
      !std::isfinite(w.t_max - w.t_min))
    throw DomainError("property_diagram: empty or invalid window");
  PropertyDiagram d{spec.id(), property, w, resolution, {}};
  const auto n = static_cast<std::size_t>(resolution);
  d.cells.resize(n * n);
  const double ds = (w.s_max - w.s_min) / resolution, dt = (w.t_max - w.t_min) / resolution;
  parallel_for(n * n, jobs, [&](std::size_t idx) {
    DiagramCell& c = d.cells[idx];
    c.s = w.s_min + (static_cast<double>(idx % n) + 0.5) * ds;
    c.t = w.t_min + (static_cast<double>(idx / n) + 0.5) * dt;
    try {
      const AlgebraClass cls = classify_dynamics(spec, {c.s, c.t}, field);
      c.tag = cls.tag;
      c.kind = !property || *property == cls.tag ? CellKind::in_property : CellKind::not_in_property;
    } catch (const UncoveredPointError&) {
      c.kind = CellKind::out_of_domain;
    } catch (const Error& e) {
      c.kind = CellKind::error;
      c.message = e.what();
    }
  });
  return d;
}

inline std::string cell_label(const DiagramCell& c) {
  switch (c.kind) {
    case CellKind::out_of_domain: return "out_of_domain";
    case CellKind::error: return "error";
    default: return to_string(*c.tag);
  }
}

/// `s,t,class_tag`, one line per cell in index order.
inline std::string diagram_csv(const PropertyDiagram& d) {
  std::string out = "s,t,class_tag\n";
  for (const auto& c : d.cells) out += format_double(c.s) + "," + format_double(c.t) + "," + cell_label(c) + "\n";
  return out;
}

/// Fill color per class; white for out-of-domain cells, black for errors.
inline const char* class_color(ClassTag t) {
  static constexpr const char* colors[] = {"#d9d9d9", "#1f77b4", "#ff7f0e", "#2ca02c",
                                           "#d62728", "#9467bd", "#8c564b", "#e377c2"};
  return colors[static_cast<int>(t)];
}

inline std::string cell_color(const DiagramCell& c) {
  switch (c.kind) {
    case CellKind::out_of_domain: return "#ffffff";
    case CellKind::error: return "#000000";
    default: return class_color(*c.tag);
  }
}

/// One rect per cell in a unit-cell viewBox, s to the right and t upward.
/// Cells lacking the property are drawn at reduced opacity.
inline std::string diagram_svg(const PropertyDiagram& d) {
  const int n = d.resolution;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(n * 8) +
         "\" height=\"" + std::to_string(n * 8) + "\" viewBox=\"0 0 " + std::to_string(n) + " " +
         std::to_string(n) + "\" shape-rendering=\"crispEdges\">\n";
  out += "<title>" + to_string(d.family) + " property " +
         (d.property ? to_string(*d.property) : std::string("any")) + " s=[" +
         format_double(d.window.s_min) + "," + format_double(d.window.s_max) + "] t=[" +
         format_double(d.window.t_min) + "," + format_double(d.window.t_max) + "]</title>\n";
  for (std::size_t idx = 0; idx < d.cells.size(); ++idx) {
    const auto& c = d.cells[idx];
    const int i = static_cast<int>(idx % static_cast<std::size_t>(n));
    const int j = static_cast<int>(idx / static_cast<std::size_t>(n));
    out += "<rect x=\"" + std::to_string(i) + "\" y=\"" + std::to_string(n - 1 - j) +
           "\" width=\"1\" height=\"1\" fill=\"" + cell_color(c) + "\"";
    if (c.kind == CellKind::not_in_property) out += " fill-opacity=\"0.35\"";
    out += "><title>" + format_double(c.s) + "," + format_double(c.t) + " " + cell_label(c) +
           "</title></rect>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace evoalg
