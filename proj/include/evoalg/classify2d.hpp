#pragma once

// Isomorphism classes of 2-dimensional real and complex evolution algebras.
//
// Canonical tables (rows of the structure matrix):
//
//   class      real                     complex
//   E0         0                        0
//   E1         [1 0; 0 0]               [1 0; 0 0]
//   E2         [1 0; 1 0]               [1 0; 1 0]
//   E3         [1 1; -1 -1]             [1 1; -1 -1]
//   E4         [0 1; 0 0]               [0 1; 0 0]
//   E5         [0 1; 0 -1]              E5(a2,a3) = [1 a2; a3 1]
//   E6         E6(a2;a3) = [1 a2; a3 1] E6(a4) = [0 1; 1 a4]
//   E7         E7(a4) = [0 1; 1 a4]     -
//
// A basis change T has rows e'_i = sum_j T_ij e_j. T witnesses A ~ B when
// the algebra with table A has table B in the basis e'.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "evoalg/core.hpp"
#include "evoalg/error.hpp"
#include "evoalg/format.hpp"
#include "evoalg/numeric.hpp"

namespace evoalg {

enum class ClassTag { E0, E1, E2, E3, E4, E5, E6, E7 };

inline std::string to_string(ClassTag t) { return "E" + std::to_string(static_cast<int>(t)); }

inline std::optional<ClassTag> parse_class_tag(std::string_view s) {
  if (s.size() == 2 && s[0] == 'E' && s[1] >= '0' && s[1] <= '7')
    return static_cast<ClassTag>(s[1] - '0');
  return std::nullopt;
}

/// Number of continuous parameters carried by a tag in a field.
inline int parameter_count(Field f, ClassTag t) {
  if (f == Field::real) return t == ClassTag::E6 ? 2 : t == ClassTag::E7 ? 1 : 0;
  return t == ClassTag::E5 ? 2 : t == ClassTag::E6 ? 1 : 0;
}

struct AlgebraClass {
  Field field = Field::complex;
  ClassTag tag = ClassTag::E0;
  std::vector<Scalar> params;

  /// "E4", "E5(0.1, 0.2)", real "E6(0.1; 0.2)", "E7(2)".
  std::string to_string() const {
    std::string out = evoalg::to_string(tag);
    if (params.empty()) return out;
    const char* sep = field == Field::real ? "; " : ", ";
    out += '(';
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (k) out += sep;
      out += format_complex(params[k], 12);
    }
    return out + ')';
  }

  friend bool operator==(const AlgebraClass& a, const AlgebraClass& b) {
    return a.field == b.field && a.tag == b.tag && a.params == b.params;
  }
};

/// Checks tag/field/parameter consistency, including 1 - a2 a3 != 0.
inline void validate(const AlgebraClass& c) {
  if (c.field == Field::complex && c.tag == ClassTag::E7)
    throw DomainError("E7 is not a complex class");
  if (static_cast<int>(c.params.size()) != parameter_count(c.field, c.tag))
    throw DomainError(c.to_string() + ": wrong number of parameters");
  for (const auto& p : c.params) {
    if (!detail::finite(p)) throw DomainError(c.to_string() + ": non-finite parameter");
    if (c.field == Field::real && p.imag() != 0.0)
      throw DomainError(c.to_string() + ": real class with complex parameter");
  }
  if (c.params.size() == 2 && std::abs(1.0 - c.params[0] * c.params[1]) <= default_tolerance)
    throw ConstraintError("1-a2*a3 != 0", c.to_string());
}

inline StructureMatrix canonical_matrix(const AlgebraClass& c) {
  validate(c);
  Matrix m = Matrix::Zero(2, 2);
  switch (c.tag) {
    case ClassTag::E0: break;
    case ClassTag::E1: m << 1, 0, 0, 0; break;
    case ClassTag::E2: m << 1, 0, 1, 0; break;
    case ClassTag::E3: m << 1, 1, -1, -1; break;
    case ClassTag::E4: m << 0, 1, 0, 0; break;
    case ClassTag::E5:
      if (c.field == Field::real) m << 0, 1, 0, -1;
      else m << 1, c.params[0], c.params[1], 1;
      break;
    case ClassTag::E6:
      if (c.field == Field::real) m << 1, c.params[0], c.params[1], 1;
      else m << 0, 1, 1, c.params[0];
      break;
    case ClassTag::E7: m << 0, 1, 1, c.params[0]; break;
  }
  return StructureMatrix(m);
}

namespace detail {

// (re, im) lexicographic order with a relative tie tolerance on re.
inline bool lex_less(Scalar a, Scalar b, double scale) {
  const double tol = 1e-9 * std::max(1.0, scale);
  if (std::abs(a.real() - b.real()) > tol) return a.real() < b.real();
  return a.imag() < b.imag();
}

inline Scalar clean(Scalar z) {
  const double tol = 1e-13 * std::max(1.0, std::abs(z));
  double re = std::abs(z.real()) <= tol ? 0.0 : z.real();
  double im = std::abs(z.imag()) <= tol ? 0.0 : z.imag();
  return {re + 0.0, im + 0.0};
}

inline const Scalar omega{-0.5, 0.86602540378443864676};

}  // namespace detail

/// Lexicographically smallest representative of the parameter orbit:
/// swaps (a2, a3) for real E6 / complex E5, and rotates a4 by cube roots
/// of unity for complex E6.
inline AlgebraClass canonicalize(AlgebraClass c) {
  for (auto& p : c.params) p = detail::clean(p);
  if (c.params.size() == 2) {
    const double scale = std::max(std::abs(c.params[0]), std::abs(c.params[1]));
    if (detail::lex_less(c.params[1], c.params[0], scale)) std::swap(c.params[0], c.params[1]);
  } else if (c.field == Field::complex && c.tag == ClassTag::E6) {
    Scalar best = c.params[0];
    Scalar rot = c.params[0];
    for (int k = 1; k < 3; ++k) {
      rot = detail::clean(rot * detail::omega);
      if (detail::lex_less(rot, best, std::abs(best))) best = rot;
    }
    c.params[0] = best;
  }
  return c;
}

/// Invertible 2x2 basis change; |det T| <= 1e-12 is rejected.
class BasisChange {
 public:
  static constexpr double det_tolerance = 1e-12;

  explicit BasisChange(Matrix t) : t_(std::move(t)) {
    if (t_.rows() != 2 || t_.cols() != 2) throw DimensionError("basis change must be 2x2");
    detail::require_finite(t_, "basis change");
    if (std::abs(t_.determinant()) <= det_tolerance)
      throw DomainError("basis change is singular (|det| <= 1e-12)");
  }

  static BasisChange identity() { return BasisChange(Matrix::Identity(2, 2)); }

  const Matrix& matrix() const noexcept { return t_; }
  BasisChange inverse() const { return BasisChange(t_.inverse()); }

 private:
  Matrix t_;
};

namespace detail {

inline void require_dim2(const StructureMatrix& A, const char* what) {
  if (A.dim() != 2)
    throw DimensionError(std::string(what) + " requires a 2-dimensional algebra, got dimension " +
                         std::to_string(A.dim()));
}

}  // namespace detail

/// sum over i <= j of |e'_i e'_j - [i==j] sum_k b_ik e'_k|^2 computed in A.
inline double homomorphism_residual(const StructureMatrix& A, const StructureMatrix& B,
                                    const Matrix& T) {
  if (A.dim() != B.dim() || static_cast<std::size_t>(T.rows()) != A.dim() || T.rows() != T.cols())
    throw DimensionError("homomorphism_residual: dimension mismatch");
  const auto n = static_cast<Eigen::Index>(A.dim());
  const Matrix bt = B.matrix() * T;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      AlgebraElement d = multiply(A, T.row(i).transpose(), T.row(j).transpose());
      if (i == j) d -= bt.row(i).transpose();
      sum += d.squaredNorm();
    }
  return sum;
}

/// Magnitude of the terms entering homomorphism_residual, for scale-aware
/// acceptance.
inline double homomorphism_scale(const StructureMatrix& A, const StructureMatrix& B,
                                 const Matrix& T) {
  const double t = T.cwiseAbs().maxCoeff();
  const double a = A.matrix().cwiseAbs().maxCoeff();
  const double b = B.matrix().cwiseAbs().maxCoeff();
  const double n = static_cast<double>(A.dim());
  return n * (t * t * a + b * t);
}

/// Squared-residual acceptance used for every witness: 1e-18, relative to
/// the squared term magnitude when that exceeds one.
inline bool accept_witness(const StructureMatrix& A, const StructureMatrix& B, const Matrix& T,
                           double tol_sq = 1e-18) {
  const double s = std::max(1.0, homomorphism_scale(A, B, T));
  return homomorphism_residual(A, B, T) < tol_sq * s * s;
}

/// Table of A in the basis e' = T e. Only meaningful when e' is again a
/// natural basis (e.g. T = diagonal times permutation); otherwise throws.
inline StructureMatrix change_basis(const StructureMatrix& A, const BasisChange& T) {
  const Matrix& t = T.matrix();
  const auto n = static_cast<Eigen::Index>(A.dim());
  if (t.rows() != n) throw DimensionError("change_basis: dimension mismatch");
  const Matrix tinv = t.inverse();
  Matrix b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) {
        const auto off = multiply(A, t.row(i).transpose(), t.row(j).transpose());
        if (off.norm() > 1e-12 * std::max(1.0, A.matrix().norm() * t.squaredNorm()))
          throw DomainError("change_basis: new basis is not a natural basis");
      }
    b.row(i) = multiply(A, t.row(i).transpose(), t.row(i).transpose()).transpose() * tinv;
  }
  return StructureMatrix(b);
}

struct E4Shape {
  bool matched = false;
  int shape = 0;  // 1: [[0,beta],[0,0]], 2: [[0,0],[gamma,0]]
  Scalar entry{};
};

/// E4 criterion: the designated zeros must be exactly zero and the
/// remaining entry must exceed `tol` in modulus.
inline E4Shape is_E4_shape(const StructureMatrix& A, double tol = default_tolerance) {
  detail::require_dim2(A, "is_E4_shape");
  const Matrix& a = A.matrix();
  const Scalar z{};
  if (a(0, 0) == z && a(1, 0) == z && a(1, 1) == z && std::abs(a(0, 1)) > tol)
    return {true, 1, a(0, 1)};
  if (a(0, 0) == z && a(0, 1) == z && a(1, 1) == z && std::abs(a(1, 0)) > tol)
    return {true, 2, a(1, 0)};
  return {};
}

struct SearchOptions {
  int starts = 200;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  int chunk = 16;          // starts per deterministic reduction round
  double tol_sq = 1e-18;   // acceptance on the squared residual
};

namespace detail {

// Real unknowns: complex field uses [Re T (row-major), Im T], real uses Re T.
inline Matrix unpack_t(const Eigen::VectorXd& x, Field f) {
  Matrix t(2, 2);
  for (int k = 0; k < 4; ++k)
    t(k / 2, k % 2) = f == Field::complex ? Scalar(x(k), x(4 + k)) : Scalar(x(k), 0.0);
  return t;
}

inline constexpr double det_barrier = 1e-8;

struct HomProblem {
  const Matrix& a;
  const Matrix& b;
  Field field;

  // Complex residual r_{ij,k} for i<=j, then the hinge term.
  Eigen::VectorXcd complex_residual(const Matrix& t) const {
    Eigen::VectorXcd r(6);
    int row = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          Scalar v{};
          for (int m = 0; m < 2; ++m) v += t(i, m) * t(j, m) * a(m, k);
          if (i == j)
            for (int m = 0; m < 2; ++m) v -= b(i, m) * t(m, k);
          r(row++) = v;
        }
    return r;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    const Matrix t = unpack_t(x, field);
    const Eigen::VectorXcd r = complex_residual(t);
    const bool cx = field == Field::complex;
    Eigen::VectorXd out(cx ? 13 : 7);
    for (int k = 0; k < 6; ++k) {
      out(k) = r(k).real();
      if (cx) out(6 + k) = r(k).imag();
    }
    const double det = std::abs(t.determinant());
    out(out.size() - 1) = det < det_barrier ? (det_barrier - det) / det_barrier : 0.0;
    return out;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    const Matrix t = unpack_t(x, field);
    Eigen::MatrixXcd jc = Eigen::MatrixXcd::Zero(6, 4);
    int row = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j)
        for (int k = 0; k < 2; ++k, ++row)
          for (int q = 0; q < 2; ++q) {
            // d/dT_pq of sum_m T_im T_jm a_mk - [i==j] sum_m b_im T_mk
            jc(row, i * 2 + q) += t(j, q) * a(q, k);
            jc(row, j * 2 + q) += t(i, q) * a(q, k);
            if (i == j) jc(row, q * 2 + k) -= b(i, q);
          }
    const bool cx = field == Field::complex;
    const int nx = cx ? 8 : 4;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(cx ? 13 : 7, nx);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 4; ++c) {
        J(r, c) = jc(r, c).real();
        if (cx) {
          J(r, 4 + c) = -jc(r, c).imag();
          J(6 + r, c) = jc(r, c).imag();
          J(6 + r, 4 + c) = jc(r, c).real();
        }
      }
    const Scalar det = t.determinant();
    const double ad = std::abs(det);
    if (ad < det_barrier && ad > 0) {
      const Scalar g[4] = {t(1, 1), -t(1, 0), -t(0, 1), t(0, 0)};  // d det / d T_pq
      const Scalar u = std::conj(det) / ad;
      const int last = static_cast<int>(J.rows()) - 1;
      for (int c = 0; c < 4; ++c) {
        J(last, c) = -(u * g[c]).real() / det_barrier;
        if (cx) J(last, 4 + c) = (u * g[c]).imag() / det_barrier;
      }
    }
    return J;
  }
};

}  // namespace detail

/// Multi-start damped least squares for a basis change T with A ~ B via T.
/// Starts come from a Halton sequence in [-3,3]^k offset by the seed and are
/// processed in fixed-size rounds; the lowest-residual accepted start wins,
/// ties going to the lower start index. nullopt means not found within the
/// budget (a numeric verdict, not a proof of non-isomorphism).
inline std::optional<BasisChange> find_isomorphism(const StructureMatrix& A,
                                                   const StructureMatrix& B,
                                                   Field field = Field::complex,
                                                   const SearchOptions& opt = {}) {
  detail::require_dim2(A, "find_isomorphism");
  detail::require_dim2(B, "find_isomorphism");
  if (field == Field::real && (!A.is_real() || !B.is_real()))
    throw DomainError("find_isomorphism: real field requires real structure constants");
  const detail::HomProblem prob{A.matrix(), B.matrix(), field};
  const int nx = field == Field::complex ? 8 : 4;
  const std::uint64_t offset = opt.seed * 1000003ULL;
  LmOptions lm;
  lm.max_iterations = 300;

  // The identity is tried before any start, so equal tables map trivially.
  if (accept_witness(A, B, Matrix::Identity(2, 2), opt.tol_sq)) return BasisChange::identity();

  std::optional<BasisChange> best;
  double best_res = std::numeric_limits<double>::infinity();
  const int chunk = std::max(1, opt.chunk);
  for (int first = 0; first < opt.starts && !best; first += chunk) {
    const int count = std::min(chunk, opt.starts - first);
    std::vector<std::optional<Matrix>> found(static_cast<std::size_t>(count));
    std::vector<double> res(static_cast<std::size_t>(count), std::numeric_limits<double>::infinity());
    parallel_for(static_cast<std::size_t>(count), opt.jobs, [&](std::size_t k) {
      Eigen::VectorXd x0(nx);
      const std::uint64_t index = offset + static_cast<std::uint64_t>(first) + k + 1;
      for (int d = 0; d < nx; ++d) x0(d) = -3.0 + 6.0 * halton(index, d);
      const auto r = levenberg_marquardt([&](const Eigen::VectorXd& x) { return prob.residual(x); },
                                         [&](const Eigen::VectorXd& x) { return prob.jacobian(x); },
                                         x0, lm);
      const Matrix t = detail::unpack_t(r.x, field);
      if (!t.allFinite() || std::abs(t.determinant()) <= BasisChange::det_tolerance) return;
      if (!accept_witness(A, B, t, opt.tol_sq)) return;
      found[k] = t;
      res[k] = homomorphism_residual(A, B, t);
    });
    for (int k = 0; k < count; ++k)
      if (found[static_cast<std::size_t>(k)] && res[static_cast<std::size_t>(k)] < best_res) {
        best_res = res[static_cast<std::size_t>(k)];
        best = BasisChange(*found[static_cast<std::size_t>(k)]);
      }
  }
  return best;
}

struct Classification {
  AlgebraClass cls;
  BasisChange witness = BasisChange::identity();  // A ~ canonical_matrix(cls) via witness
  bool numeric = false;                            // witness came from find_isomorphism
  double residual = 0.0;
};

struct ClassifyOptions {
  double tol = default_tolerance;
  SearchOptions search;
};

namespace detail {

inline Matrix rows2(Scalar a, Scalar b, Scalar c, Scalar d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

struct Candidate {
  AlgebraClass cls;
  Matrix t;
};

// dim A^2 = 1: rows alpha_i * w. Returns the closed-form class and witness.
inline Candidate classify_rank1(const Matrix& a, Field field, double tol) {
  const AlgebraElement r0 = a.row(0).transpose(), r1 = a.row(1).transpose();
  const bool zero0 = r0.cwiseAbs().maxCoeff() <= tol;
  const bool zero1 = r1.cwiseAbs().maxCoeff() <= tol;
  const auto cls = [field](ClassTag t) { return AlgebraClass{field, t, {}}; };

  if (zero0 || zero1) {
    const int k = zero0 ? 1 : 0;  // the nonzero row
    const AlgebraElement w = k == 0 ? r0 : r1;
    const Scalar c = w(k) * w(k);  // w.w = w_k^2 w
    if (std::abs(c) <= tol * w.squaredNorm())
      // e_k e_k = w and w w ~ 0: f1 = e_k, f2 = w.
      return {cls(ClassTag::E4), k == 0 ? rows2(1, 0, w(0), w(1)) : rows2(0, 1, w(0), w(1))};
    // f1 = w / c is idempotent, the other basis vector annihilates everything.
    return {cls(ClassTag::E1), k == 0 ? rows2(w(0) / c, w(1) / c, 0, 1)
                                      : rows2(w(0) / c, w(1) / c, 1, 0)};
  }

  const int big = r0.squaredNorm() >= r1.squaredNorm() ? 0 : 1;
  const AlgebraElement w = big == 0 ? r0 : r1;
  const AlgebraElement other = big == 0 ? r1 : r0;
  const Scalar ratio = w.dot(other) / w.squaredNorm();  // Eigen dot conjugates the left side
  const Scalar al[2] = {big == 0 ? Scalar(1) : ratio, big == 0 ? ratio : Scalar(1)};
  const Scalar c = al[0] * w(0) * w(0) + al[1] * w(1) * w(1);
  const double cscale = std::abs(al[0]) * std::norm(w(0)) + std::abs(al[1]) * std::norm(w(1));

  if (std::abs(c) <= tol * cscale) {
    // E3: f1 = m z + l u, f2 = u - f1 with B(f1,f1) = B(f1,u) = 1.
    auto B = [&](const AlgebraElement& x, const AlgebraElement& y) {
      return x(0) * y(0) * al[0] + x(1) * y(1) * al[1];
    };
    const int k = std::abs(w(0) * al[0]) >= std::abs(w(1) * al[1]) ? 0 : 1;
    const AlgebraElement z = basis_vector(2, static_cast<std::size_t>(k));
    const Scalar m = 1.0 / B(z, w);
    const Scalar l = (1.0 - m * m * B(z, z)) / 2.0;
    const AlgebraElement f1 = m * z + l * w;
    const AlgebraElement f2 = w - f1;
    return {cls(ClassTag::E3), rows2(f1(0), f1(1), f2(0), f2(1))};
  }

  const AlgebraElement u = w / c;
  const Scalar p = al[0] * al[1];
  const bool real_e5 = field == Field::real && p.real() < 0;
  // f = s (w2 alpha2, -w1 alpha1) satisfies f u = 0 and f f = s^2 alpha1 alpha2 c w.
  const Scalar s = std::sqrt((real_e5 ? -1.0 : 1.0) / (p * c * c));
  const Scalar g0 = s * w(1) * al[1], g1 = -s * w(0) * al[0];
  if (real_e5) return {cls(ClassTag::E5), rows2(g0, g1, -u(0), -u(1))};
  return {cls(ClassTag::E2), rows2(u(0), u(1), g0, g1)};
}

// dim A^2 = 2.
inline Candidate classify_rank2(const Matrix& a, Field field, double tol) {
  const Scalar p = a(0, 0), q = a(0, 1), r = a(1, 0), u = a(1, 1);
  if (std::abs(p) > tol && std::abs(u) > tol) {
    AlgebraClass c{field, field == Field::real ? ClassTag::E6 : ClassTag::E5,
                   {clean(q * u / (p * p)), clean(r * p / (u * u))}};
    Matrix t = rows2(1.0 / p, 0, 0, 1.0 / u);
    const AlgebraClass cc = canonicalize(c);
    if (cc.params != c.params) t = rows2(0, 1.0 / u, 1.0 / p, 0);
    return {cc, t};
  }
  // One diagonal entry vanishes (or both). Put the zero on e1 first.
  const bool swap = std::abs(p) > tol;
  const Scalar qq = swap ? r : q, rr = swap ? q : r, uu = swap ? p : u;
  // f1 = d1 e1, f2 = d2 e2 with d2 = d1^2 q, d1^3 = 1/(q^2 r), a4 = d2 u.
  const Scalar cube = 1.0 / (qq * qq * rr);
  Scalar d1;
  Scalar a4;
  if (field == Field::real) {
    d1 = std::cbrt(cube.real());
    a4 = clean(d1 * d1 * qq * uu);
  } else {
    const Scalar root = std::pow(cube, 1.0 / 3.0);
    Scalar w = 1.0;
    bool first = true;
    for (int k = 0; k < 3; ++k, w *= omega) {
      const Scalar cand_d1 = root * w;
      const Scalar cand_a4 = clean(cand_d1 * cand_d1 * qq * uu);
      if (first || lex_less(cand_a4, a4, std::abs(a4))) {
        d1 = cand_d1;
        a4 = cand_a4;
        first = false;
      }
    }
  }
  const Scalar d2 = d1 * d1 * qq;
  Matrix t = swap ? rows2(0, d1, d2, 0) : rows2(d1, 0, 0, d2);
  return {AlgebraClass{field, field == Field::real ? ClassTag::E7 : ClassTag::E6, {a4}}, t};
}

}  // namespace detail

/// Classifies a 2-dimensional evolution algebra and returns a verified
/// witness. Decision: zero matrix -> E0; rank of A (dim A^2); within rank 1
/// the zero-row pattern and the invariant c = sum alpha_i w_i^2 (E4 when a
/// row vanishes and c = 0); within rank 2 the diagonal pattern. Parameters
/// and witness are computed in closed form and confirmed by the
/// homomorphism residual; if that fails the numeric search is tried
/// against the candidate, and UnclassifiableError is raised last.
inline Classification classify_with_witness(const StructureMatrix& A, Field field,
                                            const ClassifyOptions& opt = {}) {
  detail::require_dim2(A, "classify");
  if (field == Field::real && !A.is_real())
    throw DomainError("classify: real field requires real structure constants");
  const Matrix& a = A.matrix();
  const double amax = a.cwiseAbs().maxCoeff();
  if (amax <= opt.tol) return {AlgebraClass{field, ClassTag::E0, {}}, BasisChange::identity(), false, 0.0};

  const Scalar det = a.determinant();
  const bool rank2 = std::abs(det) > opt.tol * amax * amax;
  detail::Candidate cand =
      rank2 ? detail::classify_rank2(a, field, opt.tol) : detail::classify_rank1(a, field, opt.tol);
  if (field == Field::real) cand.t = cand.t.real().cast<Scalar>();

  const StructureMatrix target = canonical_matrix(cand.cls);
  if (cand.t.allFinite() && std::abs(cand.t.determinant()) > BasisChange::det_tolerance &&
      accept_witness(A, target, cand.t, opt.search.tol_sq))
    return {cand.cls, BasisChange(cand.t), false, homomorphism_residual(A, target, cand.t)};

  if (auto t = find_isomorphism(A, target, field, opt.search))
    return {cand.cls, *t, true, homomorphism_residual(A, target, t->matrix())};
  throw UnclassifiableError("no canonical form matched within tolerance (candidate " +
                            cand.cls.to_string() + ")");
}

inline AlgebraClass classify(const StructureMatrix& A, Field field, const ClassifyOptions& opt = {}) {
  return classify_with_witness(A, field, opt).cls;
}

}  // namespace evoalg
