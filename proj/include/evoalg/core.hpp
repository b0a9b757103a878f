#pragma once

// Evolution algebras over R or C given by their structure matrix, and the
// Rota-Baxter identity evaluated on the natural basis.
//
// An evolution algebra with natural basis e_1..e_n has
//   e_i * e_i = sum_k a_ik e_k,   e_i * e_j = 0 (i != j),
// so for coordinate vectors (x * y)_k = sum_i x_i y_i a_ik.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "evoalg/error.hpp"

namespace evoalg {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using AlgebraElement = Eigen::VectorXcd;

inline constexpr double default_tolerance = 1e-9;

enum class Field { real, complex };

inline std::string to_string(Field f) { return f == Field::real ? "real" : "complex"; }

namespace detail {

inline bool finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(const Matrix& m, const char* what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!finite(m(i, j)))
        throw DomainError(std::string(what) + ": non-finite entry at (" + std::to_string(i + 1) +
                          "," + std::to_string(j + 1) + ")");
}

inline Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw DimensionError("matrix rows must all have length " + std::to_string(n));
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace detail

/// Square matrix of structure constants a_ij, dimension >= 1, finite entries.
class StructureMatrix {
 public:
  explicit StructureMatrix(Matrix a) : a_(std::move(a)) {
    if (a_.rows() < 1 || a_.rows() != a_.cols())
      throw DimensionError("structure matrix must be square with dimension >= 1, got " +
                           std::to_string(a_.rows()) + "x" + std::to_string(a_.cols()));
    detail::require_finite(a_, "structure matrix");
  }

  StructureMatrix(std::initializer_list<std::initializer_list<Scalar>> rows)
      : StructureMatrix(detail::from_rows(rows)) {}

  static StructureMatrix zero(std::size_t n) {
    return StructureMatrix(Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(a_.rows()); }
  Scalar operator()(std::size_t i, std::size_t j) const {
    return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& matrix() const noexcept { return a_; }

  bool is_real() const {
    return (a_.array().imag() == 0.0).all();
  }

  friend bool operator==(const StructureMatrix& l, const StructureMatrix& r) {
    return l.a_.rows() == r.a_.rows() && l.a_ == r.a_;
  }

 private:
  Matrix a_;
};

inline AlgebraElement basis_vector(std::size_t n, std::size_t i) {
  AlgebraElement e = AlgebraElement::Zero(static_cast<Eigen::Index>(n));
  e(static_cast<Eigen::Index>(i)) = 1.0;
  return e;
}

/// Bilinear evolution-algebra product. Exactly commutative: each
/// coordinate product is symmetrized before accumulation.
inline AlgebraElement multiply(const StructureMatrix& A, const AlgebraElement& x,
                               const AlgebraElement& y) {
  const auto n = static_cast<Eigen::Index>(A.dim());
  if (x.size() != n || y.size() != n)
    throw DimensionError("multiply: element length " + std::to_string(x.size()) + "/" +
                         std::to_string(y.size()) + " does not match algebra dimension " +
                         std::to_string(n));
  const Matrix& a = A.matrix();
  AlgebraElement out = AlgebraElement::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar p = 0.5 * (x(i) * y(i) + y(i) * x(i));
    if (p == Scalar{}) continue;
    for (Eigen::Index k = 0; k < n; ++k) out(k) += p * a(i, k);
  }
  return out;
}

enum class Weight { zero = 0, one = 1 };

inline Scalar weight_value(Weight w) { return w == Weight::one ? 1.0 : 0.0; }
inline std::string to_string(Weight w) { return w == Weight::one ? "1" : "0"; }

/// Linear map P(e_i) = sum_j r_ij e_j together with its weight. Only
/// weights 0 and 1 are represented: any nonzero weight lambda reduces to 1
/// by rescaling P with 1/lambda.
class RotaBaxterOperator {
 public:
  RotaBaxterOperator(Matrix r, Weight w) : r_(std::move(r)), w_(w) {
    if (r_.rows() < 1 || r_.rows() != r_.cols())
      throw DimensionError("operator matrix must be square");
    detail::require_finite(r_, "operator matrix");
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(r_.rows()); }
  const Matrix& matrix() const noexcept { return r_; }
  Weight weight() const noexcept { return w_; }

  AlgebraElement apply(const AlgebraElement& x) const {
    if (x.size() != r_.rows()) throw DimensionError("operator applied to element of wrong length");
    return r_.transpose() * x;
  }

 private:
  Matrix r_;
  Weight w_;
};

/// LHS - RHS of P(e_i)P(e_j) = P(e_i P(e_j) + P(e_i) e_j + lambda e_i e_j)
/// for every basis pair, stored as coordinates k = 1..n.
class RbResidual {
 public:
  explicit RbResidual(std::size_t n) : n_(n), data_(n * n * n) {}

  std::size_t dim() const noexcept { return n_; }
  Scalar& at(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  Scalar at(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }

  AlgebraElement entry(std::size_t i, std::size_t j) const {
    AlgebraElement v(static_cast<Eigen::Index>(n_));
    for (std::size_t k = 0; k < n_; ++k) v(static_cast<Eigen::Index>(k)) = at(i, j, k);
    return v;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

 private:
  std::size_t n_;
  std::vector<Scalar> data_;
};

namespace detail {

inline void require_same_dim(const StructureMatrix& A, const Matrix& R) {
  if (R.rows() != R.cols() || static_cast<std::size_t>(R.rows()) != A.dim())
    throw DimensionError("operator dimension " + std::to_string(R.rows()) +
                         " does not match algebra dimension " + std::to_string(A.dim()));
}

// Residual coordinate (i,j,l); pairs are only ever evaluated with i <= j.
inline Scalar rb_coordinate(const Matrix& a, const Matrix& r, Scalar lambda, Eigen::Index i,
                            Eigen::Index j, Eigen::Index l) {
  const Eigen::Index n = a.rows();
  Scalar lhs{};
  for (Eigen::Index k = 0; k < n; ++k) lhs += r(i, k) * r(j, k) * a(k, l);
  // e_i P(e_j) + P(e_i) e_j + lambda e_i e_j = r_ji A_i + r_ij A_j + [i==j] lambda A_i
  Scalar rhs{};
  for (Eigen::Index m = 0; m < n; ++m) {
    Scalar v = r(j, i) * a(i, m) + r(i, j) * a(j, m);
    if (i == j) v += lambda * a(i, m);
    rhs += v * r(m, l);
  }
  return lhs - rhs;
}

}  // namespace detail

/// Residual of the Rota-Baxter identity for an arbitrary weight lambda.
/// Pairs are evaluated for i <= j and mirrored, so the result is exactly
/// symmetric in (i, j).
inline RbResidual rb_residual(const StructureMatrix& A, const Matrix& R, Scalar lambda) {
  detail::require_same_dim(A, R);
  detail::require_finite(R, "operator matrix");
  const auto n = static_cast<Eigen::Index>(A.dim());
  const Matrix& a = A.matrix();
  RbResidual out(A.dim());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      for (Eigen::Index l = 0; l < n; ++l) {
        const Scalar v = detail::rb_coordinate(a, R, lambda, i, j, l);
        out.at(i, j, l) = v;
        out.at(j, i, l) = v;
      }
  return out;
}

inline RbResidual rb_residual(const StructureMatrix& A, const RotaBaxterOperator& P) {
  return rb_residual(A, P.matrix(), weight_value(P.weight()));
}

/// Max-norm of the residual; zero iff P satisfies the identity exactly.
inline double rb_residual_norm(const StructureMatrix& A, const RotaBaxterOperator& P) {
  return rb_residual(A, P).max_abs();
}

inline double rb_residual_norm(const StructureMatrix& A, const Matrix& R, Scalar lambda) {
  return rb_residual(A, R, lambda).max_abs();
}

/// Magnitude of the largest term entering any residual coordinate. Used to
/// turn an absolute tolerance into a floating-point-aware one.
inline double rb_residual_scale(const StructureMatrix& A, const Matrix& R, Scalar lambda) {
  detail::require_same_dim(A, R);
  const auto n = static_cast<Eigen::Index>(A.dim());
  const Matrix& a = A.matrix();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      for (Eigen::Index l = 0; l < n; ++l) {
        double s = 0.0;
        for (Eigen::Index k = 0; k < n; ++k)
          s += std::abs(R(i, k)) * std::abs(R(j, k)) * std::abs(a(k, l));
        for (Eigen::Index m = 0; m < n; ++m) {
          double v = std::abs(R(j, i)) * std::abs(a(i, m)) + std::abs(R(i, j)) * std::abs(a(j, m));
          if (i == j) v += std::abs(lambda) * std::abs(a(i, m));
          s += v * std::abs(R(m, l));
        }
        scale = std::max(scale, s);
      }
  return scale;
}

/// Flattened residual over pairs i <= j (row-major), coordinates l = 1..n.
/// This is the equation order used by the polynomial-system generator and
/// the numeric search.
inline Eigen::VectorXcd rb_residual_vector(const StructureMatrix& A, const Matrix& R,
                                           Scalar lambda) {
  detail::require_same_dim(A, R);
  const auto n = static_cast<Eigen::Index>(A.dim());
  Eigen::VectorXcd out(n * (n + 1) / 2 * n);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      for (Eigen::Index l = 0; l < n; ++l)
        out(row++) = detail::rb_coordinate(A.matrix(), R, lambda, i, j, l);
  return out;
}

/// Analytic complex Jacobian of rb_residual_vector with respect to the
/// entries r_pq (column index p*n + q). The residual is a polynomial in
/// the r_pq, so this is also the holomorphic derivative.
inline Eigen::MatrixXcd rb_jacobian(const StructureMatrix& A, const Matrix& R, Scalar lambda) {
  detail::require_same_dim(A, R);
  const auto n = static_cast<Eigen::Index>(A.dim());
  const Matrix& a = A.matrix();
  const Matrix ar = a * R;  // row i of A times R = (A_i R)
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n * (n + 1) / 2 * n, n * n);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      // v = r_ji A_i + r_ij A_j + [i==j] lambda A_i
      Eigen::VectorXcd v(n);
      for (Eigen::Index m = 0; m < n; ++m) {
        v(m) = R(j, i) * a(i, m) + R(i, j) * a(j, m);
        if (i == j) v(m) += lambda * a(i, m);
      }
      for (Eigen::Index l = 0; l < n; ++l, ++row) {
        // d LHS / d r_pq = [p==i] r_jq a_ql + [p==j] r_iq a_ql
        for (Eigen::Index q = 0; q < n; ++q) {
          J(row, i * n + q) += R(j, q) * a(q, l);
          J(row, j * n + q) += R(i, q) * a(q, l);
        }
        // d RHS / d r_pq = [p==j,q==i] (A_i R)_l + [p==i,q==j] (A_j R)_l + [q==l] v_p
        J(row, j * n + i) -= ar(i, l);
        J(row, i * n + j) -= ar(j, l);
        for (Eigen::Index p = 0; p < n; ++p) J(row, p * n + l) -= v(p);
      }
    }
  return J;
}

}  // namespace evoalg
