#pragma once

// Independent reference evaluators used only by the tests. They expand the
// definitions directly (full structure tensor, every ordered basis pair) and
// share no code with the library beyond the Scalar type.

#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = std::vector<std::vector<C>>;

// Structure tensor of an evolution algebra: c[i][j][k] = [i==j] a_ik.
inline std::vector<Mat> tensor(const Mat& a) {
  const std::size_t n = a.size();
  std::vector<Mat> c(n, Mat(n, Vec(n, 0.0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) c[i][i][k] = a[i][k];
  return c;
}

inline Vec product(const std::vector<Mat>& c, const Vec& x, const Vec& y) {
  const std::size_t n = x.size();
  Vec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[k] += x[i] * y[j] * c[i][j][k];
  return out;
}

// P(e_i) = sum_j r_ij e_j, extended linearly.
inline Vec map(const Mat& r, const Vec& x) {
  const std::size_t n = x.size();
  Vec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j] += x[i] * r[i][j];
  return out;
}

inline Vec unit(std::size_t n, std::size_t i) {
  Vec e(n, 0.0);
  e[i] = 1.0;
  return e;
}

// P(x)P(y) - P(x P(y) + P(x) y + lambda x y) at x = e_i, y = e_j.
inline Vec rb_entry(const Mat& a, const Mat& r, C lambda, std::size_t i, std::size_t j) {
  const std::size_t n = a.size();
  const auto c = tensor(a);
  const Vec ei = unit(n, i), ej = unit(n, j);
  const Vec pi = map(r, ei), pj = map(r, ej);
  const Vec lhs = product(c, pi, pj);
  const Vec t1 = product(c, ei, pj);
  const Vec t2 = product(c, pi, ej);
  const Vec t3 = product(c, ei, ej);
  Vec inner(n);
  for (std::size_t k = 0; k < n; ++k) inner[k] = t1[k] + t2[k] + lambda * t3[k];
  const Vec rhs = map(r, inner);
  Vec out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = lhs[k] - rhs[k];
  return out;
}

}  // namespace oracle
