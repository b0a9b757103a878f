#pragma once

#include <evoalg/core.hpp>
#include <evoalg/numeric.hpp>

#include "oracle.hpp"

namespace testutil {

inline evoalg::Matrix random_matrix(evoalg::Rng& rng, Eigen::Index n, double box = 2.0) {
  evoalg::Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = {rng.uniform(-box, box), rng.uniform(-box, box)};
  return m;
}

inline evoalg::AlgebraElement random_vector(evoalg::Rng& rng, Eigen::Index n) {
  evoalg::AlgebraElement v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
  return v;
}

inline oracle::Mat to_oracle(const evoalg::Matrix& m) {
  oracle::Mat out(static_cast<std::size_t>(m.rows()), oracle::Vec(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

inline evoalg::Matrix mat2(evoalg::Scalar a, evoalg::Scalar b, evoalg::Scalar c, evoalg::Scalar d) {
  evoalg::Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace testutil
