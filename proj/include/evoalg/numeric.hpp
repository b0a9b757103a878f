#pragma once

// Small numeric toolbox shared by the isomorphism search and the
// Rota-Baxter search: damped least squares, quasi-random starts, seeded
// uniform draws and a deterministic parallel map.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <random>
#include <thread>
#include <vector>

namespace evoalg {

struct LmOptions {
  int max_iterations = 200;
  double cost_tolerance = 1e-30;  // stop once ||F||^2 drops below this
  double step_tolerance = 1e-16;  // relative step size
  double initial_damping = 1e-3;
};

struct LmResult {
  Eigen::VectorXd x;
  double cost = 0.0;  // ||F(x)||^2
  int iterations = 0;
};

/// Levenberg-Marquardt on a real residual F: R^m -> R^k with Jacobian J.
/// Damping follows Nielsen's update rule.
template <class Residual, class Jacobian>
LmResult levenberg_marquardt(Residual&& residual, Jacobian&& jacobian, Eigen::VectorXd x,
                             const LmOptions& opt = {}) {
  Eigen::VectorXd r = residual(x);
  double cost = r.squaredNorm();
  double mu = -1.0;
  double nu = 2.0;
  int it = 0;
  for (; it < opt.max_iterations && cost > opt.cost_tolerance && std::isfinite(cost); ++it) {
    const Eigen::MatrixXd J = jacobian(x);
    const Eigen::MatrixXd H = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    if (mu < 0) mu = opt.initial_damping * std::max(1.0, H.diagonal().maxCoeff());
    bool improved = false;
    while (!improved) {
      Eigen::MatrixXd Hd = H;
      Hd.diagonal().array() += mu;
      const Eigen::VectorXd dx = Hd.ldlt().solve(-g);
      if (!dx.allFinite()) {
        mu *= nu;
        nu *= 2;
        if (mu > 1e300) return {x, cost, it};
        continue;
      }
      if (dx.norm() <= opt.step_tolerance * (x.norm() + opt.step_tolerance))
        return {x, cost, it};
      const Eigen::VectorXd xn = x + dx;
      const Eigen::VectorXd rn = residual(xn);
      const double cn = rn.squaredNorm();
      const double predicted = dx.dot(mu * dx - g);
      const double rho = predicted > 0 ? (cost - cn) / predicted : -1.0;
      if (std::isfinite(cn) && cn < cost && rho > 0) {
        x = xn;
        r = rn;
        cost = cn;
        mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
        nu = 2.0;
        improved = true;
      } else {
        mu *= nu;
        nu *= 2;
        if (mu > 1e300) return {x, cost, it};
      }
    }
  }
  return {x, cost, it};
}

/// Central finite-difference Jacobian of a real vector function.
template <class F>
Eigen::MatrixXd central_difference_jacobian(F&& f, const Eigen::VectorXd& x, double h = 1e-6) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd J(f0.size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Eigen::VectorXd xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    J.col(k) = (f(xp) - f(xm)) / (2 * h);
  }
  return J;
}

/// Radical-inverse Halton point, component `dim` of point `index`.
inline double halton(std::uint64_t index, int dim) {
  static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  const std::uint64_t base = static_cast<std::uint64_t>(primes[dim % 16]);
  double f = 1.0, out = 0.0;
  for (std::uint64_t i = index; i > 0; i /= base) {
    f /= static_cast<double>(base);
    out += f * static_cast<double>(i % base);
  }
  return out;
}

/// Seeded generator with uniform draws that do not depend on the standard
/// library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results must be
/// written by index, so the outcome does not depend on scheduling. The
/// first exception (by index) is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(n));
  for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace evoalg
