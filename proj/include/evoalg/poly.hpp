#pragma once

// Sparse multivariate polynomials with complex coefficients, and the
// expansion of the Rota-Baxter identity into polynomial equations in the
// operator entries r_ij.
//
// Variables are named a, b, c, d for a 2x2 operator and r11 ... rnn
// otherwise; x and y are reserved for symbolic algebra parameters.

#include "evoalg/core.hpp"
#include "evoalg/error.hpp"
#include "evoalg/format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evoalg {

class VariableSet {
 public:
  explicit VariableSet(std::size_t n) : n_(n) {
    if (n == 0) throw DimensionError("variable set needs n >= 1");
    if (n == 2) {
      names_ = {"a", "b", "c", "d"};
    } else {
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
          names_.push_back("r" + std::to_string(i) + std::to_string(j));
    }
    names_.push_back("x");
    names_.push_back("y");
  }

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t k) const { return names_.at(k); }
  std::size_t entry(std::size_t i, std::size_t j) const { return i * n_ + j; }
  std::size_t x() const noexcept { return n_ * n_; }
  std::size_t y() const noexcept { return n_ * n_ + 1; }

  std::optional<std::size_t> find(std::string_view s) const {
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k] == s) return k;
    return std::nullopt;
  }

  bool operator==(const VariableSet& o) const { return n_ == o.n_; }

 private:
  std::size_t n_;
  std::vector<std::string> names_;
};

using Monomial = std::vector<int>;

namespace detail {

inline int degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// Graded order, ties by exponent of the first variable, then the second...
struct MonomialOrder {
  bool operator()(const Monomial& p, const Monomial& q) const {
    const int dp = degree(p), dq = degree(q);
    if (dp != dq) return dp > dq;
    return p > q;
  }
};

}  // namespace detail

class Poly {
 public:
  using Terms = std::map<Monomial, Scalar, detail::MonomialOrder>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, Scalar c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }

  static Poly variable(std::size_t nvars, std::size_t k) {
    Monomial m(nvars, 0);
    m.at(k) = 1;
    Poly p(nvars);
    p.add_term(m, 1.0);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Monomial& m, Scalar c) {
    if (m.size() != nvars_) throw DimensionError("monomial length does not match polynomial");
    if (c == Scalar{}) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == Scalar{}) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(Scalar s) {
    if (s == Scalar{}) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator-(Poly p) { return p *= -1.0; }
  friend Poly operator*(Poly p, Scalar s) { return p *= s; }
  friend Poly operator*(Scalar s, Poly p) { return p *= s; }

  friend Poly operator*(const Poly& p, const Poly& q) {
    p.check(q);
    Poly out(p.nvars_);
    for (const auto& [mp, cp] : p.terms_)
      for (const auto& [mq, cq] : q.terms_) {
        Monomial m(p.nvars_);
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = mp[k] + mq[k];
        out.add_term(m, cp * cq);
      }
    return out;
  }

  Poly pow(int e) const {
    if (e < 0) throw DomainError("negative polynomial exponent");
    Poly out = constant(nvars_, 1.0);
    for (int k = 0; k < e; ++k) out = out * *this;
    return out;
  }

  Scalar eval(const std::vector<Scalar>& values) const {
    if (values.size() != nvars_) throw DimensionError("polynomial evaluated at wrong arity");
    Scalar sum{};
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (std::size_t k = 0; k < nvars_; ++k)
        for (int e = 0; e < m[k]; ++e) t *= values[k];
      sum += t;
    }
    return sum;
  }

  double max_coefficient() const {
    double m = 0.0;
    for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Drops coefficients below tol relative to the largest one.
  Poly chopped(double tol = 1e-13) const {
    Poly out(nvars_);
    const double cut = tol * max_coefficient();
    for (const auto& [m, c] : terms_)
      if (std::abs(c) > cut) out.terms_.emplace(m, c);
    return out;
  }

  /// Scaled so the leading coefficient is 1.
  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (1.0 / terms_.begin()->second);
  }

  /// Scaled by -1 if needed so the leading coefficient is "positive"
  /// (positive real part, or zero real part and positive imaginary part).
  Poly sign_normalized() const {
    if (is_zero()) return *this;
    const Scalar c = terms_.begin()->second;
    const bool negative = c.real() < 0 || (c.real() == 0 && c.imag() < 0);
    return negative ? -*this : *this;
  }

  bool approx_equal(const Poly& o, double tol = 1e-12) const {
    check(o);
    const double scale = std::max({1.0, max_coefficient(), o.max_coefficient()});
    return (*this - o).max_coefficient() <= tol * scale;
  }

  std::string to_string(const VariableSet& vars) const {
    if (vars.size() != nvars_) throw DimensionError("variable set does not match polynomial");
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string factors;
      for (std::size_t k = 0; k < nvars_; ++k) {
        if (m[k] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += vars.name(k);
        if (m[k] > 1) factors += "^" + std::to_string(m[k]);
      }
      std::string coef;
      bool neg = false;
      if (c.imag() == 0.0) {
        neg = c.real() < 0;
        const double v = std::abs(c.real());
        if (v != 1.0 || factors.empty()) coef = format_double(v);
      } else {
        coef = "(" + format_complex(c) + ")";
      }
      std::string term = coef;
      if (!coef.empty() && !factors.empty()) term += "*";
      term += factors;
      if (first) {
        out = (neg ? "-" : "") + term;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + term;
      }
    }
    return out;
  }

 private:
  void check(const Poly& o) const {
    if (o.nvars_ != nvars_) throw DimensionError("polynomials over different variable sets");
  }

  std::size_t nvars_;
  Terms terms_;
};

namespace detail {

// Recursive descent over + - * ^ ( ), integer or decimal numbers, the
// variables of `vars` and the imaginary unit i (when not a variable name).
class PolyParser {
 public:
  PolyParser(std::string_view text, const VariableSet& vars) : s_(text), vars_(vars) {}

  Poly parse_expression() {
    Poly p = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

  std::pair<Poly, Poly> parse_equation() {
    Poly lhs = sum();
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '=') fail("expected '='");
    ++pos_;
    Poly rhs = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return {std::move(lhs), std::move(rhs)};
  }

 private:
  [[noreturn]] void fail(const std::string& msg,
                         ParseError::Kind kind = ParseError::Kind::syntax) const {
    throw ParseError(kind, pos_, msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly sum() {
    Poly p = product();
    for (;;) {
      if (eat('+')) p += product();
      else if (eat('-')) p -= product();
      else return p;
    }
  }

  Poly product() {
    Poly p = unary();
    while (eat('*')) p = p * unary();
    return p;
  }

  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      return base.pow(std::stoi(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = sum();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      auto v = parse_double(s_.substr(start, pos_ - start));
      if (!v) {
        pos_ = start;
        fail("malformed number");
      }
      return Poly::constant(vars_.size(), *v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view id = s_.substr(start, pos_ - start);
      if (auto k = vars_.find(id)) return Poly::variable(vars_.size(), *k);
      if (id == "i") return Poly::constant(vars_.size(), Scalar(0, 1));
      pos_ = start;
      fail("unknown identifier '" + std::string(id) + "'", ParseError::Kind::unknown_identifier);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const VariableSet& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, const VariableSet& vars) {
  return detail::PolyParser(text, vars).parse_expression();
}

/// Parses "lhs = rhs".
inline std::pair<Poly, Poly> parse_poly_equation(std::string_view text, const VariableSet& vars) {
  return detail::PolyParser(text, vars).parse_equation();
}

/// Structure matrix whose entries may contain the parameters x, y.
using PolyMatrix = std::vector<std::vector<Poly>>;

inline PolyMatrix to_poly_matrix(const StructureMatrix& A, const VariableSet& vars) {
  const std::size_t n = A.dim();
  PolyMatrix m(n, std::vector<Poly>(n, Poly(vars.size())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = Poly::constant(vars.size(), A(i, j));
  return m;
}

/// One coordinate of the identity at the basis pair (e_i, e_j), i <= j.
struct PolyEquation {
  std::size_t i = 0, j = 0, l = 0;
  Poly lhs, rhs;

  Poly difference() const { return lhs - rhs; }
};

enum class DropReason { vacuous, tautology, duplicate };

inline std::string to_string(DropReason r) {
  switch (r) {
    case DropReason::vacuous: return "vacuous";
    case DropReason::tautology: return "tautology";
    case DropReason::duplicate: return "duplicate";
  }
  return "?";
}

struct DroppedEquation {
  PolyEquation equation;
  DropReason reason;
};

struct PolySystem {
  VariableSet vars{2};
  std::vector<PolyEquation> equations;  // kept, in (i, j, l) order
  std::vector<DroppedEquation> dropped;

  std::vector<Poly> normalized() const {
    std::vector<Poly> out;
    for (const auto& e : equations) out.push_back(e.difference().monic());
    return out;
  }

  /// "p = 0" with the leading coefficient made positive, e.g. "2*a*b = 0".
  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    for (const auto& e : equations)
      out.push_back(e.difference().sign_normalized().to_string(vars) + " = 0");
    return out;
  }

  /// One line per dropped equation, e.g. "tautology (e1,e2)[1]: a*c = a*c".
  std::vector<std::string> log() const {
    std::vector<std::string> out;
    for (const auto& d : dropped) {
      const auto& e = d.equation;
      out.push_back(to_string(d.reason) + " (e" + std::to_string(e.i + 1) + ",e" +
                    std::to_string(e.j + 1) + ")[" + std::to_string(e.l + 1) +
                    "]: " + e.lhs.to_string(vars) + " = " + e.rhs.to_string(vars));
    }
    return out;
  }
};

/// Expands P(e_i)P(e_j) = P(e_i P(e_j) + P(e_i) e_j + lambda e_i e_j) for all
/// i <= j into n coordinates each. With e_k e_k = sum_l a_kl e_l:
///   P(e_i)P(e_j) = sum_k r_ik r_jk e_k^2,   e_i P(e_j) = r_ji e_i^2.
/// Coordinates with both sides zero are dropped as vacuous, identical sides
/// as tautologies, and repeats (after scaling) as duplicates.
inline PolySystem derive_system(const PolyMatrix& A, Weight w) {
  const std::size_t n = A.size();
  for (const auto& row : A)
    if (row.size() != n) throw DimensionError("symbolic structure matrix must be square");
  PolySystem sys{VariableSet(n == 0 ? 1 : n), {}, {}};
  if (n == 0) return sys;
  const VariableSet& vars = sys.vars;
  const std::size_t nv = vars.size();
  auto r = [&](std::size_t i, std::size_t j) { return Poly::variable(nv, vars.entry(i, j)); };
  const Scalar lambda = weight_value(w);

  std::vector<Poly> normalized;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // u = e_i P(e_j) + P(e_i) e_j + lambda e_i e_j, as coordinates
      std::vector<Poly> u(n, Poly(nv));
      for (std::size_t m = 0; m < n; ++m) {
        u[m] += r(j, i) * A[i][m];
        u[m] += r(i, j) * A[j][m];
        if (i == j) u[m] += A[i][m] * lambda;
      }
      for (std::size_t l = 0; l < n; ++l) {
        PolyEquation eq{i, j, l, Poly(nv), Poly(nv)};
        for (std::size_t k = 0; k < n; ++k) eq.lhs += r(i, k) * r(j, k) * A[k][l];
        for (std::size_t m = 0; m < n; ++m) eq.rhs += u[m] * r(m, l);
        eq.lhs = eq.lhs.chopped();
        eq.rhs = eq.rhs.chopped();
        const Poly diff = eq.difference().chopped(1e-12);
        if (diff.is_zero()) {
          const auto why = eq.lhs.is_zero() && eq.rhs.is_zero() ? DropReason::vacuous
                                                                : DropReason::tautology;
          sys.dropped.push_back({std::move(eq), why});
          continue;
        }
        const Poly key = diff.monic();
        const bool repeat = std::any_of(normalized.begin(), normalized.end(),
                                        [&](const Poly& p) { return p.approx_equal(key); });
        if (repeat) {
          sys.dropped.push_back({std::move(eq), DropReason::duplicate});
          continue;
        }
        normalized.push_back(key);
        sys.equations.push_back(std::move(eq));
      }
    }
  return sys;
}

inline PolySystem derive_system(const StructureMatrix& A, Weight w) {
  return derive_system(to_poly_matrix(A, VariableSet(A.dim())), w);
}

/// Values vector for Poly::eval: entries of R, then x, y.
inline std::vector<Scalar> poly_point(const Matrix& R, Scalar x = 0.0, Scalar y = 0.0) {
  std::vector<Scalar> v;
  for (Eigen::Index i = 0; i < R.rows(); ++i)
    for (Eigen::Index j = 0; j < R.cols(); ++j) v.push_back(R(i, j));
  v.push_back(x);
  v.push_back(y);
  return v;
}

/// Set equality of two normalized systems, up to order and coefficient
/// rounding. Both inputs are assumed to be monic.
inline bool same_system(const std::vector<Poly>& p, const std::vector<Poly>& q,
                        double tol = 1e-12) {
  auto covered = [tol](const std::vector<Poly>& from, const std::vector<Poly>& in) {
    return std::all_of(from.begin(), from.end(), [&](const Poly& a) {
      return std::any_of(in.begin(), in.end(), [&](const Poly& b) { return a.approx_equal(b, tol); });
    });
  };
  return covered(p, q) && covered(q, p);
}

}  // namespace evoalg
