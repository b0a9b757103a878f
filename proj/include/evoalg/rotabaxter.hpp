#pragma once

// Rota-Baxter operators of weight 0 and 1 on the canonical 2-dimensional
// complex evolution algebras: the solution catalog, a sampling verifier,
// the record of rejected candidates, and a multi-start numeric search.
//
// Conventions: P(e_i) = sum_j r_ij e_j, R = [[a, b], [c, d]];
// E5(x,y) = [[1, x], [y, 1]] and E6(x) = [[0, 1], [1, x]].

#include "evoalg/classify2d.hpp"
#include "evoalg/core.hpp"
#include "evoalg/error.hpp"
#include "evoalg/format.hpp"
#include "evoalg/numeric.hpp"
#include "evoalg/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace evoalg {

using Params = std::vector<Scalar>;

struct RboInstance {
  Matrix A;  // structure matrix of the algebra
  Matrix R;  // operator
};

/// One printed matrix template, possibly depending on free parameters
/// (operator entries and/or algebra parameters).
struct RboFamily {
  std::string id;
  Weight weight = Weight::zero;
  ClassTag tag = ClassTag::E1;
  std::string algebra;     // e.g. "E5(0,y)"
  std::string matrix;      // template as text
  std::string conditions;  // side conditions as text, "none" if absent
  std::string row;         // which table row it transcribes
  std::vector<std::string> params;
  std::function<RboInstance(const Params&)> instance;
  std::function<bool(const Params&, double margin)> admissible;  // empty: always
  std::function<Params(const Params&)> constraints;  // equations the params must solve
  std::function<bool(const Matrix& B)> applies;      // empty: every algebra with this tag
  std::string note;                                  // set when the printed form was corrected

  bool isolated() const { return params.empty(); }
};

namespace detail {

inline Matrix m2(Scalar a, Scalar b, Scalar c, Scalar d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix alg_e1() { return m2(1, 0, 0, 0); }
inline Matrix alg_e2() { return m2(1, 0, 1, 0); }
inline Matrix alg_e3() { return m2(1, 1, -1, -1); }
inline Matrix alg_e4() { return m2(0, 1, 0, 0); }
inline Matrix alg_e5(Scalar x, Scalar y) { return m2(1, x, y, 1); }
inline Matrix alg_e6(Scalar x) { return m2(0, 1, 1, x); }

inline bool away(Scalar z, double margin) { return std::isfinite(std::abs(z)) && std::abs(z) >= margin; }
inline bool standing_e5(Scalar x, Scalar y, double margin) { return away(1.0 - x * y, margin); }
inline bool near(Scalar z, Scalar w) { return std::abs(z - w) <= 1e-12 * std::max(1.0, std::abs(w)); }

inline const Scalar I{0.0, 1.0};

inline Scalar w_minus() { return Scalar(-0.5, -std::sqrt(3.0) / 6.0); }  // (-3 - i sqrt3)/6
inline Scalar w_plus() { return Scalar(-0.5, std::sqrt(3.0) / 6.0); }   // (-3 + i sqrt3)/6
inline Scalar root6() { return std::polar(1.0, std::acos(-1.0) / 6.0); }  // e^{i pi/6}

struct FamilyBuilder {
  std::vector<RboFamily>& out;
  Weight w;

  RboFamily& add(std::string id, ClassTag tag, std::string algebra, std::string matrix,
                 std::vector<std::string> params, std::function<RboInstance(const Params&)> f,
                 std::string row) {
    RboFamily fam;
    fam.id = (w == Weight::zero ? "w0." : "w1.") + id;
    fam.weight = w;
    fam.tag = tag;
    fam.algebra = std::move(algebra);
    fam.matrix = std::move(matrix);
    fam.conditions = "none";
    fam.row = (w == Weight::zero ? "weight-0 table, row " : "weight-1 table, row ") + row;
    fam.params = std::move(params);
    fam.instance = std::move(f);
    out.push_back(std::move(fam));
    return out.back();
  }
};

inline std::vector<RboFamily> build_weight0() {
  std::vector<RboFamily> v;
  FamilyBuilder B{v, Weight::zero};
  using T = ClassTag;

  B.add("E1", T::E1, "E1", "[[0, b], [0, d]]", {"b", "d"},
        [](const Params& p) { return RboInstance{alg_e1(), m2(0, p[0], 0, p[1])}; }, "E1");

  B.add("E2.minus", T::E2, "E2", "[[0, 0], [c, -i*c]]", {"c"},
        [](const Params& p) { return RboInstance{alg_e2(), m2(0, 0, p[0], -I * p[0])}; }, "E2");
  B.add("E2.plus", T::E2, "E2", "[[0, 0], [c, i*c]]", {"c"},
        [](const Params& p) { return RboInstance{alg_e2(), m2(0, 0, p[0], I * p[0])}; }, "E2");

  B.add("E3.a", T::E3, "E3", "[[a, a], [-a, -a]]", {"a"},
        [](const Params& p) { return RboInstance{alg_e3(), m2(p[0], p[0], -p[0], -p[0])}; }, "E3");
  B.add("E3.b", T::E3, "E3", "[[a, -a], [-a, a]]", {"a"},
        [](const Params& p) { return RboInstance{alg_e3(), m2(p[0], -p[0], -p[0], p[0])}; }, "E3");

  B.add("E4.a", T::E4, "E4", "[[0, b], [0, d]]", {"b", "d"},
        [](const Params& p) { return RboInstance{alg_e4(), m2(0, p[0], 0, p[1])}; }, "E4");
  B.add("E4.b", T::E4, "E4", "[[a, b], [0, a/2]]", {"a", "b"},
        [](const Params& p) { return RboInstance{alg_e4(), m2(p[0], p[1], 0, p[0] / 2.0)}; }, "E4");

  B.add("E5_q0", T::E5, "E5(1/4,0)", "[[a, a/2], [-2*a, -a]]", {"a"},
        [](const Params& p) {
          return RboInstance{alg_e5(0.25, 0), m2(p[0], p[0] / 2.0, -2.0 * p[0], -p[0])};
        },
        "E5(1/4,0)")
      .applies = [](const Matrix& b) { return near(b(0, 1), 0.25) && near(b(1, 0), 0.0); };
  B.add("E5_0q", T::E5, "E5(0,1/4)", "[[a, 2*a], [-a/2, -a]]", {"a"},
        [](const Params& p) {
          return RboInstance{alg_e5(0, 0.25), m2(p[0], 2.0 * p[0], -p[0] / 2.0, -p[0])};
        },
        "E5(0,1/4)")
      .applies = [](const Matrix& b) { return near(b(0, 1), 0.0) && near(b(1, 0), 0.25); };

  auto& ab = B.add(
      "E5_ab", T::E5, "E5((2a-b)b/(3a^2), (-a^2+2ab)/(3b^2))", "[[a, b], [-a^2/b, -a]]",
      {"a", "b"},
      [](const Params& p) {
        const Scalar a = p[0], b = p[1];
        return RboInstance{alg_e5((2.0 * a - b) * b / (3.0 * a * a), (-a * a + 2.0 * a * b) / (3.0 * b * b)),
                           m2(a, b, -a * a / b, -a)};
      },
      "E5((2a-b)b/3a^2, (-a^2+2ab)/3b^2)");
  ab.conditions = "a != 2b, b != 2a, a != -b, a != 0, b != 0, 1 - xy != 0";
  ab.admissible = [](const Params& p, double m) {
    const Scalar a = p[0], b = p[1];
    if (!away(a, m) || !away(b, m) || !away(a - 2.0 * b, m) || !away(b - 2.0 * a, m) ||
        !away(a + b, m))
      return false;
    return standing_e5((2.0 * a - b) * b / (3.0 * a * a), (-a * a + 2.0 * a * b) / (3.0 * b * b), m);
  };

  auto& e6 = B.add(
      "E6_bc", T::E6, "E6(-3b^2/(4c^2))", "[[b^2/(2c), b], [c, -b^2/(2c)]]", {"b", "c"},
      [](const Params& p) {
        const Scalar b = p[0], c = p[1];
        return RboInstance{alg_e6(-3.0 * b * b / (4.0 * c * c)),
                           m2(b * b / (2.0 * c), b, c, -b * b / (2.0 * c))};
      },
      "E6(-3b^2/4c^2)");
  e6.conditions = "b != 0, c != 0; 3b^6/c + 16b^3c^2 + 16c^5 = 0, b^3/c + 4c^2 = 0";
  e6.admissible = [](const Params& p, double m) { return away(p[0], m) && away(p[1], m); };
  e6.constraints = [](const Params& p) {
    const Scalar b = p[0], c = p[1];
    return Params{3.0 * std::pow(b, 6) / c + 16.0 * std::pow(b, 3) * c * c + 16.0 * std::pow(c, 5),
                  std::pow(b, 3) / c + 4.0 * c * c};
  };
  return v;
}

inline std::vector<RboFamily> build_weight1() {
  std::vector<RboFamily> v;
  FamilyBuilder B{v, Weight::one};
  using T = ClassTag;

  B.add("E1.a", T::E1, "E1", "[[-1, 0], [0, d]]", {"d"},
        [](const Params& p) { return RboInstance{alg_e1(), m2(-1, 0, 0, p[0])}; }, "E1");
  B.add("E1.b", T::E1, "E1", "[[0, 0], [0, d]]", {"d"},
        [](const Params& p) { return RboInstance{alg_e1(), m2(0, 0, 0, p[0])}; }, "E1");

  B.add("E2.plus", T::E2, "E2", "[[0, 0], [c, i*c]]", {"c"},
        [](const Params& p) { return RboInstance{alg_e2(), m2(0, 0, p[0], I * p[0])}; }, "E2");
  B.add("E2.minus", T::E2, "E2", "[[0, 0], [c, -i*c]]", {"c"},
        [](const Params& p) { return RboInstance{alg_e2(), m2(0, 0, p[0], -I * p[0])}; }, "E2");
  B.add("E2.half_plus", T::E2, "E2", "[[-1/2, i/2], [-i/2, -1/2]]", {},
        [](const Params&) { return RboInstance{alg_e2(), m2(-0.5, I / 2.0, -I / 2.0, -0.5)}; }, "E2");
  B.add("E2.half_minus", T::E2, "E2", "[[-1/2, -i/2], [i/2, -1/2]]", {},
        [](const Params&) { return RboInstance{alg_e2(), m2(-0.5, -I / 2.0, I / 2.0, -0.5)}; }, "E2");
  B.add("E2.shift_plus", T::E2, "E2", "[[-1, 0], [c, -1+i*c]]", {"c"},
        [](const Params& p) { return RboInstance{alg_e2(), m2(-1, 0, p[0], -1.0 + I * p[0])}; }, "E2");
  B.add("E2.shift_minus", T::E2, "E2", "[[-1, 0], [c, -1-i*c]]", {"c"},
        [](const Params& p) { return RboInstance{alg_e2(), m2(-1, 0, p[0], -1.0 - I * p[0])}; }, "E2");

  B.add("E3.a", T::E3, "E3", "[[-1+b, b], [-b, -1-b]]", {"b"},
        [](const Params& p) { return RboInstance{alg_e3(), m2(-1.0 + p[0], p[0], -p[0], -1.0 - p[0])}; }, "E3");
  B.add("E3.b", T::E3, "E3", "[[-1-b, b], [b, -1-b]]", {"b"},
        [](const Params& p) { return RboInstance{alg_e3(), m2(-1.0 - p[0], p[0], p[0], -1.0 - p[0])}; }, "E3");
  B.add("E3.c", T::E3, "E3", "[[b, b], [-b, -b]]", {"b"},
        [](const Params& p) { return RboInstance{alg_e3(), m2(p[0], p[0], -p[0], -p[0])}; }, "E3");
  B.add("E3.d", T::E3, "E3", "[[-b, b], [b, -b]]", {"b"},
        [](const Params& p) { return RboInstance{alg_e3(), m2(-p[0], p[0], p[0], -p[0])}; }, "E3");

  auto& e4 = B.add("E4", T::E4, "E4", "[[a, b], [0, a^2/(1+2a)]]", {"a", "b"},
                   [](const Params& p) {
                     return RboInstance{alg_e4(), m2(p[0], p[1], 0, p[0] * p[0] / (1.0 + 2.0 * p[0]))};
                   },
                   "E4");
  e4.conditions = "a != -1/2";
  e4.admissible = [](const Params& p, double m) { return away(1.0 + 2.0 * p[0], m); };

  // E5(0,y)
  auto zero_x = [](const Matrix& b) { return near(b(0, 1), 0.0); };
  B.add("E5_0y.unit", T::E5, "E5(0,y)", "[[0, 0], [1, 0]]", {"y"},
        [](const Params& p) { return RboInstance{alg_e5(0, p[0]), m2(0, 0, 1, 0)}; }, "E5(0,y) (first)")
      .applies = zero_x;
  for (int s : {1, -1}) {
    auto& f = B.add(s > 0 ? "E5_0y.c12_plus" : "E5_0y.c12_minus", T::E5, "E5(0,y)",
                    s > 0 ? "[[0, 0], [c1, -1]], c1 = (-1 + sqrt(1-4y))/2"
                          : "[[0, 0], [c2, -1]], c2 = (-1 - sqrt(1-4y))/2",
                    {"y"},
                    [s](const Params& p) {
                      const Scalar c = (-1.0 + double(s) * std::sqrt(1.0 - 4.0 * p[0])) / 2.0;
                      return RboInstance{alg_e5(0, p[0]), m2(0, 0, c, -1)};
                    },
                    "E5(0,y) (first)");
    f.applies = zero_x;
  }
  {
    auto& f = B.add("E5_0y.neg", T::E5, "E5(0,y)", "[[-1, 0], [-1, -1]]", {"y"},
                    [](const Params& p) { return RboInstance{alg_e5(0, p[0]), m2(-1, 0, -1, -1)}; },
                    "E5(0,y), y != 0 (second)");
    f.conditions = "y != 0";
    f.admissible = [](const Params& p, double m) { return away(p[0], m); };
    f.applies = zero_x;
  }
  for (int s : {1, -1}) {
    auto& f = B.add(s > 0 ? "E5_0y.c12p_plus" : "E5_0y.c12p_minus", T::E5, "E5(0,y)",
                    s > 0 ? "[[-1, 0], [c1, 0]], c1 = (1 + sqrt(1-4y))/2"
                          : "[[-1, 0], [c2, 0]], c2 = (1 - sqrt(1-4y))/2",
                    {"y"},
                    [s](const Params& p) {
                      const Scalar c = (1.0 + double(s) * std::sqrt(1.0 - 4.0 * p[0])) / 2.0;
                      return RboInstance{alg_e5(0, p[0]), m2(-1, 0, c, 0)};
                    },
                    "E5(0,y), y != 0 (second)");
    f.conditions = "y != 0, c12 != 0";
    f.admissible = [s](const Params& p, double m) {
      const Scalar c = (1.0 + double(s) * std::sqrt(1.0 - 4.0 * p[0])) / 2.0;
      return away(p[0], m) && away(c, m);
    };
    f.applies = zero_x;
  }
  for (int s : {1, -1}) {
    auto& f = B.add(
        s > 0 ? "E5_0y.root_plus" : "E5_0y.root_minus", T::E5, "E5(0,y)",
        s > 0 ? "[[(1-4y+q)/(8y-2), -1/q], [y/q, (1-4y-q)/(8y-2)]], q = sqrt(1-4y)"
              : "[[(1-4y-q)/(8y-2), 1/q], [-y/q, (1-4y+q)/(8y-2)]], q = sqrt(1-4y)",
        {"y"},
        [s](const Params& p) {
          const Scalar y = p[0];
          const Scalar q = double(s) * std::sqrt(1.0 - 4.0 * y);
          return RboInstance{alg_e5(0, y), m2((1.0 - 4.0 * y + q) / (8.0 * y - 2.0), -1.0 / q, y / q,
                                              (1.0 - 4.0 * y - q) / (8.0 * y - 2.0))};
        },
        "E5(0,y), y != 0, y != 1/4 (third)");
    f.conditions = "y != 0, y != 1/4";
    f.admissible = [](const Params& p, double m) { return away(p[0], m) && away(1.0 - 4.0 * p[0], m); };
    f.applies = zero_x;
  }

  // E5(x,0)
  auto zero_y = [](const Matrix& b) { return near(b(1, 0), 0.0); };
  B.add("E5_x0.unit", T::E5, "E5(x,0)", "[[0, 1], [0, 0]]", {"x"},
        [](const Params& p) { return RboInstance{alg_e5(p[0], 0), m2(0, 1, 0, 0)}; }, "E5(x,0) (first)")
      .applies = zero_y;
  for (int s : {1, -1}) {
    auto b12 = [s](Scalar x) { return (1.0 + double(s) * std::sqrt(1.0 - 4.0 * x)) / 2.0; };
    auto& f = B.add(s > 0 ? "E5_x0.b12_plus" : "E5_x0.b12_minus", T::E5, "E5(x,0)",
                    s > 0 ? "[[0, b1], [0, -1]], b1 = (1 + sqrt(1-4x))/2"
                          : "[[0, b2], [0, -1]], b2 = (1 - sqrt(1-4x))/2",
                    {"x"},
                    [b12](const Params& p) { return RboInstance{alg_e5(p[0], 0), m2(0, b12(p[0]), 0, -1)}; },
                    "E5(x,0) (first)");
    f.conditions = "b12 != 0";
    f.admissible = [b12](const Params& p, double m) { return away(b12(p[0]), m); };
    f.applies = zero_y;
    auto& g = B.add(s > 0 ? "E5_x0.negb_plus" : "E5_x0.negb_minus", T::E5, "E5(x,0)",
                    s > 0 ? "[[-1, -b1], [0, 0]], b1 = (1 + sqrt(1-4x))/2"
                          : "[[-1, -b2], [0, 0]], b2 = (1 - sqrt(1-4x))/2",
                    {"x"},
                    [b12](const Params& p) { return RboInstance{alg_e5(p[0], 0), m2(-1, -b12(p[0]), 0, 0)}; },
                    "E5(x,0) (first)");
    g.conditions = "b12 != 0";
    g.admissible = [b12](const Params& p, double m) { return away(b12(p[0]), m); };
    g.applies = zero_y;
  }
  B.add("E5_x0.neg", T::E5, "E5(x,0)", "[[-1, -1], [0, -1]]", {"x"},
        [](const Params& p) { return RboInstance{alg_e5(p[0], 0), m2(-1, -1, 0, -1)}; }, "E5(x,0) (first)")
      .applies = zero_y;
  for (int s : {1, -1}) {
    auto& f = B.add(
        s > 0 ? "E5_x0.root_plus" : "E5_x0.root_minus", T::E5, "E5(x,0)",
        s > 0 ? "[[(1-4x+q)/(8x-2), -x/q], [1/q, (1-4x-q)/(8x-2)]], q = sqrt(1-4x)"
              : "[[(1-4x-q)/(8x-2), x/q], [-1/q, (1-4x+q)/(8x-2)]], q = sqrt(1-4x)",
        {"x"},
        [s](const Params& p) {
          const Scalar x = p[0];
          const Scalar q = double(s) * std::sqrt(1.0 - 4.0 * x);
          return RboInstance{alg_e5(x, 0), m2((1.0 - 4.0 * x + q) / (8.0 * x - 2.0), -x / q, 1.0 / q,
                                              (1.0 - 4.0 * x - q) / (8.0 * x - 2.0))};
        },
        "E5(x,0), x != 0, x != 1/4 (second)");
    f.conditions = "x != 0, x != 1/4";
    f.admissible = [](const Params& p, double m) { return away(p[0], m) && away(1.0 - 4.0 * p[0], m); };
    f.applies = zero_y;
  }

  B.add("E5_00", T::E5, "E5(0,0)", "[[-1, 0], [0, 0]]", {},
        [](const Params&) { return RboInstance{alg_e5(0, 0), m2(-1, 0, 0, 0)}; }, "E5(0,0)")
      .applies = [](const Matrix& b) { return near(b(0, 1), 0.0) && near(b(1, 0), 0.0); };

  {
    auto& f = B.add("E5_xy.neg_identity", T::E5, "E5(x,y)", "[[-1, 0], [0, -1]]", {"x", "y"},
                    [](const Params& p) { return RboInstance{alg_e5(p[0], p[1]), m2(-1, 0, 0, -1)}; },
                    "E5(x,y)");
    f.conditions = "1 - xy != 0";
    f.admissible = [](const Params& p, double m) { return standing_e5(p[0], p[1], m); };
  }

  for (int s : {1, -1}) {
    const Scalar w1 = s > 0 ? w_minus() : w_plus();
    const Scalar w2 = s > 0 ? w_plus() : w_minus();
    const Scalar off = double(s) * I / std::sqrt(3.0);
    auto& f = B.add(s > 0 ? "E5_x1mx.a" : "E5_x1mx.b", T::E5, "E5(x,1-x)",
                    s > 0 ? "[[(-3-i*sqrt3)/6, -i/sqrt3], [i/sqrt3, (-3+i*sqrt3)/6]]"
                          : "[[(-3+i*sqrt3)/6, i/sqrt3], [-i/sqrt3, (-3-i*sqrt3)/6]]",
                    {"x"},
                    [w1, w2, off](const Params& p) {
                      return RboInstance{alg_e5(p[0], 1.0 - p[0]), m2(w1, -off, off, w2)};
                    },
                    "E5(x,1-x)");
    f.conditions = "x != (1 +- i*sqrt3)/2";
    f.admissible = [](const Params& p, double m) { return standing_e5(p[0], 1.0 - p[0], m); };
    f.applies = [](const Matrix& b) { return near(b(0, 1) + b(1, 0), 1.0); };
  }

  {
    auto& f = B.add(
        "E5_cd", T::E5, "E5(x,y), x = d(1+d)(c+2cd-d(1+d))/(c^2(1+3d+3d^2)), y = c(1-c+2d)/(1+3d+3d^2)",
        "[[-1-d, -d(1+d)/c], [c, d]]", {"c", "d"},
        [](const Params& p) {
          const Scalar c = p[0], d = p[1];
          const Scalar q = 1.0 + 3.0 * d + 3.0 * d * d;
          const Scalar x = d * (1.0 + d) * (c + 2.0 * c * d - d * (1.0 + d)) / (c * c * q);
          const Scalar y = c * (1.0 - c + 2.0 * d) / q;
          return RboInstance{alg_e5(x, y), m2(-1.0 - d, -d * (1.0 + d) / c, c, d)};
        },
        "E5(x,y) with x, y given by c, d");
    f.conditions =
        "d != 0, d != -1, d != -(3 +- i*sqrt3)/6, c != 0, c != d(1+d)/(1+2d), c != 1+2d";
    f.admissible = [](const Params& p, double m) {
      const Scalar c = p[0], d = p[1];
      const Scalar q = 1.0 + 3.0 * d + 3.0 * d * d;
      if (!away(d, m) || !away(1.0 + d, m) || !away(q, m) || !away(c, m) ||
          !away(c * (1.0 + 2.0 * d) - d * (1.0 + d), m) || !away(c - 1.0 - 2.0 * d, m))
        return false;
      const Scalar x = d * (1.0 + d) * (c + 2.0 * c * d - d * (1.0 + d)) / (c * c * q);
      const Scalar y = c * (1.0 - c + 2.0 * d) / q;
      return standing_e5(x, y, m);
    };
    f.note = "y corrected: the printed y = c(1-c+2d)/(c^2(1+3d+3d^2)) solves the system only when c^2 = 1";
  }

  // E6(0): eight isolated operators
  {
    const Scalar wm = w_minus(), wp = w_plus();
    const double s3 = std::sqrt(3.0);
    const Scalar z = root6(), z5 = std::pow(root6(), 5);
    struct Item {
      const char* text;
      Matrix r;
    };
    const std::vector<Item> items = {
        {"[[(-3+i*sqrt3)/6, 0], [0, (-3-i*sqrt3)/6]]", m2(wp, 0, 0, wm)},
        {"[[(-3-i*sqrt3)/6, 0], [0, (-3+i*sqrt3)/6]]", m2(wm, 0, 0, wp)},
        {"[[(-3+i*sqrt3)/6, -i/sqrt3], [i/sqrt3, (-3-i*sqrt3)/6]]", m2(wp, -I / s3, I / s3, wm)},
        {"[[(-3-i*sqrt3)/6, i/sqrt3], [-i/sqrt3, (-3+i*sqrt3)/6]]", m2(wm, I / s3, -I / s3, wp)},
        {"[[(-3-i*sqrt3)/6, -w/sqrt3], [w^5/sqrt3, (-3+i*sqrt3)/6]], w = e^(i*pi/6)",
         m2(wm, -z / s3, z5 / s3, wp)},
        {"[[(-3+i*sqrt3)/6, w/sqrt3], [-w^5/sqrt3, (-3-i*sqrt3)/6]], w = e^(i*pi/6)",
         m2(wp, z / s3, -z5 / s3, wm)},
        {"[[(-3+i*sqrt3)/6, w^5/sqrt3], [-w/sqrt3, (-3-i*sqrt3)/6]], w = e^(i*pi/6)",
         m2(wp, z5 / s3, -z / s3, wm)},
        {"[[(-3-i*sqrt3)/6, -w^5/sqrt3], [w/sqrt3, (-3+i*sqrt3)/6]], w = e^(i*pi/6)",
         m2(wm, -z5 / s3, z / s3, wp)},
    };
    for (std::size_t k = 0; k < items.size(); ++k) {
      const Matrix r = items[k].r;
      auto& f = B.add("E6_0.m" + std::to_string(k + 1), T::E6, "E6(0)", items[k].text, {},
                      [r](const Params&) { return RboInstance{alg_e6(0), r}; }, "E6(0)");
      f.applies = [](const Matrix& b) { return near(b(1, 1), 0.0); };
      if (k == 6) f.note = "sign corrected: the printed (2,1) entry w/sqrt3 leaves residual 2/3";
    }
  }

  {
    auto& f = B.add("E6_x.neg_identity", T::E6, "E6(x)", "[[-1, 0], [0, -1]]", {"x"},
                    [](const Params& p) { return RboInstance{alg_e6(p[0]), m2(-1, 0, 0, -1)}; },
                    "E6(x)");
    (void)f;
  }

  {
    auto& f = B.add(
        "E6_bc", T::E6, "E6((-b^3-c^3)/(bc^2))", "[[(b^2-c)/(2c), b], [c, (-b^2-c)/(2c)]]",
        {"b", "c"},
        [](const Params& p) {
          const Scalar b = p[0], c = p[1];
          return RboInstance{alg_e6((-b * b * b - c * c * c) / (b * c * c)),
                             m2((b * b - c) / (2.0 * c), b, c, (-b * b - c) / (2.0 * c))};
        },
        "E6((-b^3-c^3)/bc^2)");
    f.conditions =
        "b != 0, c != 0, -b^3-c^3 != 0; (b^6+5b^3c^3+4c^6)/c = c(b^3+c^3)/b, b^4/c + 4bc^2 = c";
    f.admissible = [](const Params& p, double m) {
      return away(p[0], m) && away(p[1], m) && away(std::pow(p[0], 3) + std::pow(p[1], 3), m);
    };
    f.constraints = [](const Params& p) {
      const Scalar b = p[0], c = p[1];
      const Scalar b3 = b * b * b, c3 = c * c * c;
      return Params{(b3 * b3 + 5.0 * b3 * c3 + 4.0 * c3 * c3) / c - c * (b3 + c3) / b,
                    b3 * b / c + 4.0 * b * c * c - c};
    };
  }
  return v;
}

}  // namespace detail

/// Every family of the given weight, in table order.
inline const std::vector<RboFamily>& catalog(Weight w) {
  static const std::vector<RboFamily> w0 = detail::build_weight0();
  static const std::vector<RboFamily> w1 = detail::build_weight1();
  return w == Weight::zero ? w0 : w1;
}

inline void require_catalog_tag(ClassTag tag) {
  if (tag == ClassTag::E0 || tag == ClassTag::E7)
    throw DomainError("no Rota-Baxter table for algebra " + to_string(tag) +
                      " (tables cover complex E1..E6)");
}

/// Families printed for this algebra tag (all parameter rows).
inline std::vector<RboFamily> catalog(ClassTag tag, Weight w) {
  require_catalog_tag(tag);
  std::vector<RboFamily> out;
  for (const auto& f : catalog(w))
    if (f.tag == tag) out.push_back(f);
  return out;
}

/// Families whose algebra-parameter pattern admits this concrete algebra.
/// Rows that parameterize the algebra through operator entries (e.g. the
/// (c, d) family of E5) are kept: membership needs a solve, not a test.
inline std::vector<RboFamily> catalog(const AlgebraClass& cls, Weight w) {
  if (cls.field != Field::complex) throw DomainError("Rota-Baxter tables are over the complex field");
  require_catalog_tag(cls.tag);
  const Matrix b = canonical_matrix(cls).matrix();
  std::vector<RboFamily> out;
  for (const auto& f : catalog(w))
    if (f.tag == cls.tag && (!f.applies || f.applies(b))) out.push_back(f);
  return out;
}

/// Printed forms that differ from the catalog: alternative spellings that
/// must agree with it, and the as-printed versions of corrected entries
/// (expected to fail).
struct PrintedVariant {
  RboFamily family;
  bool expected_valid = true;
  std::string relation;
};

inline std::vector<PrintedVariant> printed_variants() {
  using detail::m2;
  std::vector<PrintedVariant> out;
  std::vector<RboFamily> tmp;
  detail::FamilyBuilder B{tmp, Weight::one};
  for (int s : {1, -1}) {
    auto& f = B.add(s > 0 ? "E5_x0.body_plus" : "E5_x0.body_minus", ClassTag::E5, "E5(x,0)",
                    "[[-1, b], [0, 0]], b = (-1 +- sqrt(1-4x))/2", {"x"},
                    [s](const Params& p) {
                      const Scalar b = (-1.0 + double(s) * std::sqrt(1.0 - 4.0 * p[0])) / 2.0;
                      return RboInstance{detail::alg_e5(p[0], 0), m2(-1, b, 0, 0)};
                    },
                    "E5(x,0), derivation form");
    f.conditions = "b != 0";
    f.admissible = [s](const Params& p, double m) {
      return detail::away((-1.0 + double(s) * std::sqrt(1.0 - 4.0 * p[0])) / 2.0, m);
    };
    out.push_back({f, true, "same set as [[-1, -b12], [0, 0]] with b12 = (1 -+ sqrt(1-4x))/2"});
  }
  {
    RboFamily f = catalog(Weight::one)[0];
    for (const auto& g : catalog(Weight::one))
      if (g.id == "w1.E5_cd") f = g;
    f.id = "w1.E5_cd.printed";
    f.note.clear();
    f.algebra = "E5(x,y), y = c(1-c+2d)/(c^2(1+3d+3d^2)) as printed";
    f.instance = [](const Params& p) {
      const Scalar c = p[0], d = p[1];
      const Scalar q = 1.0 + 3.0 * d + 3.0 * d * d;
      const Scalar x = d * (1.0 + d) * (c + 2.0 * c * d - d * (1.0 + d)) / (c * c * q);
      const Scalar y = c * (1.0 - c + 2.0 * d) / (c * c * q);
      return RboInstance{detail::alg_e5(x, y), m2(-1.0 - d, -d * (1.0 + d) / c, c, d)};
    };
    out.push_back({f, false, "agrees with the corrected family only when c^2 = 1"});
  }
  {
    const Scalar z = detail::root6(), z5 = std::pow(detail::root6(), 5);
    const double s3 = std::sqrt(3.0);
    auto& f = B.add("E6_0.m7.printed", ClassTag::E6, "E6(0)",
                    "[[(-3+i*sqrt3)/6, w^5/sqrt3], [w/sqrt3, (-3-i*sqrt3)/6]], w = e^(i*pi/6)", {},
                    [=](const Params&) {
                      return RboInstance{detail::alg_e6(0), m2(detail::w_plus(), z5 / s3, z / s3, detail::w_minus())};
                    },
                    "E6(0)");
    out.push_back({f, false, "(2,1) entry needs a minus sign"});
  }
  return out;
}

/// Symbolic canonical algebra: E5 carries x, y and E6 carries x.
inline PolyMatrix symbolic_algebra(ClassTag tag) {
  require_catalog_tag(tag);
  const VariableSet vars(2);
  const std::size_t nv = vars.size();
  auto k = [nv](double v) { return Poly::constant(nv, v); };
  const Poly x = Poly::variable(nv, vars.x()), y = Poly::variable(nv, vars.y());
  switch (tag) {
    case ClassTag::E5: return {{k(1), x}, {y, k(1)}};
    case ClassTag::E6: return {{k(0), k(1)}, {k(1), x}};
    default: break;
  }
  const Matrix a = canonical_matrix(AlgebraClass{Field::complex, tag, {}}).matrix();
  return {{k(a(0, 0).real()), k(a(0, 1).real())}, {k(a(1, 0).real()), k(a(1, 1).real())}};
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  double tol = 1e-9;      // on max|residual| / max(1, term magnitude)
  double margin = 1e-3;   // distance kept from every side-condition set
  double box = 2.0;       // re, im of each free parameter drawn from [-box, box]
  unsigned jobs = 1;
  int max_retries = 1000;
};

struct FamilyReport {
  std::string id;
  std::size_t samples = 0;       // instantiations evaluated
  std::size_t rejected = 0;      // draws rejected by side conditions or constraint solving
  std::size_t unsampled = 0;     // sample slots with no admissible draw
  double worst_residual = 0.0;   // max|residual|
  double worst_relative = 0.0;   // max|residual| / max(1, scale)
  Params worst_params;
  bool passed = false;
};

namespace detail {

inline Eigen::VectorXd split(const Params& z) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(2 * z.size()));
  for (std::size_t k = 0; k < z.size(); ++k) {
    x(static_cast<Eigen::Index>(2 * k)) = z[k].real();
    x(static_cast<Eigen::Index>(2 * k + 1)) = z[k].imag();
  }
  return x;
}

inline Params join(const Eigen::VectorXd& x) {
  Params z(static_cast<std::size_t>(x.size() / 2));
  for (std::size_t k = 0; k < z.size(); ++k)
    z[k] = Scalar(x(static_cast<Eigen::Index>(2 * k)), x(static_cast<Eigen::Index>(2 * k + 1)));
  return z;
}

// Least squares over complex parameters of a complex residual, with a
// finite-difference Jacobian on the real splitting.
template <class F>
LmResult complex_least_squares(F&& f, const Params& z0, const LmOptions& opt = {}) {
  auto res = [&f](const Eigen::VectorXd& x) {
    const Params v = f(join(x));
    Eigen::VectorXd r(static_cast<Eigen::Index>(2 * v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) {
      r(static_cast<Eigen::Index>(2 * k)) = v[k].real();
      r(static_cast<Eigen::Index>(2 * k + 1)) = v[k].imag();
    }
    return r;
  };
  auto jac = [&res](const Eigen::VectorXd& x) { return central_difference_jacobian(res, x, 1e-7); };
  return levenberg_marquardt(res, jac, split(z0), opt);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  return seed * 0x9E3779B97F4A7C15ULL + k * 0xBF58476D1CE4E5B9ULL + 1;
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

// Moves a draw onto the solution set of the family's printed constraint
// system; nullopt if the local solve does not converge.
inline std::optional<Params> solve_constraints(const RboFamily& f, const Params& p0) {
  LmOptions opt;
  opt.cost_tolerance = 1e-28;
  const LmResult r = complex_least_squares(f.constraints, p0, opt);
  const Params p = join(r.x);
  double mag = 1.0;
  for (auto z : p) mag = std::max(mag, std::abs(z));
  const Params g = f.constraints(p);
  for (auto z : g)
    if (!std::isfinite(std::abs(z)) || std::abs(z) > 1e-11 * std::pow(mag, 6)) return std::nullopt;
  return p;
}

struct SampleOutcome {
  bool ok = false;
  std::size_t rejected = 0;
  double residual = 0.0, relative = 0.0;
  Params params;
};

inline SampleOutcome evaluate(const RboFamily& f, const Params& p) {
  SampleOutcome out;
  const RboInstance inst = f.instance(p);
  if (!all_finite(inst.A) || !all_finite(inst.R)) return out;
  const StructureMatrix A(inst.A);
  const Scalar lambda = weight_value(f.weight);
  out.residual = rb_residual_norm(A, inst.R, lambda);
  out.relative = out.residual / std::max(1.0, rb_residual_scale(A, inst.R, lambda));
  out.params = p;
  out.ok = true;
  return out;
}

inline SampleOutcome draw_sample(const RboFamily& f, std::size_t k, const VerifyOptions& opt) {
  Rng rng(mix_seed(opt.seed, k));
  SampleOutcome out;
  for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
    Params p(f.params.size());
    for (auto& z : p) {
      const double re = rng.uniform(-opt.box, opt.box);
      z = Scalar(re, rng.uniform(-opt.box, opt.box));
    }
    if (f.constraints) {
      auto solved = solve_constraints(f, p);
      if (!solved) {
        ++out.rejected;
        continue;
      }
      p = *solved;
    }
    if (f.admissible && !f.admissible(p, opt.margin)) {
      ++out.rejected;
      continue;
    }
    SampleOutcome s = evaluate(f, p);
    if (!s.ok) {
      ++out.rejected;
      continue;
    }
    s.rejected = out.rejected;
    return s;
  }
  return out;
}

}  // namespace detail

/// Samples the family's free parameters and evaluates the residual at each
/// instantiation. Isolated matrices are evaluated once.
inline FamilyReport verify_family(const RboFamily& f, const VerifyOptions& opt = {}) {
  FamilyReport rep;
  rep.id = f.id;
  const std::size_t n = f.isolated() ? 1 : opt.samples;
  std::vector<detail::SampleOutcome> outcomes(n);
  parallel_for(n, opt.jobs, [&](std::size_t k) {
    outcomes[k] = f.isolated() ? detail::evaluate(f, {}) : detail::draw_sample(f, k, opt);
  });
  bool first = true;
  for (const auto& s : outcomes) {
    rep.rejected += s.rejected;
    if (!s.ok) {
      ++rep.unsampled;
      continue;
    }
    ++rep.samples;
    rep.worst_residual = std::max(rep.worst_residual, s.residual);
    if (first || s.relative > rep.worst_relative) {
      rep.worst_relative = s.relative;
      rep.worst_params = s.params;
      first = false;
    }
  }
  rep.passed = rep.unsampled == 0 && rep.samples == n && rep.worst_relative <= opt.tol;
  return rep;
}

inline std::vector<FamilyReport> verify_families(const std::vector<RboFamily>& fams,
                                                 const VerifyOptions& opt = {}) {
  std::vector<FamilyReport> out;
  for (const auto& f : fams) out.push_back(verify_family(f, opt));
  return out;
}

// ---------------------------------------------------------------------------
// Rejected candidates
//
// The derivation discards several solutions of the system because the
// algebra parameters satisfy xy = 1, where E5(x,y) is not defined. Each
// entry re-derives x, y for the candidate and records the residual.

struct ExclusionSample {
  Params params;     // sampled parameter (empty for isolated candidates)
  Scalar x, y;
  double xy_deviation = 0.0;   // |xy - 1|
  std::optional<double> residual;  // relative RB residual of the candidate, when R is known
};

struct ExclusionReport {
  std::string id;
  std::string description;
  std::vector<ExclusionSample> samples;
  double max_xy_deviation = 0.0;
  bool confirmed = false;  // every sample has xy = 1 to 1e-12
};

namespace detail {

inline ExclusionSample exclusion_sample(Params p, Scalar x, Scalar y, const std::optional<Matrix>& R) {
  ExclusionSample s{std::move(p), x, y, std::abs(x * y - 1.0), std::nullopt};
  if (R && std::isfinite(std::abs(x)) && std::isfinite(std::abs(y))) {
    const StructureMatrix A(alg_e5(x, y));
    s.residual = rb_residual_norm(A, *R, 1.0) / std::max(1.0, rb_residual_scale(A, *R, 1.0));
  }
  return s;
}

inline void finish(ExclusionReport& r) {
  r.max_xy_deviation = 0.0;
  for (const auto& s : r.samples) r.max_xy_deviation = std::max(r.max_xy_deviation, s.xy_deviation);
  r.confirmed = !r.samples.empty() && r.max_xy_deviation <= 1e-12;
}

}  // namespace detail

/// Re-checks every weight-1 E5 candidate that the derivation rejects.
/// Parametric candidates are sampled `samples` times in a real interval
/// kept 1e-3 away from their printed exclusions.
inline std::vector<ExclusionReport> verify_exclusions(std::size_t samples = 10, std::uint64_t seed = 0) {
  using detail::exclusion_sample;
  using detail::m2;
  std::vector<ExclusionReport> out;

  {
    ExclusionReport r{"swap_b1_c1", "a = d = 0, b = c = 1 with x = y = -1", {}, 0, false};
    r.samples.push_back(exclusion_sample({}, -1.0, -1.0, m2(0, 1, 1, 0)));
    detail::finish(r);
    out.push_back(r);
  }
  {
    ExclusionReport r{"a0_b-1_c1_d-2", "a = 0, b = -1, c = 1, d = -2 with x = y = -1", {}, 0, false};
    r.samples.push_back(exclusion_sample({}, -1.0, -1.0, m2(0, -1, 1, -2)));
    detail::finish(r);
    out.push_back(r);
  }

  Rng rng(detail::mix_seed(seed, 0xE5));
  auto draw = [&rng](auto&& bad) {
    for (;;) {
      const double v = rng.uniform(-2.0, 2.0);
      if (!bad(Scalar(v))) return Scalar(v);
    }
  };
  auto near_any = [](Scalar v, std::initializer_list<Scalar> pts) {
    for (auto p : pts)
      if (std::abs(v - p) < 1e-3) return true;
    return false;
  };

  {
    // a = -1/2: the first two equations read 1/4 + b^2 y = 0, x/4 + b^2 = 0.
    ExclusionReport r{"a_minus_half", "a = -1/2: b^2 y = -1/4 and b^2 = -x/4 for any b != 0", {}, 0, false};
    for (std::size_t k = 0; k < samples; ++k) {
      const Scalar b = draw([&](Scalar v) { return near_any(v, {0.0}); });
      r.samples.push_back(exclusion_sample({b}, -4.0 * b * b, -1.0 / (4.0 * b * b), std::nullopt));
    }
    detail::finish(r);
    out.push_back(r);
  }
  {
    // The printed condition is x = y = 1; solving the system gives x = y = -1.
    ExclusionReport r{"all_minus_one", "a = b = c = d = -1, solved x = y = -1 (printed x = y = 1)", {}, 0, false};
    r.samples.push_back(exclusion_sample({}, -1.0, -1.0, m2(-1, -1, -1, -1)));
    r.samples.push_back(exclusion_sample({}, 1.0, 1.0, m2(-1, -1, -1, -1)));
    detail::finish(r);
    out.push_back(r);
  }

  const Scalar r1(-0.5, std::sqrt(3.0) / 6.0), r2(-0.5, -std::sqrt(3.0) / 6.0);
  auto first_row = [&](int branch) {
    ExclusionReport r{branch == 1 ? "first_row_null.c1" : "first_row_null.c2",
                      "a^2 - d - 2ad = 0 and b + 2ab - b^2 = 0: b = 1+2a, d = a^2/(1+2a)", {}, 0, false};
    for (std::size_t k = 0; k < samples; ++k) {
      const Scalar a = draw([&](Scalar v) { return near_any(v, {0.0, -0.5, -1.0, r1, r2}); });
      const Scalar s = 1.0 + 2.0 * a;
      const Scalar b = s, d = a * a / s;
      Scalar c, x, y;
      if (branch == 1) {
        c = a * a * a / (s * s);
        x = -(s * s) / (a * a);
        y = -(a * a) / (s * s);
      } else {
        c = (1.0 + 3.0 * a + 3.0 * a * a + a * a * a) / (s * s);
        x = -(s * s) / ((1.0 + a) * (1.0 + a));
        y = -((1.0 + a) * (1.0 + a)) / (s * s);
      }
      r.samples.push_back(exclusion_sample({a}, x, y, m2(a, b, c, d)));
    }
    detail::finish(r);
    return r;
  };
  out.push_back(first_row(1));
  out.push_back(first_row(2));

  auto second_row = [&](int branch) {
    ExclusionReport r{branch == 1 ? "second_row_null.b1" : "second_row_null.b2",
                      "c - c^2 + 2cd = 0 and d^2 - a - 2ad = 0: c = 1+2d, a = d^2/(1+2d)", {}, 0, false};
    for (std::size_t k = 0; k < samples; ++k) {
      const Scalar d = draw([&](Scalar v) { return near_any(v, {0.0, -0.5, -1.0, r1, r2}); });
      const Scalar s = 1.0 + 2.0 * d;
      const Scalar a = d * d / s, c = s;
      Scalar b, x, y;
      if (branch == 1) {
        b = d * d * d / (s * s);
        x = -(d * d) / (s * s);
        y = -(s * s) / (d * d);
      } else {
        b = (1.0 + 3.0 * d + 3.0 * d * d + d * d * d) / (s * s);
        x = -((1.0 + d) * (1.0 + d)) / (s * s);
        y = -(s * s) / ((1.0 + d) * (1.0 + d));
      }
      r.samples.push_back(exclusion_sample({d}, x, y, m2(a, b, c, d)));
    }
    detail::finish(r);
    return r;
  };
  out.push_back(second_row(1));
  out.push_back(second_row(2));
  return out;
}

/// Value of the standing condition 1 - xy for E5; other algebras have none.
inline Scalar standing_condition(const AlgebraClass& cls) {
  if (cls.tag == ClassTag::E5 && cls.field == Field::complex && cls.params.size() == 2)
    return 1.0 - cls.params[0] * cls.params[1];
  return 1.0;
}

// ---------------------------------------------------------------------------
// Numeric search

struct Annotation {
  std::string family;  // catalog id, "trivial", "zero-algebra" or "uncataloged"
  double distance = 0.0;
};

namespace detail {

inline Matrix swap_basis() { return m2(0, 1, 1, 0); }

// Distance from (B, R) to the family in the joint (algebra, operator)
// coordinates, minimized over the family parameters.
inline double family_distance(const RboFamily& f, const Matrix& B, const Matrix& R,
                              std::size_t starts = 12) {
  auto res = [&](const Params& p) {
    const RboInstance inst = f.instance(p);
    Params v;
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) v.push_back(inst.A(i, j) - B(i, j));
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) v.push_back(inst.R(i, j) - R(i, j));
    if (f.constraints)
      for (auto g : f.constraints(p)) v.push_back(g);
    return v;
  };
  auto norm = [](const Params& v) {
    double s = 0.0;
    for (auto z : v) s += std::norm(z);
    return std::isfinite(s) ? std::sqrt(s) : std::numeric_limits<double>::infinity();
  };
  if (f.isolated()) return norm(res({}));
  const std::size_t m = f.params.size();
  double best = std::numeric_limits<double>::infinity();
  LmOptions opt;
  opt.cost_tolerance = 1e-26;
  for (std::size_t s = 0; s < starts && best > 1e-10; ++s) {
    Params p0(m);
    for (std::size_t k = 0; k < m; ++k)
      p0[k] = Scalar(-2.0 + 4.0 * halton(s + 1, static_cast<int>(2 * k)),
                     -2.0 + 4.0 * halton(s + 1, static_cast<int>(2 * k + 1)));
    const LmResult r = complex_least_squares(res, p0, opt);
    const Params p = join(r.x);
    // a limit point outside the side conditions is not a member
    if (f.admissible && !f.admissible(p, 1e-8)) continue;
    best = std::min(best, norm(res(p)));
  }
  return best;
}

}  // namespace detail

/// Names the catalog family containing R, after moving (A, R) to the
/// canonical form of A (R' = T R T^-1 for the classification witness T).
/// E5(x,y) and E5(y,x) are both tried since the tables use either order.
inline Annotation annotate(const StructureMatrix& A, Weight w, const Matrix& R, double tol = 1e-6) {
  if (R.cwiseAbs().maxCoeff() <= 1e-9) return {"trivial", R.cwiseAbs().maxCoeff()};
  Classification c;
  try {
    c = classify_with_witness(A, Field::complex);
  } catch (const UnclassifiableError&) {
    return {"uncataloged", std::numeric_limits<double>::infinity()};
  }
  if (c.cls.tag == ClassTag::E0) return {"zero-algebra", 0.0};
  const Matrix T = c.witness.matrix();
  const Matrix Rc = T * R * T.inverse();
  const Matrix B = canonical_matrix(c.cls).matrix();
  std::vector<std::pair<Matrix, Matrix>> targets{{B, Rc}};
  if (c.cls.tag == ClassTag::E5) {
    const Matrix P = detail::swap_basis();
    targets.emplace_back(P * B * P, P * Rc * P);
  }
  // first family in table order within tol; otherwise report the nearest
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& f : catalog(c.cls.tag, w))
    for (const auto& [b, r] : targets) {
      const double d = detail::family_distance(f, b, r);
      if (d <= tol) return {f.id, d};
      nearest = std::min(nearest, d);
    }
  return {"uncataloged", nearest};
}

struct RboSearchOptions {
  std::size_t starts = 200;
  std::uint64_t seed = 0;
  double tol = 1e-9;             // relative residual for a converged start
  double box = 2.0;              // starts drawn from [-box, box]^8
  double cluster_radius = 1e-5;  // Euclidean, in R^8
  double annotate_tol = 1e-6;
  bool annotate = true;
  unsigned jobs = 1;
};

struct RboSolution {
  Matrix R;
  double residual = 0.0;  // relative residual of the representative
  std::size_t start = 0;  // start index of the representative
  std::size_t hits = 0;   // converged starts in the cluster
  Annotation annotation;
};

namespace detail {

inline Eigen::VectorXd pack_r(const Matrix& R) {
  Eigen::VectorXd x(8);
  for (Eigen::Index k = 0; k < 4; ++k) {
    x(2 * k) = R(k / 2, k % 2).real();
    x(2 * k + 1) = R(k / 2, k % 2).imag();
  }
  return x;
}

inline Matrix unpack_r(const Eigen::VectorXd& x) {
  Matrix R(2, 2);
  for (Eigen::Index k = 0; k < 4; ++k) R(k / 2, k % 2) = Scalar(x(2 * k), x(2 * k + 1));
  return R;
}

// Real residual [Re F; Im F] of the flattened identity.
inline Eigen::VectorXd search_residual(const StructureMatrix& A, Scalar lambda, const Eigen::VectorXd& x) {
  const Eigen::VectorXcd f = rb_residual_vector(A, unpack_r(x), lambda);
  Eigen::VectorXd r(2 * f.size());
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    r(2 * k) = f(k).real();
    r(2 * k + 1) = f(k).imag();
  }
  return r;
}

// The residual is holomorphic in the entries, so with z = u + iv the real
// Jacobian has blocks [Re J, -Im J; Im J, Re J].
inline Eigen::MatrixXd search_jacobian(const StructureMatrix& A, Scalar lambda, const Eigen::VectorXd& x) {
  const Eigen::MatrixXcd J = rb_jacobian(A, unpack_r(x), lambda);
  Eigen::MatrixXd out(2 * J.rows(), 2 * J.cols());
  for (Eigen::Index i = 0; i < J.rows(); ++i)
    for (Eigen::Index k = 0; k < J.cols(); ++k) {
      out(2 * i, 2 * k) = J(i, k).real();
      out(2 * i, 2 * k + 1) = -J(i, k).imag();
      out(2 * i + 1, 2 * k) = J(i, k).imag();
      out(2 * i + 1, 2 * k + 1) = J(i, k).real();
    }
  return out;
}

}  // namespace detail

/// Multi-start Levenberg-Marquardt on the 8 real unknowns of R. Converged
/// points are clustered and each cluster is reported once, represented by
/// its lowest-residual member, in order of the representative's start.
inline std::vector<RboSolution> search(const StructureMatrix& A, Weight w, const RboSearchOptions& opt = {}) {
  detail::require_dim2(A, "search");
  const Scalar lambda = weight_value(w);
  struct Found {
    bool ok = false;
    Eigen::VectorXd x;
    double residual = 0.0;
  };
  std::vector<Found> found(opt.starts);
  parallel_for(opt.starts, opt.jobs, [&](std::size_t s) {
    Eigen::VectorXd x0(8);
    const std::uint64_t index = s + 1 + opt.seed * 1000003ULL;
    for (int k = 0; k < 8; ++k) x0(k) = -opt.box + 2.0 * opt.box * halton(index, k);
    const LmResult r = levenberg_marquardt(
        [&](const Eigen::VectorXd& x) { return detail::search_residual(A, lambda, x); },
        [&](const Eigen::VectorXd& x) { return detail::search_jacobian(A, lambda, x); }, x0);
    if (!r.x.allFinite()) return;
    const Matrix R = detail::unpack_r(r.x);
    const double rel = rb_residual_norm(A, R, lambda) / std::max(1.0, rb_residual_scale(A, R, lambda));
    if (rel < opt.tol) found[s] = {true, r.x, rel};
  });

  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < found.size(); ++s)
    if (found[s].ok) order.push_back(s);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t p, std::size_t q) { return found[p].residual < found[q].residual; });
  std::vector<std::size_t> reps;
  std::vector<std::size_t> hits;
  for (std::size_t s : order) {
    bool merged = false;
    for (std::size_t k = 0; k < reps.size(); ++k)
      if ((found[s].x - found[reps[k]].x).norm() <= opt.cluster_radius) {
        ++hits[k];
        merged = true;
        break;
      }
    if (!merged) {
      reps.push_back(s);
      hits.push_back(1);
    }
  }
  std::vector<RboSolution> out(reps.size());
  for (std::size_t k = 0; k < reps.size(); ++k)
    out[k] = {detail::unpack_r(found[reps[k]].x), found[reps[k]].residual, reps[k], hits[k], {}};
  std::sort(out.begin(), out.end(), [](const RboSolution& p, const RboSolution& q) { return p.start < q.start; });
  if (opt.annotate)
    parallel_for(out.size(), opt.jobs,
                 [&](std::size_t k) { out[k].annotation = annotate(A, w, out[k].R, opt.annotate_tol); });
  return out;
}

// ---------------------------------------------------------------------------
// Export

inline std::string format_params(const std::vector<std::string>& names, const Params& p) {
  std::string out;
  for (std::size_t k = 0; k < p.size() && k < names.size(); ++k) {
    if (k) out += " ";
    out += names[k] + "=" + format_complex(p[k], 6);
  }
  return out;
}

/// Structured listing, one block per family.
inline std::string catalog_text(const std::vector<RboFamily>& fams) {
  std::ostringstream os;
  for (const auto& f : fams) {
    os << "[" << f.id << "]\n"
       << "algebra: " << f.algebra << "\n"
       << "weight: " << to_string(f.weight) << "\n"
       << "matrix: " << f.matrix << "\n"
       << "params: ";
    if (f.params.empty()) os << "none";
    for (std::size_t k = 0; k < f.params.size(); ++k) os << (k ? ", " : "") << f.params[k];
    os << "\nconditions: " << f.conditions << "\n"
       << "row: " << f.row << "\n";
    if (!f.note.empty()) os << "note: " << f.note << "\n";
    os << "\n";
  }
  return os.str();
}

inline std::string report_csv(const std::vector<FamilyReport>& reps) {
  std::ostringstream os;
  os << "family,samples,worst_residual,worst_relative,pass\n";
  for (const auto& r : reps)
    os << r.id << "," << r.samples << "," << format_double(r.worst_residual) << ","
       << format_double(r.worst_relative) << "," << (r.passed ? "pass" : "fail") << "\n";
  return os.str();
}

inline std::string report_text(const std::vector<FamilyReport>& reps, const std::vector<RboFamily>& fams) {
  std::ostringstream os;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const auto& r = reps[k];
    os << (r.passed ? "PASS " : "FAIL ") << r.id << "  samples=" << r.samples
       << "  worst=" << format_double(r.worst_residual, 3)
       << "  relative=" << format_double(r.worst_relative, 3);
    if (r.unsampled) os << "  unsampled=" << r.unsampled;
    if (k < fams.size() && !r.worst_params.empty())
      os << "  at " << format_params(fams[k].params, r.worst_params);
    if (k < fams.size() && !fams[k].note.empty()) os << "  (" << fams[k].note << ")";
    os << "\n";
  }
  return os.str();
}

inline std::string solutions_csv(const std::vector<RboSolution>& sols) {
  std::ostringstream os;
  os << "index,start,hits,residual,family,distance,a,b,c,d\n";
  for (std::size_t k = 0; k < sols.size(); ++k) {
    const auto& s = sols[k];
    os << k << "," << s.start << "," << s.hits << "," << format_double(s.residual) << ","
       << (s.annotation.family.empty() ? "-" : s.annotation.family) << ","
       << format_double(s.annotation.distance);
    for (Eigen::Index i = 0; i < 4; ++i) os << "," << format_complex_file(s.R(i / 2, i % 2));
    os << "\n";
  }
  return os.str();
}

inline std::string exclusions_text(const std::vector<ExclusionReport>& reps) {
  std::ostringstream os;
  for (const auto& r : reps) {
    os << (r.confirmed ? "EXCLUDED " : "OPEN     ") << r.id << "  samples=" << r.samples.size()
       << "  max|xy-1|=" << format_double(r.max_xy_deviation, 3) << "  (" << r.description << ")\n";
    for (const auto& s : r.samples) {
      if (!s.params.empty()) continue;
      os << "    x=" << format_complex(s.x, 6) << " y=" << format_complex(s.y, 6);
      if (s.residual) os << " residual=" << format_double(*s.residual, 3);
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace evoalg
