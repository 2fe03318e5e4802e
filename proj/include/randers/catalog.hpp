#pragma once
// Built-in metric entries: the constant-curvature family on the 3-sphere in
// two independent realizations (exact frame tables and a coordinate chart),
// flat controls, the negative-curvature ball, and a seeded random generator
// for oracle sweeps. Entries are pure functions of their parameters; the
// chart is validated operationally against its structure equations.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "randers/frame.hpp"
#include "randers/jet.hpp"
#include "randers/metric_spec.hpp"
#include "randers/sampling.hpp"

namespace randers {

struct CatalogParams {
  double K = 4.0;           // curvature of the constant-curvature family (> 1)
  int sign = +1;            // sign of the drift root sqrt(K - 1)
  double q = 0.3;           // rotation rate of the Killing control
  std::uint64_t seed = 42;  // seed of the random entry
  int n = 3;                // dimension of the random and ball entries
  int degree = 2;           // polynomial degree of the random entry
};

struct CatalogEntry {
  std::string name;
  std::string note;
  bool frame = false;  // true: `space` is set; false: `spec` is set
  MetricSpec spec;
  FrameSpace space;
};

// ==== coframe of the unit 3-sphere ==============================================

/// Component strings eta[i][j] of three 1-forms eta^i = eta^i_j dx^j on the
/// graph chart x -> (w, x1, x2, x3), w = sqrt(1 - |x|^2), of the 3-sphere.
/// They form an orthonormal left coframe: d eta^i = 2 eta^j ^ eta^k (cyclic).
inline Vec<Vec<std::string>> sphere_coframe_forms() {
  const std::string w = "sqrt(1 - x1^2 - x2^2 - x3^2)";
  auto xs = [](int i) { return "x" + std::to_string(i + 1); };
  Vec<Vec<std::string>> eta(3, Vec<std::string>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        eta[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            w + " + " + xs(i) + "^2 / (" + w + ")";
      } else {
        // eps(i, j, k) with (0,1,2) positively oriented.
        int k = 3 - i - j;
        bool pos = (j - i + 3) % 3 == 1;
        eta[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            xs(i) + "*" + xs(j) + " / (" + w + ") " + (pos ? "-" : "+") + " " + xs(k);
      }
    }
  return eta;
}

/// Max residual of d eta^i - 2 eta^j ^ eta^k (cyclic) over seeded points of
/// `domain`, with the exterior derivative taken from first-order jets of the
/// component map. Zero (to jet accuracy) certifies the chart.
inline double coframe_structure_residual(const Vec<Vec<std::string>>& eta,
                                         const Vec<std::array<double, 2>>& domain,
                                         int points = 20,
                                         std::uint64_t seed = 0x5eed5eedULL) {
  if (eta.size() != 3) throw Error("coframe residual expects three 1-forms");
  const int n = 3;
  Vec<ExprPtr> parsed;
  for (const auto& row : eta) {
    if (row.size() != 3) throw Error("coframe entries must be 3-component rows");
    for (const std::string& s : row) parsed.push_back(parse(s));
  }
  SmoothMap comp(n, 9, [parsed](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    Vec<T> xv(xs.begin(), xs.end());
    for (size_t e = 0; e < parsed.size(); ++e) out[e] = eval_expr(parsed[e], xv);
  });

  Rng rng(seed);
  double worst = 0;
  for (int p = 0; p < points; ++p) {
    Point x = rng.box_point(domain);
    JetTable jt = evaluate_jet(comp, x, 1);
    auto val = [&](int i, int j) { return jt.value[static_cast<size_t>(3 * i + j)]; };
    auto der = [&](int i, int j, int k) { return jt.d1(3 * i + j, k); };  // d_k eta^i_j
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      for (int l = 0; l < 3; ++l)
        for (int m = l + 1; m < 3; ++m) {
          double dlm = der(i, m, l) - der(i, l, m);
          double wedge = val(j, l) * val(k, m) - val(j, m) * val(k, l);
          worst = std::max(worst, std::abs(dlm - 2 * wedge));
        }
    }
  }
  return worst;
}

/// Numeric coframe matrix at x: row i holds the components of eta^i.
inline Mat<double> coframe_at(const Vec<Vec<std::string>>& eta, const Point& x) {
  Mat<double> m(static_cast<int>(eta.size()), static_cast<int>(eta.size()));
  for (size_t i = 0; i < eta.size(); ++i)
    for (size_t j = 0; j < eta[i].size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) =
          eval_expr(parse(eta[i][j]), x);
  return m;
}

// ==== entry builders ============================================================

namespace detail {

inline Vec<std::array<double, 2>> cube(double h, int n) {
  return Vec<std::array<double, 2>>(static_cast<size_t>(n), {-h, h});
}

inline MetricSpec euclidean_entry() {
  return make_metric_spec("euclidean", 3, {"1", "0", "0", "1", "0", "1"},
                          {"0", "0", "0"}, cube(2.0, 3));
}

inline MetricSpec euclid_const_beta_entry() {
  return make_metric_spec("euclid-const-beta", 3, {"1", "0", "0", "1", "0", "1"},
                          {"0.3", "0", "0"}, cube(2.0, 3));
}

inline MetricSpec euclid_rot_killing_entry(double q) {
  const double radius = 1.5;
  if (!(q > 0) || q * radius * std::sqrt(2.0) >= 1.0)
    throw Error("rotation rate q leaves the unit-drift range on the box");
  std::string qs = num_to_string(q);
  return make_metric_spec("euclid-rot-killing", 3, {"1", "0", "0", "1", "0", "1"},
                          {"-" + qs + "*x2", qs + "*x1", "0"}, cube(radius, 3));
}

inline MetricSpec funk_ball_entry(int n) {
  if (n < 2) throw Error("ball entry needs dimension at least 2");
  std::string w = "(1";
  for (int i = 0; i < n; ++i) w += " - x" + std::to_string(i + 1) + "^2";
  w += ")";
  auto xs = [](int i) { return "x" + std::to_string(i + 1); };
  Vec<std::string> a, b;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      a.push_back(i == j ? "(" + w + " + " + xs(i) + "^2) / " + w + "^2"
                         : xs(i) + "*" + xs(j) + " / " + w + "^2");
  for (int i = 0; i < n; ++i) b.push_back(xs(i) + " / " + w);
  // Corner radius ~0.95: strictly inside the unit ball in every dimension.
  return make_metric_spec("funk-ball", n, a, b, cube(0.55 * std::sqrt(3.0 / n), n));
}

inline MetricSpec bao_shen_chart_entry(double K, int sign) {
  if (!(K > 1)) throw Error("constant-curvature family needs K > 1");
  if (sign != 1 && sign != -1) throw Error("sign must be +1 or -1");
  const double delta = sign * std::sqrt(K - 1.0);
  Vec<Vec<std::string>> eta = sphere_coframe_forms();
  auto e = [&](int i, int j) {
    return "(" + eta[static_cast<size_t>(i)][static_cast<size_t>(j)] + ")";
  };
  Vec<std::string> a, b;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      a.push_back(num_to_string(K) + "*" + e(0, i) + "*" + e(0, j) + " + " +
                  e(1, i) + "*" + e(1, j) + " + " + e(2, i) + "*" + e(2, j));
  for (int i = 0; i < 3; ++i) b.push_back(num_to_string(delta) + "*" + e(0, i));
  return make_metric_spec("bao-shen", 3, a, b, cube(0.35, 3));
}

/// Nearest rational with a small denominator; frame arithmetic is exact in
/// the returned value, so the conversion must be, too.
inline Rat rational_of(double v) {
  for (long long den = 1; den <= 10000; ++den) {
    double num = v * static_cast<double>(den);
    long long rounded = std::llround(num);
    if (std::abs(num - static_cast<double>(rounded)) < 1e-9 * den)
      return Rat(rounded, den);
  }
  throw Error("curvature parameter is not a small rational; the exact frame "
              "path cannot represent it");
}

inline MetricSpec random_entry(std::uint64_t seed, int n, int degree) {
  if (n < 2 || n > 4) throw Error("random entry supports dimensions 2..4");
  if (degree < 0 || degree > 2) throw Error("random entry supports degree 0..2");

  // Monomials of degree 1..degree (the constant offset is fixed separately).
  Vec<std::string> monos;
  for (int i = 0; i < n; ++i) monos.push_back("x" + std::to_string(i + 1));
  if (degree >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        monos.push_back("x" + std::to_string(i + 1) + "*x" + std::to_string(j + 1));

  // Deterministic retry: the coefficient stream restarts at the same seed,
  // only the amplitude shrinks, so the accepted entry is a function of seed.
  for (int attempt = 0; attempt < 12; ++attempt) {
    const double scale = 0.3 / static_cast<double>(1 << attempt);
    const double bscale = 0.5 / ((1 + n) * std::sqrt(static_cast<double>(n)));
    Rng rng(seed);
    auto poly = [&](bool with_offset) {
      std::string s = with_offset ? "1" : "0";
      if (degree == 0) return s;
      for (const std::string& m : monos)
        s += " + " + num_to_string(rng.uniform(-scale, scale)) + "*" + m;
      return s;
    };
    Vec<std::string> a, b;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a.push_back(poly(i == j));
    for (int i = 0; i < n; ++i) {
      std::string s = num_to_string(rng.uniform(-bscale, bscale));
      for (int j = 0; j < n; ++j)
        s += " + " + num_to_string(rng.uniform(-bscale, bscale)) + "*x" +
             std::to_string(j + 1);
      b.push_back(s);
    }
    try {
      return make_metric_spec("random", n, a, b, cube(1.0, n));
    } catch (const ValidationError&) {
      // Narrower amplitude on the next attempt.
    }
  }
  throw Error("random entry generation failed to validate after 12 attempts");
}

}  // namespace detail

inline Vec<std::string> catalog_names() {
  return {"bao-shen",           "bao-shen-frame", "euclid-const-beta",
          "euclid-rot-killing", "euclidean",      "funk-ball",
          "random"};
}

inline std::string catalog_parameter_doc(const std::string& name) {
  if (name == "bao-shen" || name == "bao-shen-frame") return "K (> 1), sign";
  if (name == "euclid-rot-killing") return "q";
  if (name == "funk-ball") return "n";
  if (name == "random") return "seed, n, degree";
  return "";
}

inline CatalogEntry catalog_entry(const std::string& name,
                                  const CatalogParams& p = {}) {
  CatalogEntry e;
  e.name = name;
  if (name == "euclidean") {
    e.note = "flat space, zero drift";
    e.spec = detail::euclidean_entry();
  } else if (name == "euclid-const-beta") {
    e.note = "flat space with a constant drift form";
    e.spec = detail::euclid_const_beta_entry();
  } else if (name == "euclid-rot-killing") {
    e.note = "flat space with a rotational Killing drift";
    e.spec = detail::euclid_rot_killing_entry(p.q);
  } else if (name == "funk-ball") {
    e.note = "projectively flat ball of constant flag curvature -1/4";
    e.spec = detail::funk_ball_entry(p.n);
  } else if (name == "bao-shen") {
    e.note = "constant positive flag curvature with nonzero drift (chart)";
    e.spec = detail::bao_shen_chart_entry(p.K, p.sign);
  } else if (name == "bao-shen-frame") {
    e.note = "constant positive flag curvature with nonzero drift (exact frame)";
    e.frame = true;
    e.space = constant_curvature_frame(detail::rational_of(p.K), p.sign);
  } else if (name == "random") {
    e.note = "seeded random polynomial metric for oracle sweeps";
    e.spec = detail::random_entry(p.seed, p.n, p.degree);
  } else {
    throw Error("unknown catalog entry \"" + name + "\"");
  }
  return e;
}

}  // namespace randers
