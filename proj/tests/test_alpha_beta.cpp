// Curvature data and 1-form derived tensors: classical oracles (round
// sphere, flat space), exact hand values for a rotational Killing form,
// and the general identities (Bianchi, curvature commutation, divergence)
// that tie the whole derivative pipeline together.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <string>

#include "randers/beta.hpp"

using namespace randers;

namespace {

double rel_gap(double a, double b) { return std::abs(a - b) / (1 + std::abs(a)); }

constexpr double kPi = 3.14159265358979323846;

Vec<std::array<double, 2>> box(double lo, double hi, int n) {
  return Vec<std::array<double, 2>>(static_cast<size_t>(n), {lo, hi});
}

MetricSpec euclid3(const Vec<std::string>& b) {
  return make_metric_spec("euclid3", 3, {"1", "0", "0", "1", "0", "1"}, b,
                          box(-2, 2, 3));
}

// Round unit 2-sphere in polar coordinates, away from the poles.
MetricSpec sphere2(const std::string& b1 = "0", const std::string& b2 = "0") {
  return make_metric_spec("sphere2", 2, {"1", "0", "sin(x1)^2"}, {b1, b2},
                          {{0.4, 2.7}, {-3.0, 3.0}});
}

// Polynomial metric with genuine curvature: diagonally dominant on its box.
MetricSpec warped3() {
  return make_metric_spec("warped3", 3,
                          {"1 + 0.2*x2^2", "0.1*x1*x3", "0.05*x2",
                           "1 + 0.2*x3^2", "0.1*x2*x3", "1 + 0.2*x1^2"},
                          {"0.1*x2*x3", "0.05*x1^2", "0.1 + 0.05*x1"},
                          box(-0.6, 0.6, 3));
}

// Ball metric of constant negative flag curvature; its 1-form is closed but
// not Killing, which makes it the standard negative control here.
MetricSpec funk_ball() {
  const std::string w = "(1 - x1^2 - x2^2 - x3^2)";
  auto diag = [&](const std::string& xi) {
    return "(" + w + " + " + xi + "^2) / " + w + "^2";
  };
  auto off = [&](const std::string& xi, const std::string& xj) {
    return xi + "*" + xj + " / " + w + "^2";
  };
  return make_metric_spec("funk-ball", 3,
                          {diag("x1"), off("x1", "x2"), off("x1", "x3"),
                           diag("x2"), off("x2", "x3"), diag("x3")},
                          {"x1 / " + w, "x2 / " + w, "x3 / " + w},
                          box(-0.55, 0.55, 3));
}

// Infinitesimal rotation around the x3-axis, scaled by q = 0.3.
MetricSpec rot_killing() {
  return euclid3({"-0.3*x2", "0.3*x1", "0"});
}

double max_abs(const Vec<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// max_{ijk} |cyclic sum of R^i_jkl over (j,k,l)|, the first Bianchi defect.
double bianchi_residual(const AlphaData& al) {
  double worst = 0;
  for (int i = 0; i < al.n; ++i)
    for (int j = 0; j < al.n; ++j)
      for (int k = 0; k < al.n; ++k)
        for (int l = 0; l < al.n; ++l)
          worst = std::max(worst, std::abs(al.riemann(i, j, k, l) +
                                           al.riemann(i, k, l, j) +
                                           al.riemann(i, l, j, k)));
  return worst;
}

// max defect of b_{i;j;k} - b_{i;k;j} = R^m_ijk b_m, normalized.
double commutation_residual(const AlphaData& al, const BetaData& be) {
  double worst = 0, scale = max_abs(be.nabla2_b.a);
  for (int i = 0; i < al.n; ++i)
    for (int j = 0; j < al.n; ++j)
      for (int k = 0; k < al.n; ++k) {
        double lhs = be.nabla2_b(i, j, k) - be.nabla2_b(i, k, j);
        double rhs = 0;
        for (int m = 0; m < al.n; ++m)
          rhs += al.riemann(m, i, j, k) * be.b[static_cast<size_t>(m)];
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  return worst / (1 + scale);
}

}  // namespace

// ==== flat space ====================================================================

TEST_CASE("flat metric with constant form has no derived structure") {
  MetricSpec spec = euclid3({"0.1", "0.2", "0.3"});
  Point x = {0.4, -0.7, 1.1};
  AlphaData al = alpha_at(spec, x);

  REQUIRE(al.det_a == 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      REQUIRE(al.a(i, j) == (i == j ? 1.0 : 0.0));
      REQUIRE(al.a_inv(i, j) == (i == j ? 1.0 : 0.0));
      REQUIRE(al.ricci(i, j) == 0.0);
    }
  REQUIRE(max_abs(al.gamma.a) == 0.0);
  REQUIRE(max_abs(al.riemann.a) == 0.0);

  BetaData be = beta_at(spec, x, al);
  REQUIRE(be.b2 == Catch::Approx(0.14).margin(1e-15));
  REQUIRE(max_abs(be.nabla_b.a) == 0.0);
  REQUIRE(max_abs(be.r.a) == 0.0);
  REQUIRE(max_abs(be.s.a) == 0.0);
  REQUIRE(max_abs(be.q.a) == 0.0);
  REQUIRE(max_abs(be.t.a) == 0.0);
  REQUIRE(max_abs(be.nabla2_b.a) == 0.0);
  REQUIRE(max_abs(be.s_cov.a) == 0.0);
  REQUIRE(max_abs(be.div_s) == 0.0);

  REQUIRE(killing_residual(spec, {x, {0, 0, 0}, {1.5, 1.5, -1.5}}) == 0.0);
  REQUIRE(prop41_residual(spec, x, {0.5, -1.0, 2.0}) == 0.0);
}

// ==== classical curvature oracles ===================================================

TEST_CASE("round sphere chart is Einstein with unit factor") {
  MetricSpec spec = sphere2();
  for (Backend backend : {Backend::dual, Backend::fd}) {
    for (Point x : {Point{kPi / 3, 0.4}, Point{1.9, -1.2}}) {
      AlphaData al = alpha_at(spec, x, backend);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          REQUIRE(std::abs(al.ricci(i, j) - al.a(i, j)) < 1e-8);
    }
  }

  // Connection spot values on this chart: Gamma^2_12 = cot x1,
  // Gamma^1_22 = -sin x1 cos x1.
  AlphaData al = alpha_at(spec, {kPi / 3, 0.4});
  REQUIRE(std::abs(al.gamma(1, 0, 1) - 1 / std::sqrt(3.0)) < 1e-12);
  REQUIRE(std::abs(al.gamma(1, 1, 0) - 1 / std::sqrt(3.0)) < 1e-12);
  REQUIRE(std::abs(al.gamma(0, 1, 1) + std::sqrt(3.0) / 4) < 1e-12);
}

TEST_CASE("curvature identities hold on a warped polynomial metric") {
  MetricSpec spec = warped3();
  for (Point x : {Point{0.3, -0.2, 0.5}, Point{-0.45, 0.1, -0.3},
                  Point{0.0, 0.55, -0.5}}) {
    AlphaData al = alpha_at(spec, x);
    REQUIRE(bianchi_residual(al) < 1e-8);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        REQUIRE(std::abs(al.ricci(i, j) - al.ricci(j, i)) < 1e-12);
    // Index-lowered tensor: antisymmetric in the first pair, symmetric
    // under pair exchange.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            REQUIRE(std::abs(al.riemann_low(i, j, k, l) +
                             al.riemann_low(j, i, k, l)) < 1e-10);
            REQUIRE(std::abs(al.riemann_low(i, j, k, l) -
                             al.riemann_low(k, l, i, j)) < 1e-10);
          }
  }
  // Finite differences reproduce the same curvature.
  AlphaData d = alpha_at(spec, {0.3, -0.2, 0.5}, Backend::dual);
  AlphaData f = alpha_at(spec, {0.3, -0.2, 0.5}, Backend::fd);
  REQUIRE(bianchi_residual(f) < 1e-8);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      REQUIRE(std::abs(d.ricci(i, j) - f.ricci(i, j)) < 1e-6);
}

// ==== exact hand values =============================================================

TEST_CASE("rotational Killing form has the exact hand values") {
  MetricSpec spec = rot_killing();
  Point x = {0.7, -0.4, 0.25};
  AlphaData al = alpha_at(spec, x);
  BetaData be = beta_at(spec, x, al);

  REQUIRE(max_abs(be.r.a) < 1e-15);
  REQUIRE(std::abs(be.s(0, 1) + 0.3) < 1e-15);
  REQUIRE(std::abs(be.s(1, 0) - 0.3) < 1e-15);
  REQUIRE(std::abs(be.s(0, 0)) + std::abs(be.s(1, 1)) + std::abs(be.s(2, 2)) +
              std::abs(be.s(0, 2)) + std::abs(be.s(1, 2)) ==
          0.0);

  // s_j = q^2 (x1, x2, 0); t = diag(-q^2, -q^2, 0); q-family vanishes with r.
  REQUIRE(std::abs(be.s_vec[0] - 0.09 * x[0]) < 1e-15);
  REQUIRE(std::abs(be.s_vec[1] - 0.09 * x[1]) < 1e-15);
  REQUIRE(std::abs(be.s_vec[2]) < 1e-15);
  REQUIRE(std::abs(be.t(0, 0) + 0.09) < 1e-15);
  REQUIRE(std::abs(be.t(1, 1) + 0.09) < 1e-15);
  REQUIRE(std::abs(be.t(2, 2)) < 1e-15);
  REQUIRE(max_abs(be.q.a) < 1e-15);

  // Constant s on flat space: no covariant s-derivatives, divergence zero,
  // and s_{j;k} = -t_jk is symmetric as every Killing form requires.
  REQUIRE(max_abs(be.nabla_s.a) < 1e-15);
  REQUIRE(max_abs(be.div_s) < 1e-15);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      REQUIRE(std::abs(be.s_cov(j, k) + be.t(j, k)) < 1e-15);
      REQUIRE(std::abs(be.s_cov(j, k) - be.s_cov(k, j)) < 1e-8);
    }

  Vec<double> y = {0.5, -1.2, 0.8};
  DirectionalContractions c = contract_with_y(be, al, y);
  REQUIRE(std::abs(c.t00 + 0.09 * (0.25 + 1.44)) < 1e-13);
  REQUIRE(std::abs(c.s0 - 0.09 * (x[0] * y[0] + x[1] * y[1])) < 1e-15);
  REQUIRE(std::abs(c.beta - dot(be.b, y)) == 0.0);
  REQUIRE(std::abs(c.alpha - norm2(y)) < 1e-15);
  REQUIRE(std::abs(c.s_ratio - c.beta / c.alpha) == 0.0);

  REQUIRE(killing_residual(spec, {x, {0, 0, 0}, {-1.2, 0.9, 1.4}}) < 1e-14);
  REQUIRE(prop41_residual(spec, x, y) < 1e-14);
}

// ==== general identities ============================================================

TEST_CASE("second covariant derivatives satisfy the curvature commutation rule") {
  const MetricSpec specs[] = {sphere2("0.1*x2", "0.2*sin(x1)"), warped3(),
                              funk_ball()};
  const Vec<Point> pts[] = {{{1.1, 0.7}, {2.1, -0.9}},
                            {{0.25, -0.4, 0.1}, {-0.3, 0.2, 0.45}},
                            {{0.3, 0.0, 0.0}, {0.1, -0.2, 0.15}}};
  for (size_t si = 0; si < 3; ++si)
    for (const Point& x : pts[si]) {
      AlphaData al = alpha_at(specs[si], x);
      BetaData be = beta_at(specs[si], x, al);
      REQUIRE(commutation_residual(al, be) < 1e-6);
      // Decomposition is exact at every point.
      for (int i = 0; i < al.n; ++i)
        for (int j = 0; j < al.n; ++j)
          REQUIRE(std::abs(be.r(i, j) + be.s(i, j) - be.nabla_b(i, j)) < 1e-14);
    }
}

TEST_CASE("divergence of s matches the curvature expression") {
  const MetricSpec specs[] = {sphere2("0.1*x2", "0.2*sin(x1)"), warped3(),
                              funk_ball()};
  const Vec<Vec<double>> dirs3 = {{0.8, -0.3, 1.2}, {-1.0, 0.4, 0.6}};
  const Vec<Vec<double>> dirs2 = {{0.8, -0.3}, {-1.0, 0.4}};
  for (size_t si = 0; si < 3; ++si) {
    const Vec<Point>& pts = si == 0 ? Vec<Point>{{1.1, 0.7}, {2.1, -0.9}}
                                    : Vec<Point>{{0.25, -0.4, 0.1}, {-0.3, 0.2, 0.45}};
    const auto& dirs = si == 0 ? dirs2 : dirs3;
    for (const Point& x : pts)
      for (const auto& y : dirs) {
        REQUIRE(prop41_residual(specs[si], x, y) < 1e-6);
        REQUIRE(prop41_residual(specs[si], x, y, Backend::fd) < 1e-6);
      }
  }
}

TEST_CASE("directional contractions scale by their degrees") {
  MetricSpec spec = funk_ball();
  Point x = {0.2, -0.3, 0.1};
  Vec<double> y = {0.7, 0.4, -1.1};
  AlphaData al = alpha_at(spec, x);
  BetaData be = beta_at(spec, x, al);

  const double lam = 1.7;
  Vec<double> ly = y;
  for (double& v : ly) v *= lam;
  DirectionalContractions c = contract_with_y(be, al, y);
  DirectionalContractions cl = contract_with_y(be, al, ly);

  REQUIRE(rel_gap(cl.alpha, lam * c.alpha) < 1e-12);
  REQUIRE(rel_gap(cl.beta, lam * c.beta) < 1e-12);
  REQUIRE(rel_gap(cl.s_ratio, c.s_ratio) < 1e-12);
  REQUIRE(rel_gap(cl.s0, lam * c.s0) < 1e-12);
  REQUIRE(rel_gap(cl.r0, lam * c.r0) < 1e-12);
  REQUIRE(rel_gap(cl.t0, lam * c.t0) < 1e-12);
  REQUIRE(rel_gap(cl.q0, lam * c.q0) < 1e-12);
  REQUIRE(rel_gap(cl.sm0m, lam * c.sm0m) < 1e-12);
  REQUIRE(rel_gap(cl.r00, lam * lam * c.r00) < 1e-12);
  REQUIRE(rel_gap(cl.t00, lam * lam * c.t00) < 1e-12);
  REQUIRE(rel_gap(cl.s00_cov, lam * lam * c.s00_cov) < 1e-12);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(rel_gap(cl.y_low[static_cast<size_t>(i)],
                    lam * c.y_low[static_cast<size_t>(i)]) < 1e-12);
    REQUIRE(rel_gap(cl.s_i0[static_cast<size_t>(i)],
                    lam * c.s_i0[static_cast<size_t>(i)]) < 1e-12);
    REQUIRE(rel_gap(cl.s_up0[static_cast<size_t>(i)],
                    lam * c.s_up0[static_cast<size_t>(i)]) < 1e-12);
    REQUIRE(rel_gap(cl.r_i0[static_cast<size_t>(i)],
                    lam * c.r_i0[static_cast<size_t>(i)]) < 1e-12);
  }

  // Antisymmetry kills the double contraction; Cauchy-Schwarz bounds s.
  REQUIRE(std::abs(dot(c.s_i0, y)) < 1e-12);
  REQUIRE(std::abs(c.s_ratio) <= std::sqrt(be.b2) + 1e-12);
  // t inherits symmetry from its construction.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      REQUIRE(std::abs(be.t(i, j) - be.t(j, i)) < 1e-12);
}

TEST_CASE("degenerate directions are rejected") {
  MetricSpec spec = funk_ball();
  Point x = {0.2, -0.3, 0.1};
  AlphaData al = alpha_at(spec, x);
  BetaData be = beta_at(spec, x, al);
  REQUIRE_THROWS_AS(contract_with_y(be, al, {0, 0, 0}), DomainError);
  REQUIRE_THROWS_AS(contract_with_y(be, al, {1e-10, 1e-10, 1e-10}), DomainError);
  REQUIRE_NOTHROW(contract_with_y(be, al, {1e-3, 0, 0}));
}

TEST_CASE("killing residual separates Killing from non-Killing forms") {
  REQUIRE(killing_residual(rot_killing(), {{0.7, -0.4, 0.25}, {0, 0, 0}}) < 1e-14);
  REQUIRE(killing_residual(funk_ball(), {{0.3, 0.0, 0.0}}) > 0.1);
  REQUIRE(killing_residual(euclid3({"0", "0", "0"}), {{0.5, 0.5, 0.5}}) == 0.0);
  REQUIRE_THROWS_AS(killing_residual(funk_ball(), {}), Error);
}

// ==== backend agreement =============================================================

TEST_CASE("backends agree on all derived tensors") {
  MetricSpec spec = funk_ball();
  Point x = {0.25, -0.1, 0.3};
  AlphaData ad = alpha_at(spec, x, Backend::dual);
  AlphaData af = alpha_at(spec, x, Backend::fd);
  BetaData bd = beta_at(spec, x, ad, Backend::dual);
  BetaData bf = beta_at(spec, x, af, Backend::fd);

  auto close = [&](const Vec<double>& u, const Vec<double>& v, double tol) {
    REQUIRE(u.size() == v.size());
    for (size_t i = 0; i < u.size(); ++i)
      REQUIRE(std::abs(u[i] - v[i]) / (1 + std::abs(u[i])) < tol);
  };
  close(ad.gamma.a, af.gamma.a, 1e-8);
  close(ad.riemann.a, af.riemann.a, 1e-6);
  close(ad.ricci.a, af.ricci.a, 1e-6);
  close(bd.nabla_b.a, bf.nabla_b.a, 1e-8);
  close(bd.nabla2_b.a, bf.nabla2_b.a, 1e-6);
  close(bd.s_cov.a, bf.s_cov.a, 1e-6);
  close(bd.div_s, bf.div_s, 1e-6);
}
