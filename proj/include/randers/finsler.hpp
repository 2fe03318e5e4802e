#pragma once

// Finsler layer for F = alpha + beta: fundamental tensor, geodesic spray,
// nonlinear connection, Riemann curvature R^i_k, flag curvature, S-curvature,
// mean Cartan and mean Landsberg tensors, geodesic integration and the
// Busemann-Hausdorff volume form.
//
// Every quantity with two independent routes (a jet/definition path and a
// closed form) computes both and enforces agreement in-op, so each call
// doubles as a formula self-check. Tolerances: 1e-10 for exact dual-tower
// pairs, 1e-6 when a finite-difference route or a sampled quantity is
// involved.
//
// Backend choice: with Backend::dual all derivatives come from nested dual
// towers; with Backend::fd the outer derivatives come from 4th-order central
// stencils. Stencils are applied to exactly-evaluated integrands (F^2 for the
// spray, the dual-path spray for its jets) so second differences stay above
// rounding noise; the spray value itself is cross-checked against its own fd
// assembly from F^2 jets.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "randers/alpha.hpp"
#include "randers/beta.hpp"
#include "randers/dual.hpp"
#include "randers/error.hpp"
#include "randers/jet.hpp"
#include "randers/linalg.hpp"
#include "randers/metric_spec.hpp"
#include "randers/phi.hpp"
#include "randers/sampling.hpp"

namespace randers {

namespace detail {

// ==== templated kernels =========================================================

/// F^2 at (x, y) over an arbitrary scalar tower.
template <class T>
T f2_value(const MetricSpec& spec, const Vec<T>& x, const Vec<T>& y) {
  using std::sqrt;
  Mat<T> a = spec.a_at(x);
  Vec<T> b = spec.b_at(x);
  const int n = spec.n;
  T a2(0.0), beta(0.0);
  for (int i = 0; i < n; ++i) {
    beta += b[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    for (int j = 0; j < n; ++j)
      a2 += a(i, j) * y[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
  }
  T f = sqrt(a2) + beta;
  return f * f;
}

/// g_ij = 1/2 d^2 F^2 / dy^i dy^j over scalar type T (two extra dual levels).
template <class T>
Mat<T> g_matrix(const MetricSpec& spec, const Vec<T>& x, const Vec<T>& y) {
  using A = Dual<T>;
  using B = Dual<A>;
  const int n = spec.n;
  Vec<B> xb(static_cast<size_t>(n)), yb(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    xb[static_cast<size_t>(k)] = B(A(x[static_cast<size_t>(k)], T(0.0)), A(T(0.0), T(0.0)));
  Mat<T> g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k)
        yb[static_cast<size_t>(k)] = B(A(y[static_cast<size_t>(k)], T(k == i ? 1.0 : 0.0)),
                                       A(T(k == j ? 1.0 : 0.0), T(0.0)));
      B f2 = f2_value(spec, xb, yb);
      g(i, j) = f2.du.du * T(0.5);
      g(j, i) = g(i, j);
    }
  return g;
}

/// Geodesic spray coefficients over scalar type T:
///   G^i = 1/4 g^{il} ( [F^2]_{x^m y^l} y^m - [F^2]_{x^l} ).
/// With H(x, y) = [F^2]_{x^m} y^m (a directional x-derivative along y),
///   dH/dy^l = [F^2]_{x^m y^l} y^m + [F^2]_{x^l},
/// because the x-seed itself depends on y; so the bracket is dH/dy^l minus
/// twice the plain x-gradient. Both pieces come from manual dual seeding.
template <class T>
Vec<T> spray_generic(const MetricSpec& spec, const Vec<T>& x, const Vec<T>& y) {
  using A = Dual<T>;
  using B = Dual<A>;
  const int n = spec.n;
  Mat<T> g = g_matrix(spec, x, y);
  Vec<T> rhs(static_cast<size_t>(n), T(0.0));
  Vec<A> xa(static_cast<size_t>(n)), ya(static_cast<size_t>(n));
  Vec<B> xb(static_cast<size_t>(n)), yb(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      const size_t ks = static_cast<size_t>(k);
      xa[ks] = A(x[ks], T(k == l ? 1.0 : 0.0));
      ya[ks] = A(y[ks], T(0.0));
      xb[ks] = B(A(x[ks], y[ks]), A(T(0.0), T(k == l ? 1.0 : 0.0)));
      yb[ks] = B(A(y[ks], T(0.0)), A(T(k == l ? 1.0 : 0.0), T(0.0)));
    }
    T fxl = f2_value(spec, xa, ya).du;
    T dhl = f2_value(spec, xb, yb).du.du;
    rhs[static_cast<size_t>(l)] = (dhl - T(2.0) * fxl) * T(0.25);
  }
  return lu_solve(lu_factor(std::move(g)), rhs);
}

// ==== shared per-call ingredients ==============================================

struct Ingredients {
  AlphaData al;
  BetaData be;
  DirectionalContractions c;
  double F = 0;
};

inline Ingredients ingredients(const MetricSpec& spec, const Point& x,
                               const Vec<double>& y, Backend backend) {
  Ingredients ing;
  ing.al = alpha_at(spec, x, backend);
  ing.be = beta_at(spec, x, ing.al, backend);
  ing.c = contract_with_y(ing.be, ing.al, y);
  ing.F = ing.c.alpha + ing.c.beta;
  if (ing.F <= 1e-10)
    throw NumericError("F is not positive along this direction");
  if (1.0 + ing.c.s_ratio <= 1e-10)
    throw NumericError("metric degenerate along this direction (1 + beta/alpha ~ 0)");
  return ing;
}

/// Local Killing test at a single point: |r_ij| negligible next to |b_{i;j}|.
inline bool locally_killing(const BetaData& be) {
  double rmax = 0, nb = 0;
  for (double v : be.r.a) rmax = std::max(rmax, std::abs(v));
  for (double v : be.nabla_b.a) nb = std::max(nb, std::abs(v));
  return rmax <= 1e-9 * (1.0 + nb);
}

inline double max_abs_gap(const Vec<double>& a, const Vec<double>& b) {
  double g = 0;
  for (size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

inline double max_abs_of(const Vec<double>& a) {
  double g = 0;
  for (double v : a) g = std::max(g, std::abs(v));
  return g;
}

/// Closed-form fundamental tensor:
///   g_ij = (F/alpha)(a_ij - y_i y_j / alpha^2) + (y_i/alpha + b_i)(y_j/alpha + b_j).
inline Mat<double> g_closed(const Ingredients& ing) {
  const int n = ing.al.n;
  const double al = ing.c.alpha, F = ing.F;
  Mat<double> g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double yi = ing.c.y_low[static_cast<size_t>(i)], yj = ing.c.y_low[static_cast<size_t>(j)];
      double li = yi / al + ing.be.b[static_cast<size_t>(i)];
      double lj = yj / al + ing.be.b[static_cast<size_t>(j)];
      g(i, j) = F / al * (ing.al.a(i, j) - yi * yj / (al * al)) + li * lj;
    }
  return g;
}

/// Closed-form spray deviation from the alpha-geodesic coefficients:
///   G^i - Gbar^i = (e00 / (2F) - s0) y^i + alpha s^i_0,   e00 = r00 + 2 beta s0.
inline Vec<double> spray_closed(const Ingredients& ing, const Vec<double>& g_bar) {
  const int n = ing.al.n;
  const double e00 = ing.c.r00 + 2.0 * ing.c.beta * ing.c.s0;
  const double w = e00 / (2.0 * ing.F) - ing.c.s0;
  Vec<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<size_t>(i)] = g_bar[static_cast<size_t>(i)] +
                                w * ing.c.y[static_cast<size_t>(i)] +
                                ing.c.alpha * ing.c.s_up0[static_cast<size_t>(i)];
  return g;
}

}  // namespace detail

// ==== fundamental tensor ========================================================

struct FundamentalTensor {
  int n = 0;
  double F = 0;
  Mat<double> g, g_inv;
  double det_g = 0;
};

namespace detail {

inline FundamentalTensor fundamental_with(const MetricSpec& spec,
                                          const Ingredients& ing, const Point& x,
                                          const Vec<double>& y, Backend backend) {
  const int n = spec.n;
  FundamentalTensor ft;
  ft.n = n;
  ft.F = ing.F;

  SmoothMap f2y(n, 1, [spec, x](auto ys, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    Vec<T> xt(x.size()), yt(ys.begin(), ys.end());
    for (size_t k = 0; k < x.size(); ++k) xt[k] = T(x[k]);
    out[0] = f2_value(spec, xt, yt);
  });
  JetTable jt = evaluate_jet(f2y, y, 2, backend);
  ft.g = Mat<double>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ft.g(i, j) = 0.5 * jt.d2(0, i, j);

  Mat<double> gc = g_closed(ing);
  double gap = 0, scale = 0;
  for (size_t k = 0; k < ft.g.a.size(); ++k) {
    gap = std::max(gap, std::abs(ft.g.a[k] - gc.a[k]));
    scale = std::max(scale, std::abs(gc.a[k]));
  }
  const double tol = backend == Backend::dual ? 1e-10 : 1e-6;
  if (gap > tol * (1.0 + scale))
    throw NumericError("fundamental tensor: jet path and closed form disagree");

  ft.det_g = det(ft.g);
  if (!(ft.det_g > 0)) throw NumericError("fundamental tensor is singular");
  ft.g_inv = invert(ft.g);
  return ft;
}

}  // namespace detail

inline FundamentalTensor fundamental_tensor(const MetricSpec& spec, const Point& x,
                                            const Vec<double>& y,
                                            Backend backend = Backend::dual) {
  detail::Ingredients ing = detail::ingredients(spec, x, y, backend);
  return detail::fundamental_with(spec, ing, x, y, backend);
}

// ==== spray =====================================================================

namespace detail {

/// Spray value at plain doubles for the requested backend. The dual route is
/// spray_generic; the fd route reassembles G from 4th-order stencil jets of
/// the (x, y) |-> F^2 map and the supplied fundamental tensor.
inline Vec<double> spray_value(const MetricSpec& spec, const Point& x,
                               const Vec<double>& y, const Mat<double>& g_inv,
                               Backend backend) {
  const int n = spec.n;
  if (backend == Backend::dual) return spray_generic<double>(spec, x, y);

  SmoothMap f2xy(2 * n, 1, [spec, n](auto zs, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    Vec<T> xt(static_cast<size_t>(n)), yt(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      xt[static_cast<size_t>(k)] = zs[static_cast<size_t>(k)];
      yt[static_cast<size_t>(k)] = zs[static_cast<size_t>(n + k)];
    }
    out[0] = f2_value(spec, xt, yt);
  });
  Point z(static_cast<size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    z[static_cast<size_t>(k)] = x[static_cast<size_t>(k)];
    z[static_cast<size_t>(n + k)] = y[static_cast<size_t>(k)];
  }
  JetTable jt = evaluate_jet(f2xy, z, 2, Backend::fd);
  Vec<double> rhs(static_cast<size_t>(n), 0.0);
  for (int l = 0; l < n; ++l) {
    double mixed = 0;
    for (int m = 0; m < n; ++m) mixed += jt.d2(0, m, n + l) * y[static_cast<size_t>(m)];
    rhs[static_cast<size_t>(l)] = 0.25 * (mixed - jt.d1(0, l));
  }
  return matvec(g_inv, rhs);
}

inline Vec<double> spray_alpha(const AlphaData& al, const Vec<double>& y) {
  const int n = al.n;
  Vec<double> gb(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        s += al.gamma(i, j, k) * y[static_cast<size_t>(j)] * y[static_cast<size_t>(k)];
    gb[static_cast<size_t>(i)] = 0.5 * s;
  }
  return gb;
}

}  // namespace detail

/// Spray coefficients of F (and of alpha). In-op: the generic jet route must
/// match the Randers closed form through the deformation tensors.
struct SprayCoefficients {
  Vec<double> G;      // spray of F
  Vec<double> G_bar;  // spray of alpha
};

inline SprayCoefficients spray(const MetricSpec& spec, const Point& x,
                               const Vec<double>& y, Backend backend = Backend::dual) {
  detail::Ingredients ing = detail::ingredients(spec, x, y, backend);
  FundamentalTensor ft = detail::fundamental_with(spec, ing, x, y, backend);
  SprayCoefficients sp;
  sp.G_bar = detail::spray_alpha(ing.al, y);
  sp.G = detail::spray_value(spec, x, y, ft.g_inv, backend);
  Vec<double> gc = detail::spray_closed(ing, sp.G_bar);
  const double tol = backend == Backend::dual ? 1e-8 : 1e-6;
  if (detail::max_abs_gap(sp.G, gc) > tol * (1.0 + detail::max_abs_of(sp.G)))
    throw NumericError("spray: generic path and closed form disagree");
  return sp;
}

// ==== spray jets and Riemann curvature ==========================================

struct SprayCurvature {
  int n = 0;
  Point x;
  Vec<double> y;
  double F = 0;
  Mat<double> g, g_inv;
  double det_g = 0;
  Vec<double> G, G_bar;    // spray coefficients of F and of alpha
  Mat<double> N, N_bar;    // N^i_j = dG^i/dy^j,  Nbar^i_j = Gamma^i_jk y^k
  Mat<double> dG_x;        // dG^i/dx^k
  Tens3<double> d2G_yy;    // d2 G^i / dy^j dy^k
  Tens3<double> d2G_xy;    // d2 G^i / dx^m dy^k
  Tens4<double> d3G_yyy;   // d3 G^i / dy^j dy^k dy^l
  Mat<double> R;           // R^i_k
  double ric = 0;          // R^m_m
};

namespace detail {

/// Killing-case closed form for the nonlinear connection:
///   N^i_j = Nbar^i_j + y_j s^i_0 / alpha + alpha s^i_j
///         + s0 y^i (y_j + alpha b_j) / F^2
///         - [ y_j s0 y^i / alpha + alpha y^i s_j + alpha s0 delta^i_j ] / F.
inline Mat<double> connection_closed_killing(const Ingredients& ing,
                                             const Mat<double>& n_bar) {
  const int n = ing.al.n;
  const double al = ing.c.alpha, F = ing.F, s0 = ing.c.s0;
  Mat<double> N(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const size_t is = static_cast<size_t>(i), js = static_cast<size_t>(j);
      double yj = ing.c.y_low[js], yi_up = ing.c.y[is];
      double v = n_bar(i, j);
      v += yj * ing.c.s_up0[is] / al + al * ing.be.s_up(i, j);
      v += s0 * yi_up * (yj + al * ing.be.b[js]) / (F * F);
      v -= (yj * s0 * yi_up / al + al * yi_up * ing.be.s_vec[js] +
            al * s0 * (i == j ? 1.0 : 0.0)) / F;
      N(i, j) = v;
    }
  return N;
}

}  // namespace detail

inline SprayCurvature spray_curvature(const MetricSpec& spec, const Point& x,
                                      const Vec<double>& y,
                                      Backend backend = Backend::dual) {
  const int n = spec.n;
  detail::Ingredients ing = detail::ingredients(spec, x, y, backend);
  FundamentalTensor ft = detail::fundamental_with(spec, ing, x, y, backend);

  SprayCurvature sc;
  sc.n = n;
  sc.x = x;
  sc.y = y;
  sc.F = ft.F;
  sc.g = ft.g;
  sc.g_inv = ft.g_inv;
  sc.det_g = ft.det_g;
  sc.G_bar = detail::spray_alpha(ing.al, y);
  sc.G = detail::spray_value(spec, x, y, ft.g_inv, backend);
  {
    Vec<double> gc = detail::spray_closed(ing, sc.G_bar);
    const double tol = backend == Backend::dual ? 1e-8 : 1e-6;
    if (detail::max_abs_gap(sc.G, gc) > tol * (1.0 + detail::max_abs_of(sc.G)))
      throw NumericError("spray: generic path and closed form disagree");
  }

  // Jets of G. The fd backend differences the exactly-evaluated dual spray;
  // the dual backend re-instantiates the spray kernel on towers.
  SmoothMap g2n;
  if (backend == Backend::dual) {
    g2n = SmoothMap(2 * n, n, [spec, n](auto zs, auto out) {
      using T = std::remove_cvref_t<decltype(out[0])>;
      Vec<T> xt(static_cast<size_t>(n)), yt(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) {
        xt[static_cast<size_t>(k)] = zs[static_cast<size_t>(k)];
        yt[static_cast<size_t>(k)] = zs[static_cast<size_t>(n + k)];
      }
      Vec<T> g = detail::spray_generic(spec, xt, yt);
      for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = g[static_cast<size_t>(i)];
    });
  } else {
    g2n.in_dim = 2 * n;
    g2n.out_dim = n;
    g2n.f0 = [spec, n](std::span<const D0> zs, std::span<D0> out) {
      Vec<double> xt(zs.begin(), zs.begin() + n), yt(zs.begin() + n, zs.end());
      Vec<double> g = detail::spray_generic<double>(spec, xt, yt);
      for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = g[static_cast<size_t>(i)];
    };
  }
  Point z(static_cast<size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    z[static_cast<size_t>(k)] = x[static_cast<size_t>(k)];
    z[static_cast<size_t>(n + k)] = y[static_cast<size_t>(k)];
  }
  JetTable jg = evaluate_jet(g2n, z, 2, backend);

  sc.N = Mat<double>(n, n);
  sc.dG_x = Mat<double>(n, n);
  sc.d2G_yy = Tens3<double>(n, n, n);
  sc.d2G_xy = Tens3<double>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      sc.dG_x(i, k) = jg.d1(i, k);
      sc.N(i, k) = jg.d1(i, n + k);
      for (int m = 0; m < n; ++m) {
        sc.d2G_xy(i, m, k) = jg.d2(i, m, n + k);
        sc.d2G_yy(i, m, k) = jg.d2(i, n + m, n + k);
      }
    }

  // Third y-derivatives from an order-3 jet of G(x, .) with x frozen.
  SmoothMap gy;
  if (backend == Backend::dual) {
    gy = SmoothMap(n, n, [spec, x, n](auto ys, auto out) {
      using T = std::remove_cvref_t<decltype(out[0])>;
      Vec<T> xt(x.size()), yt(ys.begin(), ys.end());
      for (size_t k = 0; k < x.size(); ++k) xt[k] = T(x[k]);
      Vec<T> g = detail::spray_generic(spec, xt, yt);
      for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = g[static_cast<size_t>(i)];
    });
  } else {
    gy.in_dim = n;
    gy.out_dim = n;
    gy.f0 = [spec, x, n](std::span<const D0> ys, std::span<D0> out) {
      Vec<double> yt(ys.begin(), ys.end());
      Vec<double> g = detail::spray_generic<double>(spec, x, yt);
      for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = g[static_cast<size_t>(i)];
    };
  }
  JetTable jy = evaluate_jet(gy, y, 3, backend);
  sc.d3G_yyy = jy.d3;

  sc.N_bar = Mat<double>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += ing.al.gamma(i, j, k) * y[static_cast<size_t>(k)];
      sc.N_bar(i, j) = s;
    }

  if (detail::locally_killing(ing.be)) {
    Mat<double> nc = detail::connection_closed_killing(ing, sc.N_bar);
    double gap = 0, scale = 0;
    for (size_t k = 0; k < nc.a.size(); ++k) {
      gap = std::max(gap, std::abs(sc.N.a[k] - nc.a[k]));
      scale = std::max(scale, std::abs(sc.N.a[k]));
    }
    const double tol = backend == Backend::dual ? 1e-8 : 1e-6;
    if (gap > tol * (1.0 + scale))
      throw NumericError("nonlinear connection: jet path and closed form disagree");
  }

  // R^i_k = 2 dG^i/dx^k - y^m d2G^i/dx^m dy^k + 2 G^m d2G^i/dy^m dy^k
  //         - dG^i/dy^m dG^m/dy^k.
  sc.R = Mat<double>(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double v = 2.0 * sc.dG_x(i, k);
      for (int m = 0; m < n; ++m) {
        v -= y[static_cast<size_t>(m)] * sc.d2G_xy(i, m, k);
        v += 2.0 * sc.G[static_cast<size_t>(m)] * sc.d2G_yy(i, m, k);
        v -= sc.N(i, m) * sc.N(m, k);
      }
      sc.R(i, k) = v;
    }
  for (int m = 0; m < n; ++m) sc.ric += sc.R(m, m);
  return sc;
}

// ==== flag curvature ============================================================

/// K(x, y, u) = g(R_y u, u) / ( F^2 g(u,u) - g(y,u)^2 ). The flag must be
/// genuinely two-dimensional: u not parallel to y in the g-inner product.
inline double flag_curvature(const SprayCurvature& sc, const Vec<double>& u) {
  const int n = sc.n;
  Vec<double> Ru(static_cast<size_t>(n), 0.0), gu(static_cast<size_t>(n), 0.0),
      gy(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Ru[static_cast<size_t>(i)] += sc.R(i, k) * u[static_cast<size_t>(k)];
      gu[static_cast<size_t>(i)] += sc.g(i, k) * u[static_cast<size_t>(k)];
      gy[static_cast<size_t>(i)] += sc.g(i, k) * sc.y[static_cast<size_t>(k)];
    }
  const double num = dot(gu, Ru);  // g symmetric: g(R_y u, u) = (g u) . (R u)
  const double guu = dot(gu, u), guy = dot(gy, u);
  const double f2 = sc.F * sc.F;
  const double den = f2 * guu - guy * guy;
  if (den <= 1e-12 * std::max(f2 * guu, 1e-300))
    throw DomainError("flag is degenerate (u parallel to y)");
  return num / den;
}

inline double flag_curvature(const MetricSpec& spec, const Point& x,
                             const Vec<double>& y, const Vec<double>& u,
                             Backend backend = Backend::dual) {
  return flag_curvature(spray_curvature(spec, x, y, backend), u);
}

struct FlagStatistics {
  double mean = 0;
  double variance = 0;   // sample variance over the drawn flags
  double residual = 0;   // || R - mean * (F^2 id - F F_y (x) y) ||_F / ||R||_F
  int flags = 0;
};

/// Flag curvatures across `m` seeded transverse directions at one (x, y).
/// Directions are drawn on the unit sphere, then g-orthogonalized against y.
inline FlagStatistics scalar_flag_variance(const MetricSpec& spec, const Point& x,
                                           const Vec<double>& y, int m,
                                           std::uint64_t seed = 0x5eed5eedULL,
                                           Backend backend = Backend::dual) {
  if (m < 2) throw Error("scalar_flag_variance needs at least 2 flags");
  SprayCurvature sc = spray_curvature(spec, x, y, backend);
  const int n = sc.n;
  Rng rng(seed);
  Vec<double> ks;
  ks.reserve(static_cast<size_t>(m));
  int guard = 0;
  while (static_cast<int>(ks.size()) < m) {
    if (++guard > 100 * m + 1000)
      throw NumericError("flag sampling failed to find transverse directions");
    Vec<double> u = rng.unit_vector(n);
    double guy = 0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        guy += u[static_cast<size_t>(i)] * sc.g(i, k) * sc.y[static_cast<size_t>(k)];
    for (int i = 0; i < n; ++i)
      u[static_cast<size_t>(i)] -= guy / (sc.F * sc.F) * sc.y[static_cast<size_t>(i)];
    double guu = 0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        guu += u[static_cast<size_t>(i)] * sc.g(i, k) * u[static_cast<size_t>(k)];
    if (guu < 1e-10) continue;
    ks.push_back(flag_curvature(sc, u));
  }
  FlagStatistics st;
  st.flags = m;
  for (double k : ks) st.mean += k;
  st.mean /= m;
  for (double k : ks) st.variance += (k - st.mean) * (k - st.mean);
  st.variance /= (m - 1);

  // Residual of the scalar-flag-curvature shape R^i_k = K (F^2 d^i_k - F F_yk y^i).
  detail::Ingredients ing = detail::ingredients(spec, x, y, backend);
  double rnorm = 0, gap = 0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double fyk = ing.c.y_low[static_cast<size_t>(k)] / ing.c.alpha +
                   ing.be.b[static_cast<size_t>(k)];
      double model = st.mean * (sc.F * sc.F * (i == k ? 1.0 : 0.0) -
                                sc.F * fyk * sc.y[static_cast<size_t>(i)]);
      rnorm += sc.R(i, k) * sc.R(i, k);
      gap += (sc.R(i, k) - model) * (sc.R(i, k) - model);
    }
  st.residual = std::sqrt(gap) / (std::sqrt(rnorm) + 1e-30);
  return st;
}

/// y-gradient of the sampled mean flag curvature (4th-order stencils; the
/// flag draws are frozen by the seed so the map is smooth in y).
inline Vec<double> flag_curvature_gradient(const MetricSpec& spec, const Point& x,
                                           const Vec<double>& y, int m,
                                           std::uint64_t seed = 0x5eed5eedULL,
                                           Backend backend = Backend::dual) {
  const int n = spec.n;
  SmoothMap kmap;
  kmap.in_dim = n;
  kmap.out_dim = 1;
  kmap.f0 = [spec, x, m, seed, backend](std::span<const D0> ys, std::span<D0> out) {
    Vec<double> yv(ys.begin(), ys.end());
    out[0] = scalar_flag_variance(spec, x, yv, m, seed, backend).mean;
  };
  JetTable jt = evaluate_jet(kmap, y, 1, Backend::fd);
  Vec<double> grad(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) grad[static_cast<size_t>(i)] = jt.d1(0, i);
  return grad;
}

// ==== S-curvature ===============================================================

struct SCurvature {
  double S = 0;             // (n+1) ( e00 / (2F) - (s0 + rho0) )
  double S_definition = 0;  // tr N - y^m d_m ln sigma_BH (independent route)
  double tau = 0;           // ln( sqrt(det g) / sigma_bh )
  double rho0 = 0;          // rho_m y^m
  Vec<double> rho;          // rho_m = d_m ln sqrt(1 - b2)
  double sigma_bh = 0;      // (1 - b2)^{(n+1)/2} sqrt(det a)
};

inline SCurvature s_curvature(const MetricSpec& spec, const Point& x,
                              const Vec<double>& y, Backend backend = Backend::dual) {
  const int n = spec.n;
  detail::Ingredients ing = detail::ingredients(spec, x, y, backend);
  FundamentalTensor ft = detail::fundamental_with(spec, ing, x, y, backend);

  SCurvature s;
  if (ing.be.b2 >= 1.0 - 1e-12)
    throw NumericError("||beta|| reaches 1; volume normalization undefined");

  // rho_m from an x-jet of the scalar field b2(x) = a^{ij} b_i b_j.
  SmoothMap b2map(n, 1, [spec](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    Vec<T> xt(xs.begin(), xs.end());
    Mat<T> ainv = invert(spec.a_at(xt));
    Vec<T> b = spec.b_at(xt);
    T v(0.0);
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j)
        v += ainv(i, j) * b[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    out[0] = v;
  });
  JetTable jb2 = evaluate_jet(b2map, x, 1, backend);
  s.rho = Vec<double>(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    s.rho[static_cast<size_t>(i)] = -jb2.d1(0, i) / (2.0 * (1.0 - ing.be.b2));
  s.rho0 = dot(s.rho, y);

  const double e00 = ing.c.r00 + 2.0 * ing.c.beta * ing.c.s0;
  s.S = (n + 1) * (e00 / (2.0 * ing.F) - (ing.c.s0 + s.rho0));

  s.sigma_bh = std::pow(1.0 - ing.be.b2, 0.5 * (n + 1)) * std::sqrt(ing.al.det_a);
  s.tau = 0.5 * std::log(ft.det_g) - std::log(s.sigma_bh);

  // Definition route: S = dG^m/dy^m - y^m d_m ln sigma_BH.
  double trN = 0;
  if (backend == Backend::dual) {
    using A = Dual<double>;
    Vec<A> xa(x.size()), ya(y.size());
    for (size_t k = 0; k < x.size(); ++k) xa[k] = A(x[k], 0.0);
    for (int midx = 0; midx < n; ++midx) {
      for (int k = 0; k < n; ++k)
        ya[static_cast<size_t>(k)] = A(y[static_cast<size_t>(k)], k == midx ? 1.0 : 0.0);
      trN += detail::spray_generic(spec, xa, ya)[static_cast<size_t>(midx)].du;
    }
  } else {
    SmoothMap gy;
    gy.in_dim = n;
    gy.out_dim = n;
    gy.f0 = [spec, x, n](std::span<const D0> ys, std::span<D0> out) {
      Vec<double> yt(ys.begin(), ys.end());
      Vec<double> g = detail::spray_generic<double>(spec, x, yt);
      for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = g[static_cast<size_t>(i)];
    };
    JetTable jt = evaluate_jet(gy, y, 1, Backend::fd);
    for (int midx = 0; midx < n; ++midx) trN += jt.d1(midx, midx);
  }
  SmoothMap lsmap(n, 1, [spec](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    using std::log;
    Vec<T> xt(xs.begin(), xs.end());
    Mat<T> a = spec.a_at(xt);
    Mat<T> ainv = invert(a);
    Vec<T> b = spec.b_at(xt);
    T b2(0.0);
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j)
        b2 += ainv(i, j) * b[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    out[0] = T(0.5 * (spec.n + 1)) * log(T(1.0) - b2) + T(0.5) * log(det(a));
  });
  JetTable jls = evaluate_jet(lsmap, x, 1, backend);
  double dls = 0;
  for (int midx = 0; midx < n; ++midx) dls += y[static_cast<size_t>(midx)] * jls.d1(0, midx);
  s.S_definition = trN - dls;

  if (std::abs(s.S - s.S_definition) > 1e-6 * (1.0 + std::abs(s.S)))
    throw NumericError("S-curvature: closed form and definition disagree");
  return s;
}

// ==== mean Cartan torsion =======================================================

/// I_i = -Phi (phi - s phi') / (2 Delta phi alpha^2) h_i, with the oracle
/// route I_i = d tau / dy^i enforced in-op.
inline Vec<double> mean_cartan(const MetricSpec& spec, const Point& x,
                               const Vec<double>& y, Backend backend = Backend::dual) {
  const int n = spec.n;
  detail::Ingredients ing = detail::ingredients(spec, x, y, backend);
  PhiMachinery M = phi_machinery(randers_phi(), ing.c.s_ratio, ing.be.b2, n);

  Vec<double> I(static_cast<size_t>(n));
  const double al = ing.c.alpha;
  const double coef = -M.Phi * (M.phi - ing.c.s_ratio * M.phi_p) /
                      (2.0 * M.Delta * M.phi * al * al);
  for (int i = 0; i < n; ++i) {
    double h_i = al * ing.be.b[static_cast<size_t>(i)] -
                 ing.c.s_ratio * ing.c.y_low[static_cast<size_t>(i)];
    I[static_cast<size_t>(i)] = coef * h_i;
  }

  // Oracle: gradient of the distortion tau in y (sigma_BH is y-independent).
  SmoothMap taumap(n, 1, [spec, x](auto ys, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    using std::log;
    Vec<T> xt(x.size()), yt(ys.begin(), ys.end());
    for (size_t k = 0; k < x.size(); ++k) xt[k] = T(x[k]);
    Mat<T> g = detail::g_matrix(spec, xt, yt);
    out[0] = T(0.5) * log(det(g));
  });
  JetTable jt = evaluate_jet(taumap, y, 1, backend);
  double gap = 0;
  for (int i = 0; i < n; ++i)
    gap = std::max(gap, std::abs(I[static_cast<size_t>(i)] - jt.d1(0, i)));
  if (gap > 1e-6 * (1.0 + detail::max_abs_of(I)))
    throw NumericError("mean Cartan torsion: closed form and distortion gradient disagree");
  return I;
}

// ==== mean Landsberg curvature ==================================================

struct MeanLandsberg {
  Tens3<double> L;   // L_ijk = -1/2 F F_{y^m} d3 G^m / dy^i dy^j dy^k
  Vec<double> J;     // J_k = g^{ij} L_ijk
  double J_bar = 0;  // J_i b^i
};

inline MeanLandsberg mean_landsberg(const MetricSpec& spec, const Point& x,
                                    const Vec<double>& y,
                                    Backend backend = Backend::dual) {
  const int n = spec.n;
  detail::Ingredients ing = detail::ingredients(spec, x, y, backend);
  SprayCurvature sc = spray_curvature(spec, x, y, backend);
  PhiMachinery M = phi_machinery(randers_phi(), ing.c.s_ratio, ing.be.b2, n);

  const double al = ing.c.alpha, F = sc.F, s = ing.c.s_ratio, b2 = ing.be.b2;
  Vec<double> fy(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m)
    fy[static_cast<size_t>(m)] =
        ing.c.y_low[static_cast<size_t>(m)] / al + ing.be.b[static_cast<size_t>(m)];

  MeanLandsberg ml;
  ml.L = Tens3<double>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = 0;
        for (int m = 0; m < n; ++m) v += fy[static_cast<size_t>(m)] * sc.d3G_yyy(m, i, j, k);
        ml.L(i, j, k) = -0.5 * F * v;
      }
  ml.J = Vec<double>(static_cast<size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double v = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v += sc.g_inv(i, j) * ml.L(i, j, k);
    ml.J[static_cast<size_t>(k)] = v;
  }
  ml.J_bar = dot(ml.J, ing.be.b_up);

  // Closed form for the b-trace (valid with or without Killing symmetry):
  //   Jbar = -(1 / (2 Delta alpha^2)) { Psi1 (r00 - 2 alpha Q s0)
  //                                     + alpha Psi2 (r0 + s0) }.
  {
    const double r00 = ing.c.r00, s0 = ing.c.s0, r0 = ing.c.r0;
    double jbar_cl = -(M.Psi1 * (r00 - 2.0 * al * M.Q * s0) +
                       al * M.Psi2 * (r0 + s0)) /
                     (2.0 * M.Delta * al * al);
    if (std::abs(ml.J_bar - jbar_cl) > 1e-6 * (1.0 + std::abs(ml.J_bar)))
      throw NumericError("mean Landsberg b-trace: definition and closed form disagree");
  }

  // General closed form for J_i (needs b^2 - s^2 bounded away from 0).
  const double disc = b2 - s * s;
  if (disc > 1e-8 * (1.0 + b2)) {
    const double r00 = ing.c.r00, s0 = ing.c.s0, r0 = ing.c.r0;
    const double QQ = M.Q, Qp = M.Q_p, D = M.Delta, Ph = M.Phi;
    Vec<double> jcl(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      const size_t is = static_cast<size_t>(i);
      double h_i = al * ing.be.b[is] - s * ing.c.y_low[is];
      double term1 = (2.0 * al * al / disc) *
                     (Ph / D + (n + 1) * (QQ + s * Qp)) * (s0 + r0) * h_i;
      double term2 = (al / disc) * (M.Psi1 + s * Ph / D) * (r00 - 2.0 * al * QQ * s0) * h_i;
      double inner = -al * Qp * s0 * h_i +
                     al * QQ * (al * al * ing.be.s_vec[is] - ing.c.y_low[is] * s0) +
                     al * al * D * ing.c.s_i0[is] +
                     al * al * (ing.c.r_i0[is] - 2.0 * al * QQ * ing.be.s_vec[is]) -
                     (r00 - 2.0 * al * QQ * s0) * ing.c.y_low[is];
      double term3 = al * inner * Ph / D;
      jcl[is] = -(term1 + term2 + term3) / (2.0 * D * al * al * al * al);
    }
    if (detail::max_abs_gap(ml.J, jcl) > 1e-6 * (1.0 + detail::max_abs_of(ml.J)))
      throw NumericError("mean Landsberg: definition and general closed form disagree");
  }

  // Killing-case closed form:
  //   J_i = (n+1) / (2 alpha^2 (1+s)) { s0 h_i / (1+s) + alpha (1+s) s_{i0}
  //                                     - alpha^2 s_i + s0 y_i }.
  if (detail::locally_killing(ing.be)) {
    const double s0 = ing.c.s0;
    Vec<double> jcl(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      const size_t is = static_cast<size_t>(i);
      double h_i = al * ing.be.b[is] - s * ing.c.y_low[is];
      jcl[is] = (n + 1) / (2.0 * al * al * (1.0 + s)) *
                (s0 * h_i / (1.0 + s) + al * (1.0 + s) * ing.c.s_i0[is] -
                 al * al * ing.be.s_vec[is] + s0 * ing.c.y_low[is]);
    }
    if (detail::max_abs_gap(ml.J, jcl) > 1e-6 * (1.0 + detail::max_abs_of(ml.J)))
      throw NumericError("mean Landsberg: definition and Killing closed form disagree");
    double jbar_k = (n + 1) * (1.0 + 3.0 * s + b2 + s * s) * s0 /
                    (2.0 * al * (1.0 + s) * (1.0 + s));
    if (std::abs(ml.J_bar - jbar_k) > 1e-6 * (1.0 + std::abs(ml.J_bar)))
      throw NumericError("mean Landsberg b-trace: Killing closed form disagrees");
  }
  return ml;
}

// ==== horizontal derivatives ====================================================

/// Horizontal derivative along y of a field T(x, y) given as a 2n-input map
/// (out_dim 1 for a scalar, n for a covector). Computed as the alpha-covariant
/// derivative contracted with y plus the deformation terms that move the
/// horizontal slots from alpha to F:
///   T_{i|m} y^m = T_{i;m} y^m - T_l (N^l_i - Nbar^l_i)
///                 - 2 (dT_i/dy^l)(G^l - Gbar^l).
/// `field_backend` selects how the field itself is differentiated; fields that
/// are only pointwise-evaluable (f0-only maps) must use Backend::fd.
inline Vec<double> horizontal_derivative_along_y(const MetricSpec& spec,
                                                 const Point& x, const Vec<double>& y,
                                                 const SmoothMap& field, bool covector,
                                                 Backend field_backend = Backend::fd,
                                                 Backend backend = Backend::dual) {
  const int n = spec.n;
  if (field.in_dim != 2 * n || field.out_dim != (covector ? n : 1))
    throw Error("field dimensions do not match the metric");
  SprayCurvature sc = spray_curvature(spec, x, y, backend);

  Point z(static_cast<size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    z[static_cast<size_t>(k)] = x[static_cast<size_t>(k)];
    z[static_cast<size_t>(n + k)] = y[static_cast<size_t>(k)];
  }
  JetTable jt = evaluate_jet(field, z, 1, field_backend);

  const int out = covector ? n : 1;
  Vec<double> along(static_cast<size_t>(out), 0.0);
  for (int i = 0; i < out; ++i) {
    double v = 0;
    for (int m = 0; m < n; ++m) v += y[static_cast<size_t>(m)] * jt.d1(i, m);
    // alpha-covariant part, then the deformation to F-horizontal slots.
    if (covector)
      for (int l = 0; l < n; ++l) v -= jt.value[static_cast<size_t>(l)] * sc.N_bar(l, i);
    for (int l = 0; l < n; ++l) v -= 2.0 * jt.d1(i, n + l) * sc.G_bar[static_cast<size_t>(l)];
    if (covector)
      for (int l = 0; l < n; ++l)
        v -= jt.value[static_cast<size_t>(l)] * (sc.N(l, i) - sc.N_bar(l, i));
    for (int l = 0; l < n; ++l)
      v -= 2.0 * jt.d1(i, n + l) *
           (sc.G[static_cast<size_t>(l)] - sc.G_bar[static_cast<size_t>(l)]);
    along[static_cast<size_t>(i)] = v;
  }
  return along;
}

/// Full horizontal gradient of a scalar field: delta T / delta x^i
///   = dT/dx^i - N^l_i dT/dy^l.
inline Vec<double> horizontal_gradient(const MetricSpec& spec, const Point& x,
                                       const Vec<double>& y, const SmoothMap& field,
                                       Backend field_backend = Backend::fd,
                                       Backend backend = Backend::dual) {
  const int n = spec.n;
  if (field.in_dim != 2 * n || field.out_dim != 1)
    throw Error("field dimensions do not match the metric");
  SprayCurvature sc = spray_curvature(spec, x, y, backend);
  Point z(static_cast<size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    z[static_cast<size_t>(k)] = x[static_cast<size_t>(k)];
    z[static_cast<size_t>(n + k)] = y[static_cast<size_t>(k)];
  }
  JetTable jt = evaluate_jet(field, z, 1, field_backend);
  Vec<double> grad(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double v = jt.d1(0, i);
    for (int l = 0; l < n; ++l) v -= sc.N(l, i) * jt.d1(0, n + l);
    grad[static_cast<size_t>(i)] = v;
  }
  return grad;
}

// ==== geodesics =================================================================

struct GeodesicSample {
  double t = 0;
  Point x;
  Vec<double> y;
  double F = 0;
};

struct GeodesicTrace {
  Vec<GeodesicSample> samples;
  bool exited = false;    // left the declared domain before time T
  double exit_time = 0;   // first sample time outside the domain
};

/// Classical RK4 on (x', y') = (y, -2 G(x, y)). Steps are rejected (the whole
/// trace throws) if F drifts by more than 1e-3 relative to its initial value;
/// leaving the domain box ends the trace gracefully with the exit time.
inline GeodesicTrace geodesic_trace(const MetricSpec& spec, const Point& x0,
                                    const Vec<double>& y0, double T, double h) {
  const int n = spec.n;
  if (!(T > 0) || !(h > 0)) throw Error("geodesic trace needs T > 0 and h > 0");
  if (!spec.in_domain(x0)) throw DomainError("geodesic start lies outside the domain");

  auto f_of = [&](const Point& x, const Vec<double>& y) {
    using std::sqrt;
    Mat<double> a = spec.a_at(x);
    Vec<double> b = spec.b_at(x);
    double a2 = 0, be = 0;
    for (int i = 0; i < n; ++i) {
      be += b[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
      for (int j = 0; j < n; ++j)
        a2 += a(i, j) * y[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
    }
    return sqrt(a2) + be;
  };
  auto rhs = [&](const Point& x, const Vec<double>& y, Point& dx, Vec<double>& dy) {
    Vec<double> G = detail::spray_generic<double>(spec, x, y);
    for (int i = 0; i < n; ++i) {
      dx[static_cast<size_t>(i)] = y[static_cast<size_t>(i)];
      dy[static_cast<size_t>(i)] = -2.0 * G[static_cast<size_t>(i)];
    }
  };

  const long steps = std::max(1L, std::lround(std::ceil(T / h - 1e-12)));
  const double dt = T / static_cast<double>(steps);

  GeodesicTrace tr;
  Point x = x0;
  Vec<double> y = y0;
  const double F0 = f_of(x0, y0);
  tr.samples.push_back({0.0, x, y, F0});

  Point k1x(x.size()), k2x(x.size()), k3x(x.size()), k4x(x.size()), xt(x.size());
  Vec<double> k1y(y.size()), k2y(y.size()), k3y(y.size()), k4y(y.size()), yt(y.size());
  for (long st = 1; st <= steps; ++st) {
    const double t = dt * static_cast<double>(st);
    try {
      rhs(x, y, k1x, k1y);
      for (size_t i = 0; i < x.size(); ++i) {
        xt[i] = x[i] + 0.5 * dt * k1x[i];
        yt[i] = y[i] + 0.5 * dt * k1y[i];
      }
      rhs(xt, yt, k2x, k2y);
      for (size_t i = 0; i < x.size(); ++i) {
        xt[i] = x[i] + 0.5 * dt * k2x[i];
        yt[i] = y[i] + 0.5 * dt * k2y[i];
      }
      rhs(xt, yt, k3x, k3y);
      for (size_t i = 0; i < x.size(); ++i) {
        xt[i] = x[i] + dt * k3x[i];
        yt[i] = y[i] + dt * k3y[i];
      }
      rhs(xt, yt, k4x, k4y);
      for (size_t i = 0; i < x.size(); ++i) {
        x[i] += dt / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
        y[i] += dt / 6.0 * (k1y[i] + 2.0 * k2y[i] + 2.0 * k3y[i] + k4y[i]);
      }
    } catch (const Error&) {
      // Evaluation failed mid-step: the trajectory ran off the smooth chart.
      tr.exited = true;
      tr.exit_time = t;
      return tr;
    }
    if (!spec.in_domain(x)) {
      tr.exited = true;
      tr.exit_time = t;
      return tr;
    }
    const double F = f_of(x, y);
    if (std::abs(F - F0) > 1e-3 * std::abs(F0))
      throw NumericError("geodesic step rejected: F drifted beyond 1e-3 relative"
                         " (reduce the step size)");
    tr.samples.push_back({t, x, y, F});
  }
  return tr;
}

// ==== Busemann-Hausdorff volume form ============================================

struct BhVolume {
  double closed = 0;     // (1 - b2)^{(n+1)/2} sqrt(det a)
  double mc = 0;         // Vol(B^n) / Vol{ y : F(x, y) < 1 }, Monte-Carlo
  long hits = 0;
  long samples = 0;
};

inline BhVolume bh_volume(const MetricSpec& spec, const Point& x, long samples,
                          std::uint64_t seed = 0x5eed5eedULL) {
  if (samples < 1) throw Error("bh_volume needs at least one sample");
  const int n = spec.n;
  AlphaData al = alpha_at(spec, x);
  BetaData be = beta_at(spec, x, al);
  if (be.b2 >= 1.0 - 1e-12)
    throw NumericError("||beta|| reaches 1; volume normalization undefined");

  BhVolume v;
  v.samples = samples;
  v.closed = std::pow(1.0 - be.b2, 0.5 * (n + 1)) * std::sqrt(al.det_a);

  // F(y) >= (1 - ||beta||) sqrt(lambda_min) |y|, so the unit ball of F fits in
  // the cube of half-width R below.
  const double lmin = sym_eigenvalues(al.a)[0];
  const double R = 1.0 / ((1.0 - std::sqrt(be.b2)) * std::sqrt(lmin));
  Rng rng(seed);
  Vec<double> yv(static_cast<size_t>(n));
  for (long s = 0; s < samples; ++s) {
    for (auto& c : yv) c = rng.uniform(-R, R);
    double a2 = 0, by = 0;
    for (int i = 0; i < n; ++i) {
      by += be.b[static_cast<size_t>(i)] * yv[static_cast<size_t>(i)];
      for (int j = 0; j < n; ++j)
        a2 += al.a(i, j) * yv[static_cast<size_t>(i)] * yv[static_cast<size_t>(j)];
    }
    if (std::sqrt(a2) + by < 1.0) ++v.hits;
  }
  const double vol_f = std::pow(2.0 * R, n) * static_cast<double>(v.hits) /
                       static_cast<double>(samples);
  const double vol_ball = std::pow(std::numbers::pi, 0.5 * n) /
                          std::tgamma(0.5 * n + 1.0);
  if (vol_f <= 0) throw NumericError("Monte-Carlo volume estimate is zero");
  v.mc = vol_ball / vol_f;
  return v;
}

}  // namespace randers
