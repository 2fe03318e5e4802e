#pragma once

/// Riemannian data of alpha at a point: metric, inverse, Christoffel symbols
/// with their first x-derivatives, curvature tensor, and Ricci tensor.
///
/// Conventions (locked by the unit-sphere and identity tests, not by prose):
///   Gamma^i_jk = 1/2 a^il (d_k a_lj + d_j a_lk - d_l a_jk)
///   R^i_jkl    = d_k Gamma^i_jl - d_l Gamma^i_jk
///                + Gamma^i_km Gamma^m_jl - Gamma^i_lm Gamma^m_jk
///   Ric_jl     = R^i_jil          (unit sphere: Ric = (n-1) a)

#include "randers/jet.hpp"
#include "randers/linalg.hpp"
#include "randers/metric_spec.hpp"

namespace randers {

struct AlphaData {
  int n = 0;
  Point x;
  Mat<double> a, a_inv;
  double det_a = 0;
  Tens3<double> da;          // d a_ij / d x^k       [i][j][k]
  Tens4<double> d2a;         // d^2 a_ij / dx^k dx^l [i][j][k][l]
  Tens3<double> gamma;       // Gamma^i_jk
  Tens4<double> dgamma;      // d Gamma^i_jk / d x^l
  Tens4<double> riemann;     // R^i_jkl
  Tens4<double> riemann_low; // R_ijkl = a_im R^m_jkl
  Mat<double> ricci;         // Ric_jl
};

inline AlphaData alpha_at(const MetricSpec& spec, const Point& x,
                          Backend backend = Backend::dual) {
  const int n = spec.n;
  AlphaData out;
  out.n = n;
  out.x = x;

  JetTable jet = evaluate_jet(spec.a_map(), x, 2, backend);
  out.a = Mat<double>(n, n);
  out.da = Tens3<double>(n, n, n);
  out.d2a = Tens4<double>(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int o = i * n + j;
      out.a(i, j) = jet.value[static_cast<size_t>(o)];
      for (int k = 0; k < n; ++k) {
        out.da(i, j, k) = jet.d1(o, k);
        for (int l = 0; l < n; ++l) out.d2a(i, j, k, l) = jet.d2(o, k, l);
      }
    }

  if (!is_spd(out.a))
    throw NumericError("a_ij is not positive definite at the evaluation point");
  out.a_inv = invert(out.a);
  out.det_a = det(out.a);

  out.gamma = Tens3<double>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double g = 0;
        for (int l = 0; l < n; ++l)
          g += out.a_inv(i, l) *
               (out.da(l, j, k) + out.da(l, k, j) - out.da(j, k, l));
        g *= 0.5;
        out.gamma(i, j, k) = g;
        out.gamma(i, k, j) = g;
      }

  // d a^il / dx^m = -a^ip (d a_pq / dx^m) a^ql, used for dGamma.
  Tens3<double> dainv(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) {
        double v = 0;
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            v -= out.a_inv(i, p) * out.da(p, q, m) * out.a_inv(q, l);
        dainv(i, l, m) = v;
      }

  out.dgamma = Tens4<double>(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          double g = 0;
          for (int l = 0; l < n; ++l) {
            g += dainv(i, l, m) *
                 (out.da(l, j, k) + out.da(l, k, j) - out.da(j, k, l));
            g += out.a_inv(i, l) *
                 (out.d2a(l, j, k, m) + out.d2a(l, k, j, m) - out.d2a(j, k, l, m));
          }
          g *= 0.5;
          out.dgamma(i, j, k, m) = g;
          out.dgamma(i, k, j, m) = g;
        }

  out.riemann = Tens4<double>(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          double v = out.dgamma(i, j, l, k) - out.dgamma(i, j, k, l);
          for (int m = 0; m < n; ++m)
            v += out.gamma(i, k, m) * out.gamma(m, j, l) -
                 out.gamma(i, l, m) * out.gamma(m, j, k);
          out.riemann(i, j, k, l) = v;
          out.riemann(i, j, l, k) = -v;
        }

  out.riemann_low = Tens4<double>(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0;
          for (int m = 0; m < n; ++m) v += out.a(i, m) * out.riemann(m, j, k, l);
          out.riemann_low(i, j, k, l) = v;
        }

  out.ricci = Mat<double>(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double v = 0;
      for (int i = 0; i < n; ++i) v += out.riemann(i, j, i, l);
      out.ricci(j, l) = v;
    }

  return out;
}

}  // namespace randers
