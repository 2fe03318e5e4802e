#pragma once

/// All beta-derived tensors at a point: covariant derivatives of b_i to
/// second order, the r/s/q/t families with raised and b-contracted variants,
/// covariant derivatives of s, and the divergence covector D_k = s^m_{k;m}.
///
/// Splitting convention: b_{i;j} = r_ij + s_ij with r symmetric and s
/// antisymmetric, s_j = b^i s_ij, t_ij = s_im s^m_j, q_ij = r_im s^m_j.

#include "randers/alpha.hpp"

namespace randers {

struct BetaData {
  int n = 0;
  Vec<double> b;        // b_i
  Vec<double> b_up;     // b^i
  double b2 = 0;        // ||beta||^2_alpha
  Mat<double> db;       // d b_i / d x^j
  Tens3<double> d2b;    // d^2 b_i / dx^j dx^k
  Mat<double> nabla_b;  // b_{i;j}
  Tens3<double> nabla2_b;  // b_{i;j;k}
  Mat<double> r, s;        // r_ij, s_ij
  Mat<double> r_up, s_up;  // r^i_j, s^i_j
  Vec<double> r_vec, s_vec;  // r_j, s_j
  Mat<double> q, t;          // q_ij, t_ij
  Vec<double> q_vec, t_vec;  // q_j, t_j
  Tens3<double> nabla_r;     // r_{ij;k}
  Tens3<double> nabla_s;     // s_{ij;k}
  Mat<double> s_cov;         // s_{j;k}
  Vec<double> div_s;         // D_k = s^m_{k;m}
};

inline BetaData beta_at(const MetricSpec& spec, const Point& x,
                        const AlphaData& al, Backend backend = Backend::dual) {
  const int n = spec.n;
  BetaData out;
  out.n = n;

  JetTable jet = evaluate_jet(spec.b_map(), x, 2, backend);
  out.b = jet.value;
  out.db = Mat<double>(n, n);
  out.d2b = Tens3<double>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.db(i, j) = jet.d1(i, j);
      for (int k = 0; k < n; ++k) out.d2b(i, j, k) = jet.d2(i, j, k);
    }

  out.b_up = matvec(al.a_inv, out.b);
  out.b2 = dot(out.b, out.b_up);

  out.nabla_b = Mat<double>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = out.db(i, j);
      for (int l = 0; l < n; ++l) v -= out.b[static_cast<size_t>(l)] * al.gamma(l, i, j);
      out.nabla_b(i, j) = v;
    }

  // d b_{i;j} / d x^k, the ingredient of all second covariant derivatives.
  Tens3<double> d_nabla_b(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = out.d2b(i, j, k);
        for (int l = 0; l < n; ++l)
          v -= out.db(l, k) * al.gamma(l, i, j) +
               out.b[static_cast<size_t>(l)] * al.dgamma(l, i, j, k);
        d_nabla_b(i, j, k) = v;
      }

  out.nabla2_b = Tens3<double>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = d_nabla_b(i, j, k);
        for (int l = 0; l < n; ++l)
          v -= out.nabla_b(l, j) * al.gamma(l, i, k) +
               out.nabla_b(i, l) * al.gamma(l, j, k);
        out.nabla2_b(i, j, k) = v;
      }

  out.r = Mat<double>(n, n);
  out.s = Mat<double>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.r(i, j) = 0.5 * (out.nabla_b(i, j) + out.nabla_b(j, i));
      out.s(i, j) = 0.5 * (out.nabla_b(i, j) - out.nabla_b(j, i));
    }

  auto raise_first = [&](const Mat<double>& m) {
    Mat<double> up(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = 0;
        for (int l = 0; l < n; ++l) v += al.a_inv(i, l) * m(l, j);
        up(i, j) = v;
      }
    return up;
  };
  out.r_up = raise_first(out.r);
  out.s_up = raise_first(out.s);

  auto contract_b = [&](const Mat<double>& m) {
    Vec<double> v(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(j)] += out.b_up[static_cast<size_t>(i)] * m(i, j);
    return v;
  };
  out.r_vec = contract_b(out.r);
  out.s_vec = contract_b(out.s);

  out.q = Mat<double>(n, n);
  out.t = Mat<double>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double qv = 0, tv = 0;
      for (int m = 0; m < n; ++m) {
        qv += out.r(i, m) * out.s_up(m, j);
        tv += out.s(i, m) * out.s_up(m, j);
      }
      out.q(i, j) = qv;
      out.t(i, j) = tv;
    }
  out.q_vec = contract_b(out.q);
  out.t_vec = contract_b(out.t);

  // Covariant derivatives of r and s from d(b_{i;j}) by symmetrization.
  out.nabla_r = Tens3<double>(n, n, n);
  out.nabla_s = Tens3<double>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double dr = 0.5 * (d_nabla_b(i, j, k) + d_nabla_b(j, i, k));
        double ds = 0.5 * (d_nabla_b(i, j, k) - d_nabla_b(j, i, k));
        for (int l = 0; l < n; ++l) {
          double rc = out.r(l, j) * al.gamma(l, i, k) + out.r(i, l) * al.gamma(l, j, k);
          double sc = out.s(l, j) * al.gamma(l, i, k) + out.s(i, l) * al.gamma(l, j, k);
          dr -= rc;
          ds -= sc;
        }
        out.nabla_r(i, j, k) = dr;
        out.nabla_s(i, j, k) = ds;
      }

  // s_{j;k} by the product rule: b^i_{;k} s_ij + b^i s_{ij;k}, with
  // b^i_{;k} = r^i_k + s^i_k.
  out.s_cov = Mat<double>(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double v = 0;
      for (int i = 0; i < n; ++i) {
        v += (out.r_up(i, k) + out.s_up(i, k)) * out.s(i, j);
        v += out.b_up[static_cast<size_t>(i)] * out.nabla_s(i, j, k);
      }
      out.s_cov(j, k) = v;
    }

  out.div_s = Vec<double>(static_cast<size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double v = 0;
    for (int m = 0; m < n; ++m)
      for (int l = 0; l < n; ++l) v += al.a_inv(m, l) * out.nabla_s(l, k, m);
    out.div_s[static_cast<size_t>(k)] = v;
  }

  return out;
}

// ---- y-contractions --------------------------------------------------------------

struct DirectionalContractions {
  Vec<double> y;
  Vec<double> y_low;   // y_i = a_ij y^j
  double alpha = 0;    // sqrt(a_ij y^i y^j)
  double beta = 0;     // b_i y^i
  double s_ratio = 0;  // beta / alpha
  double s0 = 0;       // s_j y^j
  double r0 = 0;       // r_j y^j
  double t0 = 0;       // t_j y^j
  double q0 = 0;       // q_j y^j
  Vec<double> s_i0;    // s_ij y^j
  Vec<double> s_up0;   // s^i_j y^j
  Vec<double> r_i0;    // r_ij y^j
  double r00 = 0;      // r_ij y^i y^j
  double t00 = 0;      // t_ij y^i y^j
  double s00_cov = 0;  // s_{i;j} y^i y^j
  double sm0m = 0;     // s^m_{0;m} = D_k y^k
};

inline DirectionalContractions contract_with_y(const BetaData& be,
                                               const AlphaData& al,
                                               const Vec<double>& y) {
  const int n = be.n;
  double ynorm = norm2(y), xnorm = norm2(al.x);
  if (ynorm < 1e-8 * (1 + xnorm))
    throw DomainError("direction y is degenerate (norm below threshold)");

  DirectionalContractions c;
  c.y = y;
  c.y_low = matvec(al.a, y);
  double a2 = dot(c.y_low, y);
  if (a2 <= 0) throw NumericError("alpha^2 <= 0 (metric not positive along y)");
  c.alpha = std::sqrt(a2);
  c.beta = dot(be.b, y);
  c.s_ratio = c.beta / c.alpha;

  c.s0 = dot(be.s_vec, y);
  c.r0 = dot(be.r_vec, y);
  c.t0 = dot(be.t_vec, y);
  c.q0 = dot(be.q_vec, y);
  c.s_i0 = matvec(be.s, y);
  c.s_up0 = matvec(be.s_up, y);
  c.r_i0 = matvec(be.r, y);
  c.r00 = dot(c.r_i0, y);
  c.t00 = dot(matvec(be.t, y), y);
  c.s00_cov = dot(matvec(be.s_cov, y), y);
  c.sm0m = dot(be.div_s, y);
  return c;
}

// ---- identities -------------------------------------------------------------------

/// Divergence identity residual: the contracted Ricci identity expresses
/// s^i_{0;i} through the alpha-Ricci curvature and r-derivatives,
///   s^i_{0;i} = Ric_jm y^j b^m + r^i_{i;0} - r^i_{0;i},
/// which holds for any metric and 1-form. Returns the normalized defect.
inline double prop41_residual(const MetricSpec& spec, const Point& x,
                              const Vec<double>& y,
                              Backend backend = Backend::dual) {
  AlphaData al = alpha_at(spec, x, backend);
  BetaData be = beta_at(spec, x, al, backend);
  const int n = spec.n;

  double lhs = dot(be.div_s, y);

  double ric_yb = 0;
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      ric_yb += al.ricci(j, m) * y[static_cast<size_t>(j)] * be.b_up[static_cast<size_t>(m)];

  // r^i_{i;k} y^k and a^{il} r_{lj;i} y^j (metric compatibility raises freely).
  double trace_r_cov0 = 0, div_r0 = 0;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) {
        trace_r_cov0 += al.a_inv(i, l) * be.nabla_r(l, i, k) * y[static_cast<size_t>(k)];
        div_r0 += al.a_inv(i, l) * be.nabla_r(l, k, i) * y[static_cast<size_t>(k)];
      }

  double rhs = ric_yb + trace_r_cov0 - div_r0;
  return std::abs(lhs - rhs) / (1 + std::abs(lhs) + std::abs(rhs));
}

/// Max over points of max|r_ij| / (1 + max|b_{i;j}|): zero iff beta is a
/// Killing 1-form on the sample.
inline double killing_residual(const MetricSpec& spec, const Vec<Point>& points,
                               Backend backend = Backend::dual) {
  if (points.empty()) throw Error("killing residual needs at least one point");
  double worst = 0;
  for (const Point& x : points) {
    AlphaData al = alpha_at(spec, x, backend);
    BetaData be = beta_at(spec, x, al, backend);
    double mr = 0, mb = 0;
    for (double v : be.r.a) mr = std::max(mr, std::abs(v));
    for (double v : be.nabla_b.a) mb = std::max(mb, std::abs(v));
    worst = std::max(worst, mr / (1 + mb));
  }
  return worst;
}

}  // namespace randers
