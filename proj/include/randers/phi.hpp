#pragma once

/// Scalar machinery of an (alpha,beta)-metric F = alpha * phi(beta/alpha):
/// the functions Q, Delta, Phi, Psi1, Psi2 of (s, b2, n) that drive the mean
/// Cartan and mean Landsberg formulas.
///
/// General path: phi is evaluated on a truncated power series in s, so every
/// derivative the formulas need (through phi'''' for Psi1') comes from one
/// evaluation. For the plain F = alpha + beta kind the closed forms are used
/// and the general path serves as a built-in cross-check.

#include <cmath>
#include <functional>

#include "randers/error.hpp"
#include "randers/series.hpp"

namespace randers {

struct PhiFunction {
  enum class Kind { randers, custom };
  Kind kind = Kind::randers;
  std::function<double(double)> phi, dphi, d2phi, d3phi;
  std::function<Series(const Series&)> on_series;  // drives the general path
};

inline PhiFunction randers_phi() {
  PhiFunction p;
  p.kind = PhiFunction::Kind::randers;
  p.phi = [](double s) { return 1 + s; };
  p.dphi = [](double) { return 1.0; };
  p.d2phi = [](double) { return 0.0; };
  p.d3phi = [](double) { return 0.0; };
  p.on_series = [](const Series& s) { return s + 1.0; };
  return p;
}

/// Wrap a generic callable (usable on Series) as a custom phi.
template <class F>
PhiFunction custom_phi(F f) {
  PhiFunction p;
  p.kind = PhiFunction::Kind::custom;
  p.on_series = [f](const Series& s) { return f(s); };
  p.phi = [f](double s) { return f(Series::variable(s)).deriv(0); };
  p.dphi = [f](double s) { return f(Series::variable(s)).deriv(1); };
  p.d2phi = [f](double s) { return f(Series::variable(s)).deriv(2); };
  p.d3phi = [f](double s) { return f(Series::variable(s)).deriv(3); };
  return p;
}

struct PhiMachinery {
  double s = 0, b2 = 0;
  int n = 0;
  double phi = 0, phi_p = 0;        // phi, phi' at s
  double Q = 0, Q_p = 0, Q_pp = 0;  // Q and its first two s-derivatives
  double Delta = 0;
  double Phi = 0;
  double Psi1 = 0, Psi2 = 0;
  double Psi1_p = 0;  // d Psi1 / ds
};

namespace detail {

// General-path machinery via order-5 series in s; Psi1 needs b2 - s^2 > 0.
inline PhiMachinery phi_machinery_general(const PhiFunction& phi, double s,
                                          double b2, int n, bool want_psi1) {
  Series S = Series::variable(s);
  Series ph = phi.on_series(S);
  Series ph1 = differentiate(ph);
  Series denom = ph - S * ph1;
  if (std::abs(denom.deriv(0)) < 1e-12)
    throw DomainError("phi - s phi' vanishes: Q undefined at this s");
  Series Q = ph1 / denom;
  Series Q1 = differentiate(Q);
  Series Q2 = differentiate(Q1);
  Series Delta = 1.0 + S * Q + (b2 - S * S) * Q1;
  if (Delta.deriv(0) <= 1e-10)
    throw DomainError("Delta <= 0: metric irregular at this (s, b2)");
  Series Phi = -(Q - S * Q1) * (double(n) * Delta + 1.0 + S * Q) -
               (b2 - S * S) * (1.0 + S * Q) * Q2;
  Series Psi2 = 2.0 * (n + 1) * (Q - S * Q1) + 3.0 * Phi / Delta;

  PhiMachinery m;
  m.s = s;
  m.b2 = b2;
  m.n = n;
  m.phi = ph.deriv(0);
  m.phi_p = ph.deriv(1);
  m.Q = Q.deriv(0);
  m.Q_p = Q.deriv(1);
  m.Q_pp = Q.deriv(2);
  m.Delta = Delta.deriv(0);
  m.Phi = Phi.deriv(0);
  m.Psi2 = Psi2.deriv(0);
  if (want_psi1) {
    // Psi1 = sqrt(b2-s^2) sqrt(Delta) d/ds [ sqrt(b2-s^2) Phi / Delta^(3/2) ]
    Series u = sqrt(b2 - S * S);  // throws DomainError when b2 - s^2 <= 0
    Series w = u * Phi / (Delta * sqrt(Delta));
    Series Psi1 = u * sqrt(Delta) * differentiate(w);
    m.Psi1 = Psi1.deriv(0);
    m.Psi1_p = Psi1.deriv(1);
  }
  return m;
}

}  // namespace detail

/// Evaluate the machinery at (s, b2, n). The plain Randers kind takes the
/// closed forms and cross-checks the general path to 1e-10; the check skips
/// Psi1 when y is (nearly) parallel to the form, where the general path's
/// sqrt(b2 - s^2) intermediate degenerates but the closed forms stay finite.
inline PhiMachinery phi_machinery(const PhiFunction& phi, double s, double b2,
                                  int n) {
  const double disc = b2 - s * s;
  if (phi.kind == PhiFunction::Kind::custom) {
    return detail::phi_machinery_general(phi, s, b2, n, disc > 1e-12);
  }

  if (1 + s <= 1e-10)
    throw DomainError("Delta <= 0: metric irregular at this (s, b2)");
  PhiMachinery m;
  m.s = s;
  m.b2 = b2;
  m.n = n;
  m.phi = 1 + s;
  m.phi_p = 1;
  m.Q = 1;
  m.Q_p = 0;
  m.Q_pp = 0;
  m.Delta = 1 + s;
  m.Phi = -(n + 1) * (1 + s);
  m.Psi1 = (n + 1) * (2 * s + s * s + b2) / (2 * (1 + s));
  m.Psi2 = -double(n + 1);
  m.Psi1_p = (n + 1) * (2 + 2 * s - b2 + s * s) / (2 * (1 + s) * (1 + s));

  const bool check_psi1 = disc > 1e-6;
  PhiMachinery g = detail::phi_machinery_general(phi, s, b2, n, check_psi1);
  auto agree = [](double a, double b) {
    return std::abs(a - b) <= 1e-10 * (1 + std::abs(a));
  };
  bool ok = agree(m.Q, g.Q) && agree(m.Delta, g.Delta) && agree(m.Phi, g.Phi) &&
            agree(m.Psi2, g.Psi2);
  if (check_psi1) ok = ok && agree(m.Psi1, g.Psi1) && agree(m.Psi1_p, g.Psi1_p);
  if (!ok)
    throw NumericError(
        "closed-form and general phi machinery disagree beyond 1e-10");
  return m;
}

}  // namespace randers
