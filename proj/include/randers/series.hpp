#pragma once

/// Truncated Taylor series in one variable, fixed order 5 (six coefficients).
///
/// Series::variable(x0) is the identity expanded at x0; pushing it through a
/// generic callable built from the operations below yields the callable's
/// derivatives at x0 up to order 5 — enough for curvature machinery that
/// consumes up to the fifth derivative of a metric's profile function.

#include <array>
#include <cmath>

#include "randers/dual.hpp"
#include "randers/error.hpp"

namespace randers {

struct Series {
  static constexpr int kOrder = 5;
  std::array<double, kOrder + 1> c{};  // value + derivatives/k!

  constexpr Series() = default;
  constexpr Series(double v) { c[0] = v; }
  template <arithmetic U>
  constexpr Series(U v) {
    c[0] = static_cast<double>(v);
  }

  static Series variable(double x0) {
    Series s(x0);
    s.c[1] = 1;
    return s;
  }

  /// k-th derivative of the represented function at the expansion point.
  double deriv(int k) const {
    double fact = 1;
    for (int j = 2; j <= k; ++j) fact *= j;
    return c[static_cast<size_t>(k)] * fact;
  }
};

constexpr double primal_value(const Series& s) { return s.c[0]; }

inline Series operator+(const Series& a, const Series& b) {
  Series r;
  for (int k = 0; k <= Series::kOrder; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}
inline Series operator-(const Series& a, const Series& b) {
  Series r;
  for (int k = 0; k <= Series::kOrder; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}
inline Series operator-(const Series& a) {
  Series r;
  for (int k = 0; k <= Series::kOrder; ++k) r.c[k] = -a.c[k];
  return r;
}
inline Series operator*(const Series& a, const Series& b) {
  Series r;
  for (int k = 0; k <= Series::kOrder; ++k)
    for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
  return r;
}
inline Series operator/(const Series& a, const Series& b) {
  if (b.c[0] == 0) throw DomainError("series division by zero constant term");
  Series r;
  for (int k = 0; k <= Series::kOrder; ++k) {
    double s = a.c[k];
    for (int j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
    r.c[k] = s / b.c[0];
  }
  return r;
}

template <arithmetic U>
Series operator+(const Series& a, U b) {
  Series r = a;
  r.c[0] += static_cast<double>(b);
  return r;
}
template <arithmetic U>
Series operator+(U a, const Series& b) {
  return b + a;
}
template <arithmetic U>
Series operator-(const Series& a, U b) {
  Series r = a;
  r.c[0] -= static_cast<double>(b);
  return r;
}
template <arithmetic U>
Series operator-(U a, const Series& b) {
  return (-b) + a;
}
template <arithmetic U>
Series operator*(const Series& a, U b) {
  Series r;
  for (int k = 0; k <= Series::kOrder; ++k) r.c[k] = a.c[k] * static_cast<double>(b);
  return r;
}
template <arithmetic U>
Series operator*(U a, const Series& b) {
  return b * a;
}
template <arithmetic U>
Series operator/(const Series& a, U b) {
  Series r;
  for (int k = 0; k <= Series::kOrder; ++k) r.c[k] = a.c[k] / static_cast<double>(b);
  return r;
}
template <arithmetic U>
Series operator/(U a, const Series& b) {
  return Series(static_cast<double>(a)) / b;
}

template <class U>
Series& operator+=(Series& a, const U& b) {
  a = a + b;
  return a;
}
template <class U>
Series& operator-=(Series& a, const U& b) {
  a = a - b;
  return a;
}
template <class U>
Series& operator*=(Series& a, const U& b) {
  a = a * b;
  return a;
}
template <class U>
Series& operator/=(Series& a, const U& b) {
  a = a / b;
  return a;
}

namespace detail {
/// Compose a scalar function, given its derivatives at u0, with u - u0.
inline Series compose(const std::array<double, Series::kOrder + 1>& derivs,
                      const Series& u) {
  Series v = u;
  v.c[0] = 0;
  Series pow(1.0), r(derivs[0]);
  double fact = 1;
  for (int k = 1; k <= Series::kOrder; ++k) {
    pow = pow * v;
    fact *= k;
    r += pow * (derivs[static_cast<size_t>(k)] / fact);
  }
  return r;
}

/// Termwise antiderivative with given constant term.
inline Series integrate(const Series& du, double c0) {
  Series r(c0);
  for (int k = 1; k <= Series::kOrder; ++k) r.c[k] = du.c[k - 1] / k;
  return r;
}

/// Termwise derivative (order drops by one; top coefficient padded with 0).
inline Series differentiate(const Series& u) {
  Series r;
  for (int k = 0; k < Series::kOrder; ++k) r.c[k] = u.c[k + 1] * (k + 1);
  return r;
}
}  // namespace detail

inline Series sqrt(const Series& u) {
  double u0 = u.c[0];
  if (u0 <= 0) throw DomainError("series sqrt of nonpositive constant term");
  std::array<double, Series::kOrder + 1> d{};
  d[0] = std::sqrt(u0);
  double exponent = 0.5, coeff = 1;
  for (int k = 1; k <= Series::kOrder; ++k) {
    coeff *= exponent - (k - 1);
    d[static_cast<size_t>(k)] = coeff * std::pow(u0, exponent - k);
  }
  return detail::compose(d, u);
}

inline Series exp(const Series& u) {
  double e = std::exp(u.c[0]);
  std::array<double, Series::kOrder + 1> d{};
  d.fill(e);
  return detail::compose(d, u);
}

inline Series log(const Series& u) {
  double u0 = u.c[0];
  if (u0 <= 0) throw DomainError("series log of nonpositive constant term");
  std::array<double, Series::kOrder + 1> d{};
  d[0] = std::log(u0);
  double fact = 1;
  for (int k = 1; k <= Series::kOrder; ++k) {
    if (k > 1) fact *= (k - 1);
    d[static_cast<size_t>(k)] = (k % 2 ? fact : -fact) / std::pow(u0, k);
  }
  return detail::compose(d, u);
}

inline Series sin(const Series& u) {
  double s = std::sin(u.c[0]), co = std::cos(u.c[0]);
  std::array<double, Series::kOrder + 1> d{};
  const double cycle[4] = {s, co, -s, -co};
  for (int k = 0; k <= Series::kOrder; ++k) d[static_cast<size_t>(k)] = cycle[k % 4];
  return detail::compose(d, u);
}

inline Series cos(const Series& u) {
  double s = std::sin(u.c[0]), co = std::cos(u.c[0]);
  std::array<double, Series::kOrder + 1> d{};
  const double cycle[4] = {co, -s, -co, s};
  for (int k = 0; k <= Series::kOrder; ++k) d[static_cast<size_t>(k)] = cycle[k % 4];
  return detail::compose(d, u);
}

inline Series atan(const Series& u) {
  // d/dt atan(u) = u' / (1 + u^2), integrated termwise.
  Series du = detail::differentiate(u);
  Series w = du / (1 + u * u);
  return detail::integrate(w, std::atan(u.c[0]));
}

}  // namespace randers
