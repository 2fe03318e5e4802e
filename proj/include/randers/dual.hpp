#pragma once

/// Forward-mode dual numbers, nestable to arbitrary depth.
///
/// Dual<double> carries one directional derivative; Dual<Dual<double>> carries
/// a second direction on top, and so on. Seeding one input axis per nesting
/// level and reading the fully mixed component of the result yields exact
/// partial derivatives of any order, limited only by the nesting depth.

#include <cmath>
#include <concepts>
#include <type_traits>

namespace randers {

template <class T>
concept arithmetic = std::is_arithmetic_v<T>;

template <class T>
struct Dual {
  T re{};  // value part (itself a tower one level shallower)
  T du{};  // derivative along this level's seeded direction

  constexpr Dual() = default;
  constexpr Dual(T v, T d) : re(std::move(v)), du(std::move(d)) {}
  constexpr Dual(T v) : re(std::move(v)), du{} {}
  // Broadcast from a plain number at any depth: derivative part stays zero.
  template <arithmetic U>
    requires(!std::same_as<U, T>)
  constexpr Dual(U v) : re(static_cast<T>(v)), du{} {}
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

template <class T>
inline constexpr int dual_depth = 0;
template <class T>
inline constexpr int dual_depth<Dual<T>> = dual_depth<T> + 1;

/// Innermost value of a tower.
constexpr double primal_value(double x) { return x; }
template <class T>
constexpr double primal_value(const Dual<T>& x) {
  return primal_value(x.re);
}

// ---- arithmetic ------------------------------------------------------------

template <class T>
constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  return {a.re + b.re, a.du + b.du};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  return {a.re - b.re, a.du - b.du};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a) {
  return {-a.re, -a.du};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.re * b.re, a.du * b.re + a.re * b.du};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  T inv = T(1) / b.re;
  return {a.re * inv, (a.du - a.re * inv * b.du) * inv};
}

template <class T, arithmetic U>
constexpr Dual<T> operator+(const Dual<T>& a, U b) {
  return {a.re + T(b), a.du};
}
template <class T, arithmetic U>
constexpr Dual<T> operator+(U a, const Dual<T>& b) {
  return b + a;
}
template <class T, arithmetic U>
constexpr Dual<T> operator-(const Dual<T>& a, U b) {
  return {a.re - T(b), a.du};
}
template <class T, arithmetic U>
constexpr Dual<T> operator-(U a, const Dual<T>& b) {
  return {T(a) - b.re, -b.du};
}
template <class T, arithmetic U>
constexpr Dual<T> operator*(const Dual<T>& a, U b) {
  return {a.re * T(b), a.du * T(b)};
}
template <class T, arithmetic U>
constexpr Dual<T> operator*(U a, const Dual<T>& b) {
  return b * a;
}
template <class T, arithmetic U>
constexpr Dual<T> operator/(const Dual<T>& a, U b) {
  return {a.re / T(b), a.du / T(b)};
}
template <class T, arithmetic U>
constexpr Dual<T> operator/(U a, const Dual<T>& b) {
  return Dual<T>(T(a)) / b;
}

template <class T, class U>
constexpr Dual<T>& operator+=(Dual<T>& a, const U& b) {
  a = a + b;
  return a;
}
template <class T, class U>
constexpr Dual<T>& operator-=(Dual<T>& a, const U& b) {
  a = a - b;
  return a;
}
template <class T, class U>
constexpr Dual<T>& operator*=(Dual<T>& a, const U& b) {
  a = a * b;
  return a;
}
template <class T, class U>
constexpr Dual<T>& operator/=(Dual<T>& a, const U& b) {
  a = a / b;
  return a;
}

// ---- elementary functions ---------------------------------------------------
// Unqualified inner calls recurse through the tower; the using-declarations
// below make the std versions reachable from generic code in this namespace.

using std::atan;
using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T r = sqrt(x.re);
  return {r, x.du / (2 * r)};
}
template <class T>
Dual<T> sin(const Dual<T>& x) {
  return {sin(x.re), x.du * cos(x.re)};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return {cos(x.re), -x.du * sin(x.re)};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.re);
  return {e, x.du * e};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.re), x.du / x.re};
}
template <class T>
Dual<T> atan(const Dual<T>& x) {
  return {atan(x.re), x.du / (1 + x.re * x.re)};
}

/// Integer power by repeated squaring; valid for any base, any tower depth.
template <class T>
T powi(const T& x, long long p) {
  if (p < 0) return T(1) / powi(x, -p);
  T acc(1), base = x;
  while (p > 0) {
    if (p & 1) acc = acc * base;
    base = base * base;
    p >>= 1;
  }
  return acc;
}

/// x^(m/2) for odd m; requires primal(x) > 0.
template <class T>
T pow_half_odd(const T& x, long long m) {
  return powi(x, (m - 1) / 2) * sqrt(x);
}

// Common tower depths.
using D0 = double;
using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;
using D5 = Dual<D4>;

}  // namespace randers
