#pragma once

/// Derivatives of smooth maps R^n -> R^m at a point, orders 0-3.
///
/// Two interchangeable backends:
///   - dual:  nested forward-mode dual towers; exact to machine precision.
///            Mixed entries are computed once per index multiset and mirrored,
///            so the tables are symmetric by construction.
///   - fd:    central finite differences with per-axis relative steps, applied
///            recursively for higher orders. Every ordered index tuple is
///            computed independently, so table symmetry is a genuine
///            diagnostic of the stencil, not an artifact of mirroring.

#include <cmath>
#include <functional>
#include <span>
#include <string>

#include "randers/dual.hpp"
#include "randers/error.hpp"
#include "randers/linalg.hpp"

namespace randers {

using Point = Vec<double>;

template <class>
inline constexpr bool dependent_false = false;

enum class Backend { dual, fd };

inline std::string to_string(Backend b) {
  return b == Backend::dual ? "dual" : "fd";
}

/// A pure map R^n -> R^m evaluable on plain reals and on dual towers of
/// depth 1-3. Construct from one generic functor `f(span<const T> x,
/// span<T> out)`; it is instantiated once per supported scalar type.
struct SmoothMap {
  int in_dim = 0, out_dim = 0;
  std::function<void(std::span<const D0>, std::span<D0>)> f0;
  std::function<void(std::span<const D1>, std::span<D1>)> f1;
  std::function<void(std::span<const D2>, std::span<D2>)> f2;
  std::function<void(std::span<const D3>, std::span<D3>)> f3;

  SmoothMap() = default;
  template <class F>
  SmoothMap(int n_in, int m_out, F f)
      : in_dim(n_in), out_dim(m_out), f0(f), f1(f), f2(f), f3(f) {}

  template <class T>
  void eval(std::span<const T> x, std::span<T> out) const {
    if constexpr (std::same_as<T, D0>) f0(x, out);
    else if constexpr (std::same_as<T, D1>) f1(x, out);
    else if constexpr (std::same_as<T, D2>) f2(x, out);
    else if constexpr (std::same_as<T, D3>) f3(x, out);
    else static_assert(dependent_false<T>, "SmoothMap is erased up to depth 3");
  }

  template <class T>
  Vec<T> operator()(const Vec<T>& x) const {
    Vec<T> out(static_cast<size_t>(out_dim), T(0));
    eval(std::span<const T>(x), std::span<T>(out));
    return out;
  }
};

// ---- tower seeding helpers -----------------------------------------------------

/// Append one tower level whose directional seed is `dir` (per component).
template <class T>
Vec<Dual<T>> lift_dir(const Vec<T>& x, const Vec<double>& dir) {
  Vec<Dual<T>> r(x.size());
  for (size_t a = 0; a < x.size(); ++a) r[a] = Dual<T>(x[a], T(dir[a]));
  return r;
}

/// Append one tower level seeded along coordinate axis `axis`.
template <class T>
Vec<Dual<T>> lift_axis(const Vec<T>& x, int axis) {
  Vec<Dual<T>> r(x.size());
  for (size_t a = 0; a < x.size(); ++a)
    r[a] = Dual<T>(x[a], T(static_cast<int>(a) == axis ? 1 : 0));
  return r;
}

inline D1 seed1(double v, double s1) { return {v, s1}; }
inline D2 seed2(double v, double s1, double s2) { return {D1(v, s1), D1(s2, 0.0)}; }
inline D3 seed3(double v, double s1, double s2, double s3) {
  return {seed2(v, s1, s2), D2(D1(s3, 0.0), D1(0.0, 0.0))};
}

// ---- jet tables ------------------------------------------------------------------

struct JetTable {
  int out_dim = 0, in_dim = 0, order = 0;
  Backend backend = Backend::dual;
  Vec<double> value;      // m
  Mat<double> d1;         // m x n
  Tens3<double> d2;       // m x n x n
  Tens4<double> d3;       // m x n x n x n
};

namespace detail {

inline void check_finite(const Vec<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      throw DomainError(std::string("non-finite ") + what +
                        " (map evaluated outside its smooth domain)");
}

/// Central-difference steps per axis. The stencil below is 4th-order
/// accurate, so balancing truncation O(h^4) against rounding O(eps/h^k)
/// for a k-fold application gives h ~ eps^(1/(4+k)).
inline Vec<double> fd_steps(const Point& x, int order) {
  const double eps = 2.220446049250313e-16;
  double coeff = order <= 1 ? std::pow(eps, 1.0 / 5)
               : order == 2 ? std::pow(eps, 1.0 / 6)
                            : std::pow(eps, 1.0 / 7);
  Vec<double> h(x.size());
  for (size_t a = 0; a < x.size(); ++a)
    h[a] = coeff * std::max(1.0, std::abs(x[a]));
  return h;
}

/// Nested 4th-order central difference of `map` along `axes[pos..]`:
/// D f = [f(-2h) - 8 f(-h) + 8 f(+h) - f(+2h)] / (12h), applied recursively.
/// Steps are fixed at the base point so the stencil is deterministic.
inline Vec<double> fd_recurse(const SmoothMap& map, Point& x,
                              const std::vector<int>& axes, size_t pos,
                              const Vec<double>& h) {
  if (pos == axes.size()) return map(x);
  const int a = axes[pos];
  const size_t ai = static_cast<size_t>(a);
  const double ha = h[ai];
  const double x0 = x[ai];
  auto at = [&](double shift) {
    x[ai] = x0 + shift;
    return fd_recurse(map, x, axes, pos + 1, h);
  };
  Vec<double> m2 = at(-2 * ha), m1 = at(-ha), p1 = at(ha), p2 = at(2 * ha);
  x[ai] = x0;
  for (size_t o = 0; o < p1.size(); ++o)
    m2[o] = (m2[o] - 8 * m1[o] + 8 * p1[o] - p2[o]) / (12 * ha);
  return m2;
}

}  // namespace detail

inline JetTable evaluate_jet(const SmoothMap& map, const Point& x, int order,
                             Backend backend = Backend::dual) {
  if (order < 0 || order > 3) throw Error("jet order must be 0..3");
  if (static_cast<int>(x.size()) != map.in_dim)
    throw Error("jet point dimension does not match map arity");
  const int n = map.in_dim, m = map.out_dim;

  JetTable jet;
  jet.out_dim = m;
  jet.in_dim = n;
  jet.order = order;
  jet.backend = backend;
  jet.value = map(x);
  detail::check_finite(jet.value, "value");
  if (order >= 1) jet.d1 = Mat<double>(m, n);
  if (order >= 2) jet.d2 = Tens3<double>(m, n, n);
  if (order >= 3) jet.d3 = Tens4<double>(m, n, n, n);

  if (backend == Backend::dual) {
    if (order >= 1) {
      for (int i = 0; i < n; ++i) {
        Vec<D1> xi(x.size());
        for (size_t a = 0; a < x.size(); ++a)
          xi[a] = seed1(x[a], static_cast<int>(a) == i ? 1 : 0);
        Vec<D1> out = map(xi);
        for (int o = 0; o < m; ++o) jet.d1(o, i) = out[static_cast<size_t>(o)].du;
      }
    }
    if (order >= 2) {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Vec<D2> xij(x.size());
          for (size_t a = 0; a < x.size(); ++a) {
            int ai = static_cast<int>(a);
            xij[a] = seed2(x[a], ai == i ? 1 : 0, ai == j ? 1 : 0);
          }
          Vec<D2> out = map(xij);
          for (int o = 0; o < m; ++o) {
            double v = out[static_cast<size_t>(o)].du.du;
            jet.d2(o, i, j) = v;
            jet.d2(o, j, i) = v;
          }
        }
    }
    if (order >= 3) {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          for (int k = j; k < n; ++k) {
            Vec<D3> xijk(x.size());
            for (size_t a = 0; a < x.size(); ++a) {
              int ai = static_cast<int>(a);
              xijk[a] = seed3(x[a], ai == i ? 1 : 0, ai == j ? 1 : 0,
                              ai == k ? 1 : 0);
            }
            Vec<D3> out = map(xijk);
            for (int o = 0; o < m; ++o) {
              double v = out[static_cast<size_t>(o)].du.du.du;
              jet.d3(o, i, j, k) = v;
              jet.d3(o, i, k, j) = v;
              jet.d3(o, j, i, k) = v;
              jet.d3(o, j, k, i) = v;
              jet.d3(o, k, i, j) = v;
              jet.d3(o, k, j, i) = v;
            }
          }
    }
  } else {
    Point xw = x;
    if (order >= 1) {
      Vec<double> h = detail::fd_steps(x, 1);
      for (int i = 0; i < n; ++i) {
        Vec<double> d = detail::fd_recurse(map, xw, {i}, 0, h);
        for (int o = 0; o < m; ++o) jet.d1(o, i) = d[static_cast<size_t>(o)];
      }
    }
    if (order >= 2) {
      Vec<double> h = detail::fd_steps(x, 2);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Vec<double> d = detail::fd_recurse(map, xw, {i, j}, 0, h);
          for (int o = 0; o < m; ++o) jet.d2(o, i, j) = d[static_cast<size_t>(o)];
        }
    }
    if (order >= 3) {
      Vec<double> h = detail::fd_steps(x, 3);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            Vec<double> d = detail::fd_recurse(map, xw, {i, j, k}, 0, h);
            for (int o = 0; o < m; ++o)
              jet.d3(o, i, j, k) = d[static_cast<size_t>(o)];
          }
    }
  }

  if (order >= 1) detail::check_finite(jet.d1.a, "first derivatives");
  if (order >= 2) detail::check_finite(jet.d2.a, "second derivatives");
  if (order >= 3) detail::check_finite(jet.d3.a, "third derivatives");
  return jet;
}

/// Worst normalized discrepancy between a derivative entry and any permutation
/// of its indices; a self-check of the differentiation backend.
inline double symmetry_residual(const JetTable& jet) {
  if (jet.order < 2) throw Error("symmetry residual needs a jet of order >= 2");
  double worst = 0;
  auto score = [&](double d, double dp) {
    double r = std::abs(dp - d) / (1 + std::abs(d));
    if (r > worst) worst = r;
  };
  for (int o = 0; o < jet.out_dim; ++o)
    for (int i = 0; i < jet.in_dim; ++i)
      for (int j = 0; j < jet.in_dim; ++j) {
        score(jet.d2(o, i, j), jet.d2(o, j, i));
        if (jet.order >= 3)
          for (int k = 0; k < jet.in_dim; ++k) {
            const double d = jet.d3(o, i, j, k);
            score(d, jet.d3(o, i, k, j));
            score(d, jet.d3(o, j, i, k));
            score(d, jet.d3(o, j, k, i));
            score(d, jet.d3(o, k, i, j));
            score(d, jet.d3(o, k, j, i));
          }
      }
  return worst;
}

}  // namespace randers
