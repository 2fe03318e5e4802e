#pragma once

/// Small dense tensors over an arbitrary scalar type.
///
/// Everything here is sized at runtime (dimensions are tiny: n <= 4 in
/// practice) and templated on the scalar so the same code path runs on plain
/// doubles and on dual-number towers. Solvers use partial pivoting keyed on
/// the primal magnitude so pivot selection is identical across scalar types.

#include <algorithm>
#include <cmath>
#include <vector>

#include "randers/dual.hpp"
#include "randers/error.hpp"

namespace randers {

template <class T>
using Vec = std::vector<T>;

template <class T>
struct Mat {
  int n = 0, m = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int rows, int cols) : n(rows), m(cols), a(static_cast<size_t>(rows) * cols, T(0)) {}
  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }

  static Mat identity(int n) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = T(1);
    return I;
  }
};

template <class T>
struct Tens3 {
  int n0 = 0, n1 = 0, n2 = 0;
  std::vector<T> a;
  Tens3() = default;
  Tens3(int d0, int d1, int d2)
      : n0(d0), n1(d1), n2(d2), a(static_cast<size_t>(d0) * d1 * d2, T(0)) {}
  T& operator()(int i, int j, int k) {
    return a[(static_cast<size_t>(i) * n1 + j) * n2 + k];
  }
  const T& operator()(int i, int j, int k) const {
    return a[(static_cast<size_t>(i) * n1 + j) * n2 + k];
  }
};

template <class T>
struct Tens4 {
  int n0 = 0, n1 = 0, n2 = 0, n3 = 0;
  std::vector<T> a;
  Tens4() = default;
  Tens4(int d0, int d1, int d2, int d3)
      : n0(d0), n1(d1), n2(d2), n3(d3), a(static_cast<size_t>(d0) * d1 * d2 * d3, T(0)) {}
  T& operator()(int i, int j, int k, int l) {
    return a[((static_cast<size_t>(i) * n1 + j) * n2 + k) * n3 + l];
  }
  const T& operator()(int i, int j, int k, int l) const {
    return a[((static_cast<size_t>(i) * n1 + j) * n2 + k) * n3 + l];
  }
};

// ---- vector ops --------------------------------------------------------------

template <class T>
T dot(const Vec<T>& x, const Vec<T>& y) {
  T s(0);
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm2(const Vec<double>& x) { return std::sqrt(dot(x, x)); }

inline double frob_norm(const Mat<double>& A) {
  double s = 0;
  for (double v : A.a) s += v * v;
  return std::sqrt(s);
}

inline double frob_inner(const Mat<double>& A, const Mat<double>& B) {
  double s = 0;
  for (size_t i = 0; i < A.a.size(); ++i) s += A.a[i] * B.a[i];
  return s;
}

template <class T>
Vec<T> matvec(const Mat<T>& A, const Vec<T>& x) {
  Vec<T> y(A.n, T(0));
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.m; ++j) y[i] += A(i, j) * x[j];
  return y;
}

// ---- LU with partial pivoting (pivot chosen by primal magnitude) --------------

template <class T>
struct LU {
  Mat<T> lu;
  std::vector<int> perm;
  int sign = 1;
};

template <class T>
LU<T> lu_factor(Mat<T> A) {
  const int n = A.n;
  LU<T> f{std::move(A), std::vector<int>(n), 1};
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(primal_value(f.lu(k, k)));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(primal_value(f.lu(i, k)));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) throw NumericError("singular matrix in LU factorization");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    for (int i = k + 1; i < n; ++i) {
      T mult = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = mult;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= mult * f.lu(k, j);
    }
  }
  return f;
}

template <class T>
Vec<T> lu_solve(const LU<T>& f, const Vec<T>& b) {
  const int n = f.lu.n;
  Vec<T> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

template <class T>
T det(const Mat<T>& A) {
  LU<T> f = lu_factor(A);
  T d(f.sign);
  for (int i = 0; i < A.n; ++i) d *= f.lu(i, i);
  return d;
}

template <class T>
Mat<T> invert(const Mat<T>& A) {
  const int n = A.n;
  LU<T> f = lu_factor(A);
  Mat<T> inv(n, n);
  Vec<T> e(n, T(0));
  for (int j = 0; j < n; ++j) {
    e[j] = T(1);
    Vec<T> col = lu_solve(f, e);
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = T(0);
  }
  return inv;
}

// ---- symmetric eigenvalues (double only) ---------------------------------------

/// Cyclic Jacobi; returns eigenvalues ascending. Adequate for n <= 4.
inline Vec<double> sym_eigenvalues(Mat<double> A) {
  const int n = A.n;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(A(p, q)) < 1e-300) continue;
        double theta = (A(q, q) - A(p, p)) / (2 * A(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
  }
  Vec<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = A(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Cholesky test for symmetric positive definiteness.
inline bool is_spd(const Mat<double>& A) {
  const int n = A.n;
  Mat<double> L(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= 0) return false;
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return true;
}

}  // namespace randers
