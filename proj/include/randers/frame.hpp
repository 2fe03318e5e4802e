#pragma once

// Exact tensor calculus on a homogeneous frame: a constant metric and
// constant structure constants [e_i, e_j] = c^k_ij e_k, with all entries in
// the quadratic extension Q(eps, del), eps^2 = p, del^2 = q rational. Every
// covariant derivative, curvature component and deformation tensor of the
// frame description comes out exactly, so tests can assert equality instead
// of tolerances.

#include <cmath>
#include <numeric>
#include <string>

#include "randers/error.hpp"
#include "randers/linalg.hpp"

namespace randers {

// ==== exact rationals ===========================================================

struct Rat {
  long long num = 0, den = 1;

  Rat() = default;
  Rat(long long n) : num(n) {}
  Rat(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw Error("rational with zero denominator");
    reduce();
  }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rat operator+(const Rat& x, const Rat& y) {
    return Rat(x.num * y.den + y.num * x.den, x.den * y.den);
  }
  friend Rat operator-(const Rat& x, const Rat& y) {
    return Rat(x.num * y.den - y.num * x.den, x.den * y.den);
  }
  friend Rat operator*(const Rat& x, const Rat& y) { return Rat(x.num * y.num, x.den * y.den); }
  friend Rat operator/(const Rat& x, const Rat& y) {
    if (y.is_zero()) throw Error("rational division by zero");
    return Rat(x.num * y.den, x.den * y.num);
  }
  Rat operator-() const { return Rat(-num, den); }
  Rat& operator+=(const Rat& y) { return *this = *this + y; }
  Rat& operator-=(const Rat& y) { return *this = *this - y; }
  friend bool operator==(const Rat& x, const Rat& y) { return x.num == y.num && x.den == y.den; }
  friend bool operator!=(const Rat& x, const Rat& y) { return !(x == y); }

  std::string str() const {
    std::string s = std::to_string(num);
    if (den != 1) s += "/" + std::to_string(den);
    return s;
  }
};

// ==== quadratic extension Q(eps, del) ===========================================

/// a + b eps + c del + d eps del with eps^2 = p, del^2 = q. A value whose
/// eps/del/eps-del coordinates all vanish is a plain rational and is
/// compatible with any moduli; otherwise binary operations require equal
/// (p, q).
struct QuadExt {
  Rat a, b, c, d;  // coordinates on {1, eps, del, eps del}
  Rat p, q;        // the squared generators

  QuadExt() = default;
  QuadExt(long long v) : a(v) {}
  QuadExt(const Rat& v) : a(v) {}
  QuadExt(Rat a_, Rat b_, Rat c_, Rat d_, Rat p_, Rat q_)
      : a(a_), b(b_), c(c_), d(d_), p(p_), q(q_) {}

  bool pure_rational() const { return b.is_zero() && c.is_zero() && d.is_zero(); }
  bool is_zero() const { return a.is_zero() && pure_rational(); }

  static void join(const QuadExt& x, const QuadExt& y, Rat& p, Rat& q) {
    if (x.pure_rational()) {
      p = y.p;
      q = y.q;
    } else if (y.pure_rational()) {
      p = x.p;
      q = x.q;
    } else if (x.p == y.p && x.q == y.q) {
      p = x.p;
      q = x.q;
    } else {
      throw Error("mixing quadratic extensions with different moduli");
    }
  }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    Rat p, q;
    join(x, y, p, q);
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d, p, q};
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    Rat p, q;
    join(x, y, p, q);
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d, p, q};
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Rat p, q;
    join(x, y, p, q);
    QuadExt r;
    r.p = p;
    r.q = q;
    r.a = x.a * y.a + p * (x.b * y.b) + q * (x.c * y.c) + p * q * (x.d * y.d);
    r.b = x.a * y.b + x.b * y.a + q * (x.c * y.d + x.d * y.c);
    r.c = x.a * y.c + x.c * y.a + p * (x.b * y.d + x.d * y.b);
    r.d = x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b;
    return r;
  }
  QuadExt operator-() const { return {-a, -b, -c, -d, p, q}; }
  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    if (!x.pure_rational() && !y.pure_rational() && !(x.p == y.p && x.q == y.q)) return false;
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  double to_double(double eps_num, double del_num) const {
    return a.to_double() + b.to_double() * eps_num + c.to_double() * del_num +
           d.to_double() * eps_num * del_num;
  }

  std::string str() const {
    std::string s = a.str();
    if (!b.is_zero()) s += " + (" + b.str() + ")e";
    if (!c.is_zero()) s += " + (" + c.str() + ")d";
    if (!d.is_zero()) s += " + (" + d.str() + ")ed";
    return s;
  }
};

inline QuadExt qe_rational(const Rat& v) { return QuadExt(v); }

/// Multiplicative inverse via the 4x4 rational system u * v = 1 (the
/// multiplication-by-u matrix in the basis {1, eps, del, eps del}).
inline QuadExt qe_inverse(const QuadExt& u) {
  if (u.is_zero()) throw Error("inverse of zero in quadratic extension");
  if (u.pure_rational()) {
    QuadExt r;
    r.a = Rat(1) / u.a;
    return r;
  }
  const Rat& p = u.p;
  const Rat& q = u.q;
  Rat M[4][5] = {
      {u.a, p * u.b, q * u.c, p * q * u.d, Rat(1)},
      {u.b, u.a, q * u.d, q * u.c, Rat(0)},
      {u.c, p * u.d, u.a, p * u.b, Rat(0)},
      {u.d, u.c, u.b, u.a, Rat(0)},
  };
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (!M[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error("non-invertible element in quadratic extension");
    if (piv != col)
      for (int j = 0; j < 5; ++j) std::swap(M[piv][j], M[col][j]);
    Rat inv = Rat(1) / M[col][col];
    for (int j = 0; j < 5; ++j) M[col][j] = M[col][j] * inv;
    for (int r = 0; r < 4; ++r) {
      if (r == col || M[r][col].is_zero()) continue;
      Rat f = M[r][col];
      for (int j = 0; j < 5; ++j) M[r][j] = M[r][j] - f * M[col][j];
    }
  }
  return {M[0][4], M[1][4], M[2][4], M[3][4], p, q};
}

// ==== homogeneous frame description =============================================

struct FrameSpace {
  int n = 0;
  Rat p, q;                         // eps^2, del^2
  double eps_num = 0, del_num = 0;  // numeric generators (del carries its sign)
  Mat<QuadExt> G;                   // constant frame metric (diagonal)
  Tens3<QuadExt> c;                 // [e_i, e_j] = c(k, i, j) e_k
  Vec<QuadExt> b;                   // constant covector components

  QuadExt one() const { return {Rat(1), Rat(0), Rat(0), Rat(0), p, q}; }
  QuadExt eps() const { return {Rat(0), Rat(1), Rat(0), Rat(0), p, q}; }
  QuadExt del() const { return {Rat(0), Rat(0), Rat(1), Rat(0), p, q}; }
  double num(const QuadExt& v) const { return v.to_double(eps_num, del_num); }
};

struct FrameTensors {
  int n = 0;
  Mat<QuadExt> G_inv;
  Vec<QuadExt> b_up;
  QuadExt b2;
  Tens3<QuadExt> gamma;    // gamma^s_ij = <e^s, nabla_{e_j} e_i>
  Mat<QuadExt> nabla_b;    // b_{i;j}
  Mat<QuadExt> r, s;       // symmetric / antisymmetric split of b_{i;j}
  Mat<QuadExt> s_up;       // s^i_j
  Vec<QuadExt> s_vec;      // s_j = b^i s_ij
  Mat<QuadExt> t;          // t_ij = s_im s^m_j
  Vec<QuadExt> t_vec;      // t_j = b^i t_ij
  Tens3<QuadExt> nabla_s;  // s_{ij;k}
  Vec<QuadExt> div_s;      // s^m_{k;m}
  Tens4<QuadExt> riemann;  // R^i_jkl
  Mat<QuadExt> ricci;      // R^i_jil
};

/// All frame derivatives are algebraic: the metric, structure constants and b
/// are constant on the frame, so e-derivatives vanish and Koszul reduces to
///   gamma^s_ij = 1/2 G^{st} ( c_{ji|t} - c_{jt|i} - c_{it|j} ),
/// with c_{ab|t} = c^m_ab G_mt. Curvature of a constant connection:
///   R^i_jkl = gamma^s_jl gamma^i_sk - gamma^s_jk gamma^i_sl - c^m_kl gamma^i_jm.
inline FrameTensors frame_tensors(const FrameSpace& fs) {
  const int n = fs.n;
  const Rat half(1, 2);
  FrameTensors ft;
  ft.n = n;

  ft.G_inv = Mat<QuadExt>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && !fs.G(i, j).is_zero())
        throw Error("frame metric must be diagonal");
      if (i == j) ft.G_inv(i, i) = qe_inverse(fs.G(i, i));
    }

  ft.b_up = Vec<QuadExt>(static_cast<size_t>(n));
  ft.b2 = QuadExt(0);
  for (int i = 0; i < n; ++i) {
    ft.b_up[static_cast<size_t>(i)] = ft.G_inv(i, i) * fs.b[static_cast<size_t>(i)];
    ft.b2 += ft.b_up[static_cast<size_t>(i)] * fs.b[static_cast<size_t>(i)];
  }

  auto c_low = [&](int a, int bi, int t) {
    QuadExt v(0);
    for (int m = 0; m < n; ++m) v += fs.c(m, a, bi) * fs.G(m, t);
    return v;
  };
  ft.gamma = Tens3<QuadExt>(n, n, n);
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        QuadExt v(0);
        for (int t = 0; t < n; ++t) {
          if (ft.G_inv(s, t).is_zero()) continue;
          v += ft.G_inv(s, t) * (c_low(j, i, t) - c_low(j, t, i) - c_low(i, t, j));
        }
        ft.gamma(s, i, j) = QuadExt(half) * v;
      }

  ft.nabla_b = Mat<QuadExt>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QuadExt v(0);
      for (int s = 0; s < n; ++s) v += fs.b[static_cast<size_t>(s)] * ft.gamma(s, i, j);
      ft.nabla_b(i, j) = -v;
    }

  ft.r = Mat<QuadExt>(n, n);
  ft.s = Mat<QuadExt>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ft.r(i, j) = QuadExt(half) * (ft.nabla_b(i, j) + ft.nabla_b(j, i));
      ft.s(i, j) = QuadExt(half) * (ft.nabla_b(i, j) - ft.nabla_b(j, i));
    }

  ft.s_up = Mat<QuadExt>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ft.s_up(i, j) = ft.G_inv(i, i) * ft.s(i, j);

  ft.s_vec = Vec<QuadExt>(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    QuadExt v(0);
    for (int i = 0; i < n; ++i) v += ft.b_up[static_cast<size_t>(i)] * ft.s(i, j);
    ft.s_vec[static_cast<size_t>(j)] = v;
  }

  ft.t = Mat<QuadExt>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QuadExt v(0);
      for (int m = 0; m < n; ++m) v += ft.s(i, m) * ft.s_up(m, j);
      ft.t(i, j) = v;
    }

  ft.t_vec = Vec<QuadExt>(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    QuadExt v(0);
    for (int i = 0; i < n; ++i) v += ft.b_up[static_cast<size_t>(i)] * ft.t(i, j);
    ft.t_vec[static_cast<size_t>(j)] = v;
  }

  ft.nabla_s = Tens3<QuadExt>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        QuadExt v(0);
        for (int m = 0; m < n; ++m)
          v += ft.s(m, j) * ft.gamma(m, i, k) + ft.s(i, m) * ft.gamma(m, j, k);
        ft.nabla_s(i, j, k) = -v;
      }

  ft.div_s = Vec<QuadExt>(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    QuadExt v(0);
    for (int m = 0; m < n; ++m)
      for (int l = 0; l < n; ++l) v += ft.G_inv(m, l) * ft.nabla_s(l, k, m);
    ft.div_s[static_cast<size_t>(k)] = v;
  }

  ft.riemann = Tens4<QuadExt>(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          QuadExt v(0);
          for (int s = 0; s < n; ++s)
            v += ft.gamma(s, j, l) * ft.gamma(i, s, k) -
                 ft.gamma(s, j, k) * ft.gamma(i, s, l);
          for (int m = 0; m < n; ++m) v -= fs.c(m, k, l) * ft.gamma(i, j, m);
          ft.riemann(i, j, k, l) = v;
        }

  ft.ricci = Mat<QuadExt>(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      QuadExt v(0);
      for (int i = 0; i < n; ++i) v += ft.riemann(i, j, i, l);
      ft.ricci(j, l) = v;
    }
  return ft;
}

/// The constant-flag-curvature family on the 3-sphere, presented in the
/// orthonormal frame of a = K w1 x w1 + w2 x w2 + w3 x w3 where the coframe
/// obeys dw1 = 2 w2 ^ w3 (cyclic): generators eps^2 = K, del^2 = K - 1,
/// structure constants [e_2,e_3] = -2 eps e_1, [e_3,e_1] = -(2/eps) e_2,
/// [e_1,e_2] = -(2/eps) e_3, and the drift covector b = (del/eps) e^1. The
/// numeric sign of del is del_sign.
inline FrameSpace constant_curvature_frame(const Rat& K, int del_sign = 1) {
  if (!(K.to_double() >= 1.0)) throw Error("frame family needs K >= 1");
  if (del_sign != 1 && del_sign != -1) throw Error("del_sign must be +1 or -1");
  FrameSpace fs;
  fs.n = 3;
  fs.p = K;
  fs.q = K - Rat(1);
  fs.eps_num = std::sqrt(K.to_double());
  fs.del_num = del_sign * std::sqrt((K - Rat(1)).to_double());

  fs.G = Mat<QuadExt>(3, 3);
  for (int i = 0; i < 3; ++i) fs.G(i, i) = fs.one();

  // eps-multiples: 2 eps and 2/eps = (2/K) eps.
  QuadExt two_eps{Rat(0), Rat(2), Rat(0), Rat(0), fs.p, fs.q};
  QuadExt two_over_eps{Rat(0), Rat(2) / K, Rat(0), Rat(0), fs.p, fs.q};
  fs.c = Tens3<QuadExt>(3, 3, 3);
  fs.c(0, 1, 2) = -two_eps;
  fs.c(0, 2, 1) = two_eps;
  fs.c(1, 2, 0) = -two_over_eps;
  fs.c(1, 0, 2) = two_over_eps;
  fs.c(2, 0, 1) = -two_over_eps;
  fs.c(2, 1, 0) = two_over_eps;

  fs.b = Vec<QuadExt>(3);
  fs.b[0] = {Rat(0), Rat(0), Rat(0), Rat(1) / K, fs.p, fs.q};  // del/eps = eps del / K
  return fs;
}

}  // namespace randers
