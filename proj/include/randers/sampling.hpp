#pragma once

// Deterministic sampling. All randomness in the project flows through this
// wrapper; raw mt19937_64 words are mapped to [0, 1) by the explicit 53-bit
// construction and normals come from a hand-rolled Box-Muller, so streams are
// bit-identical across platforms (std::*_distribution is implementation
// defined and must not be used here).

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "randers/jet.hpp"
#include "randers/linalg.hpp"

namespace randers {

struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal; u1 < 1 keeps the log argument in (0, 1].
  double gaussian() {
    double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform direction on the Euclidean unit sphere of R^n.
  Vec<double> unit_vector(int n) {
    for (;;) {
      Vec<double> v(static_cast<size_t>(n));
      double s = 0;
      for (auto& c : v) {
        c = gaussian();
        s += c * c;
      }
      if (s > 1e-24) {
        double inv = 1.0 / std::sqrt(s);
        for (auto& c : v) c *= inv;
        return v;
      }
    }
  }

  /// Uniform point in an axis box, with `margin` (a fraction in [0, 0.5) of
  /// each side length) trimmed from both ends of every axis.
  Point box_point(const Vec<std::array<double, 2>>& box, double margin = 0.0) {
    Point x(box.size());
    for (size_t i = 0; i < box.size(); ++i)
      x[i] = box[i][0] +
             (box[i][1] - box[i][0]) * (margin + (1 - 2 * margin) * uniform());
    return x;
  }
};

}  // namespace randers
