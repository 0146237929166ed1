// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "beamdt/phantom.hpp"

namespace beamdt::test {

inline double rel_l2(std::span<const cd> got, std::span<const cd> want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num += std::norm(got[i] - want[i]);
    den += std::norm(want[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

inline double l2(std::span<const cd> v) {
  double s = 0.0;
  for (cd z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline std::vector<cd> random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> v(n);
  for (cd& z : v) z = {u(rng), u(rng)};
  return v;
}

/// exp(-|r|^2 / (2 sigma^2)) restricted to |r| < cutoff.
inline ComplexImage gaussian_blob(const ObjectGrid& g, double sigma, double cutoff, Vec2 c = {0, 0}) {
  ComplexImage img(g);
  const int h = g.M() / 2;
  for (int a = -h; a < h; ++a)
    for (int b = -h; b < h; ++b) {
      const Vec2 r = g.point(a, b) - c;
      const double r2 = dot(r, r);
      if (r2 < cutoff * cutoff) img.at(a, b) = std::exp(-r2 / (2.0 * sigma * sigma));
    }
  return img;
}

}  // namespace beamdt::test
