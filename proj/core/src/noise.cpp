// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <stdexcept>

#include "beamdt/forward.hpp"

namespace beamdt {

MeasurementSet add_noise(const MeasurementSet& ms, double percent, std::uint64_t seed) {
  if (!(percent >= 0.0)) throw std::invalid_argument("noise percent must be nonnegative");
  MeasurementSet out = ms;
  if (percent == 0.0) return out;

  // One sequential stream: the draw order is fixed by the sample order.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cd> xi(ms.values.size());
  double xi_sq = 0.0, m_sq = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    xi[i] = cd(re, im) / std::sqrt(2.0);
    xi_sq += std::norm(xi[i]);
    m_sq += std::norm(ms.values[i]);
  }
  if (m_sq == 0.0 || xi_sq == 0.0) return out;
  const double delta = percent / 100.0 * std::sqrt(m_sq / xi_sq);
  for (std::size_t i = 0; i < xi.size(); ++i) out.values[i] += delta * xi[i];
  return out;
}

}  // namespace beamdt
