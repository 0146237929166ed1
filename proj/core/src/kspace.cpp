// SPDX-License-Identifier: Apache-2.0
#include "beamdt/kspace.hpp"

#include <stdexcept>
#include <string>

namespace beamdt {

WaveContext WaveContext::from_wavenumber(double k0) {
  if (!(k0 > 0.0) || !std::isfinite(k0))
    throw std::invalid_argument("wavenumber k0 must be positive and finite");
  return WaveContext(k0);
}

WaveContext WaveContext::from_wavelength(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("wavelength must be positive and finite");
  return WaveContext(kTwoPi / lambda);
}

double wrap_angle(double phi) {
  double w = std::fmod(phi + kPi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  w -= kPi;
  // fmod can land exactly on +pi after the shift back.
  return w >= kPi ? w - kTwoPi : w;
}

double kappa(double k, const WaveContext& ctx) {
  const double k0 = ctx.k0();
  if (!(std::abs(k) < k0))
    throw std::domain_error("kappa: |k| must be below k0 (got k = " + std::to_string(k) + ")");
  // (k0 - k)(k0 + k) keeps full precision close to the cutoff.
  return std::sqrt((k0 - k) * (k0 + k));
}

Vec2 wave_vector(double k, const WaveContext& ctx) { return {k, kappa(k, ctx)}; }

Vec2 map_T(KPhiPoint p, const WaveContext& ctx) {
  return wave_vector(p.k, ctx) - ctx.k0() * direction(p.phi);
}

double jacobian_det(KPhiPoint p, const WaveContext& ctx) {
  const double kap = kappa(p.k, ctx);
  return ctx.k0() * (p.k / kap * std::sin(p.phi) - std::cos(p.phi));
}

int banach_indicatrix(KPhiPoint p) { return wrap_angle(p.phi) < 0.0 ? 2 : 1; }

bool coverage_contains(Vec2 y, const WaveContext& ctx) {
  const double k0 = ctx.k0();
  if (norm(y) > 2.0 * k0) return false;
  return y.y >= 0.0 || norm(y - Vec2{k0, 0.0}) <= k0 || norm(y + Vec2{k0, 0.0}) <= k0;
}

}  // namespace beamdt
