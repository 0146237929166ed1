// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>

namespace beamdt {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Unit direction s(phi) = (cos phi, sin phi).
inline Vec2 direction(double phi) { return {std::cos(phi), std::sin(phi)}; }

/// Monochromatic background medium. Construct through from_wavenumber /
/// from_wavelength so that k0 and lambda stay consistent.
class WaveContext {
 public:
  static WaveContext from_wavenumber(double k0);
  static WaveContext from_wavelength(double lambda);

  double k0() const { return k0_; }
  double lambda() const { return kTwoPi / k0_; }

 private:
  explicit WaveContext(double k0) : k0_(k0) {}
  double k0_;
};

/// A point (k, phi) of the measurement domain U = (-k0, k0) x [-pi, pi).
struct KPhiPoint {
  double k = 0.0;
  double phi = 0.0;
};

/// Wrap an angle into [-pi, pi).
double wrap_angle(double phi);

/// kappa(k) = sqrt(k0^2 - k^2). Throws std::domain_error for |k| >= k0.
double kappa(double k, const WaveContext& ctx);

/// h(k) = (k, kappa(k)); lies on the circle of radius k0.
Vec2 wave_vector(double k, const WaveContext& ctx);

/// T(k, phi) = h(k) - k0 s(phi).
Vec2 map_T(KPhiPoint p, const WaveContext& ctx);

/// det grad T = k0 (k sin(phi) / kappa(k) - cos(phi)).
double jacobian_det(KPhiPoint p, const WaveContext& ctx);

/// Number of preimages of T(k, phi) under T: 2 on phi in [-pi, 0), 1 otherwise.
/// The null sets y = 0 and |y| = 2 k0 get the generic value.
int banach_indicatrix(KPhiPoint p);

/// Closure of the frequency coverage T(U).
bool coverage_contains(Vec2 y, const WaveContext& ctx);

}  // namespace beamdt
