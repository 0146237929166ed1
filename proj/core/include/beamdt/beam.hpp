// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <filesystem>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "beamdt/kspace.hpp"

namespace beamdt {

using cd = std::complex<double>;

/// Beam profile a on the unit circle, parametrized by the plane-wave angle.
///
/// Each kind is defined relative to the nominal downward direction -pi/2;
/// `orientation` says where that nominal direction actually points, so
/// evaluation is a(phi) = kind(phi - (orientation + pi/2)).
class BeamProfile {
 public:
  /// exp(-A s1^2) on directions with s2 < 0, zero elsewhere.
  struct Gaussian {
    double A;
  };
  /// Constant `amplitude` on the arc [lo, hi) (radians, hi - lo >= 2 pi means full circle).
  struct UniformArc {
    double lo;
    double hi;
    cd amplitude{1.0, 0.0};
  };
  /// Samples on S_D = (2 pi / D) I_D, periodic linear interpolation in between.
  struct Tabulated {
    std::vector<cd> values;
  };
  struct Term;
  struct Superposition {
    std::vector<Term> terms;
  };
  using Kind = std::variant<Gaussian, UniformArc, Tabulated, Superposition>;

  static constexpr double kDownward = -kPi / 2.0;

  static BeamProfile gaussian(double A, double orientation = kDownward);
  static BeamProfile uniform(cd amplitude = 1.0);
  static BeamProfile uniform_arc(double lo, double hi, cd amplitude = 1.0);
  static BeamProfile tabulated(std::vector<cd> values, double orientation = kDownward);
  /// Discrete stand-in for a single plane wave travelling along `direction`:
  /// one sample of weight D / (2 pi) on a D-point table, so the D-point
  /// quadrature of the incident field reduces to exactly one plane wave.
  /// `direction` must lie on the grid S_D.
  static BeamProfile plane_wave(int D, double direction = kDownward);
  /// Linear combination sum_i w_i b_i.
  static BeamProfile superpose(std::vector<std::pair<cd, BeamProfile>> terms);

  const Kind& kind() const { return kind_; }
  double orientation() const { return orientation_; }

  /// a(phi); 2 pi periodic.
  cd operator()(double phi) const;

  /// Profile evaluating as phi -> a(phi - theta).
  BeamProfile rotated(double theta) const;

  /// True when the profile is a plane-wave stand-in (single nonzero table entry).
  bool is_plane_wave() const;

 private:
  BeamProfile(Kind kind, double orientation) : kind_(std::move(kind)), orientation_(orientation) {}

  Kind kind_;
  double orientation_;
};

struct BeamProfile::Term {
  cd weight;
  std::shared_ptr<const BeamProfile> profile;
};

/// Angular Fourier coefficients a_n = (1/2 pi) int a(phi) e^{-i n phi} dphi,
/// n = -N..N, approximated by (1/D) sum_j a(phi_j) e^{-i n phi_j} on S_D.
class AngularCoefficients {
 public:
  AngularCoefficients(int N, int D, std::vector<cd> values);

  int N() const { return N_; }
  /// Quadrature size used to compute the coefficients.
  int D() const { return D_; }
  cd operator[](int n) const;
  std::span<const cd> values() const { return values_; }

 private:
  int N_;
  int D_;
  std::vector<cd> values_;
};

cd profile_eval(const BeamProfile& b, double phi);

/// Requires D >= 4N + 4 (std::invalid_argument otherwise).
AngularCoefficients angular_coefficients(const BeamProfile& b, int N, int D);

BeamProfile rotate_profile(const BeamProfile& b, double theta);

/// u_inc(r) = (2 pi / D) sum_{phi in S_D} a(phi) e^{i k0 r . s(phi)}. D must be even.
cd incident_field(const BeamProfile& b, Vec2 r, const WaveContext& ctx, int D);
std::vector<cd> incident_field(const BeamProfile& b, std::span<const Vec2> points,
                               const WaveContext& ctx, int D);

/// Angle grid S_D, phi_j = (2 pi / D)(j - D/2), j = 0..D-1.
inline double grid_angle(int j, int D) { return kTwoPi / D * (j - D / 2); }

/// The profile sampled on S_D, index j <-> grid_angle(j, D).
std::vector<cd> sample_profile(const BeamProfile& b, int D);

/// Load a tabulated profile from CSV rows `phi,re,im` (optional header line).
/// Angles must be strictly increasing with spacing 2 pi / D and start at -pi.
BeamProfile load_profile_csv(const std::filesystem::path& path);
void save_profile_csv(const std::filesystem::path& path, const BeamProfile& b, int D);

}  // namespace beamdt
