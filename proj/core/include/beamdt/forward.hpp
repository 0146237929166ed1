// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "beamdt/beam.hpp"
#include "beamdt/kspace.hpp"
#include "beamdt/phantom.hpp"

namespace beamdt {

/// Default distance of the k-grid from the evanescent cutoff, |k| <= (1 - eps_k) k0.
inline constexpr double kDefaultEpsK = 1e-3;

/// The (k, theta) acquisition lattice: k in (2 k0 / M) I_M clipped to
/// |k| <= (1 - eps_k) k0, theta in S_D.
class MeasurementLattice {
 public:
  MeasurementLattice(int M, int D, double k0, double eps_k = kDefaultEpsK);

  int M() const { return M_; }
  int D() const { return D_; }
  double k0() const { return k0_; }
  double eps_k() const { return eps_k_; }
  WaveContext context() const { return WaveContext::from_wavenumber(k0_); }

  /// Lattice indices j in I_M that survive the clamp, ascending.
  const std::vector<int>& k_indices() const { return k_indices_; }
  int rows() const { return static_cast<int>(k_indices_.size()); }
  double k(int row) const { return 2.0 * k0_ / M_ * k_indices_[row]; }
  double angle(int i) const { return grid_angle(i, D_); }
  /// Row whose k is closest to `k`.
  int nearest_row(double k) const;

  /// Same k-grid with a different angular resolution.
  MeasurementLattice with_angles(int D) const { return {M_, D, k0_, eps_k_}; }

  friend bool operator==(const MeasurementLattice& a, const MeasurementLattice& b) {
    return a.M_ == b.M_ && a.D_ == b.D_ && a.k0_ == b.k0_ && a.eps_k_ == b.eps_k_;
  }

 private:
  int M_;
  int D_;
  double k0_;
  double eps_k_;
  std::vector<int> k_indices_;
};

/// Complex samples over a lattice, k row slow and angle index fast.
struct LatticeData {
  MeasurementLattice lattice;
  std::vector<cd> values;

  explicit LatticeData(MeasurementLattice l)
      : lattice(std::move(l)), values(static_cast<std::size_t>(lattice.rows()) * lattice.D()) {}

  cd& at(int row, int i) { return values[static_cast<std::size_t>(row) * lattice.D() + i]; }
  cd at(int row, int i) const { return values[static_cast<std::size_t>(row) * lattice.D() + i]; }
  std::span<cd> row(int r) { return std::span<cd>(values).subspan(static_cast<std::size_t>(r) * lattice.D(), lattice.D()); }
  std::span<const cd> row(int r) const {
    return std::span<const cd>(values).subspan(static_cast<std::size_t>(r) * lattice.D(), lattice.D());
  }
};

/// m(k, theta) at the detector line r_2 = r_M.
struct MeasurementSet : LatticeData {
  double r_M;
  MeasurementSet(MeasurementLattice l, double rM) : LatticeData(std::move(l)), r_M(rM) {}
};

/// g(k, phi) ~ Ff(T(k, phi)); the angle index runs over plane-wave directions.
struct KSpaceSamples : LatticeData {
  using LatticeData::LatticeData;
};

/// (1 / 2 pi)(2 r_s / M)^2 sum_j f(r_j) e^{-i r_j . y}, by direct summation.
std::vector<cd> ndft2(const ComplexImage& img, std::span<const Vec2> targets);

/// Exact NDFT samples of img on T(U_{M,D}) of the lattice.
KSpaceSamples kspace_samples(const ComplexImage& img, const MeasurementLattice& lattice);

enum class AngularSum { kDirect, kFft };

/// m(k, theta) = (2 pi / D_q) sum_{phi in S_{D_q}} a(phi - theta) g(k, phi) for
/// theta in S_D, with D_q = g.lattice.D() a multiple of D.
MeasurementSet measurements_from_kspace(const KSpaceSamples& g, const BeamProfile& b, int D,
                                        double r_M, AngularSum method = AngularSum::kDirect);

struct SimulationOptions {
  /// Inner phi-quadrature uses angular_oversample * D directions.
  int angular_oversample = 2;
  AngularSum method = AngularSum::kDirect;
};

/// Synthesizes measurements for the phantom `img` on `lattice` (the image grid
/// is independent of lattice.M()). Requires r_M > img.grid().r_s().
MeasurementSet simulate_measurements(const ComplexImage& img, const BeamProfile& b,
                                     const MeasurementLattice& lattice, double r_M,
                                     const SimulationOptions& opts = {});

/// m + delta xi with xi standard complex Gaussian and delta chosen so that
/// |m^delta - m| / |m| = percent / 100 exactly. Deterministic per seed.
MeasurementSet add_noise(const MeasurementSet& ms, double percent, std::uint64_t seed);

/// H_0^{(1)}(x) = J_0(x) + i Y_0(x), x > 0.
cd hankel_h0_1(double x);

/// Born field u(r) = (2 r_s / M)^2 sum_j G(r - r_j) f(r_j) u_inc(r_j) with
/// G(r) = (i/4) H_0^{(1)}(k0 |r|), u_inc from a D-point angular quadrature.
std::vector<cd> born_field_direct(const ComplexImage& img, const BeamProfile& b,
                                  std::span<const Vec2> points, const WaveContext& ctx, int D);

struct FdtCheckOptions {
  /// Angular quadrature for the incident field and for the right-hand side.
  int D = 256;
  /// The comparison k-grid is (2 k0 / Mk) I_Mk restricted to |k| <= k_fraction k0.
  int Mk = 128;
  double k_fraction = 0.8;
};

struct FdtReport {
  std::vector<double> k;
  /// Unitary 1D transform of the line field.
  std::vector<cd> lhs;
  /// sqrt(pi/2) i e^{i kappa r_M} / kappa * int a(s) Ff(h(k) - k0 s) ds.
  std::vector<cd> rhs;
  double relative_discrepancy = 0.0;
  bool truncation_warning = false;
};

/// Numerical check of the generalized Fourier diffraction relation on the
/// line r_2 = r_M sampled at L points across [-line_extent, line_extent).
FdtReport fdt_check(const ComplexImage& img, const BeamProfile& b, const WaveContext& ctx,
                    double r_M, double line_extent, int L, const FdtCheckOptions& opts = {});

/// Sample positions used by fdt_check and the line-field CSV.
std::vector<double> line_samples(double line_extent, int L);

}  // namespace beamdt
