// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "beamdt/beam.hpp"
#include "beamdt/forward.hpp"
#include "beamdt/phantom.hpp"

namespace beamdt {

struct TsvdConfig {
  /// Truncation half-width: indices |n| <= N are kept.
  int N = 12;
  /// Coefficients with |a_n| <= min_singular are dropped even inside the band.
  double min_singular = 1e-12;
};

struct PicardRow {
  int n;
  double abs_a;
  double abs_m;
  /// +inf when a_n == 0.
  double abs_ratio;
};

struct PicardTable {
  double k;
  std::vector<PicardRow> rows;
};

/// (A g)(theta) = (2 pi / D) sum_{phi in S_D} a(phi - theta) g(phi) on S_D, D = g.size().
std::vector<cd> apply_operator(std::span<const cd> g, const BeamProfile& b);

/// (A* m)(phi) = (2 pi / D) sum_{theta in S_D} conj(a(phi - theta)) m(theta).
std::vector<cd> apply_adjoint(std::span<const cd> m, const BeamProfile& b);

/// m_n = (1/D) sum_theta m(theta) e^{i n theta}, n = -N..N; requires 2N + 1 <= D.
std::vector<cd> angular_analysis(std::span<const cd> row, int N);

/// angular_analysis of the measurement row at lattice row `k_row`.
std::vector<cd> svd_coefficients(const MeasurementSet& ms, int k_row, int N);

/// g_N(phi_j) = sum_{|n| <= N, |a_n| > floor} m_n / (2 pi a_n) e^{-i n phi_j} for one row.
std::vector<cd> tsvd_row(std::span<const cd> m_coeffs, const AngularCoefficients& coeffs,
                         const TsvdConfig& cfg, int D);

/// Step 1 over every k row. Throws EmptySpectrumError when no coefficient survives.
KSpaceSamples tsvd_solve(const MeasurementSet& ms, const AngularCoefficients& coeffs,
                         const TsvdConfig& cfg);

PicardTable picard_table(const MeasurementSet& ms, const AngularCoefficients& coeffs, int k_row,
                         int N);

/// Discrete filtered backpropagation onto `grid`:
/// f(r) = (2 k0 / (M D)) sum g(k, phi) e^{i T(k, phi) . r} |det grad T| / Card.
ComplexImage backpropagate(const KSpaceSamples& g, const ObjectGrid& grid);

/// Full two-step pipeline: coefficients on S_D, TSVD per k row, backpropagation.
ComplexImage reconstruct(const MeasurementSet& ms, const BeamProfile& b, const TsvdConfig& cfg,
                         const ObjectGrid& grid);

/// k-space data under the plane-wave assumption: the rows are shifted so the
/// beam's nominal direction becomes the plane-wave direction, and scaled by the
/// beam's on-axis amplitude u_inc(0) = int a. The orientation of `b` must lie on S_D.
KSpaceSamples conventional_kspace(const MeasurementSet& ms, const BeamProfile& b);

/// Conventional diffraction tomography: conventional_kspace then backpropagate.
ComplexImage reconstruct_conventional(const MeasurementSet& ms, const BeamProfile& b,
                                      const ObjectGrid& grid);

}  // namespace beamdt
