// SPDX-License-Identifier: Apache-2.0
#include "beamdt/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "beamdt/error.hpp"
#include "beamdt/parallel.hpp"

namespace beamdt {

namespace {

// kernel[d] = a(2 pi d / D) for d = 0..D-1.
std::vector<cd> circular_kernel(const BeamProfile& b, int D) {
  const auto samples = sample_profile(b, D);
  std::vector<cd> kernel(static_cast<std::size_t>(D));
  for (int d = 0; d < D; ++d) kernel[static_cast<std::size_t>(d)] = samples[static_cast<std::size_t>((d + D / 2) % D)];
  return kernel;
}

std::vector<cd> twiddles(int D, int sign) {
  std::vector<cd> tw(static_cast<std::size_t>(D));
  for (int q = 0; q < D; ++q) tw[static_cast<std::size_t>(q)] = std::polar(1.0, sign * kTwoPi * q / D);
  return tw;
}

// (n (j - D/2)) mod D, so that e^{+-i n phi_j} = tw[phase_index].
std::size_t phase_index(int n, int j, int D) {
  long long q = (static_cast<long long>(n) * (j - D / 2)) % D;
  if (q < 0) q += D;
  return static_cast<std::size_t>(q);
}

void check_even_length(std::size_t n) {
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("angular samples must have even, nonzero length");
}

}  // namespace

std::vector<cd> apply_operator(std::span<const cd> g, const BeamProfile& b) {
  check_even_length(g.size());
  const int D = static_cast<int>(g.size());
  const auto kernel = circular_kernel(b, D);
  std::vector<cd> out(g.size());
  for (int i = 0; i < D; ++i) {
    cd acc{};
    for (int l = 0; l < D; ++l) acc += kernel[static_cast<std::size_t>((l - i + D) % D)] * g[static_cast<std::size_t>(l)];
    out[static_cast<std::size_t>(i)] = kTwoPi / D * acc;
  }
  return out;
}

std::vector<cd> apply_adjoint(std::span<const cd> m, const BeamProfile& b) {
  check_even_length(m.size());
  const int D = static_cast<int>(m.size());
  const auto kernel = circular_kernel(b, D);
  std::vector<cd> out(m.size());
  for (int l = 0; l < D; ++l) {
    cd acc{};
    for (int i = 0; i < D; ++i) acc += std::conj(kernel[static_cast<std::size_t>((l - i + D) % D)]) * m[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(l)] = kTwoPi / D * acc;
  }
  return out;
}

std::vector<cd> angular_analysis(std::span<const cd> row, int N) {
  check_even_length(row.size());
  const int D = static_cast<int>(row.size());
  if (N < 0 || 2 * N + 1 > D)
    throw std::invalid_argument("need 2N+1 <= D for angular analysis (N = " + std::to_string(N) + ")");
  const auto tw = twiddles(D, +1);
  std::vector<cd> out(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    cd acc{};
    for (int i = 0; i < D; ++i) acc += row[static_cast<std::size_t>(i)] * tw[phase_index(n, i, D)];
    out[static_cast<std::size_t>(n + N)] = acc / static_cast<double>(D);
  }
  return out;
}

std::vector<cd> svd_coefficients(const MeasurementSet& ms, int k_row, int N) {
  if (k_row < 0 || k_row >= ms.lattice.rows()) throw std::out_of_range("k row outside the lattice");
  return angular_analysis(ms.row(k_row), N);
}

namespace {

std::vector<int> kept_indices(const AngularCoefficients& coeffs, const TsvdConfig& cfg) {
  if (cfg.N < 0) throw std::invalid_argument("truncation level N must be nonnegative");
  if (coeffs.N() < cfg.N)
    throw std::invalid_argument("beam coefficients cover |n| <= " + std::to_string(coeffs.N()) +
                                " but N = " + std::to_string(cfg.N) + " was requested");
  std::vector<int> kept;
  for (int n = -cfg.N; n <= cfg.N; ++n)
    if (std::abs(coeffs[n]) > cfg.min_singular) kept.push_back(n);
  if (kept.empty())
    throw EmptySpectrumError("every beam coefficient with |n| <= " + std::to_string(cfg.N) +
                             " is at or below the singular-value floor " +
                             std::to_string(cfg.min_singular) +
                             "; raise N or lower min_singular");
  return kept;
}

std::vector<cd> synthesize(std::span<const cd> m_coeffs, const AngularCoefficients& coeffs,
                           const std::vector<int>& kept, int N, int D, const std::vector<cd>& tw) {
  std::vector<cd> solution_coeffs;
  solution_coeffs.reserve(kept.size());
  for (int n : kept) solution_coeffs.push_back(m_coeffs[static_cast<std::size_t>(n + N)] / (kTwoPi * coeffs[n]));
  std::vector<cd> g(static_cast<std::size_t>(D));
  for (int j = 0; j < D; ++j) {
    cd acc{};
    for (std::size_t t = 0; t < kept.size(); ++t) acc += solution_coeffs[t] * tw[phase_index(kept[t], j, D)];
    g[static_cast<std::size_t>(j)] = acc;
  }
  return g;
}

}  // namespace

std::vector<cd> tsvd_row(std::span<const cd> m_coeffs, const AngularCoefficients& coeffs,
                         const TsvdConfig& cfg, int D) {
  if (m_coeffs.size() != static_cast<std::size_t>(2 * cfg.N + 1))
    throw std::invalid_argument("tsvd_row expects 2N+1 measurement coefficients");
  check_even_length(static_cast<std::size_t>(D));
  const auto kept = kept_indices(coeffs, cfg);
  return synthesize(m_coeffs, coeffs, kept, cfg.N, D, twiddles(D, -1));
}

KSpaceSamples tsvd_solve(const MeasurementSet& ms, const AngularCoefficients& coeffs,
                         const TsvdConfig& cfg) {
  const int D = ms.lattice.D();
  const auto kept = kept_indices(coeffs, cfg);
  if (2 * cfg.N + 1 > D) throw std::invalid_argument("truncation level too large for the angle grid");
  const auto tw = twiddles(D, -1);
  KSpaceSamples g(ms.lattice);
  parallel_for(static_cast<std::size_t>(ms.lattice.rows()), [&](std::size_t r) {
    const auto mc = angular_analysis(ms.row(static_cast<int>(r)), cfg.N);
    const auto row = synthesize(mc, coeffs, kept, cfg.N, D, tw);
    std::copy(row.begin(), row.end(), g.row(static_cast<int>(r)).begin());
  });
  return g;
}

PicardTable picard_table(const MeasurementSet& ms, const AngularCoefficients& coeffs, int k_row,
                         int N) {
  if (coeffs.N() < N) throw std::invalid_argument("picard_table: beam coefficients do not cover N");
  const auto mc = svd_coefficients(ms, k_row, N);
  PicardTable table{ms.lattice.k(k_row), {}};
  for (int n = -N; n <= N; ++n) {
    const double abs_a = std::abs(coeffs[n]);
    const double abs_m = std::abs(mc[static_cast<std::size_t>(n + N)]);
    const double ratio = abs_a == 0.0 ? std::numeric_limits<double>::infinity() : abs_m / abs_a;
    table.rows.push_back({n, abs_a, abs_m, ratio});
  }
  return table;
}

ComplexImage backpropagate(const KSpaceSamples& g, const ObjectGrid& grid) {
  const MeasurementLattice& lat = g.lattice;
  const WaveContext ctx = lat.context();
  const double prefactor = 2.0 * lat.k0() / (static_cast<double>(lat.M()) * lat.D());

  // Flattened (k, phi) samples: coverage point and weighted datum.
  const std::size_t T = static_cast<std::size_t>(lat.rows()) * lat.D();
  std::vector<double> y1(T), y2(T), c_re(T), c_im(T);
  for (int r = 0; r < lat.rows(); ++r)
    for (int i = 0; i < lat.D(); ++i) {
      const KPhiPoint p{lat.k(r), lat.angle(i)};
      const Vec2 y = map_T(p, ctx);
      const double w = prefactor * std::abs(jacobian_det(p, ctx)) / banach_indicatrix(p);
      const std::size_t t = static_cast<std::size_t>(r) * lat.D() + i;
      y1[t] = y.x;
      y2[t] = y.y;
      c_re[t] = w * g.at(r, i).real();
      c_im[t] = w * g.at(r, i).imag();
    }

  const int M = grid.M();
  const int h = M / 2;
  const double dx = grid.spacing();
  std::vector<double> out_re(static_cast<std::size_t>(M) * M, 0.0), out_im(out_re.size(), 0.0);

  // Workers own disjoint output rows; every pixel sums the samples in the
  // same ascending order, so the result is independent of the worker count.
  constexpr std::size_t kBlock = 128;
  const std::size_t chunks = static_cast<std::size_t>(std::min(M, std::max(1, thread_count())));
  parallel_for(chunks, [&](std::size_t chunk) {
    const int row_lo = static_cast<int>(static_cast<std::size_t>(M) * chunk / chunks);
    const int row_hi = static_cast<int>(static_cast<std::size_t>(M) * (chunk + 1) / chunks);
    std::vector<double> e2_re(kBlock * M), e2_im(kBlock * M);
    for (std::size_t t0 = 0; t0 < T; t0 += kBlock) {
      const std::size_t nb = std::min(kBlock, T - t0);
      for (std::size_t t = 0; t < nb; ++t)
        for (int b = 0; b < M; ++b) {
          const double arg = y2[t0 + t] * dx * (b - h);
          e2_re[t * M + b] = std::cos(arg);
          e2_im[t * M + b] = std::sin(arg);
        }
      for (int a = row_lo; a < row_hi; ++a) {
        double* acc_re = out_re.data() + static_cast<std::size_t>(a) * M;
        double* acc_im = out_im.data() + static_cast<std::size_t>(a) * M;
        for (std::size_t t = 0; t < nb; ++t) {
          const double arg = y1[t0 + t] * dx * (a - h);
          const double e1r = std::cos(arg), e1i = std::sin(arg);
          const double cr = c_re[t0 + t] * e1r - c_im[t0 + t] * e1i;
          const double ci = c_re[t0 + t] * e1i + c_im[t0 + t] * e1r;
          const double* er = e2_re.data() + t * M;
          const double* ei = e2_im.data() + t * M;
          for (int b = 0; b < M; ++b) {
            acc_re[b] += cr * er[b] - ci * ei[b];
            acc_im[b] += cr * ei[b] + ci * er[b];
          }
        }
      }
    }
  });

  ComplexImage img(grid);
  auto v = img.values();
  for (std::size_t q = 0; q < v.size(); ++q) v[q] = {out_re[q], out_im[q]};
  return img;
}

ComplexImage reconstruct(const MeasurementSet& ms, const BeamProfile& b, const TsvdConfig& cfg,
                         const ObjectGrid& grid) {
  const auto coeffs = angular_coefficients(b, cfg.N, ms.lattice.D());
  return backpropagate(tsvd_solve(ms, coeffs, cfg), grid);
}

KSpaceSamples conventional_kspace(const MeasurementSet& ms, const BeamProfile& b) {
  const int D = ms.lattice.D();
  const double pos = (wrap_angle(b.orientation()) + kPi) / (kTwoPi / D);
  const double snapped = std::round(pos);
  if (std::abs(pos - snapped) > 1e-6)
    throw std::invalid_argument("beam orientation must lie on the rotation grid S_D");
  const int p = static_cast<int>(snapped) % D;
  const int offset = p - D / 2;  // orientation = (2 pi / D) * offset

  // On-axis amplitude int a = 2 pi a_0 with a fine quadrature; for tables the
  // grid contains every node, so the interpolant is integrated exactly.
  int Dcal = std::max(8192, D);
  if (const auto* t = std::get_if<BeamProfile::Tabulated>(&b.kind())) {
    const int n = static_cast<int>(t->values.size());
    Dcal = n * ((Dcal + n - 1) / n);
  }
  const cd u0 = kTwoPi * angular_coefficients(b, 0, Dcal)[0];
  if (u0 == cd{}) throw EmptySpectrumError("beam profile has zero on-axis amplitude");

  KSpaceSamples g(ms.lattice);
  for (int r = 0; r < ms.lattice.rows(); ++r)
    for (int l = 0; l < D; ++l) {
      const int i = ((l - offset) % D + D) % D;
      g.at(r, l) = ms.at(r, i) / u0;
    }
  return g;
}

ComplexImage reconstruct_conventional(const MeasurementSet& ms, const BeamProfile& b,
                                      const ObjectGrid& grid) {
  return backpropagate(conventional_kspace(ms, b), grid);
}

}  // namespace beamdt
