// SPDX-License-Identifier: Apache-2.0
#include "beamdt/forward.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "beamdt/parallel.hpp"

namespace beamdt {

MeasurementLattice::MeasurementLattice(int M, int D, double k0, double eps_k)
    : M_(M), D_(D), k0_(k0), eps_k_(eps_k) {
  if (M <= 0 || M % 2 != 0) throw std::invalid_argument("lattice M must be even and positive");
  if (D <= 0 || D % 2 != 0) throw std::invalid_argument("lattice D must be even and positive");
  if (!(k0 > 0.0)) throw std::invalid_argument("lattice k0 must be positive");
  if (!(eps_k > 0.0 && eps_k < 1.0)) throw std::invalid_argument("eps_k must lie in (0, 1)");
  const double kmax = (1.0 - eps_k) * k0;
  for (int j = -M / 2; j < M / 2; ++j)
    if (std::abs(2.0 * k0 / M * j) <= kmax) k_indices_.push_back(j);
}

int MeasurementLattice::nearest_row(double k) const {
  int best = 0;
  for (int r = 1; r < rows(); ++r)
    if (std::abs(this->k(r) - k) < std::abs(this->k(best) - k)) best = r;
  return best;
}

namespace {

struct FftwPlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using FftwPlan = std::unique_ptr<fftw_plan_s, FftwPlanDeleter>;

struct FftwBufferDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwBufferDeleter>;

FftwBuffer fftw_buffer(int n) { return FftwBuffer(fftw_alloc_complex(static_cast<std::size_t>(n))); }

}  // namespace

MeasurementSet measurements_from_kspace(const KSpaceSamples& g, const BeamProfile& b, int D,
                                        double r_M, AngularSum method) {
  const int Dq = g.lattice.D();
  if (D <= 0 || D % 2 != 0 || Dq % D != 0)
    throw std::invalid_argument("rotation count D must be even and divide the quadrature size " +
                                std::to_string(Dq));
  const int stride = Dq / D;
  const int rows = g.lattice.rows();
  const double w = kTwoPi / Dq;

  // kernel[d] = a(2 pi d / Dq); sample_profile starts at -pi.
  const auto samples = sample_profile(b, Dq);
  std::vector<cd> kernel(static_cast<std::size_t>(Dq));
  for (int d = 0; d < Dq; ++d) kernel[static_cast<std::size_t>(d)] = samples[static_cast<std::size_t>((d + Dq / 2) % Dq)];

  MeasurementSet ms(g.lattice.with_angles(D), r_M);

  if (method == AngularSum::kDirect) {
    parallel_for(static_cast<std::size_t>(rows), [&](std::size_t r) {
      const auto row = g.row(static_cast<int>(r));
      for (int i = 0; i < D; ++i) {
        const int shift = stride * i;
        cd acc{};
        for (int l = 0; l < Dq; ++l) {
          int d = l - shift;
          if (d < 0) d += Dq;
          acc += kernel[static_cast<std::size_t>(d)] * row[static_cast<std::size_t>(l)];
        }
        ms.at(static_cast<int>(r), i) = w * acc;
      }
    });
    return ms;
  }

  // c_t = sum_l kernel[l - t] g_l is the circular convolution of g with the
  // reflected kernel kernel[-d].
  auto scratch = fftw_buffer(Dq);
  auto scratch2 = fftw_buffer(Dq);
  const FftwPlan forward(fftw_plan_dft_1d(Dq, scratch.get(), scratch2.get(), FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED));
  const FftwPlan backward(fftw_plan_dft_1d(Dq, scratch.get(), scratch2.get(), FFTW_BACKWARD,
                                           FFTW_ESTIMATE | FFTW_UNALIGNED));
  std::vector<cd> kernel_hat(static_cast<std::size_t>(Dq));
  {
    std::vector<cd> reflected(static_cast<std::size_t>(Dq));
    for (int d = 0; d < Dq; ++d) reflected[static_cast<std::size_t>(d)] = kernel[static_cast<std::size_t>((Dq - d) % Dq)];
    fftw_execute_dft(forward.get(), reinterpret_cast<fftw_complex*>(reflected.data()),
                     reinterpret_cast<fftw_complex*>(kernel_hat.data()));
  }
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t r) {
    std::vector<cd> in(g.row(static_cast<int>(r)).begin(), g.row(static_cast<int>(r)).end());
    std::vector<cd> spec(static_cast<std::size_t>(Dq)), conv(static_cast<std::size_t>(Dq));
    fftw_execute_dft(forward.get(), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(spec.data()));
    for (int q = 0; q < Dq; ++q) spec[static_cast<std::size_t>(q)] *= kernel_hat[static_cast<std::size_t>(q)];
    fftw_execute_dft(backward.get(), reinterpret_cast<fftw_complex*>(spec.data()),
                     reinterpret_cast<fftw_complex*>(conv.data()));
    for (int i = 0; i < D; ++i)
      ms.at(static_cast<int>(r), i) = (w / Dq) * conv[static_cast<std::size_t>(stride * i)];
  });
  return ms;
}

MeasurementSet simulate_measurements(const ComplexImage& img, const BeamProfile& b,
                                     const MeasurementLattice& lattice, double r_M,
                                     const SimulationOptions& opts) {
  if (!(r_M > img.grid().r_s()))
    throw std::invalid_argument("detector line r_M must exceed the support half-width r_s");
  if (opts.angular_oversample < 1) throw std::invalid_argument("angular_oversample must be >= 1");
  const MeasurementLattice fine = lattice.with_angles(lattice.D() * opts.angular_oversample);
  return measurements_from_kspace(kspace_samples(img, fine), b, lattice.D(), r_M, opts.method);
}

}  // namespace beamdt
