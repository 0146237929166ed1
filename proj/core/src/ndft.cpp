// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "beamdt/forward.hpp"
#include "beamdt/parallel.hpp"

namespace beamdt {

namespace {

// Split-complex copy of an image with the nonzero column span of every row,
// so the separable sum only touches the support.
struct SplitImage {
  int M;
  std::vector<double> re, im;
  std::vector<int> lo, hi;  // half-open column span per row, lo == hi for empty rows

  explicit SplitImage(const ComplexImage& img)
      : M(img.M()), re(img.values().size()), im(img.values().size()), lo(M, 0), hi(M, 0) {
    const auto v = img.values();
    for (int a = 0; a < M; ++a) {
      int first = M, last = -1;
      for (int b = 0; b < M; ++b) {
        const cd z = v[static_cast<std::size_t>(a) * M + b];
        re[static_cast<std::size_t>(a) * M + b] = z.real();
        im[static_cast<std::size_t>(a) * M + b] = z.imag();
        if (z != cd{}) {
          first = std::min(first, b);
          last = b;
        }
      }
      if (last >= 0) {
        lo[a] = first;
        hi[a] = last + 1;
      }
    }
  }
};

cd ndft_one(const SplitImage& s, double spacing, Vec2 y, std::vector<double>& c2,
            std::vector<double>& s2) {
  const int M = s.M;
  const int h = M / 2;
  for (int b = 0; b < M; ++b) {
    const double arg = -spacing * (b - h) * y.y;
    c2[b] = std::cos(arg);
    s2[b] = std::sin(arg);
  }
  double acc_re = 0.0, acc_im = 0.0;
  for (int a = 0; a < M; ++a) {
    if (s.lo[a] == s.hi[a]) continue;
    const double* fr = s.re.data() + static_cast<std::size_t>(a) * M;
    const double* fi = s.im.data() + static_cast<std::size_t>(a) * M;
    double row_re = 0.0, row_im = 0.0;
    for (int b = s.lo[a]; b < s.hi[a]; ++b) {
      row_re += fr[b] * c2[b] - fi[b] * s2[b];
      row_im += fr[b] * s2[b] + fi[b] * c2[b];
    }
    const double arg = -spacing * (a - h) * y.x;
    const double c1 = std::cos(arg), s1 = std::sin(arg);
    acc_re += c1 * row_re - s1 * row_im;
    acc_im += c1 * row_im + s1 * row_re;
  }
  return {acc_re, acc_im};
}

}  // namespace

std::vector<cd> ndft2(const ComplexImage& img, std::span<const Vec2> targets) {
  const SplitImage split(img);
  const double spacing = img.grid().spacing();
  const double scale = img.grid().pixel_area() / kTwoPi;
  std::vector<cd> out(targets.size());
  // Blocks of targets amortize the scratch allocation per task.
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (targets.size() + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t blk) {
    std::vector<double> c2(static_cast<std::size_t>(split.M)), s2(static_cast<std::size_t>(split.M));
    const std::size_t end = std::min(targets.size(), (blk + 1) * kBlock);
    for (std::size_t t = blk * kBlock; t < end; ++t)
      out[t] = scale * ndft_one(split, spacing, targets[t], c2, s2);
  });
  return out;
}

KSpaceSamples kspace_samples(const ComplexImage& img, const MeasurementLattice& lattice) {
  const WaveContext ctx = lattice.context();
  std::vector<Vec2> targets;
  targets.reserve(static_cast<std::size_t>(lattice.rows()) * lattice.D());
  for (int r = 0; r < lattice.rows(); ++r)
    for (int i = 0; i < lattice.D(); ++i) targets.push_back(map_T({lattice.k(r), lattice.angle(i)}, ctx));
  KSpaceSamples g(lattice);
  g.values = ndft2(img, targets);
  return g;
}

}  // namespace beamdt
