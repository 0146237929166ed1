// SPDX-License-Identifier: Apache-2.0
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "beamdt/error.hpp"
#include "beamdt/forward.hpp"
#include "beamdt/parallel.hpp"

namespace beamdt {

cd hankel_h0_1(double x) {
  if (!(x > 0.0)) throw std::domain_error("hankel_h0_1 requires x > 0");
  return {boost::math::cyl_bessel_j(0, x), boost::math::cyl_neumann(0, x)};
}

std::vector<cd> born_field_direct(const ComplexImage& img, const BeamProfile& b,
                                  std::span<const Vec2> points, const WaveContext& ctx, int D) {
  const ObjectGrid& grid = img.grid();
  const int h = grid.M() / 2;
  std::vector<Vec2> sources;
  std::vector<cd> f;
  for (int j1 = -h; j1 < h; ++j1)
    for (int j2 = -h; j2 < h; ++j2)
      if (img.at(j1, j2) != cd{}) {
        sources.push_back(grid.point(j1, j2));
        f.push_back(img.at(j1, j2));
      }
  const auto uinc = incident_field(b, sources, ctx, D);
  // Source strengths q_j = (i/4) dA f_j u_inc(r_j).
  std::vector<cd> q(sources.size());
  for (std::size_t j = 0; j < q.size(); ++j) q[j] = cd(0.0, 0.25) * grid.pixel_area() * f[j] * uinc[j];

  const double touch = 1e-12 * grid.spacing();
  std::vector<cd> out(points.size());
  parallel_for(points.size(), [&](std::size_t p) {
    cd acc{};
    for (std::size_t j = 0; j < sources.size(); ++j) {
      const double dist = norm(points[p] - sources[j]);
      if (dist <= touch)
        throw SingularityError("evaluation point coincides with a source pixel of the phantom");
      acc += q[j] * hankel_h0_1(ctx.k0() * dist);
    }
    out[p] = acc;
  });
  return out;
}

std::vector<double> line_samples(double line_extent, int L) {
  if (L <= 0 || L % 2 != 0) throw std::invalid_argument("line sample count L must be even");
  if (!(line_extent > 0.0)) throw std::invalid_argument("line extent must be positive");
  std::vector<double> r1(static_cast<std::size_t>(L));
  const double step = 2.0 * line_extent / L;
  for (int l = 0; l < L; ++l) r1[static_cast<std::size_t>(l)] = step * (l - L / 2);
  return r1;
}

FdtReport fdt_check(const ComplexImage& img, const BeamProfile& b, const WaveContext& ctx,
                    double r_M, double line_extent, int L, const FdtCheckOptions& opts) {
  if (!(r_M > img.grid().r_s()))
    throw std::invalid_argument("fdt_check: detector line r_M must exceed r_s");
  FdtReport rep;
  rep.truncation_warning = line_extent < 4.0 * img.grid().r_s();

  const auto r1 = line_samples(line_extent, L);
  std::vector<Vec2> pts(r1.size());
  for (std::size_t l = 0; l < r1.size(); ++l) pts[l] = {r1[l], r_M};
  const auto v = born_field_direct(img, b, pts, ctx, opts.D);
  const double step = 2.0 * line_extent / L;

  const double k0 = ctx.k0();
  for (int j = -opts.Mk / 2; j < opts.Mk / 2; ++j) {
    const double k = 2.0 * k0 / opts.Mk * j;
    if (std::abs(k) <= opts.k_fraction * k0) rep.k.push_back(k);
  }

  const auto a = sample_profile(b, opts.D);
  std::vector<Vec2> targets;
  targets.reserve(rep.k.size() * static_cast<std::size_t>(opts.D));
  for (double k : rep.k)
    for (int i = 0; i < opts.D; ++i) targets.push_back(map_T({k, grid_angle(i, opts.D)}, ctx));
  const auto Ff = ndft2(img, targets);

  double diff_sq = 0.0, ref_sq = 0.0;
  for (std::size_t t = 0; t < rep.k.size(); ++t) {
    const double k = rep.k[t];
    cd lhs{};
    for (std::size_t l = 0; l < r1.size(); ++l) lhs += v[l] * std::polar(1.0, -k * r1[l]);
    lhs *= step / std::sqrt(kTwoPi);

    cd avg{};
    for (int i = 0; i < opts.D; ++i)
      avg += a[static_cast<std::size_t>(i)] * Ff[t * static_cast<std::size_t>(opts.D) + static_cast<std::size_t>(i)];
    avg *= kTwoPi / opts.D;
    const double kap = kappa(k, ctx);
    const cd rhs = std::sqrt(kPi / 2.0) * cd(0.0, 1.0) * std::polar(1.0, kap * r_M) / kap * avg;

    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    diff_sq += std::norm(lhs - rhs);
    ref_sq += std::norm(rhs);
  }
  rep.relative_discrepancy = ref_sq > 0.0 ? std::sqrt(diff_sq / ref_sq) : (diff_sq > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return rep;
}

}  // namespace beamdt
