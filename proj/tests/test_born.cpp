// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "beamdt/error.hpp"
#include "beamdt/forward.hpp"
#include "helpers.hpp"

using namespace beamdt;

namespace {

const WaveContext ctx = WaveContext::from_wavenumber(kTwoPi);

// Power series for J0 and Y0 in extended precision.
cd hankel_series(double xd) {
  const long double x = xd, q = x * x / 4.0L;
  const long double gamma = 0.57721566490153286060651209008240243L;
  long double term = 1.0L, j0 = 1.0L, ysum = 0.0L, harmonic = 0.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    j0 += term;
    ysum -= harmonic * term;
    if (std::fabs(term) * (1.0L + harmonic) < 1e-30L) break;
  }
  const long double pi = 3.14159265358979323846264338327950288L;
  const long double y0 = 2.0L / pi * ((std::log(x / 2.0L) + gamma) * j0 + ysum);
  return {static_cast<double>(j0), static_cast<double>(y0)};
}

cd derivative(double x, double h) {
  return (-hankel_h0_1(x + 2 * h) + 8.0 * hankel_h0_1(x + h) - 8.0 * hankel_h0_1(x - h) + hankel_h0_1(x - 2 * h)) /
         (12.0 * h);
}

}  // namespace

TEST_CASE("hankel function reference values") {
  const cd h1 = hankel_h0_1(1.0);
  CHECK(h1.real() == doctest::Approx(0.7651976866).epsilon(1e-10));
  CHECK(h1.imag() == doctest::Approx(0.0882569642).epsilon(1e-9));
  for (double x : {1e-3, 0.01, 0.3, 1.0, 2.4048, 5.0, 8.0, 11.0}) {
    const cd want = hankel_series(x);
    INFO("x = " << x);
    CHECK(std::abs(hankel_h0_1(x) - want) <= 1e-10 * std::abs(want));
  }
}

TEST_CASE("hankel function large-argument behaviour") {
  const double x = 500.0;
  CHECK(std::abs(std::abs(hankel_h0_1(x)) * std::sqrt(x) - std::sqrt(2.0 / kPi)) < 1e-3);
  const cd asym = std::sqrt(2.0 / (kPi * x)) * std::exp(cd(0.0, x - kPi / 4));
  CHECK(std::abs(hankel_h0_1(x) - asym) < 1e-3 * std::abs(asym));
  CHECK(std::abs(hankel_h0_1(1e3)) > 0.0);
}

TEST_CASE("hankel function Wronskian") {
  for (double x : {0.5, 5.0, 50.0}) {
    const cd h = hankel_h0_1(x), dh = derivative(x, 1e-3 * std::min(1.0, x));
    const double w = h.real() * dh.imag() - dh.real() * h.imag();
    CHECK(std::abs(w - 2.0 / (kPi * x)) <= 1e-9);
  }
  CHECK_THROWS_AS(hankel_h0_1(0.0), std::domain_error);
  CHECK_THROWS_AS(hankel_h0_1(-1.0), std::domain_error);
}

TEST_CASE("born field of an empty phantom vanishes") {
  const ObjectGrid g(16, 1.0);
  const std::vector<Vec2> pts{{0.0, 3.0}, {1.0, -2.0}};
  for (cd z : born_field_direct(ComplexImage(g), BeamProfile::gaussian(10.0), pts, ctx, 64)) CHECK(z == cd{});
}

TEST_CASE("born field of a single source") {
  const ObjectGrid g(16, 1.0);
  ComplexImage img(g);
  img.at(2, -3) = cd(0.4, 0.1);
  const Vec2 src = g.point(2, -3);
  const auto b = BeamProfile::gaussian(10.0);
  const cd uinc = incident_field(b, src, ctx, 128);
  std::vector<Vec2> pts;
  for (int i = 1; i <= 10; ++i) pts.push_back(src + (0.15 * i) * direction(0.3 * i));
  const auto u = born_field_direct(img, b, pts, ctx, 128);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cd want = g.pixel_area() * cd(0.0, 0.25) * hankel_series(ctx.k0() * norm(pts[i] - src)) * img.at(2, -3) * uinc;
    CHECK(std::abs(u[i] - want) <= 1e-10 * std::abs(want));
  }
  const std::vector<Vec2> on_source{src};
  CHECK_THROWS_AS(born_field_direct(img, b, on_source, ctx, 128), SingularityError);
}

TEST_CASE("born field is linear in the profile") {
  const ObjectGrid g(32, 1.0);
  const auto img = test::gaussian_blob(g, 0.3, 0.95);
  const auto b1 = BeamProfile::gaussian(10.0), b2 = BeamProfile::uniform_arc(0.2, 2.5, cd(0.5, -1.0));
  std::vector<Vec2> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({-3.0 + 0.3 * i, 4.0});
  const auto u1 = born_field_direct(img, b1, pts, ctx, 128);
  const auto u2 = born_field_direct(img, b2, pts, ctx, 128);
  const auto us = born_field_direct(img, BeamProfile::superpose({{1.0, b1}, {1.0, b2}}), pts, ctx, 128);
  std::vector<cd> sum(pts.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = u1[i] + u2[i];
  CHECK(test::rel_l2(us, sum) <= 1e-10);
}

TEST_CASE("born field satisfies the inhomogeneous Helmholtz equation") {
  const ObjectGrid g(128, 2.0);
  const double sigma = 0.4;
  const auto img = test::gaussian_blob(g, sigma, 1.9);
  const auto b = BeamProfile::gaussian(10.0);
  const double k0 = ctx.k0();
  const double half = 0.5 * g.spacing();

  // Five-point Laplacian at h and 2h, Richardson-extrapolated to remove the h^2 term.
  const auto residual = [&](Vec2 p, double h) {
    const std::vector<Vec2> st{p,          p + Vec2{h, 0},     p - Vec2{h, 0},     p + Vec2{0, h},
                               p - Vec2{0, h}, p + Vec2{2 * h, 0}, p - Vec2{2 * h, 0}, p + Vec2{0, 2 * h},
                               p - Vec2{0, 2 * h}};
    const auto u = born_field_direct(img, b, st, ctx, 256);
    const cd lap_h = (u[1] + u[2] + u[3] + u[4] - 4.0 * u[0]) / (h * h);
    const cd lap_2h = (u[5] + u[6] + u[7] + u[8] - 4.0 * u[0]) / (4 * h * h);
    return (4.0 * lap_h - lap_2h) / 3.0 + k0 * k0 * u[0];
  };

  for (Vec2 p : {Vec2{0.0, 0.0}, Vec2{0.25, -0.125}, Vec2{-0.375, 0.25}}) {
    p = p + Vec2{half, half};
    const cd source = std::exp(-dot(p, p) / (2 * sigma * sigma)) * incident_field(b, p, ctx, 256);
    const cd r = residual(p, 2.0 * g.spacing());
    INFO("p = (" << p.x << ", " << p.y << ")");
    CHECK(std::abs(r + source) <= 1e-2 * std::abs(source));
  }

  const Vec2 outside{2.5 + half, 1.0 + half};
  const auto u = born_field_direct(img, b, std::vector<Vec2>{outside}, ctx, 256);
  CHECK(std::abs(residual(outside, 2.0 * g.spacing())) <= 1e-2 * k0 * k0 * std::abs(u[0]));
}

TEST_CASE("line samples") {
  const auto r = line_samples(2.0, 8);
  REQUIRE(r.size() == 8u);
  CHECK(r.front() == -2.0);
  CHECK(r[4] == 0.0);
  CHECK(r.back() == doctest::Approx(1.5));
}

TEST_CASE("fdt check basics") {
  const ObjectGrid g(32, 1.0);
  const auto b = BeamProfile::gaussian(10.0);
  const auto zero = fdt_check(ComplexImage(g), b, ctx, 5.0, 10.0, 64);
  CHECK(zero.relative_discrepancy == 0.0);
  CHECK_FALSE(zero.truncation_warning);
  for (double k : zero.k) CHECK(std::abs(k) <= 0.8 * ctx.k0());

  const auto img = disk_phantom(g, 0.5, 0.05);
  const auto short_line = fdt_check(img, b, ctx, 5.0, 3.0, 64);
  CHECK(short_line.truncation_warning);
  CHECK(short_line.lhs.size() == short_line.k.size());
  CHECK(short_line.rhs.size() == short_line.k.size());
  CHECK_THROWS_AS(fdt_check(img, b, ctx, 0.5, 10.0, 64), std::invalid_argument);
}
