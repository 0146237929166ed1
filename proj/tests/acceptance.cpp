// SPDX-License-Identifier: Apache-2.0
// Acceptance harness: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beamdt/forward.hpp"
#include "beamdt/inversion.hpp"
#include "beamdt/io.hpp"
#include "beamdt/kspace.hpp"
#include "beamdt/metrics.hpp"
#include "beamdt/parallel.hpp"

using namespace beamdt;

namespace {

const double k0 = kTwoPi;
const WaveContext ctx = WaveContext::from_wavenumber(k0);

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failed;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failed += " [failed: " + what + "]";
    }
  }
};

double rel_l2(std::span<const cd> got, std::span<const cd> want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num += std::norm(got[i] - want[i]);
    den += std::norm(want[i]);
  }
  return std::sqrt(num / den);
}

std::vector<cd> random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<cd> v(n);
  for (cd& z : v) z = {d(rng), d(rng)};
  return v;
}

std::vector<cd> harmonic(int n, int D) {
  std::vector<cd> e(D);
  for (int j = 0; j < D; ++j) e[j] = std::polar(1.0, -n * grid_angle(j, D));
  return e;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

bool bitwise_equal(std::span<const cd> a, std::span<const cd> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
}

// Preimage count of y under T by sign changes of |h(k') - y| - k0 on a fine k' grid.
int grid_search_preimages(Vec2 y, int samples, double* closest_edge) {
  int roots = 0;
  double prev = 0.0;
  *closest_edge = 1.0;
  for (int i = 0; i <= samples; ++i) {
    const double k = -k0 + 2.0 * k0 * (i + 0.5) / (samples + 1);
    const double f = norm(Vec2{k, std::sqrt(k0 * k0 - k * k)} - y) - k0;
    if (i > 0 && (f > 0) != (prev > 0)) {
      ++roots;
      *closest_edge = std::min(*closest_edge, (k0 - std::abs(k)) / k0);
    }
    prev = f;
  }
  return roots;
}

Outcome geometry() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uk(-0.9999, 0.9999), uphi(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const KPhiPoint p{uk(rng) * k0, uphi(rng)};
    const double kap = kappa(p.k, ctx);
    worst = std::max({worst, std::abs(kap * kap + p.k * p.k - k0 * k0) / (k0 * k0),
                      std::abs(norm(wave_vector(p.k, ctx)) - k0) / k0,
                      std::max(0.0, norm(map_T(p, ctx)) - 2 * k0) / k0});
  }
  o.require(worst <= 1e-12, "identities");

  double worst_jac = 0.0;
  for (int checked = 0; checked < 100;) {
    const KPhiPoint p{0.95 * uk(rng) * k0, uphi(rng)};
    const double det = jacobian_det(p, ctx);
    if (std::abs(det) < 1e-2 * k0) continue;
    const double h = 1e-5;
    const Vec2 dk = (1.0 / (2 * h)) * (map_T({p.k + h, p.phi}, ctx) - map_T({p.k - h, p.phi}, ctx));
    const Vec2 dp = (1.0 / (2 * h)) * (map_T({p.k, p.phi + h}, ctx) - map_T({p.k, p.phi - h}, ctx));
    worst_jac = std::max(worst_jac, std::abs(std::abs(dk.x * dp.y - dk.y * dp.x) - std::abs(det)) / std::abs(det));
    ++checked;
  }
  o.require(worst_jac <= 1e-6, "jacobian");

  int mismatches = 0;
  for (int checked = 0; checked < 50;) {
    const KPhiPoint p{0.9 * uk(rng) * k0, uphi(rng)};
    const Vec2 y = map_T(p, ctx);
    if (norm(y) < 0.05 * k0 || norm(y) > 1.95 * k0 || std::abs(jacobian_det(p, ctx)) < 0.05 * k0) continue;
    double edge = 1.0;
    const int count = grid_search_preimages(y, 200000, &edge);
    if (edge < 1e-3) continue;
    mismatches += count != banach_indicatrix(p);
    ++checked;
  }
  o.require(mismatches == 0, "indicatrix");
  o.detail << "identity err " << worst << ", jacobian rel err " << worst_jac << ", indicatrix mismatches "
           << mismatches << "/50";
  return o;
}

Outcome spectrum() {
  Outcome o;
  const int D = 200;
  double worst = 0.0;
  for (double A : {10.0, 80.0}) {
    const auto b = BeamProfile::gaussian(A);
    const auto c = angular_coefficients(b, 20, D);
    for (int n = -20; n <= 20; ++n) {
      const auto e = harmonic(n, D);
      const auto Ae = apply_operator(e, b);
      for (int j = 0; j < D; ++j) worst = std::max(worst, std::abs(Ae[j] - kTwoPi * c[n] * e[j]));
    }
  }
  o.require(worst <= 1e-10, "eigen-relation");
  o.detail << "max |A e_n - 2 pi a_n e_n| = " << worst;
  return o;
}

Outcome tsvd() {
  Outcome o;
  const MeasurementLattice lat(32, 200, k0);
  double clean = 0.0, noisy10 = 0.0, noisy80 = 0.0;
  for (double A : {10.0, 80.0}) {
    const auto b = BeamProfile::gaussian(A);
    MeasurementSet ms(lat, 5.0);
    std::vector<cd> truth;
    for (int r = 0; r < lat.rows(); ++r) {
      const auto c = random_complex(25, 100 + r);
      std::vector<cd> g(lat.D());
      for (int n = -12; n <= 12; ++n) {
        const auto e = harmonic(n, lat.D());
        for (int j = 0; j < lat.D(); ++j) g[j] += c[n + 12] * e[j];
      }
      const auto m = apply_operator(g, b);
      std::copy(m.begin(), m.end(), ms.row(r).begin());
      truth.insert(truth.end(), g.begin(), g.end());
    }
    const auto coeffs = angular_coefficients(b, 12, lat.D());
    clean = std::max(clean, rel_l2(tsvd_solve(ms, coeffs, {12, 1e-12}).values, truth));
    const double e = rel_l2(tsvd_solve(add_noise(ms, 5.0, 7), coeffs, {12, 1e-12}).values, truth);
    (A == 10.0 ? noisy10 : noisy80) = e;
  }
  o.require(clean <= 1e-8, "noiseless roundtrip");
  o.require(noisy80 <= 0.30, "A=80 noisy error");
  o.require(noisy10 > noisy80, "A=10 error exceeds A=80");
  o.detail << "noiseless " << clean << ", 5% noise: A=80 " << noisy80 << ", A=10 " << noisy10;
  return o;
}

Outcome fourier_diffraction() {
  Outcome o;
  const ObjectGrid grid(128, 4.0);
  const auto f = disk_phantom(grid, 1.0, 0.05);
  const auto b = BeamProfile::gaussian(10.0);
  const auto r40 = fdt_check(f, b, ctx, 5.0, 40.0, 2048);
  const auto r80 = fdt_check(f, b, ctx, 5.0, 80.0, 4096);
  o.require(r40.relative_discrepancy <= 0.05, "discrepancy at extent 40");
  o.require(r80.relative_discrepancy < r40.relative_discrepancy, "decrease at extent 80");
  o.detail << "extent 40: " << r40.relative_discrepancy << ", extent 80: " << r80.relative_discrepancy << " over "
           << r40.k.size() << " frequencies";
  return o;
}

// Two-inclusion preset sampled at twice the lattice resolution.
struct DeskScene {
  ObjectGrid grid{128, 4.0};
  ComplexImage truth = two_inclusion_phantom(grid, default_two_inclusion_preset());
  ComplexImage fine = two_inclusion_phantom(ObjectGrid(256, 4.0), default_two_inclusion_preset());
};

Outcome picard() {
  Outcome o;
  const DeskScene scene;
  const MeasurementLattice lat(128, 200, k0);
  const auto b = BeamProfile::gaussian(10.0);
  const auto ms = add_noise(simulate_measurements(scene.fine, b, lat, 5.0, {2, AngularSum::kFft}), 5.0, 42);
  const auto t = picard_table(ms, angular_coefficients(b, 20, lat.D()), lat.nearest_row(0.0), 20);
  std::vector<double> inner, outer;
  for (const auto& r : t.rows) (std::abs(r.n) <= 12 ? inner : outer).push_back(r.abs_ratio);
  const double mi = median(inner), mo = median(outer);
  o.require(mo > mi, "outer median exceeds inner median");
  o.detail << "at k=" << t.k << ": median |m_n/a_n| |n|<=12 " << mi << ", 13<=|n|<=20 " << mo;
  return o;
}

Outcome quality() {
  Outcome o;
  const DeskScene scene;
  const MeasurementLattice lat(128, 100, k0);
  const auto kspace = kspace_samples(scene.fine, lat.with_angles(200));
  double p0[2], p5[2];
  int idx = 0;
  for (double A : {10.0, 80.0}) {
    const auto b = BeamProfile::gaussian(A);
    const auto ms = measurements_from_kspace(kspace, b, lat.D(), 5.0, AngularSum::kFft);
    p0[idx] = psnr(scene.truth, reconstruct(ms, b, TsvdConfig{12}, scene.grid));
    p5[idx] = psnr(scene.truth, reconstruct(add_noise(ms, 5.0, 42), b, TsvdConfig{12}, scene.grid));
    ++idx;
  }
  o.require(p0[1] >= p0[0] - 0.2, "(a) noiseless ordering");
  o.require(p0[1] - p5[1] <= 0.3, "(b) A=80 drop <= 0.3 dB");
  o.require(p0[0] - p5[0] >= 0.5, "(b) A=10 drop >= 0.5 dB");
  o.detail << std::setprecision(5) << "A=10: " << p0[0] << " -> " << p5[0] << " dB, A=80: " << p0[1] << " -> "
           << p5[1] << " dB";
  return o;
}

Outcome conventional() {
  Outcome o;
  const DeskScene scene;
  const MeasurementLattice lat(128, 100, k0);
  const auto kspace = kspace_samples(scene.fine, lat.with_angles(200));
  std::vector<double> p;
  for (double A : {600.0, 80.0, 20.0, 10.0}) {
    const auto b = BeamProfile::gaussian(A);
    const auto ms = measurements_from_kspace(kspace, b, lat.D(), 5.0, AngularSum::kFft);
    p.push_back(psnr(scene.truth, reconstruct_conventional(ms, b, scene.grid)));
  }
  o.require(p[0] > p[1] && p[1] > p[2] && p[2] > p[3], "strict decrease");
  o.detail << std::setprecision(5) << "A=600 " << p[0] << ", A=80 " << p[1] << ", A=20 " << p[2] << ", A=10 " << p[3]
           << " dB";
  return o;
}

Outcome divergence() {
  Outcome o;
  const auto f3 = disk_phantom(ObjectGrid(256, 4.0), 3.0, 1.0);
  const MeasurementLattice lat(128, 16, k0);
  const auto gauss = simulate_measurements(f3, BeamProfile::gaussian(10.0), lat, 5.0);
  const auto plane = simulate_measurements(f3, BeamProfile::plane_wave(32), lat, 5.0);
  const int i0 = lat.D() / 2;
  std::vector<cd> rg, rp;
  for (int r = 0; r < lat.rows(); ++r) {
    rg.push_back(gauss.at(r, i0));
    rp.push_back(plane.at(r, i0));
  }
  const double d = rel_l2(rg, rp);
  o.require(lat.angle(i0) == 0.0 && d > 0.25, "relative difference > 25%");
  o.detail << "relative L2 difference at theta=0: " << d;
  return o;
}

Outcome properties() {
  Outcome o;
  const ObjectGrid grid(32, 2.0);
  std::vector<cd> real_vals = random_complex(32 * 32, 1);
  for (cd& z : real_vals) z = z.real();
  const ComplexImage fr(grid, real_vals);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2 * k0, 2 * k0);
  std::vector<Vec2> y, ny;
  for (int i = 0; i < 200; ++i) {
    y.push_back({u(rng), u(rng)});
    ny.push_back({-y.back().x, -y.back().y});
  }
  const auto fy = ndft2(fr, y), fny = ndft2(fr, ny);
  double herm = 0.0;
  for (std::size_t i = 0; i < fy.size(); ++i) herm = std::max(herm, std::abs(fy[i] - std::conj(fny[i])));
  o.require(herm <= 1e-12, "hermitian symmetry");

  const MeasurementLattice lat(24, 16, k0);
  const ComplexImage f1(grid, random_complex(32 * 32, 2)), f2(grid, random_complex(32 * 32, 3));
  const cd alpha(0.7, -1.3), beta(-0.4, 0.2);
  ComplexImage fc(grid);
  for (std::size_t i = 0; i < fc.values().size(); ++i)
    fc.values()[i] = alpha * f1.values()[i] + beta * f2.values()[i];
  const auto b1 = BeamProfile::gaussian(10.0), b2 = BeamProfile::gaussian(80.0);
  const auto m1 = simulate_measurements(f1, b1, lat, 5.0), m2 = simulate_measurements(f2, b1, lat, 5.0);
  const auto mc = simulate_measurements(fc, b1, lat, 5.0);
  std::vector<cd> want(mc.values.size());
  for (std::size_t i = 0; i < want.size(); ++i) want[i] = alpha * m1.values[i] + beta * m2.values[i];
  const double lin_f = rel_l2(mc.values, want);
  const auto mb2 = simulate_measurements(f1, b2, lat, 5.0);
  const auto mbc = simulate_measurements(f1, BeamProfile::superpose({{alpha, b1}, {beta, b2}}), lat, 5.0);
  for (std::size_t i = 0; i < want.size(); ++i) want[i] = alpha * m1.values[i] + beta * mb2.values[i];
  const double lin_a = rel_l2(mbc.values, want);
  o.require(lin_f <= 1e-12 && lin_a <= 1e-12, "linearity");

  const auto noisy = add_noise(m1, 5.0, 11);
  const double noise_err = std::abs(rel_l2(noisy.values, m1.values) - 0.05);
  o.require(noise_err <= 1e-12, "noise norm");

  std::stringstream g_bytes, m_bytes;
  io::write_grid(g_bytes, f1);
  io::write_measurements(m_bytes, m1);
  const auto g_back = io::read_grid(g_bytes);
  const auto m_back = io::read_measurements(m_bytes);
  o.require(bitwise_equal(g_back.values(), f1.values()) && bitwise_equal(m_back.values, m1.values) &&
                m_back.lattice == m1.lattice && m_back.r_M == m1.r_M,
            "round trip");

  const int saved = thread_count();
  const MeasurementLattice big(48, 40, k0);
  const auto phantom = two_inclusion_phantom(ObjectGrid(64, 4.0), default_two_inclusion_preset());
  std::vector<std::vector<cd>> sims, recs;
  for (int t : {1, 3}) {
    set_thread_count(t);
    const auto ms = simulate_measurements(phantom, b1, big, 5.0, {2, AngularSum::kFft});
    sims.push_back(ms.values);
    const auto rec = reconstruct(ms, b1, TsvdConfig{8}, ObjectGrid(48, 4.0));
    recs.emplace_back(rec.values().begin(), rec.values().end());
  }
  set_thread_count(saved);
  o.require(bitwise_equal(sims[0], sims[1]) && bitwise_equal(recs[0], recs[1]), "thread invariance");

  o.detail << "hermitian " << herm << ", linearity f " << lin_f << " a " << lin_a << ", noise " << noise_err
           << ", round trips and thread invariance bitwise";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"geometry exactness", geometry},
      {"operator spectrum", spectrum},
      {"tsvd roundtrip", tsvd},
      {"fourier diffraction relation", fourier_diffraction},
      {"picard behaviour", picard},
      {"reconstruction quality orderings", quality},
      {"conventional degradation", conventional},
      {"forward-model divergence", divergence},
      {"property suites", properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.detail.str() << o.failed
              << std::fixed << std::setprecision(1) << " (" << secs << " s)" << std::defaultfloat << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
