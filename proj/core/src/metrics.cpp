// SPDX-License-Identifier: Apache-2.0
#include "beamdt/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace beamdt {

namespace {

constexpr int kRadius = 5;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;

void check_same_grid(const ComplexImage& u, const ComplexImage& v) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("images live on different grids");
}

double mean_square_error(const ComplexImage& u, const ComplexImage& v) {
  check_same_grid(u, v);
  const auto a = u.values();
  const auto b = v.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return acc / static_cast<double>(a.size());
}

std::array<double, 2 * kRadius + 1> gaussian_taps() {
  std::array<double, 2 * kRadius + 1> w{};
  double sum = 0.0;
  for (int x = -kRadius; x <= kRadius; ++x) {
    w[x + kRadius] = std::exp(-0.5 * x * x / (kSigma * kSigma));
    sum += w[x + kRadius];
  }
  for (double& t : w) t /= sum;
  return w;
}

// Half-sample symmetric extension: (d c b a | a b c d | d c b a).
int reflect(int i, int n) {
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

std::vector<double> gaussian_filter(const std::vector<double>& img, int M) {
  static const auto w = gaussian_taps();
  std::vector<double> tmp(img.size()), out(img.size());
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < M; ++c) {
      double acc = 0.0;
      for (int t = -kRadius; t <= kRadius; ++t) acc += w[t + kRadius] * img[static_cast<std::size_t>(r) * M + reflect(c + t, M)];
      tmp[static_cast<std::size_t>(r) * M + c] = acc;
    }
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < M; ++c) {
      double acc = 0.0;
      for (int t = -kRadius; t <= kRadius; ++t) acc += w[t + kRadius] * tmp[static_cast<std::size_t>(reflect(r + t, M)) * M + c];
      out[static_cast<std::size_t>(r) * M + c] = acc;
    }
  return out;
}

}  // namespace

double rmse(const ComplexImage& u, const ComplexImage& v) { return std::sqrt(mean_square_error(u, v)); }

double psnr(const ComplexImage& u, const ComplexImage& v) {
  const double mse = mean_square_error(u, v);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  double peak = 0.0;
  for (cd z : u.values()) peak = std::max(peak, std::norm(z));
  return 10.0 * std::log10(peak / mse);
}

double ssim(const ComplexImage& u, const ComplexImage& v) {
  check_same_grid(u, v);
  const int M = u.M();
  if (M < 2 * kRadius + 1) throw std::invalid_argument("ssim needs images of at least 11 x 11 pixels");
  const std::size_t n = u.values().size();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = u.values()[i].real();
    y[i] = v.values()[i].real();
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double range = *hi - *lo;
  if (range == 0.0) throw std::invalid_argument("ssim needs a reference with nonzero data range");
  const double c1 = (kK1 * range) * (kK1 * range);
  const double c2 = (kK2 * range) * (kK2 * range);

  const auto ux = gaussian_filter(x, M);
  const auto uy = gaussian_filter(y, M);
  const auto uxx = gaussian_filter(xx, M);
  const auto uyy = gaussian_filter(yy, M);
  const auto uxy = gaussian_filter(xy, M);

  double acc = 0.0;
  std::size_t count = 0;
  for (int r = kRadius; r < M - kRadius; ++r)
    for (int c = kRadius; c < M - kRadius; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * M + c;
      const double vx = uxx[i] - ux[i] * ux[i];
      const double vy = uyy[i] - uy[i] * uy[i];
      const double vxy = uxy[i] - ux[i] * uy[i];
      const double num = (2.0 * ux[i] * uy[i] + c1) * (2.0 * vxy + c2);
      const double den = (ux[i] * ux[i] + uy[i] * uy[i] + c1) * (vx + vy + c2);
      acc += num / den;
      ++count;
    }
  return acc / static_cast<double>(count);
}

MetricReport compare(const ComplexImage& truth, const ComplexImage& recon) {
  return {psnr(truth, recon), rmse(truth, recon), ssim(truth, recon)};
}

}  // namespace beamdt
