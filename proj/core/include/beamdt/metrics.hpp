// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "beamdt/phantom.hpp"

namespace beamdt {

struct MetricReport {
  double psnr;
  double rmse;
  double ssim;
};

/// 10 log10(max|u|^2 / (M^-2 sum |u - v|^2)); +inf when u == v.
double psnr(const ComplexImage& u, const ComplexImage& v);

/// sqrt(M^-2 sum |u - v|^2).
double rmse(const ComplexImage& u, const ComplexImage& v);

/// Mean single-scale SSIM of the real parts: 11-tap Gaussian window
/// (sigma 1.5, reflective border), K1 = 0.01, K2 = 0.03, data range
/// max Re u - min Re u, averaged over pixels at least 5 from the border.
double ssim(const ComplexImage& u, const ComplexImage& v);

MetricReport compare(const ComplexImage& truth, const ComplexImage& recon);

}  // namespace beamdt
