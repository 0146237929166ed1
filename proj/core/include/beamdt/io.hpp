// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "beamdt/forward.hpp"
#include "beamdt/inversion.hpp"
#include "beamdt/metrics.hpp"
#include "beamdt/phantom.hpp"

namespace beamdt::io {

// BDTG: "BDTG", 0x01, u32 M, f64 r_s, M*M x (f64 re, f64 im). Little-endian.
void write_grid(std::ostream& os, const ComplexImage& img);
ComplexImage read_grid(std::istream& is);
void write_grid(const std::filesystem::path& path, const ComplexImage& img);
ComplexImage read_grid(const std::filesystem::path& path);

// BDTM: "BDTM", 0x01, u32 M, u32 D, f64 k0, f64 r_M, f64 eps_k, rows*D x (f64 re, f64 im).
void write_measurements(std::ostream& os, const MeasurementSet& ms);
MeasurementSet read_measurements(std::istream& is);
void write_measurements(const std::filesystem::path& path, const MeasurementSet& ms);
MeasurementSet read_measurements(const std::filesystem::path& path);

/// Header `n,abs_a,abs_m,abs_ratio`; infinite ratios are written as `inf`.
void write_picard_csv(std::ostream& os, const PicardTable& table);
/// Header `r1,re,im`.
void write_line_csv(std::ostream& os, std::span<const double> r1, std::span<const cd> values);
/// Header `psnr,rmse,ssim`.
void write_metrics_csv(std::ostream& os, const MetricReport& report);

}  // namespace beamdt::io
