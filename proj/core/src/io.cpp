// SPDX-License-Identifier: Apache-2.0
#include "beamdt/io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "beamdt/error.hpp"

namespace beamdt::io {

namespace {

constexpr std::uint8_t kVersion = 0x01;

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  os.write(b.data(), b.size());
}

void put_f64(std::ostream& os, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  os.write(b.data(), b.size());
}

void put_values(std::ostream& os, std::span<const cd> values) {
  for (cd z : values) {
    put_f64(os, z.real());
    put_f64(os, z.imag());
  }
}

void get_bytes(std::istream& is, char* dst, std::size_t n, const char* what) {
  is.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(is.gcount()) != n)
    throw FormatError(std::string("truncated input while reading ") + what);
}

std::uint32_t get_u32(std::istream& is, const char* what) {
  std::array<unsigned char, 4> b{};
  get_bytes(is, reinterpret_cast<char*>(b.data()), b.size(), what);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is, const char* what) {
  std::array<unsigned char, 8> b{};
  get_bytes(is, reinterpret_cast<char*>(b.data()), b.size(), what);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

void get_values(std::istream& is, std::span<cd> values) {
  for (cd& z : values) {
    const double re = get_f64(is, "sample data");
    const double im = get_f64(is, "sample data");
    z = {re, im};
  }
}

void expect_header(std::istream& is, const char (&magic)[5]) {
  std::array<char, 4> got{};
  get_bytes(is, got.data(), got.size(), "magic");
  if (std::memcmp(got.data(), magic, 4) != 0)
    throw FormatError(std::string("bad magic: expected ") + magic);
  char version = 0;
  get_bytes(is, &version, 1, "version");
  if (static_cast<std::uint8_t>(version) != kVersion)
    throw FormatError("unsupported format version " +
                      std::to_string(static_cast<unsigned>(static_cast<std::uint8_t>(version))));
}

void expect_end(std::istream& is) {
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after payload");
}

void check_ok(const std::ostream& os) {
  if (!os) throw std::runtime_error("write failed");
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for reading");
  return f;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return f;
}

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(std::numeric_limits<double>::max_digits10);
  s << x;
  return s.str();
}

}  // namespace

void write_grid(std::ostream& os, const ComplexImage& img) {
  os.write("BDTG", 4);
  os.put(static_cast<char>(kVersion));
  put_u32(os, static_cast<std::uint32_t>(img.M()));
  put_f64(os, img.grid().r_s());
  put_values(os, img.values());
  check_ok(os);
}

ComplexImage read_grid(std::istream& is) {
  expect_header(is, "BDTG");
  const std::uint32_t M = get_u32(is, "M");
  const double r_s = get_f64(is, "r_s");
  if (M == 0 || M % 2 != 0 || M > (1u << 15)) throw FormatError("invalid grid size M = " + std::to_string(M));
  if (!(r_s > 0.0) || !std::isfinite(r_s)) throw FormatError("invalid support radius");
  ComplexImage img(ObjectGrid(static_cast<int>(M), r_s));
  get_values(is, img.values());
  expect_end(is);
  return img;
}

void write_grid(const std::filesystem::path& path, const ComplexImage& img) {
  auto f = open_out(path);
  write_grid(f, img);
}

ComplexImage read_grid(const std::filesystem::path& path) {
  auto f = open_in(path);
  return read_grid(f);
}

void write_measurements(std::ostream& os, const MeasurementSet& ms) {
  const auto& lat = ms.lattice;
  os.write("BDTM", 4);
  os.put(static_cast<char>(kVersion));
  put_u32(os, static_cast<std::uint32_t>(lat.M()));
  put_u32(os, static_cast<std::uint32_t>(lat.D()));
  put_f64(os, lat.k0());
  put_f64(os, ms.r_M);
  put_f64(os, lat.eps_k());
  put_values(os, ms.values);
  check_ok(os);
}

MeasurementSet read_measurements(std::istream& is) {
  expect_header(is, "BDTM");
  const std::uint32_t M = get_u32(is, "M");
  const std::uint32_t D = get_u32(is, "D");
  const double k0 = get_f64(is, "k0");
  const double r_M = get_f64(is, "r_M");
  const double eps_k = get_f64(is, "eps_k");
  if (M == 0 || M % 2 != 0 || M > (1u << 15)) throw FormatError("invalid lattice size M = " + std::to_string(M));
  if (D == 0 || D % 2 != 0 || D > (1u << 20)) throw FormatError("invalid angle count D = " + std::to_string(D));
  if (!std::isfinite(r_M)) throw FormatError("invalid detector distance");
  MeasurementSet ms = [&] {
    try {
      return MeasurementSet(MeasurementLattice(static_cast<int>(M), static_cast<int>(D), k0, eps_k), r_M);
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("invalid lattice header: ") + e.what());
    }
  }();
  get_values(is, ms.values);
  expect_end(is);
  return ms;
}

void write_measurements(const std::filesystem::path& path, const MeasurementSet& ms) {
  auto f = open_out(path);
  write_measurements(f, ms);
}

MeasurementSet read_measurements(const std::filesystem::path& path) {
  auto f = open_in(path);
  return read_measurements(f);
}

void write_picard_csv(std::ostream& os, const PicardTable& table) {
  os << "n,abs_a,abs_m,abs_ratio\n";
  for (const auto& r : table.rows)
    os << r.n << ',' << number(r.abs_a) << ',' << number(r.abs_m) << ',' << number(r.abs_ratio) << '\n';
  check_ok(os);
}

void write_line_csv(std::ostream& os, std::span<const double> r1, std::span<const cd> values) {
  if (r1.size() != values.size()) throw std::invalid_argument("positions and values differ in length");
  os << "r1,re,im\n";
  for (std::size_t i = 0; i < r1.size(); ++i)
    os << number(r1[i]) << ',' << number(values[i].real()) << ',' << number(values[i].imag()) << '\n';
  check_ok(os);
}

void write_metrics_csv(std::ostream& os, const MetricReport& report) {
  os << "psnr,rmse,ssim\n"
     << number(report.psnr) << ',' << number(report.rmse) << ',' << number(report.ssim) << '\n';
  check_ok(os);
}

}  // namespace beamdt::io
