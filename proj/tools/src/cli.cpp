// SPDX-License-Identifier: Apache-2.0
#include "beamdt/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "beamdt/beam.hpp"
#include "beamdt/error.hpp"
#include "beamdt/forward.hpp"
#include "beamdt/inversion.hpp"
#include "beamdt/io.hpp"
#include "beamdt/kspace.hpp"
#include "beamdt/metrics.hpp"
#include "beamdt/parallel.hpp"
#include "beamdt/phantom.hpp"

namespace beamdt::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct BeamArgs {
  std::string kind = "gaussian";
  double A = 10.0;
  std::string table;
  double orientation = BeamProfile::kDownward;
};

void add_beam_options(CLI::App* cmd, BeamArgs& b) {
  cmd->add_option("--beam", b.kind, "Beam profile")
      ->check(CLI::IsMember({"gaussian", "planewave", "table"}))
      ->capture_default_str();
  cmd->add_option("--A", b.A, "Gaussian beam parameter")->capture_default_str();
  cmd->add_option("--table", b.table, "Tabulated profile CSV (phi,re,im) for --beam table");
  cmd->add_option("--orientation", b.orientation, "Nominal beam direction in radians")
      ->capture_default_str();
}

// `plane_D` is the table size of the plane-wave stand-in.
BeamProfile make_beam(const BeamArgs& b, int plane_D) {
  if (b.kind == "gaussian") return BeamProfile::gaussian(b.A, b.orientation);
  if (b.kind == "planewave") return BeamProfile::plane_wave(plane_D, b.orientation);
  if (b.table.empty()) throw std::invalid_argument("--beam table requires --table <csv>");
  return load_profile_csv(b.table).rotated(b.orientation - BeamProfile::kDownward);
}

std::string describe(const BeamArgs& b) {
  std::ostringstream s;
  s << b.kind;
  if (b.kind == "gaussian") s << " A=" << b.A;
  if (b.kind == "table") s << " " << b.table;
  return s.str();
}

json beam_meta(const BeamArgs& b) {
  return {{"beam", b.kind}, {"A", b.A}, {"table", b.table}, {"orientation", b.orientation}};
}

fs::path meta_path(const fs::path& p) { return fs::path(p.string() + ".meta.json"); }

void write_meta(const fs::path& out, const json& meta) {
  std::ofstream f(meta_path(out));
  if (!f) throw std::runtime_error("cannot write " + meta_path(out).string());
  f << meta.dump(2) << '\n';
}

void warn_on_beam_mismatch(const fs::path& meas, const BeamArgs& used, std::ostream& err) {
  std::ifstream f(meta_path(meas));
  if (!f) return;
  json meta;
  try {
    meta = json::parse(f);
  } catch (const json::exception&) {
    err << "warning: unreadable metadata " << meta_path(meas).string() << '\n';
    return;
  }
  BeamArgs sim;
  sim.kind = meta.value("beam", sim.kind);
  sim.A = meta.value("A", sim.A);
  sim.table = meta.value("table", sim.table);
  sim.orientation = meta.value("orientation", sim.orientation);
  const bool differs = sim.kind != used.kind || (sim.kind == "gaussian" && sim.A != used.A) ||
                       (sim.kind == "table" && sim.table != used.table) ||
                       sim.orientation != used.orientation;
  if (differs)
    err << "warning: metadata mismatch: data simulated with beam " << describe(sim)
        << ", reconstructing with " << describe(used) << '\n';
}

struct PhantomArgs {
  std::string preset = "two-inclusion";
  std::string spec;
  double d = 3.0;
  double amplitude = 1.0;
  double rs = 4.0;
};

void add_phantom_options(CLI::App* cmd, PhantomArgs& p) {
  cmd->add_option("--preset", p.preset, "Phantom preset")
      ->check(CLI::IsMember({"disk", "two-inclusion"}))
      ->capture_default_str();
  cmd->add_option("--spec", p.spec, "Disk list CSV: cx,cy,radius,re[,im]");
  cmd->add_option("--d", p.d, "Disk radius for --preset disk")->capture_default_str();
  cmd->add_option("--amplitude", p.amplitude, "Disk amplitude for --preset disk")->capture_default_str();
  cmd->add_option("--rs", p.rs, "Support half-width r_s")->capture_default_str();
}

std::vector<Disk> read_disk_spec(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::vector<Disk> disks;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream s(line);
    double cx, cy, r, re, im = 0.0;
    if (!(s >> cx >> cy >> r >> re)) {
      if (lineno == 1) continue;
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": expected cx,cy,radius,re[,im]");
    }
    s >> im;
    disks.push_back({{cx, cy}, r, {re, im}});
  }
  return disks;
}

ComplexImage make_phantom(const PhantomArgs& p, int M) {
  const ObjectGrid grid(M, p.rs);
  if (!p.spec.empty()) return two_inclusion_phantom(grid, read_disk_spec(p.spec));
  if (p.preset == "disk") return disk_phantom(grid, p.d, p.amplitude);
  return two_inclusion_phantom(grid, default_two_inclusion_preset());
}

std::size_t nonzero_count(const ComplexImage& img) {
  std::size_t n = 0;
  for (cd z : img.values()) n += z != cd{};
  return n;
}

std::ofstream open_text(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return f;
}

// Writes to `path`, or to `out` when the path is empty.
template <class F>
void emit(const std::string& path, std::ostream& out, F&& write) {
  if (path.empty()) {
    write(out);
  } else {
    auto f = open_text(path);
    write(f);
  }
}

AngularSum parse_method(const std::string& m) { return m == "fft" ? AngularSum::kFft : AngularSum::kDirect; }

struct Options {
  std::string output;
  PhantomArgs phantom;
  std::string phantom_file;
  BeamArgs beam;
  int M = 400;
  int D = 200;
  double k0 = kTwoPi;
  double rM = 5.0;
  double eps_k = kDefaultEpsK;
  double noise = 0.0;
  std::uint64_t seed = 0;
  int sim_factor = 2;
  int oversample = 2;
  std::string method = "direct";

  std::string meas;
  int N = 12;
  double min_singular = 1e-12;
  int grid_M = 0;
  bool conventional = false;
  std::string truth;

  double k = 0.0;

  double extent = 40.0;
  int L = 2048;
  int Mk = 128;
  double k_fraction = 0.8;
  double r2 = 5.0;
  double rotation = 0.0;

  std::string recon;
};

void add_simulation_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--phantom", o.phantom_file, "Phantom BDTG file (used at its own resolution)");
  add_phantom_options(cmd, o.phantom);
  add_beam_options(cmd, o.beam);
  cmd->add_option("--M", o.M, "k-grid size")->capture_default_str();
  cmd->add_option("--D", o.D, "Number of rotations")->capture_default_str();
  cmd->add_option("--k0", o.k0, "Wavenumber")->capture_default_str();
  cmd->add_option("--rM", o.rM, "Detector line r_2 = r_M")->capture_default_str();
  cmd->add_option("--eps-k", o.eps_k, "Evanescent-cutoff margin")->capture_default_str();
  cmd->add_option("--noise", o.noise, "Relative noise in percent")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Noise seed")->capture_default_str();
  cmd->add_option("--sim-factor", o.sim_factor, "Preset phantoms are sampled on sim-factor * M pixels")
      ->capture_default_str();
  cmd->add_option("--oversample", o.oversample, "Angular oversampling of the forward quadrature")
      ->capture_default_str();
  cmd->add_option("--method", o.method, "Angular summation")
      ->check(CLI::IsMember({"direct", "fft"}))
      ->capture_default_str();
}

MeasurementSet simulate_from(const Options& o, std::ostream& err) {
  if (o.sim_factor < 1) throw std::invalid_argument("--sim-factor must be >= 1");
  const ComplexImage img = o.phantom_file.empty() ? make_phantom(o.phantom, o.sim_factor * o.M)
                                                  : io::read_grid(fs::path(o.phantom_file));
  if (!o.phantom_file.empty() && img.M() == o.M)
    err << "warning: phantom grid equals the measurement lattice size; data may commit an inverse crime\n";
  const MeasurementLattice lattice(o.M, o.D, o.k0, o.eps_k);
  const BeamProfile beam = make_beam(o.beam, o.oversample * o.D);
  SimulationOptions sim;
  sim.angular_oversample = o.oversample;
  sim.method = parse_method(o.method);
  auto ms = simulate_measurements(img, beam, lattice, o.rM, sim);
  if (o.noise > 0.0) ms = add_noise(ms, o.noise, o.seed);
  return ms;
}

int cmd_phantom(const Options& o, std::ostream& out) {
  const auto img = make_phantom(o.phantom, o.M);
  io::write_grid(fs::path(o.output), img);
  out << "wrote " << o.output << ": M=" << img.M() << " r_s=" << img.grid().r_s()
      << " nonzero=" << nonzero_count(img) << '\n';
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ms = simulate_from(o, err);
  io::write_measurements(fs::path(o.output), ms);
  json meta = beam_meta(o.beam);
  meta["noise"] = o.noise;
  meta["seed"] = o.seed;
  write_meta(o.output, meta);
  out << "wrote " << o.output << ": rows=" << ms.lattice.rows() << " D=" << ms.lattice.D()
      << " k0=" << ms.lattice.k0() << " r_M=" << ms.r_M << " beam=" << describe(o.beam)
      << " noise=" << o.noise << "%\n";
  return 0;
}

void report_metrics(const MetricReport& r, std::ostream& out) {
  out << std::setprecision(6) << "psnr=" << r.psnr << " rmse=" << r.rmse << " ssim=" << r.ssim << '\n';
}

int cmd_reconstruct(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ms = io::read_measurements(fs::path(o.meas));
  warn_on_beam_mismatch(o.meas, o.beam, err);
  const ObjectGrid grid(o.grid_M > 0 ? o.grid_M : ms.lattice.M(), o.phantom.rs);
  const BeamProfile beam = make_beam(o.beam, ms.lattice.D());
  ComplexImage recon(grid);
  if (o.conventional) {
    recon = reconstruct_conventional(ms, beam, grid);
  } else {
    recon = reconstruct(ms, beam, TsvdConfig{o.N, o.min_singular}, grid);
  }
  io::write_grid(fs::path(o.output), recon);
  out << "wrote " << o.output << ": M=" << grid.M() << " r_s=" << grid.r_s()
      << (o.conventional ? " (conventional)" : " N=" + std::to_string(o.N)) << '\n';
  if (!o.truth.empty()) report_metrics(compare(io::read_grid(fs::path(o.truth)), recon), out);
  return 0;
}

int cmd_picard(const Options& o, std::ostream& out, std::ostream& err) {
  MeasurementSet ms = o.meas.empty() ? simulate_from(o, err) : io::read_measurements(fs::path(o.meas));
  if (!o.meas.empty()) warn_on_beam_mismatch(o.meas, o.beam, err);
  const BeamProfile beam = make_beam(o.beam, ms.lattice.D());
  const auto coeffs = angular_coefficients(beam, o.N, ms.lattice.D());
  const int row = ms.lattice.nearest_row(o.k);
  const auto table = picard_table(ms, coeffs, row, o.N);
  emit(o.output, out, [&](std::ostream& os) { io::write_picard_csv(os, table); });
  if (!o.output.empty()) out << "wrote " << o.output << ": k=" << table.k << " N=" << o.N << '\n';
  return 0;
}

int cmd_fdt_check(const Options& o, std::ostream& out, std::ostream& err) {
  const ComplexImage img = o.phantom_file.empty() ? make_phantom(o.phantom, o.M)
                                                  : io::read_grid(fs::path(o.phantom_file));
  const BeamProfile beam = make_beam(o.beam, o.D);
  FdtCheckOptions opts;
  opts.D = o.D;
  opts.Mk = o.Mk;
  opts.k_fraction = o.k_fraction;
  const auto report = fdt_check(img, beam, WaveContext::from_wavenumber(o.k0), o.rM, o.extent, o.L, opts);
  if (report.truncation_warning)
    err << "warning: line extent " << o.extent << " < 4 r_s; the line transform is truncated\n";
  if (!o.output.empty()) {
    auto f = open_text(o.output);
    f << "k,lhs_re,lhs_im,rhs_re,rhs_im\n" << std::setprecision(17);
    for (std::size_t i = 0; i < report.k.size(); ++i)
      f << report.k[i] << ',' << report.lhs[i].real() << ',' << report.lhs[i].imag() << ','
        << report.rhs[i].real() << ',' << report.rhs[i].imag() << '\n';
  }
  out << std::setprecision(6) << "relative discrepancy: " << report.relative_discrepancy << " over "
      << report.k.size() << " frequencies\n";
  return 0;
}

int cmd_forward_direct(const Options& o, std::ostream& out) {
  const ComplexImage img = o.phantom_file.empty() ? make_phantom(o.phantom, o.M)
                                                  : io::read_grid(fs::path(o.phantom_file));
  const BeamProfile beam = make_beam(o.beam, o.D).rotated(o.rotation);
  const auto r1 = line_samples(o.extent, o.L);
  std::vector<Vec2> points;
  points.reserve(r1.size());
  for (double x : r1) points.push_back({x, o.r2});
  const auto u = born_field_direct(img, beam, points, WaveContext::from_wavenumber(o.k0), o.D);
  emit(o.output, out, [&](std::ostream& os) { io::write_line_csv(os, r1, u); });
  if (!o.output.empty()) out << "wrote " << o.output << ": " << r1.size() << " samples on r2=" << o.r2 << '\n';
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto report = compare(io::read_grid(fs::path(o.truth)), io::read_grid(fs::path(o.recon)));
  emit(o.output, out, [&](std::ostream& os) { io::write_metrics_csv(os, report); });
  return 0;
}

int cmd_beamview(const Options& o, std::ostream& out) {
  const BeamProfile beam = make_beam(o.beam, o.D);
  const ObjectGrid grid(o.M, o.extent);
  std::vector<Vec2> points;
  points.reserve(static_cast<std::size_t>(o.M) * o.M);
  for (int j1 = -o.M / 2; j1 < o.M / 2; ++j1)
    for (int j2 = -o.M / 2; j2 < o.M / 2; ++j2) points.push_back(grid.point(j1, j2));
  const auto u = incident_field(beam, points, WaveContext::from_wavenumber(o.k0), o.D);
  io::write_grid(fs::path(o.output), ComplexImage(grid, u));
  out << "wrote " << o.output << ": incident field of " << describe(o.beam) << " on M=" << o.M
      << " half-width " << o.extent << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  int threads = 0;
  Options po, so, ro, pico, fo, fwo, co, bo;
  fo.phantom.preset = "disk";
  fo.phantom.d = 1.0;
  fo.phantom.amplitude = 0.05;
  fo.M = 128;
  fo.D = 256;
  fwo.phantom.preset = "disk";
  fwo.M = 200;
  fwo.D = 256;
  fwo.extent = 20.0;
  fwo.L = 512;
  bo.M = 200;
  bo.D = 256;
  bo.extent = 10.0;
  pico.N = 20;

  CLI::App app{"Beam diffraction tomography: simulation, reconstruction and diagnostics"};
  app.name("beamdt");
  app.require_subcommand(1);
  app.add_option("--threads", threads, "Worker threads (0: BEAMDT_THREADS or hardware)")
      ->check(CLI::NonNegativeNumber);

  auto* phantom = app.add_subcommand("phantom", "Write a phantom grid (BDTG)");
  add_phantom_options(phantom, po.phantom);
  phantom->add_option("--M", po.M, "Pixels per axis")->capture_default_str();
  phantom->add_option("-o,--out", po.output, "Output BDTG")->required();

  auto* simulate = app.add_subcommand("simulate", "Synthesize measurements (BDTM)");
  add_simulation_options(simulate, so);
  simulate->add_option("-o,--out", so.output, "Output BDTM")->required();

  auto* reconstruct = app.add_subcommand("reconstruct", "TSVD + backpropagation reconstruction");
  reconstruct->add_option("--meas", ro.meas, "Input BDTM")->required();
  add_beam_options(reconstruct, ro.beam);
  reconstruct->add_option("--N", ro.N, "TSVD truncation level")->capture_default_str();
  reconstruct->add_option("--min-singular", ro.min_singular, "Floor on |a_n|")->capture_default_str();
  reconstruct->add_option("--M", ro.grid_M, "Output pixels per axis (default: lattice M)");
  reconstruct->add_option("--rs", ro.phantom.rs, "Output half-width r_s")->capture_default_str();
  reconstruct->add_flag("--conventional", ro.conventional, "Plane-wave backpropagation without TSVD");
  reconstruct->add_option("--truth", ro.truth, "Ground-truth BDTG for metrics");
  reconstruct->add_option("-o,--out", ro.output, "Output BDTG")->required();

  auto* picard = app.add_subcommand("picard", "Picard table at one detector frequency (CSV)");
  picard->add_option("--meas", pico.meas, "Input BDTM (otherwise simulate)");
  add_simulation_options(picard, pico);
  picard->add_option("--k", pico.k, "Detector frequency (nearest lattice row)")->capture_default_str();
  picard->add_option("--N", pico.N, "Largest |n| tabulated")->capture_default_str();
  picard->add_option("-o,--out", pico.output, "Output CSV (default stdout)");

  auto* fdt = app.add_subcommand("fdt-check", "Numerical check of the Fourier diffraction relation");
  fdt->add_option("--phantom", fo.phantom_file, "Phantom BDTG file");
  add_phantom_options(fdt, fo.phantom);
  add_beam_options(fdt, fo.beam);
  fdt->add_option("--M", fo.M, "Phantom pixels per axis")->capture_default_str();
  fdt->add_option("--k0", fo.k0, "Wavenumber")->capture_default_str();
  fdt->add_option("--rM", fo.rM, "Line r_2 = r_M")->capture_default_str();
  fdt->add_option("--extent", fo.extent, "Line half-length")->capture_default_str();
  fdt->add_option("--L", fo.L, "Line samples")->capture_default_str();
  fdt->add_option("--D", fo.D, "Angular quadrature size")->capture_default_str();
  fdt->add_option("--Mk", fo.Mk, "Comparison k-grid size")->capture_default_str();
  fdt->add_option("--k-fraction", fo.k_fraction, "Compare over |k| <= fraction * k0")->capture_default_str();
  fdt->add_option("-o,--out", fo.output, "Per-frequency CSV");

  auto* forward = app.add_subcommand("forward-direct", "Born field on a line by direct convolution (CSV)");
  forward->add_option("--phantom", fwo.phantom_file, "Phantom BDTG file");
  add_phantom_options(forward, fwo.phantom);
  add_beam_options(forward, fwo.beam);
  forward->add_option("--M", fwo.M, "Phantom pixels per axis")->capture_default_str();
  forward->add_option("--k0", fwo.k0, "Wavenumber")->capture_default_str();
  forward->add_option("--r2", fwo.r2, "Line r_2")->capture_default_str();
  forward->add_option("--extent", fwo.extent, "Line half-length")->capture_default_str();
  forward->add_option("--L", fwo.L, "Line samples")->capture_default_str();
  forward->add_option("--D", fwo.D, "Angular quadrature size")->capture_default_str();
  forward->add_option("--rotation", fwo.rotation, "Beam rotation theta")->capture_default_str();
  forward->add_option("-o,--out", fwo.output, "Output CSV (default stdout)");

  auto* cmp = app.add_subcommand("compare", "PSNR, RMSE and SSIM of two grids (CSV)");
  cmp->add_option("--truth", co.truth, "Reference BDTG")->required();
  cmp->add_option("--recon", co.recon, "Reconstruction BDTG")->required();
  cmp->add_option("-o,--out", co.output, "Output CSV (default stdout)");

  auto* beamview = app.add_subcommand("beamview", "Render the incident field of a beam (BDTG)");
  add_beam_options(beamview, bo.beam);
  beamview->add_option("--M", bo.M, "Pixels per axis")->capture_default_str();
  beamview->add_option("--extent", bo.extent, "Half-width of the rendered square")->capture_default_str();
  beamview->add_option("--k0", bo.k0, "Wavenumber")->capture_default_str();
  beamview->add_option("--D", bo.D, "Angular quadrature size")->capture_default_str();
  beamview->add_option("-o,--out", bo.output, "Output BDTG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (threads > 0) set_thread_count(threads);
    if (*phantom) return cmd_phantom(po, out);
    if (*simulate) return cmd_simulate(so, out, err);
    if (*reconstruct) return cmd_reconstruct(ro, out, err);
    if (*picard) return cmd_picard(pico, out, err);
    if (*fdt) return cmd_fdt_check(fo, out, err);
    if (*forward) return cmd_forward_direct(fwo, out);
    if (*cmp) return cmd_compare(co, out);
    if (*beamview) return cmd_beamview(bo, out);
  } catch (const EmptySpectrumError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const FormatError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"beamdt"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace beamdt::cli
