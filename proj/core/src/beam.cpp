// SPDX-License-Identifier: Apache-2.0
#include "beamdt/beam.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "beamdt/error.hpp"

namespace beamdt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Fractional positions closer than this to a table node snap to the node.
constexpr double kNodeSnap = 1e-9;

cd eval_table(const std::vector<cd>& v, double psi) {
  const int D = static_cast<int>(v.size());
  const double pos = (wrap_angle(psi) + kPi) / (kTwoPi / D);
  double base = std::floor(pos);
  double t = pos - base;
  int i0 = static_cast<int>(base) % D;
  if (t < kNodeSnap) return v[i0];
  if (1.0 - t < kNodeSnap) return v[(i0 + 1) % D];
  return (1.0 - t) * v[i0] + t * v[(i0 + 1) % D];
}

}  // namespace

BeamProfile BeamProfile::gaussian(double A, double orientation) {
  if (!(A > 0.0)) throw std::invalid_argument("gaussian profile requires A > 0");
  return BeamProfile(Gaussian{A}, orientation);
}

BeamProfile BeamProfile::uniform(cd amplitude) {
  return BeamProfile(UniformArc{-kPi, kPi, amplitude}, kDownward);
}

BeamProfile BeamProfile::uniform_arc(double lo, double hi, cd amplitude) {
  if (!(hi > lo)) throw std::invalid_argument("uniform arc requires hi > lo");
  return BeamProfile(UniformArc{lo, hi, amplitude}, kDownward);
}

BeamProfile BeamProfile::tabulated(std::vector<cd> values, double orientation) {
  if (values.empty() || values.size() % 2 != 0)
    throw std::invalid_argument("tabulated profile needs an even, nonzero number of samples");
  return BeamProfile(Tabulated{std::move(values)}, orientation);
}

BeamProfile BeamProfile::plane_wave(int D, double direction) {
  if (D <= 0 || D % 4 != 0)
    throw std::invalid_argument("plane-wave stand-in needs D divisible by 4");
  std::vector<cd> values(static_cast<std::size_t>(D), cd{});
  // grid_angle(D/4, D) == -pi/2, the nominal downward direction.
  values[static_cast<std::size_t>(D / 4)] = D / kTwoPi;
  return BeamProfile(Tabulated{std::move(values)}, direction);
}

BeamProfile BeamProfile::superpose(std::vector<std::pair<cd, BeamProfile>> terms) {
  Superposition s;
  s.terms.reserve(terms.size());
  for (auto& [w, b] : terms) s.terms.push_back({w, std::make_shared<const BeamProfile>(std::move(b))});
  return BeamProfile(std::move(s), kDownward);
}

cd BeamProfile::operator()(double phi) const {
  const double psi = phi - (orientation_ + kPi / 2.0);
  return std::visit(
      overloaded{
          [&](const Gaussian& g) -> cd {
            const double w = wrap_angle(psi);
            // s2 < 0 exactly on the open lower half circle (-pi, 0).
            if (!(w > -kPi && w < 0.0)) return 0.0;
            const double c = std::cos(w);
            return std::exp(-g.A * c * c);
          },
          [&](const UniformArc& u) -> cd {
            if (u.hi - u.lo >= kTwoPi) return u.amplitude;
            double d = std::fmod(psi - u.lo, kTwoPi);
            if (d < 0.0) d += kTwoPi;
            return d < u.hi - u.lo ? u.amplitude : cd{};
          },
          [&](const Tabulated& t) -> cd { return eval_table(t.values, psi); },
          [&](const Superposition& s) -> cd {
            cd acc{};
            for (const auto& term : s.terms) acc += term.weight * (*term.profile)(psi);
            return acc;
          },
      },
      kind_);
}

BeamProfile BeamProfile::rotated(double theta) const {
  BeamProfile out = *this;
  out.orientation_ = orientation_ + theta;
  return out;
}

bool BeamProfile::is_plane_wave() const {
  const auto* t = std::get_if<Tabulated>(&kind_);
  if (t == nullptr) return false;
  int nonzero = 0;
  for (const cd& v : t->values) nonzero += (v != cd{}) ? 1 : 0;
  return nonzero == 1;
}

AngularCoefficients::AngularCoefficients(int N, int D, std::vector<cd> values)
    : N_(N), D_(D), values_(std::move(values)) {
  if (N < 0 || values_.size() != static_cast<std::size_t>(2 * N + 1))
    throw std::invalid_argument("angular coefficients need 2N+1 values");
}

cd AngularCoefficients::operator[](int n) const {
  if (n < -N_ || n > N_) throw std::out_of_range("coefficient index outside -N..N");
  return values_[static_cast<std::size_t>(n + N_)];
}

cd profile_eval(const BeamProfile& b, double phi) { return b(phi); }

std::vector<cd> sample_profile(const BeamProfile& b, int D) {
  std::vector<cd> out(static_cast<std::size_t>(D));
  for (int j = 0; j < D; ++j) out[static_cast<std::size_t>(j)] = b(grid_angle(j, D));
  return out;
}

AngularCoefficients angular_coefficients(const BeamProfile& b, int N, int D) {
  if (N < 0) throw std::invalid_argument("truncation half-width N must be nonnegative");
  if (D < 4 * N + 4)
    throw std::invalid_argument("angular quadrature needs D >= 4N+4 (got D = " + std::to_string(D) +
                                ", N = " + std::to_string(N) + ")");
  const auto a = sample_profile(b, D);
  // e^{-i n phi_j} = twiddle[(n (j - D/2)) mod D] keeps the phase argument exact.
  std::vector<cd> twiddle(static_cast<std::size_t>(D));
  for (int q = 0; q < D; ++q) twiddle[static_cast<std::size_t>(q)] = std::polar(1.0, -kTwoPi * q / D);
  std::vector<cd> coeffs(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    cd acc{};
    for (int j = 0; j < D; ++j) {
      long long q = (static_cast<long long>(n) * (j - D / 2)) % D;
      if (q < 0) q += D;
      acc += a[static_cast<std::size_t>(j)] * twiddle[static_cast<std::size_t>(q)];
    }
    coeffs[static_cast<std::size_t>(n + N)] = acc / static_cast<double>(D);
  }
  return AngularCoefficients(N, D, std::move(coeffs));
}

BeamProfile rotate_profile(const BeamProfile& b, double theta) { return b.rotated(theta); }

cd incident_field(const BeamProfile& b, Vec2 r, const WaveContext& ctx, int D) {
  return incident_field(b, std::span<const Vec2>(&r, 1), ctx, D).front();
}

std::vector<cd> incident_field(const BeamProfile& b, std::span<const Vec2> points,
                               const WaveContext& ctx, int D) {
  if (D <= 0 || D % 2 != 0) throw std::invalid_argument("incident field quadrature needs even D");
  const auto a = sample_profile(b, D);
  std::vector<Vec2> dirs;
  std::vector<cd> weights;
  for (int j = 0; j < D; ++j) {
    if (a[static_cast<std::size_t>(j)] == cd{}) continue;
    dirs.push_back(direction(grid_angle(j, D)));
    weights.push_back(a[static_cast<std::size_t>(j)] * (kTwoPi / D));
  }
  std::vector<cd> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    cd acc{};
    for (std::size_t j = 0; j < dirs.size(); ++j)
      acc += weights[j] * std::polar(1.0, ctx.k0() * dot(points[p], dirs[j]));
    out[p] = acc;
  }
  return out;
}

BeamProfile load_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open profile table " + path.string());
  std::vector<double> phis;
  std::vector<cd> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double phi = 0, re = 0, im = 0;
    char c1 = 0, c2 = 0;
    if (!(ss >> phi >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',') {
      if (lineno == 1) continue;  // header
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected phi,re,im");
    }
    phis.push_back(phi);
    values.emplace_back(re, im);
  }
  const int D = static_cast<int>(values.size());
  if (D == 0 || D % 2 != 0) throw FormatError("profile table needs an even, nonzero row count");
  for (int j = 0; j < D; ++j) {
    if (j > 0 && !(phis[j] > phis[j - 1]))
      throw FormatError("profile table angles must be strictly increasing");
    if (std::abs(phis[j] - grid_angle(j, D)) > 1e-9)
      throw FormatError("profile table angles must be the uniform grid -pi + 2 pi j / D");
  }
  return BeamProfile::tabulated(std::move(values));
}

void save_profile_csv(const std::filesystem::path& path, const BeamProfile& b, int D) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << "phi,re,im\n" << std::setprecision(17);
  const auto a = sample_profile(b, D);
  for (int j = 0; j < D; ++j)
    out << grid_angle(j, D) << ',' << a[static_cast<std::size_t>(j)].real() << ','
        << a[static_cast<std::size_t>(j)].imag() << '\n';
}

}  // namespace beamdt
