#include "hierakit/potential.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace hierakit {

namespace {

// Both builtin profiles are products of identical 1-D factors.
double factor_1d(const Profile& p, double y) {
  if (p.kind == ProfileKind::gaussian) {
    double s = p.width;
    return std::exp(-0.5 * y * y / (s * s)) / std::sqrt(2.0 * kPi * s * s);
  }
  double w = p.width;
  if (std::abs(y) >= w) return 0.0;
  return 0.5 / w * (1.0 + std::cos(kPi * y / w));
}

double factor_1d_fourier(const Profile& p, double q) {
  if (p.kind == ProfileKind::gaussian) {
    double s = p.width;
    return std::exp(-0.5 * s * s * q * q);
  }
  double x = q * p.width;
  if (std::abs(std::abs(x) - kPi) < 1e-6) return 0.5;
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(x) / x * kPi * kPi / (kPi * kPi - x * x);
}

}  // namespace

double Profile::value(const double* y) const {
  double v = 1.0;
  for (int a = 0; a < d; ++a) v *= factor_1d(*this, y[a]);
  return v;
}

double Profile::effective_radius() const {
  if (kind == ProfileKind::gaussian)
    return width * std::sqrt(2.0 * std::log(1e3));
  return width;
}

double Profile::fourier(const double* q) const {
  double v = 1.0;
  for (int a = 0; a < d; ++a) v *= factor_1d_fourier(*this, q[a]);
  return v;
}

Profile make_profile(const std::string& name, int d, double width) {
  Profile p;
  if (name == "gaussian")
    p.kind = ProfileKind::gaussian;
  else if (name == "cosine_bump")
    p.kind = ProfileKind::cosine_bump;
  else
    throw InvalidInputError("unknown potential profile: " + name);
  if (d < 1) throw InvalidInputError("profile: dimension must be >= 1");
  if (width <= 0.0) throw InvalidInputError("profile: width must be positive");
  p.d = d;
  p.width = width;
  return p;
}

double default_width(ProfileKind kind, double L) {
  return kind == ProfileKind::gaussian ? L / 12.0 : L / 6.0;
}

Potential make_potential(const TorusGrid& g, const Profile& profile, double beta,
                         std::int64_t N) {
  if (profile.d != g.d)
    throw InvalidInputError("make_potential: profile dimension does not match grid");
  if (beta < 0.0 || beta >= 1.0)
    throw InvalidInputError("make_potential: beta must lie in [0,1)");
  if (N < 1) throw InvalidInputError("make_potential: N must be >= 1");

  const double scale = std::pow(static_cast<double>(N), beta);
  const double h = g.spacing();
  if (profile.effective_radius() / scale < h)
    throw InvalidInputError(
        "make_potential: compressed interaction is under-resolved (support "
        "narrower than two grid cells); refine M or lower beta/N");

  Potential pot;
  pot.grid = g;
  pot.profile = profile;
  pot.beta = beta;
  pot.N = N;

  // Separable periodization: one compressed, wrapped 1-D factor per axis.
  Eigen::VectorXd axis(g.M);
  for (int i = 0; i < g.M; ++i) {
    double x = i * h;
    x -= g.L * std::floor(x / g.L + 0.5);
    double acc = 0.0;
    for (int n = -3; n <= 3; ++n) acc += factor_1d(profile, scale * (x + n * g.L));
    axis[i] = scale * acc;
  }
  const std::int64_t s1 = g.sites();
  pot.field.resize(s1);
  std::vector<int> c(g.d);
  for (std::int64_t s = 0; s < s1; ++s) {
    decode_index(s, g.d, g.M, c.data());
    double v = 1.0;
    for (int a = 0; a < g.d; ++a) v *= axis[c[a]];
    pot.field[s] = v;
  }

  pot.pair.resize(s1, s1);
  std::vector<int> ca(g.d), cb(g.d), cd(g.d);
  for (std::int64_t a = 0; a < s1; ++a) {
    decode_index(a, g.d, g.M, ca.data());
    for (std::int64_t b = 0; b < s1; ++b) {
      decode_index(b, g.d, g.M, cb.data());
      for (int ax = 0; ax < g.d; ++ax) cd[ax] = ((ca[ax] - cb[ax]) % g.M + g.M) % g.M;
      pot.pair(a, b) = pot.field[encode_index(cd.data(), g.d, g.M)];
    }
  }
  return pot;
}

double potential_integral(const Potential& pot) {
  return pot.grid.cell_volume() * pot.field.sum();
}

double potential_fourier(const Potential& pot, const int* mode) {
  const TorusGrid& g = pot.grid;
  const double h = g.spacing();
  std::vector<int> c(g.d);
  std::complex<double> acc(0.0, 0.0);
  for (std::int64_t s = 0; s < g.sites(); ++s) {
    decode_index(s, g.d, g.M, c.data());
    double phase = 0.0;
    for (int a = 0; a < g.d; ++a) phase += g.wavenumber(mode[a]) * (c[a] * h);
    acc += pot.field[s] * std::polar(1.0, -phase);
  }
  return (acc * g.cell_volume()).real();
}

}  // namespace hierakit
