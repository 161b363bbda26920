#include "hierakit/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "hierakit/rng.hpp"

namespace hierakit {

namespace {

// L^2_t norm over [0,T] of t -> h_alpha_norm(op(U(t) gamma0)), composite
// trapezoid with `samples` intervals.
template <typename Op>
double l2_time_norm(const Marginal& gamma0, double alpha, double T, int samples,
                    Op&& op) {
  if (samples < 1) throw InvalidInputError("l2_time_norm: samples must be >= 1");
  if (T <= 0.0) throw InvalidInputError("l2_time_norm: T must be positive");
  double acc = 0.0;
  double prev = 0.0;
  const double dt = T / samples;
  for (int i = 0; i <= samples; ++i) {
    Marginal m = op(free_propagate(gamma0, i * dt));
    double v = h_alpha_norm(m, alpha);
    double sq = v * v;
    if (i > 0) acc += 0.5 * dt * (prev + sq);
    prev = sq;
  }
  return std::sqrt(acc);
}

}  // namespace

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidInputError("fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-14 * n * std::max(1.0, sxx))
    throw InvalidInputError("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

SmoothingProbe strichartz_ratio(const Marginal& gamma0, double alpha, double T,
                                int samples) {
  if (gamma0.k < 2)
    throw InvalidInputError("strichartz_ratio: need a level >= 2 kernel");
  SmoothingProbe probe;
  probe.numerator = l2_time_norm(gamma0, alpha, T, samples,
                                 [](const Marginal& m) { return gp_b_full(m, 1.0); });
  probe.denominator = (gamma0.k - 1) * h_alpha_norm(gamma0, alpha);
  if (probe.denominator <= 0.0)
    throw NumericalError("strichartz_ratio: zero data norm");
  probe.ratio = probe.numerator / probe.denominator;
  return probe;
}

ErrorScalingReport bbgky_error_scaling(const Marginal& gamma0, const Profile& profile,
                                       double beta, const std::vector<std::int64_t>& Ns,
                                       double alpha, double T, int samples,
                                       int bootstrap_rounds, std::uint64_t seed) {
  if (gamma0.k < 2)
    throw InvalidInputError("bbgky_error_scaling: same-level term vanishes for k < 2");
  if (Ns.size() < 2) throw InvalidInputError("bbgky_error_scaling: need >= 2 values of N");
  ErrorScalingReport rep;
  rep.Ns = Ns;
  const double base = h_alpha_norm(gamma0, alpha);
  if (base <= 0.0) throw NumericalError("bbgky_error_scaling: zero data norm");
  std::vector<double> lx, ly;
  for (std::int64_t N : Ns) {
    Potential pot = make_potential(gamma0.grid, profile, beta, N);
    double num = l2_time_norm(gamma0, alpha, T, samples, [&](const Marginal& m) {
      return bbgky_b_error(m, pot, N);
    });
    rep.ratios.push_back(num / base);
    lx.push_back(std::log(static_cast<double>(N)));
    ly.push_back(std::log(num / base));
  }
  rep.slope = fit_line(lx, ly).slope;

  // Pairs bootstrap; resamples with a degenerate abscissa set are redrawn.
  Rng rng(seed);
  std::vector<double> slopes;
  slopes.reserve(bootstrap_rounds);
  std::vector<double> bx(lx.size()), by(lx.size());
  for (int r = 0; r < bootstrap_rounds; ++r) {
    for (int tries = 0;; ++tries) {
      for (std::size_t i = 0; i < lx.size(); ++i) {
        std::size_t pick = static_cast<std::size_t>(rng.below(lx.size()));
        bx[i] = lx[pick];
        by[i] = ly[pick];
      }
      double spread = *std::max_element(bx.begin(), bx.end()) -
                      *std::min_element(bx.begin(), bx.end());
      if (spread > 1e-12 || tries > 100) break;
    }
    slopes.push_back(fit_line(bx, by).slope);
  }
  std::sort(slopes.begin(), slopes.end());
  auto pick_at = [&](double q) {
    double pos = q * (slopes.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, slopes.size() - 1);
    return slopes[lo] + (pos - lo) * (slopes[hi] - slopes[lo]);
  };
  rep.ci_lo = pick_at(0.025);
  rep.ci_hi = pick_at(0.975);
  return rep;
}

HoelderRateReport potential_difference_rate(const TorusGrid& g, const Profile& profile,
                                            double beta, double delta,
                                            const std::vector<std::int64_t>& Ns,
                                            int max_mode) {
  if (delta <= 0.0 || delta > 1.0)
    throw InvalidInputError("potential_difference_rate: delta must lie in (0,1]");
  if (max_mode < 1 || max_mode >= g.M / 2)
    throw InvalidInputError("potential_difference_rate: mode range out of bounds");
  HoelderRateReport rep;
  rep.Ns = Ns;
  rep.expected_exponent = -delta * beta;
  std::vector<double> lx, ly;
  std::vector<int> mode(g.d, 0);
  for (std::int64_t N : Ns) {
    Potential pot = make_potential(g, profile, beta, N);
    std::fill(mode.begin(), mode.end(), 0);
    const double v0 = potential_fourier(pot, mode.data());
    double factor = 0.0;
    double sup = std::abs(v0);
    // Axis-aligned modes on the first axis; the profiles are isotropic.
    for (int m = 1; m <= max_mode; ++m) {
      mode[0] = m;
      double v = potential_fourier(pot, mode.data());
      sup = std::max(sup, std::abs(v));
      double q = g.wavenumber(m);
      factor = std::max(factor, std::abs(v - v0) / std::pow(std::abs(q), delta));
    }
    rep.factors.push_back(factor);
    rep.sup_vhat.push_back(sup);
    lx.push_back(std::log(static_cast<double>(N)));
    ly.push_back(std::log(factor));
  }
  rep.fitted_exponent = fit_line(lx, ly).slope;
  return rep;
}

SurfaceConstantReport estimate_J_constant(int d, double alpha, double eps,
                                          std::int64_t n_samples, std::uint64_t seed,
                                          double qmax) {
  if (d < 2 || d > 3)
    throw InvalidInputError("estimate_J_constant: d must be 2 or 3");
  if (eps <= 0.0 || n_samples < 1000)
    throw InvalidInputError("estimate_J_constant: need eps > 0 and >= 1000 samples");
  auto bracket = [](const double* v, int n) {
    double s = 1.0;
    for (int i = 0; i < n; ++i) s += v[i] * v[i];
    return s;  // <v>^2
  };
  const double delta_norm = 1.0 / (eps * std::sqrt(2.0 * kPi));
  // Probe lattice for the outer sup.
  const double taus[] = {-16.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 16.0};
  const double u1s[] = {0.0, 0.5, 1.0, 2.0, 4.0};

  SurfaceConstantReport rep;
  double volume = std::pow(2.0 * qmax, 2 * d);
  for (double u1mag : u1s) {
    for (double tau : taus) {
      Rng rng(seed);  // same sample set for every probe: paired comparison
      double mean = 0.0, m2 = 0.0;
      std::int64_t n = 0;
      double q[3], qp[3], shift[3];
      for (std::int64_t s = 0; s < n_samples; ++s) {
        for (int a = 0; a < d; ++a) q[a] = rng.uniform(-qmax, qmax);
        for (int a = 0; a < d; ++a) qp[a] = rng.uniform(-qmax, qmax);
        // u1 along the first axis.
        shift[0] = u1mag + q[0] - qp[0];
        for (int a = 1; a < d; ++a) shift[a] = q[a] - qp[a];
        double q2 = 0.0, qp2 = 0.0;
        for (int a = 0; a < d; ++a) q2 += q[a] * q[a];
        for (int a = 0; a < d; ++a) qp2 += qp[a] * qp[a];
        double surf = tau + (bracket(shift, d) - 1.0) + q2 - qp2;
        double g = delta_norm * std::exp(-0.5 * surf * surf / (eps * eps));
        double u1v[1] = {u1mag};
        double val = g * std::pow(bracket(u1v, 1), alpha) /
                     (std::pow(bracket(shift, d), alpha) * std::pow(1.0 + q2, alpha) *
                      std::pow(1.0 + qp2, alpha));
        ++n;
        double delta1 = val - mean;
        mean += delta1 / n;
        m2 += delta1 * (val - mean);
      }
      double integral = volume * mean;
      double se = volume * std::sqrt(m2 / (n - 1) / n);
      if (integral > rep.sup_integral) {
        rep.sup_integral = integral;
        rep.stderr_at_sup = se;
        rep.tau_at_sup = tau;
        rep.u1_at_sup = u1mag;
      }
    }
  }
  rep.constant = std::sqrt(std::max(0.0, rep.sup_integral));
  return rep;
}

}  // namespace hierakit
