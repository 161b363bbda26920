#ifndef HIERAKIT_ESTIMATES_HPP_
#define HIERAKIT_ESTIMATES_HPP_

#include <cstdint>
#include <vector>

#include "hierakit/collision.hpp"
#include "hierakit/marginal.hpp"
#include "hierakit/potential.hpp"

namespace hierakit {

// Least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Space-time smoothing probe for the contraction coupling: compares
// ||B U(t) gamma0||_{L^2_t H^alpha} over [0,T] against k * ||gamma0||_{H^alpha}
// for a level-(k+1) kernel. The bound predicts a ratio of order one.
struct SmoothingProbe {
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
};
SmoothingProbe strichartz_ratio(const Marginal& gamma0, double alpha, double T,
                                int samples);

// Decay of the same-level error coupling in N: for each N builds the
// compressed potential, measures ||B_err U(t) gamma0||_{L^2_t H^alpha} /
// ||gamma0||_{H^alpha}, and fits the log-log slope with a pairs-bootstrap
// confidence interval (percentile, 95%).
struct ErrorScalingReport {
  std::vector<std::int64_t> Ns;
  std::vector<double> ratios;
  double slope = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};
ErrorScalingReport bbgky_error_scaling(const Marginal& gamma0, const Profile& profile,
                                       double beta, const std::vector<std::int64_t>& Ns,
                                       double alpha, double T, int samples,
                                       int bootstrap_rounds, std::uint64_t seed);

// Hoelder modulus of the transform difference V^_N(q) - V^_N(0): for each N
// the maximum of |V^_N(q) - V^_N(0)| / |q|^delta over axis modes 1..max_mode,
// with the fitted exponent expected near -delta*beta. Also reports the sup
// of |V^_N| entering the same-level part bound.
struct HoelderRateReport {
  std::vector<std::int64_t> Ns;
  std::vector<double> factors;
  std::vector<double> sup_vhat;
  double fitted_exponent = 0.0;
  double expected_exponent = 0.0;
};
HoelderRateReport potential_difference_rate(const TorusGrid& g, const Profile& profile,
                                            double beta, double delta,
                                            const std::vector<std::int64_t>& Ns,
                                            int max_mode);

// Monte Carlo estimate of the dispersive surface integral
//   J(tau, u1) = Int dq dq' delta_eps(tau + |u1+q-q'|^2 + q^2 - q'^2)
//                * <u1>^(2a) / (<u1+q-q'>^(2a) <q>^(2a) <q'>^(2a))
// maximized over a deterministic probe set of (tau, u1). delta_eps is a
// Gaussian of width eps; (q,q') are drawn uniformly from [-qmax,qmax]^(2d).
struct SurfaceConstantReport {
  double sup_integral = 0.0;
  double constant = 0.0;  // sqrt of sup_integral
  double stderr_at_sup = 0.0;
  double tau_at_sup = 0.0;
  double u1_at_sup = 0.0;
};
SurfaceConstantReport estimate_J_constant(int d, double alpha, double eps,
                                          std::int64_t n_samples, std::uint64_t seed,
                                          double qmax = 8.0);

}  // namespace hierakit

#endif  // HIERAKIT_ESTIMATES_HPP_
