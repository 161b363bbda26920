#ifndef HIERAKIT_CONVERGENCE_HPP_
#define HIERAKIT_CONVERGENCE_HPP_

#include <string>
#include <vector>

#include "hierakit/nbody.hpp"
#include "hierakit/nls.hpp"
#include "hierakit/solver.hpp"

namespace hierakit {

// Gap experiment: solve the scaled-potential hierarchy and the contraction
// hierarchy from the same factorized data and tabulate how the trajectory
// gap shrinks as N grows.
struct GapConfig {
  TorusGrid grid;
  Profile profile;
  double beta = 0.2;
  std::vector<std::int64_t> Ns;
  int K = 2;
  double T = 0.05;
  int steps = 16;
  double xi = 0.3;
  double alpha = 1.0;
  double kappa0 = 1.0;
  Eigen::VectorXcd phi0;
  double picard_tol = 1e-10;
  int max_iter = 60;
  bool self_compare = false;  // replace the scaled side by the gp solution
  int jobs = 1;
};

struct GapRow {
  std::int64_t N = 0;
  double delta_gamma = 0.0;  // Linf_t collective norm of the difference
  double delta_b = 0.0;      // L2_t collective norm of the coupling-image gap
  int picard_iterations = 0;
  bool failed = false;
  std::string error;
};

struct GapReport {
  std::vector<GapRow> rows;
  bool monotone_decreasing = false;  // over successful rows
  double slope = 0.0;                // log delta_gamma vs log N
  int failures = 0;
};

GapReport run_bbgky_vs_gp(const GapConfig& cfg);

// Full-chain experiment: exact N-particle dynamics -> marginal towers,
// against the contraction-hierarchy solution of the factorized data, with
// the truncation depth K(N) from the schedule.
struct DerivationConfig {
  TorusGrid grid;
  Profile profile;
  double beta = 0.2;
  std::vector<int> Ns;
  double T = 0.05;
  int steps = 10;     // sample intervals
  int substeps = 8;   // N-particle solver steps per sample interval
  double xi = 0.3;
  double alpha = 1.0;
  double delta_prime = 0.5;
  double C0 = 2.0;
  int K_gp = 2;  // contraction-side truncation, raised to K(N)+1 if below
  double kappa0 = 1.0;
  Eigen::VectorXcd phi0;
  double picard_tol = 1e-10;
  int max_iter = 60;
  int jobs = 1;
};

struct DerivationRow {
  int N = 0;
  int K = 0;                     // schedule depth
  double diff_linf = 0.0;        // Linf_t collective norm, levels <= K
  double diff_b_l2 = 0.0;        // L2_t collective norm of coupling-image gap
  std::vector<double> per_level;  // sup_t per-level H^alpha difference
  double energy = 0.0;            // <Phi, H Phi> at t = 0
  double budget_xi_pow_k = 0.0;   // xi^K
  double budget_n4beta = 0.0;     // N^(4 beta)
  double budget_combined = 0.0;   // K^2 xi^K N^(4 beta)
  bool failed = false;
  std::string error;
};

struct DerivationReport {
  std::vector<DerivationRow> rows;
  bool monotone_decreasing = false;
  double slope = 0.0;
  int failures = 0;
};

DerivationReport run_derivation_experiment(const DerivationConfig& cfg);

}  // namespace hierakit

#endif  // HIERAKIT_CONVERGENCE_HPP_
