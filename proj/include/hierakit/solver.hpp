#ifndef HIERAKIT_SOLVER_HPP_
#define HIERAKIT_SOLVER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hierakit/collision.hpp"
#include "hierakit/sequence.hpp"

namespace hierakit {

enum class HierarchyKind { gp, bbgky };

struct HierarchyProblem {
  HierarchyKind kind = HierarchyKind::gp;
  TorusGrid grid;
  int K = 2;
  double T = 0.1;
  int steps = 16;  // trapezoid intervals; steps+1 samples
  double xi = 0.3;
  double alpha = 1.0;
  double kappa0 = 1.0;            // gp coupling strength
  std::int64_t N = 0;             // bbgky particle number
  std::optional<Potential> pot;   // bbgky interaction
  double picard_tol = 1e-10;
  int max_iter = 60;

  void validate() const;
};

// The problem's coupling map applied to one tower.
MarginalSequence apply_coupling(const HierarchyProblem& p, const MarginalSequence& seq);

struct PicardReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> update_norms;  // collective norm of each update
  std::vector<double> ratios;        // successive update ratios
};

// Waveform relaxation on the mild form over the whole sample grid:
//   Gamma_{m+1}(t) = U(t)Gamma0 - i Int_0^t U(t-s) (B Gamma_m)(s) ds
// with composite trapezoid in s. Converged when the largest collective
// norm of the update drops below picard_tol; throws NonContractiveError
// after three consecutive non-contracting sweeps.
Trajectory picard_solve(const HierarchyProblem& p, const MarginalSequence& gamma0,
                        PicardReport* report = nullptr);

// j-fold nested collision/free-flow integral of a sampled tower:
//   j = 0 returns Xi^(k)(t); otherwise
//   (-i)^j Int_0^t dt1 ... Int_0^{t_{j-1}} dt_j
//     B U(t-t1) B U(t1-t2) ... U(t_{j-1}-t_j) Xi^(k+j)(t_j)
// where B is the problem's coupling at the appropriate level. Each layer
// is a composite trapezoid on the trajectory's sample grid; t must lie on
// that grid. Depth j <= 3.
Marginal duhamel_term(const HierarchyProblem& p, const Trajectory& xi, int j, int k,
                      double t);

// Independent solution route: the nested-integral series for the coupling
// image Theta = (B Gamma), seeded by B applied to the free flow of the
// data and truncated at depth J, followed by one final mild-form
// integration. For the gp kind the truncation is exact (up to quadrature)
// once J >= K-1-k at every level.
Trajectory duhamel_series_solve(const HierarchyProblem& p,
                                const MarginalSequence& gamma0, int J);

// Generator defect of a sampled trajectory: for interior samples and each
// level k, the plain kernel norm of
//   i d/dt gamma^(k) (central difference) - Sum_j[-Lap_j, gamma^(k)]
//     - (B Gamma)^(k)
// Row i-1 holds sample t_i, column k-1 holds level k. `relative` divides
// by the H^0 norm of gamma^(k) at the same sample.
Eigen::MatrixXd hierarchy_residual(const HierarchyProblem& p, const Trajectory& traj,
                                   bool relative);

// Number of summands in the fully expanded depth-j term at level k,
// prod_{i=0}^{j-1} (k+i), as a decimal string (exact at any depth).
std::string count_duhamel_summands(int k, int j);

}  // namespace hierakit

#endif  // HIERAKIT_SOLVER_HPP_
