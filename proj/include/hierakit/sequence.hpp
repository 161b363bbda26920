#ifndef HIERAKIT_SEQUENCE_HPP_
#define HIERAKIT_SEQUENCE_HPP_

#include <vector>

#include "hierakit/marginal.hpp"

namespace hierakit {

// Finite tower gamma^(1), ..., gamma^(K) with the weighting parameters that
// define its collective norm.
struct MarginalSequence {
  TorusGrid grid;
  double xi = 0.3;
  double alpha = 1.0;
  std::vector<Marginal> levels;  // levels[i] has k = i+1

  int K() const { return static_cast<int>(levels.size()); }
  const Marginal& level(int k) const { return levels.at(k - 1); }
  Marginal& level(int k) { return levels.at(k - 1); }
};

// Tower of factorized kernels from a one-particle field.
MarginalSequence factorized_sequence(const TorusGrid& g, const Eigen::VectorXcd& phi,
                                     int K, double xi, double alpha);

MarginalSequence truncate(const MarginalSequence& seq, int K);

// Sum_k xi^k * ||gamma^(k)||_{H^alpha}.
double calh_xi_norm(const MarginalSequence& seq);

// Entrywise linear combination a*x + b*y; towers must be compatible.
MarginalSequence axpy(Complex a, const MarginalSequence& x, Complex b,
                      const MarginalSequence& y);

MarginalSequence free_propagate(const MarginalSequence& seq, double t);

// Time samples of a tower on a uniform grid over [0,T].
struct Trajectory {
  std::vector<double> times;
  std::vector<MarginalSequence> samples;
};

enum class SpacetimeMode { linf, l2 };

// L^inf_t or L^2_t (composite trapezoid) of the collective norm.
double spacetime_norm(const Trajectory& traj, SpacetimeMode mode);

// Truncation depth K(N) = max(1, floor(dp/(2 ln C0) * ln N)).
int k_schedule(std::int64_t N, double delta_prime, double C0);

}  // namespace hierakit

#endif  // HIERAKIT_SEQUENCE_HPP_
