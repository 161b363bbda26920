#include "hierakit/sequence.hpp"

#include <cmath>

namespace hierakit {

MarginalSequence factorized_sequence(const TorusGrid& g, const Eigen::VectorXcd& phi,
                                     int K, double xi, double alpha) {
  if (K < 1) throw InvalidInputError("factorized_sequence: K must be >= 1");
  MarginalSequence seq;
  seq.grid = g;
  seq.xi = xi;
  seq.alpha = alpha;
  seq.levels.reserve(K);
  for (int k = 1; k <= K; ++k) seq.levels.push_back(factorized_marginal(g, phi, k));
  return seq;
}

MarginalSequence truncate(const MarginalSequence& seq, int K) {
  if (K < 1 || K > seq.K())
    throw InvalidInputError("truncate: K out of range");
  MarginalSequence out;
  out.grid = seq.grid;
  out.xi = seq.xi;
  out.alpha = seq.alpha;
  out.levels.assign(seq.levels.begin(), seq.levels.begin() + K);
  return out;
}

double calh_xi_norm(const MarginalSequence& seq) {
  double acc = 0.0;
  double w = 1.0;
  for (int k = 1; k <= seq.K(); ++k) {
    w *= seq.xi;
    acc += w * h_alpha_norm(seq.level(k), seq.alpha);
  }
  return acc;
}

MarginalSequence axpy(Complex a, const MarginalSequence& x, Complex b,
                      const MarginalSequence& y) {
  if (x.K() != y.K() || !(x.grid == y.grid))
    throw InvalidInputError("axpy: incompatible towers");
  MarginalSequence out = x;
  for (int i = 0; i < x.K(); ++i)
    out.levels[i].data = a * x.levels[i].data + b * y.levels[i].data;
  return out;
}

MarginalSequence free_propagate(const MarginalSequence& seq, double t) {
  MarginalSequence out = seq;
  for (auto& lvl : out.levels) lvl = free_propagate(lvl, t);
  return out;
}

double spacetime_norm(const Trajectory& traj, SpacetimeMode mode) {
  if (traj.times.empty() || traj.times.size() != traj.samples.size())
    throw InvalidInputError("spacetime_norm: empty or inconsistent trajectory");
  if (mode == SpacetimeMode::linf) {
    double best = 0.0;
    for (const auto& s : traj.samples) best = std::max(best, calh_xi_norm(s));
    return best;
  }
  if (traj.times.size() == 1) return 0.0;
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    double v = calh_xi_norm(traj.samples[i]);
    double sq = v * v;
    if (i > 0) acc += 0.5 * (traj.times[i] - traj.times[i - 1]) * (prev + sq);
    prev = sq;
  }
  return std::sqrt(acc);
}

int k_schedule(std::int64_t N, double delta_prime, double C0) {
  if (N < 1) throw InvalidInputError("k_schedule: N must be >= 1");
  if (delta_prime <= 0.0 || delta_prime >= 1.0)
    throw InvalidInputError("k_schedule: delta_prime must lie in (0,1)");
  if (C0 <= 1.0) throw InvalidInputError("k_schedule: C0 must exceed 1");
  double v = delta_prime / (2.0 * std::log(C0)) * std::log(static_cast<double>(N));
  return std::max(1, static_cast<int>(std::floor(v)));
}

}  // namespace hierakit
