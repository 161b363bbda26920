#include "hierakit/solver.hpp"

#include <cmath>
#include <utility>

namespace hierakit {

namespace {

MarginalSequence zero_like(const MarginalSequence& seq) {
  MarginalSequence out = seq;
  for (auto& lvl : out.levels) lvl.data.setZero();
  return out;
}

bool all_finite(const MarginalSequence& seq) {
  for (const auto& lvl : seq.levels)
    if (!lvl.data.allFinite()) return false;
  return true;
}

// Level-lowering part of the coupling, applied to a single kernel.
Marginal lowering_op(const HierarchyProblem& p, const Marginal& m) {
  if (p.kind == HierarchyKind::gp) return gp_b_full(m, p.kappa0);
  return bbgky_b_main(m, *p.pot, p.N);
}

// Level-lowering part applied tower-wise (top level maps to zero).
MarginalSequence lowering_map(const HierarchyProblem& p, const MarginalSequence& seq) {
  MarginalSequence out = seq;
  for (int k = 1; k <= seq.K(); ++k) {
    if (k + 1 <= seq.K())
      out.level(k) = lowering_op(p, seq.level(k + 1));
    else
      out.level(k).data.setZero();
  }
  return out;
}

std::vector<double> sample_times(const HierarchyProblem& p) {
  std::vector<double> t(p.steps + 1);
  for (int i = 0; i <= p.steps; ++i) t[i] = p.T * i / p.steps;
  return t;
}

int locate_sample(const std::vector<double>& times, double t) {
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= 1e-9) return static_cast<int>(i);
  throw InvalidInputError("duhamel_term: t does not lie on the sample grid");
}

// D_0(s) for all samples s: the depth-j nested integral of the sampled
// tower xi at level k, reduced one layer at a time from the inside out.
std::vector<Marginal> nested_layers(const HierarchyProblem& p, const Trajectory& xi,
                                    int j, int k) {
  const int S = static_cast<int>(xi.times.size());
  std::vector<Marginal> cur(S);
  for (int s = 0; s < S; ++s) cur[s] = xi.samples[s].level(k + j);
  const Complex minus_i(0.0, -1.0);
  for (int layer = j; layer >= 1; --layer) {
    // cur holds level k+layer kernels; produce level k+layer-1.
    std::vector<Marginal> next(S);
    for (int s = 0; s < S; ++s) {
      Marginal acc(p.grid, k + layer - 1);
      for (int r = 0; r <= s; ++r) {
        double w = 0.5 * ((r > 0 ? xi.times[r] - xi.times[r - 1] : 0.0) +
                          (r < s ? xi.times[r + 1] - xi.times[r] : 0.0));
        if (w == 0.0) continue;
        Marginal term = lowering_op(p, free_propagate(cur[r], xi.times[s] - xi.times[r]));
        acc.data += w * term.data;
      }
      acc.data *= minus_i;
      next[s] = std::move(acc);
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

void HierarchyProblem::validate() const {
  grid.validate();
  if (K < 1) throw InvalidInputError("hierarchy: K must be >= 1");
  if (T < 0.0) throw InvalidInputError("hierarchy: T must be >= 0");
  if (steps < 1) throw InvalidInputError("hierarchy: steps must be >= 1");
  if (xi <= 0.0) throw InvalidInputError("hierarchy: xi must be positive");
  if (max_iter < 1) throw InvalidInputError("hierarchy: max_iter must be >= 1");
  if (kind == HierarchyKind::bbgky) {
    if (!pot.has_value()) throw InvalidInputError("hierarchy: missing potential");
    if (N < 1) throw InvalidInputError("hierarchy: N must be >= 1");
    if (K > N)
      throw InvalidInputError("hierarchy: truncation depth exceeds particle number");
    if (!(pot->grid == grid)) throw InvalidInputError("hierarchy: potential grid mismatch");
  }
}

MarginalSequence apply_coupling(const HierarchyProblem& p, const MarginalSequence& seq) {
  if (p.kind == HierarchyKind::gp) return gp_b(seq, p.kappa0);
  return bbgky_b(seq, *p.pot, p.N);
}

Trajectory picard_solve(const HierarchyProblem& p, const MarginalSequence& gamma0,
                        PicardReport* report) {
  p.validate();
  if (gamma0.K() != p.K || !(gamma0.grid == p.grid))
    throw InvalidInputError("picard_solve: data does not match problem");

  Trajectory traj;
  if (p.T == 0.0) {
    traj.times = {0.0};
    traj.samples = {gamma0};
    if (report != nullptr) {
      report->converged = true;
      report->iterations = 0;
    }
    return traj;
  }

  traj.times = sample_times(p);
  const int S = static_cast<int>(traj.times.size());
  traj.samples.resize(S);
  for (int i = 0; i < S; ++i) traj.samples[i] = free_propagate(gamma0, traj.times[i]);

  PicardReport local;
  PicardReport& rep = report != nullptr ? *report : local;
  rep = PicardReport{};

  const Complex minus_i(0.0, -1.0);
  int stalled = 0;
  for (int m = 1; m <= p.max_iter; ++m) {
    // Pull back coupling images to t=0, accumulate the running trapezoid,
    // then push forward: U(t_i)(Gamma0 - i Int_0^{t_i} U(-s) B(s) ds).
    std::vector<MarginalSequence> pulled(S);
    for (int i = 0; i < S; ++i)
      pulled[i] = free_propagate(apply_coupling(p, traj.samples[i]), -traj.times[i]);
    double worst = 0.0;
    MarginalSequence acc = zero_like(gamma0);
    for (int i = 0; i < S; ++i) {
      if (i > 0) {
        double half = 0.5 * (traj.times[i] - traj.times[i - 1]);
        acc = axpy(1.0, acc, half, axpy(1.0, pulled[i - 1], 1.0, pulled[i]));
      }
      MarginalSequence next = free_propagate(axpy(1.0, gamma0, minus_i, acc), traj.times[i]);
      double upd = calh_xi_norm(axpy(1.0, next, -1.0, traj.samples[i]));
      worst = std::max(worst, upd);
      traj.samples[i] = std::move(next);
    }
    if (!std::isfinite(worst) || !all_finite(traj.samples[S - 1]))
      throw NumericalError("picard_solve: non-finite iterate");
    rep.iterations = m;
    rep.update_norms.push_back(worst);
    if (m >= 2) {
      double prev = rep.update_norms[m - 2];
      double ratio = prev > 0.0 ? worst / prev : 0.0;
      rep.ratios.push_back(ratio);
      stalled = ratio >= 1.0 ? stalled + 1 : 0;
      if (stalled >= 3)
        throw NonContractiveError(
            "picard_solve: no contraction over three consecutive sweeps "
            "(shrink T or xi)");
    }
    if (worst < p.picard_tol) {
      rep.converged = true;
      return traj;
    }
  }
  throw NumericalError("picard_solve: tolerance not reached within max_iter sweeps");
}

Marginal duhamel_term(const HierarchyProblem& p, const Trajectory& xi, int j, int k,
                      double t) {
  if (j < 0 || j > 3)
    throw InvalidInputError("duhamel_term: depth must lie in [0,3]");
  if (xi.times.empty() || xi.samples.empty())
    throw InvalidInputError("duhamel_term: empty trajectory");
  if (k < 1 || k + j > xi.samples[0].K())
    throw InvalidInputError("duhamel_term: level k+j exceeds the trajectory tower");
  int it = locate_sample(xi.times, t);
  if (j == 0) return xi.samples[it].level(k);
  return nested_layers(p, xi, j, k)[it];
}

Trajectory duhamel_series_solve(const HierarchyProblem& p,
                                const MarginalSequence& gamma0, int J) {
  p.validate();
  if (J < 0 || J > 3) throw InvalidInputError("duhamel_series_solve: J must lie in [0,3]");
  if (gamma0.K() != p.K || !(gamma0.grid == p.grid))
    throw InvalidInputError("duhamel_series_solve: data does not match problem");

  Trajectory traj;
  if (p.T == 0.0) {
    traj.times = {0.0};
    traj.samples = {gamma0};
    return traj;
  }
  traj.times = sample_times(p);
  const int S = static_cast<int>(traj.times.size());

  // Seed: level-lowering coupling applied to the free flow of the data.
  Trajectory seed;
  seed.times = traj.times;
  seed.samples.resize(S);
  for (int i = 0; i < S; ++i)
    seed.samples[i] = lowering_map(p, free_propagate(gamma0, traj.times[i]));

  // Theta^(k) = sum_j nested terms; the depth is capped by the tower top.
  std::vector<MarginalSequence> theta(S, zero_like(gamma0));
  for (int k = 1; k <= p.K; ++k) {
    for (int j = 0; j <= std::min(J, p.K - 1 - k); ++j) {
      if (j == 0) {
        for (int i = 0; i < S; ++i) theta[i].level(k).data += seed.samples[i].level(k).data;
      } else {
        std::vector<Marginal> term = nested_layers(p, seed, j, k);
        for (int i = 0; i < S; ++i) theta[i].level(k).data += term[i].data;
      }
    }
  }

  // Mild form around Theta with the same pulled-back running trapezoid as
  // the relaxation route.
  const Complex minus_i(0.0, -1.0);
  traj.samples.resize(S);
  MarginalSequence acc = zero_like(gamma0);
  std::vector<MarginalSequence> pulled(S);
  for (int i = 0; i < S; ++i) pulled[i] = free_propagate(theta[i], -traj.times[i]);
  for (int i = 0; i < S; ++i) {
    if (i > 0) {
      double half = 0.5 * (traj.times[i] - traj.times[i - 1]);
      acc = axpy(1.0, acc, half, axpy(1.0, pulled[i - 1], 1.0, pulled[i]));
    }
    traj.samples[i] = free_propagate(axpy(1.0, gamma0, minus_i, acc), traj.times[i]);
  }
  return traj;
}

Eigen::MatrixXd hierarchy_residual(const HierarchyProblem& p, const Trajectory& traj,
                                   bool relative) {
  if (traj.times.size() < 3)
    throw InvalidInputError("hierarchy_residual: need at least three samples");
  const int S = static_cast<int>(traj.times.size());
  const int K = traj.samples[0].K();
  Eigen::MatrixXd out(S - 2, K);
  const Complex iu(0.0, 1.0);
  for (int i = 1; i + 1 < S; ++i) {
    MarginalSequence coup = apply_coupling(p, traj.samples[i]);
    double span = traj.times[i + 1] - traj.times[i - 1];
    for (int k = 1; k <= K; ++k) {
      Marginal r = laplacian_commutator(traj.samples[i].level(k));
      r.data = iu * (traj.samples[i + 1].level(k).data -
                     traj.samples[i - 1].level(k).data) /
                   span -
               r.data - coup.level(k).data;
      double v = h_alpha_norm(r, 0.0);
      if (relative) {
        double base = h_alpha_norm(traj.samples[i].level(k), 0.0);
        v = base > 0.0 ? v / base : v;
      }
      out(i - 1, k - 1) = v;
    }
  }
  return out;
}

std::string count_duhamel_summands(int k, int j) {
  if (k < 1 || j < 0) throw InvalidInputError("count_duhamel_summands: bad arguments");
  // Digit vector in base 1e9, least significant first.
  std::vector<std::uint64_t> digits{1};
  for (int i = 0; i < j; ++i) {
    std::uint64_t carry = 0;
    const std::uint64_t f = static_cast<std::uint64_t>(k) + i;
    for (auto& dig : digits) {
      std::uint64_t v = dig * f + carry;
      dig = v % 1000000000ULL;
      carry = v / 1000000000ULL;
    }
    while (carry > 0) {
      digits.push_back(carry % 1000000000ULL);
      carry /= 1000000000ULL;
    }
  }
  std::string s = std::to_string(digits.back());
  for (int i = static_cast<int>(digits.size()) - 2; i >= 0; --i) {
    std::string part = std::to_string(digits[i]);
    s += std::string(9 - part.size(), '0') + part;
  }
  return s;
}

}  // namespace hierakit
