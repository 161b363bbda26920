#include "hierakit/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>

#include "hierakit/estimates.hpp"

namespace hierakit {

namespace {

// Bounded worker pool over row indices with deterministic result order.
template <typename Fn>
void parallel_rows(int count, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> workers;
  std::atomic<int> cursor{0};
  for (int w = 0; w < jobs; ++w)
    workers.push_back(std::async(std::launch::async, [&] {
      for (int i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) fn(i);
    }));
  for (auto& f : workers) f.get();
}

double monotone_and_slope(const std::vector<double>& ns, const std::vector<double>& vals,
                          bool* monotone) {
  *monotone = vals.size() >= 2;
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (!(vals[i] < vals[i - 1])) *monotone = false;
  if (vals.size() < 2) return 0.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] <= 0.0) return 0.0;
    lx.push_back(std::log(ns[i]));
    ly.push_back(std::log(vals[i]));
  }
  return fit_line(lx, ly).slope;
}

}  // namespace

GapReport run_bbgky_vs_gp(const GapConfig& cfg) {
  if (cfg.Ns.empty()) throw InvalidInputError("gap experiment: empty N list");
  GapReport rep;
  rep.rows.resize(cfg.Ns.size());

  // The contraction-side solution does not depend on N; solve it once.
  MarginalSequence gamma0 =
      factorized_sequence(cfg.grid, cfg.phi0, cfg.K, cfg.xi, cfg.alpha);
  HierarchyProblem gp;
  gp.kind = HierarchyKind::gp;
  gp.grid = cfg.grid;
  gp.K = cfg.K;
  gp.T = cfg.T;
  gp.steps = cfg.steps;
  gp.xi = cfg.xi;
  gp.alpha = cfg.alpha;
  gp.kappa0 = cfg.kappa0;
  gp.picard_tol = cfg.picard_tol;
  gp.max_iter = cfg.max_iter;
  Trajectory gp_traj = picard_solve(gp, gamma0);

  parallel_rows(static_cast<int>(cfg.Ns.size()), cfg.jobs, [&](int i) {
    GapRow& row = rep.rows[i];
    row.N = cfg.Ns[i];
    try {
      HierarchyProblem prob = gp;
      Trajectory traj;
      PicardReport picard;
      if (cfg.self_compare) {
        traj = picard_solve(prob, gamma0, &picard);
      } else {
        prob.kind = HierarchyKind::bbgky;
        prob.N = row.N;
        prob.pot = make_potential(cfg.grid, cfg.profile, cfg.beta, row.N);
        traj = picard_solve(prob, gamma0, &picard);
      }
      row.picard_iterations = picard.iterations;

      Trajectory diff, bdiff;
      diff.times = traj.times;
      bdiff.times = traj.times;
      for (std::size_t s = 0; s < traj.samples.size(); ++s) {
        diff.samples.push_back(axpy(1.0, traj.samples[s], -1.0, gp_traj.samples[s]));
        MarginalSequence bn = apply_coupling(prob, traj.samples[s]);
        MarginalSequence bg = apply_coupling(gp, gp_traj.samples[s]);
        bdiff.samples.push_back(axpy(1.0, bn, -1.0, bg));
      }
      row.delta_gamma = spacetime_norm(diff, SpacetimeMode::linf);
      row.delta_b = spacetime_norm(bdiff, SpacetimeMode::l2);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
  });

  std::vector<double> ns, vals;
  for (const auto& row : rep.rows) {
    if (row.failed) {
      ++rep.failures;
      continue;
    }
    ns.push_back(static_cast<double>(row.N));
    vals.push_back(row.delta_gamma);
  }
  rep.slope = monotone_and_slope(ns, vals, &rep.monotone_decreasing);
  return rep;
}

namespace {

// Marginal tower of the first `K` levels of an N-particle state.
MarginalSequence tower_from_state(const WaveFunction& psi, int K, double xi,
                                  double alpha) {
  MarginalSequence seq;
  seq.grid = psi.grid;
  seq.xi = xi;
  seq.alpha = alpha;
  for (int k = 1; k <= K; ++k) seq.levels.push_back(marginal_from_wavefunction(psi, k));
  return seq;
}

}  // namespace

DerivationReport run_derivation_experiment(const DerivationConfig& cfg) {
  if (cfg.Ns.empty()) throw InvalidInputError("derivation experiment: empty N list");
  DerivationReport rep;
  rep.rows.resize(cfg.Ns.size());

  parallel_rows(static_cast<int>(cfg.Ns.size()), cfg.jobs, [&](int i) {
    DerivationRow& row = rep.rows[i];
    row.N = cfg.Ns[i];
    try {
      const int K = k_schedule(row.N, cfg.delta_prime, cfg.C0);
      row.K = K;
      if (K + 1 > row.N)
        throw InvalidInputError("derivation experiment: N too small for depth K+1");
      Potential pot = make_potential(cfg.grid, cfg.profile, cfg.beta, row.N);

      // Exact side: evolve the product state, extract K+1 levels so the
      // coupling image at level K keeps its feed term.
      WaveFunction psi = product_state(cfg.grid, cfg.phi0, row.N);
      row.energy = nbody_energy(psi, pot);
      Trajectory exact;
      exact.times.resize(cfg.steps + 1);
      exact.samples.reserve(cfg.steps + 1);
      exact.times[0] = 0.0;
      exact.samples.push_back(tower_from_state(psi, K + 1, cfg.xi, cfg.alpha));
      const double dt_sample = cfg.T / cfg.steps;
      for (int s = 1; s <= cfg.steps; ++s) {
        schrodinger_evolve(psi, pot, dt_sample, cfg.substeps);
        exact.times[s] = cfg.T * s / cfg.steps;
        exact.samples.push_back(tower_from_state(psi, K + 1, cfg.xi, cfg.alpha));
      }

      // Contraction side from the same one-particle field.
      HierarchyProblem gp;
      gp.kind = HierarchyKind::gp;
      gp.grid = cfg.grid;
      gp.K = std::max(cfg.K_gp, K + 1);
      gp.T = cfg.T;
      gp.steps = cfg.steps;
      gp.xi = cfg.xi;
      gp.alpha = cfg.alpha;
      gp.kappa0 = cfg.kappa0;
      gp.picard_tol = cfg.picard_tol;
      gp.max_iter = cfg.max_iter;
      MarginalSequence gamma0 =
          factorized_sequence(cfg.grid, cfg.phi0, gp.K, cfg.xi, cfg.alpha);
      Trajectory gp_traj = picard_solve(gp, gamma0);

      HierarchyProblem nb;  // coupling context for the exact tower
      nb.kind = HierarchyKind::bbgky;
      nb.grid = cfg.grid;
      nb.K = K + 1;
      nb.N = row.N;
      nb.pot = pot;
      nb.xi = cfg.xi;
      nb.alpha = cfg.alpha;

      Trajectory diff, bdiff;
      diff.times = exact.times;
      bdiff.times = exact.times;
      row.per_level.assign(K, 0.0);
      for (std::size_t s = 0; s < exact.samples.size(); ++s) {
        MarginalSequence a = truncate(exact.samples[s], K);
        MarginalSequence b = truncate(gp_traj.samples[s], K);
        MarginalSequence d = axpy(1.0, a, -1.0, b);
        for (int k = 1; k <= K; ++k)
          row.per_level[k - 1] =
              std::max(row.per_level[k - 1], h_alpha_norm(d.level(k), cfg.alpha));
        diff.samples.push_back(std::move(d));

        MarginalSequence bn =
            bbgky_b(truncate(exact.samples[s], K + 1), pot, row.N);
        MarginalSequence bg =
            gp_b(truncate(gp_traj.samples[s], K + 1), cfg.kappa0);
        bdiff.samples.push_back(
            axpy(1.0, truncate(bn, K), -1.0, truncate(bg, K)));
      }
      row.diff_linf = spacetime_norm(diff, SpacetimeMode::linf);
      row.diff_b_l2 = spacetime_norm(bdiff, SpacetimeMode::l2);
      row.budget_xi_pow_k = std::pow(cfg.xi, K);
      row.budget_n4beta = std::pow(static_cast<double>(row.N), 4.0 * cfg.beta);
      row.budget_combined = K * K * row.budget_xi_pow_k * row.budget_n4beta;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
  });

  std::vector<double> ns, vals;
  for (const auto& row : rep.rows) {
    if (row.failed) {
      ++rep.failures;
      continue;
    }
    ns.push_back(static_cast<double>(row.N));
    vals.push_back(row.diff_linf);
  }
  rep.slope = monotone_and_slope(ns, vals, &rep.monotone_decreasing);
  return rep;
}

}  // namespace hierakit
