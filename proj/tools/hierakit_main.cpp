// Command-line front end: solve the contraction or scaled-potential
// hierarchy, run the cubic-equation reference solver, run the convergence
// experiments, or validate the operator stack against its brute-force
// reference implementations. Exit codes: 0 ok, 2 invalid input, 3 numerical
// failure, 4 non-contractive iteration, 5 partial experiment failure.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hierakit/config.hpp"
#include "hierakit/convergence.hpp"
#include "hierakit/errors.hpp"
#include "hierakit/estimates.hpp"
#include "hierakit/io.hpp"
#include "hierakit/nbody.hpp"
#include "hierakit/nls.hpp"
#include "hierakit/reference.hpp"
#include "hierakit/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hierakit;

namespace {

struct CommonOpts {
  std::string config;
  std::string out = ".";
  int jobs = 1;
  std::uint64_t seed = 12345;
  bool plot = false;
};

void add_common(CLI::App* sc, CommonOpts& o, bool need_config) {
  auto* c = sc->add_option("--config", o.config, "JSON run description");
  if (need_config) c->required();
  sc->add_option("--out", o.out, "output directory (created if missing)");
  sc->add_option("--jobs", o.jobs, "worker threads for per-N experiment rows");
  sc->add_option("--seed", o.seed, "seed for randomized checks");
  sc->add_flag("--plot", o.plot, "also write a gnuplot script");
}

fs::path prepare_out(const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

double field_mass(const TorusGrid& g, const Eigen::VectorXcd& phi) {
  return g.cell_volume() * phi.squaredNorm();
}

int run_nls(const CommonOpts& o) {
  RunConfig cfg = load_config(o.config);
  fs::path dir = prepare_out(o.out);
  NlsSolution sol = nls_reference_solve(cfg.grid, cfg.phi0, cfg.kappa0, cfg.nls_T,
                                        cfg.nls_samples, cfg.nls_substeps);
  CsvTable table;
  table.columns = {"t", "mass", "energy"};
  for (std::size_t i = 0; i < sol.times.size(); ++i)
    table.rows.push_back({format_double(sol.times[i]),
                          format_double(field_mass(cfg.grid, sol.fields[i])),
                          format_double(nls_energy(cfg.grid, sol.fields[i], cfg.kappa0))});
  write_csv(dir / cfg.csv_name, table);
  json rep;
  rep["subcommand"] = "nls";
  rep["samples"] = sol.times.size();
  rep["mass_drift"] = sol.mass_drift;
  rep["energy_drift"] = sol.energy_drift;
  rep["seed"] = o.seed;
  rep["config"] = cfg.echo;
  write_json(dir / cfg.json_name, rep);
  if (o.plot)
    write_gnuplot_script(dir / cfg.plot_name, cfg.csv_name, "cubic flow invariants", 1,
                         {{2, "mass"}, {3, "energy"}}, false);
  std::cout << "nls: " << sol.times.size() << " samples, mass drift "
            << format_double(sol.mass_drift) << ", energy drift "
            << format_double(sol.energy_drift) << "\n";
  return 0;
}

int run_hierarchy(const CommonOpts& o) {
  RunConfig cfg = load_config(o.config);
  fs::path dir = prepare_out(o.out);
  HierarchyProblem p = to_problem(cfg);
  MarginalSequence gamma0 =
      factorized_sequence(cfg.grid, cfg.phi0, cfg.K, cfg.xi, cfg.alpha);

  Trajectory traj;
  PicardReport picard;
  if (cfg.method == "picard") {
    traj = picard_solve(p, gamma0, &picard);
  } else {
    traj = duhamel_series_solve(p, gamma0, cfg.duhamel_depth);
  }

  double residual_max = 0.0;
  if (traj.samples.size() >= 3) {
    Eigen::MatrixXd res = hierarchy_residual(p, traj, true);
    residual_max = res.maxCoeff();
  }

  CsvTable table;
  table.columns = {"t", "collective_norm", "level1_norm"};
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    table.rows.push_back(
        {format_double(traj.times[i]), format_double(calh_xi_norm(traj.samples[i])),
         format_double(h_alpha_norm(traj.samples[i].level(1), cfg.alpha))});
  write_csv(dir / cfg.csv_name, table);

  json rep;
  rep["subcommand"] = "hierarchy";
  rep["method"] = cfg.method;
  rep["kind"] = cfg.kind == HierarchyKind::gp ? "gp" : "bbgky";
  rep["K"] = cfg.K;
  rep["samples"] = traj.times.size();
  rep["residual_max_rel"] = residual_max;
  if (cfg.method == "picard") {
    rep["picard_converged"] = picard.converged;
    rep["picard_iterations"] = picard.iterations;
    rep["picard_update_norms"] = picard.update_norms;
  } else {
    rep["duhamel_depth"] = cfg.duhamel_depth;
    rep["duhamel_level1_summands"] =
        count_duhamel_summands(1, std::min(cfg.duhamel_depth, cfg.K - 1));
  }
  rep["seed"] = o.seed;
  rep["config"] = cfg.echo;
  write_json(dir / cfg.json_name, rep);

  if (!cfg.trajectory_dir.empty()) {
    json meta;
    meta["kind"] = rep["kind"];
    meta["method"] = cfg.method;
    write_trajectory(dir / cfg.trajectory_dir, traj, meta);
  }
  if (o.plot)
    write_gnuplot_script(dir / cfg.plot_name, cfg.csv_name, "tower norms", 1,
                         {{2, "collective"}, {3, "level 1"}}, false);
  std::cout << "hierarchy: " << traj.times.size() << " samples, max relative residual "
            << format_double(residual_max) << "\n";
  return 0;
}

int run_converge(const CommonOpts& o) {
  RunConfig cfg = load_config(o.config);
  fs::path dir = prepare_out(o.out);
  json rep;
  rep["subcommand"] = "converge";
  rep["mode"] = cfg.experiment_mode;
  rep["seed"] = o.seed;
  rep["config"] = cfg.echo;

  int failures = 0;
  std::size_t total = 0;
  if (cfg.experiment_mode == "gap") {
    GapReport gap = run_bbgky_vs_gp(to_gap_config(cfg, o.jobs));
    CsvTable table;
    table.columns = {"N", "delta_gamma", "delta_b", "picard_iterations", "failed"};
    json rows = json::array();
    for (const GapRow& r : gap.rows) {
      table.rows.push_back({std::to_string(r.N), format_double(r.delta_gamma),
                            format_double(r.delta_b),
                            std::to_string(r.picard_iterations),
                            std::to_string(r.failed ? 1 : 0)});
      json jr;
      jr["N"] = r.N;
      jr["delta_gamma"] = r.delta_gamma;
      jr["delta_b"] = r.delta_b;
      jr["picard_iterations"] = r.picard_iterations;
      jr["failed"] = r.failed;
      if (r.failed) jr["error"] = r.error;
      rows.push_back(jr);
    }
    write_csv(dir / cfg.csv_name, table);
    rep["rows"] = rows;
    rep["monotone_decreasing"] = gap.monotone_decreasing;
    rep["slope"] = gap.slope;
    rep["failures"] = gap.failures;
    failures = gap.failures;
    total = gap.rows.size();
    if (o.plot)
      write_gnuplot_script(dir / cfg.plot_name, cfg.csv_name, "trajectory gap vs N", 1,
                           {{2, "delta_gamma"}, {3, "delta_b"}}, true);
    std::cout << "converge gap: slope " << format_double(gap.slope) << ", monotone "
              << (gap.monotone_decreasing ? "yes" : "no") << ", failures "
              << gap.failures << "\n";
  } else if (cfg.experiment_mode == "derivation") {
    DerivationReport der = run_derivation_experiment(to_derivation_config(cfg, o.jobs));
    CsvTable table;
    table.columns = {"N",          "K",        "diff_linf",       "diff_b_l2",
                     "energy",     "xi_pow_k", "n_pow_four_beta", "budget_combined",
                     "failed"};
    json rows = json::array();
    for (const DerivationRow& r : der.rows) {
      table.rows.push_back({std::to_string(r.N), std::to_string(r.K),
                            format_double(r.diff_linf), format_double(r.diff_b_l2),
                            format_double(r.energy), format_double(r.budget_xi_pow_k),
                            format_double(r.budget_n4beta),
                            format_double(r.budget_combined),
                            std::to_string(r.failed ? 1 : 0)});
      json jr;
      jr["N"] = r.N;
      jr["K"] = r.K;
      jr["diff_linf"] = r.diff_linf;
      jr["diff_b_l2"] = r.diff_b_l2;
      jr["per_level"] = r.per_level;
      jr["energy"] = r.energy;
      jr["budget_xi_pow_k"] = r.budget_xi_pow_k;
      jr["budget_n4beta"] = r.budget_n4beta;
      jr["budget_combined"] = r.budget_combined;
      jr["failed"] = r.failed;
      if (r.failed) jr["error"] = r.error;
      rows.push_back(jr);
    }
    write_csv(dir / cfg.csv_name, table);
    rep["rows"] = rows;
    rep["monotone_decreasing"] = der.monotone_decreasing;
    rep["slope"] = der.slope;
    rep["failures"] = der.failures;
    failures = der.failures;
    total = der.rows.size();
    if (o.plot)
      write_gnuplot_script(dir / cfg.plot_name, cfg.csv_name,
                           "marginal gap vs particle number", 1, {{3, "diff_linf"}},
                           true);
    std::cout << "converge derivation: slope " << format_double(der.slope)
              << ", monotone " << (der.monotone_decreasing ? "yes" : "no")
              << ", failures " << der.failures << "\n";
  } else {
    throw InvalidInputError("converge: experiment.mode must be gap or derivation");
  }
  write_json(dir / cfg.json_name, rep);
  if (failures > 0 && static_cast<std::size_t>(failures) == total)
    throw NumericalError("converge: every row failed");
  return failures > 0 ? 5 : 0;
}

// ---------------------------------------------------------------------------
// Validation battery: each check compares a fast-path result against either
// an exact identity or the brute-force reference implementation.

struct CheckResult {
  std::string name;
  std::optional<std::string> failure;
};

std::string num(double v) { return format_double(v); }

CheckResult check(const std::string& name, std::function<std::optional<std::string>()> f) {
  CheckResult r;
  r.name = name;
  try {
    r.failure = f();
  } catch (const std::exception& e) {
    r.failure = std::string("exception: ") + e.what();
  }
  return r;
}

std::optional<std::string> expect_le(double got, double tol, const char* what) {
  if (!(got <= tol))
    return std::string(what) + " = " + num(got) + " exceeds " + num(tol);
  return std::nullopt;
}

int run_validate(std::uint64_t seed, bool with_filesystem, const std::string& out) {
  std::vector<CheckResult> results;
  Rng rng(seed);
  TorusGrid g1(1, 8, 2.0 * kPi);
  TorusGrid g2(2, 4, 2.0 * kPi);
  const double wg = default_width(ProfileKind::gaussian, g1.L);
  const double wb = default_width(ProfileKind::cosine_bump, g1.L);

  results.push_back(check("fourier-roundtrip", [&]() -> std::optional<std::string> {
    Eigen::VectorXcd f = reference::random_field(g2, rng);
    Eigen::VectorXcd back = f;
    fourier_forward(back, g2, 2);
    fourier_inverse(back, g2, 2);
    return expect_le((back - f).cwiseAbs().maxCoeff(), 1e-12, "roundtrip defect");
  }));

  results.push_back(check("fourier-parseval", [&]() -> std::optional<std::string> {
    Eigen::VectorXcd f = reference::random_field(g1, rng);
    Eigen::VectorXcd hat = f;
    fourier_forward(hat, g1, 1);
    double a = f.squaredNorm();
    return expect_le(std::abs(a - hat.squaredNorm()) / a, 1e-12, "Parseval defect");
  }));

  results.push_back(check("fourier-against-direct-sum", [&]() -> std::optional<std::string> {
    Eigen::VectorXcd f = reference::random_field(g1, rng);
    Eigen::VectorXcd fast = f;
    fourier_forward(fast, g1, 1);
    Eigen::VectorXcd slow = reference::dft(f, g1, 1, true);
    return expect_le((fast - slow).cwiseAbs().maxCoeff(), 1e-12, "transform defect");
  }));

  results.push_back(check("free-flow-isometry", [&]() -> std::optional<std::string> {
    Marginal m = reference::random_marginal(g1, 2, rng);
    double before = h_alpha_norm(m, 1.0);
    Marginal moved = free_propagate(m, 0.37);
    double after = h_alpha_norm(moved, 1.0);
    if (auto r = expect_le(std::abs(after - before) / before, 1e-12, "norm drift"))
      return r;
    Marginal grouped = free_propagate(free_propagate(m, 0.17), 0.20);
    return expect_le((grouped.data - moved.data).cwiseAbs().maxCoeff(), 1e-12,
                     "group-property defect");
  }));

  results.push_back(check("free-flow-trace", [&]() -> std::optional<std::string> {
    Marginal m = reference::random_bosonic_marginal(g1, 1, rng);
    Complex before = trace_of(m);
    Complex after = trace_of(free_propagate(m, 0.51));
    return expect_le(std::abs(after - before), 1e-12, "trace drift");
  }));

  results.push_back(check("contraction-slices", [&]() -> std::optional<std::string> {
    for (int j = 1; j <= 2; ++j) {
      Marginal m = reference::random_marginal(g1, 3, rng);
      double dp = (gp_b_plus(m, j).data - reference::gp_b_plus(m, j).data)
                      .cwiseAbs()
                      .maxCoeff();
      double dm = (gp_b_minus(m, j).data - reference::gp_b_minus(m, j).data)
                      .cwiseAbs()
                      .maxCoeff();
      if (auto r = expect_le(dp, 1e-12, "plus-slice defect")) return r;
      if (auto r = expect_le(dm, 1e-12, "minus-slice defect")) return r;
    }
    return std::nullopt;
  }));

  results.push_back(check("contraction-trace-free", [&]() -> std::optional<std::string> {
    Marginal m = reference::random_bosonic_marginal(g1, 2, rng);
    return expect_le(std::abs(trace_of(gp_b_full(m, 1.0))), 1e-12,
                     "trace of collision image");
  }));

  results.push_back(check("scaled-coupling-main", [&]() -> std::optional<std::string> {
    Potential pot = make_potential(g1, make_profile("gaussian", 1, wg), 0.2, 5);
    Marginal m = reference::random_marginal(g1, 2, rng);
    double d = (bbgky_b_main(m, pot, 5).data - reference::bbgky_b_main(m, pot, 5).data)
                   .cwiseAbs()
                   .maxCoeff();
    return expect_le(d, 1e-12, "main-coupling defect");
  }));

  results.push_back(check("scaled-coupling-error", [&]() -> std::optional<std::string> {
    Potential pot = make_potential(g1, make_profile("gaussian", 1, wg), 0.2, 5);
    Marginal m = reference::random_marginal(g1, 2, rng);
    double d = (bbgky_b_error(m, pot, 5).data - reference::bbgky_b_error(m, pot, 5).data)
                   .cwiseAbs()
                   .maxCoeff();
    return expect_le(d, 1e-12, "error-coupling defect");
  }));

  results.push_back(check("marginal-consistency", [&]() -> std::optional<std::string> {
    Eigen::VectorXcd phi = reference::random_field(g1, rng);
    phi /= std::sqrt(field_mass(g1, phi));
    WaveFunction psi = product_state(g1, phi, 3);
    Marginal m2 = marginal_from_wavefunction(psi, 2);
    Marginal ref2 = reference::marginal_from_wavefunction(psi, 2);
    if (auto r = expect_le((m2.data - ref2.data).cwiseAbs().maxCoeff(), 1e-12,
                           "marginal-route defect"))
      return r;
    Marginal fac2 = factorized_marginal(g1, phi, 2);
    if (auto r = expect_le((m2.data - fac2.data).cwiseAbs().maxCoeff(), 1e-10,
                           "product-state factorization defect"))
      return r;
    Marginal m1 = marginal_from_wavefunction(psi, 1);
    Marginal traced = partial_trace(m2);
    if (auto r = expect_le((m1.data - traced.data).cwiseAbs().maxCoeff(), 1e-12,
                           "admissibility defect"))
      return r;
    return expect_le(std::abs(trace_of(m1) - 1.0), 1e-10, "normalization defect");
  }));

  results.push_back(check("potential-normalization", [&]() -> std::optional<std::string> {
    TorusGrid fine(1, 64, 2.0 * kPi);
    for (const char* name : {"gaussian", "cosine_bump"}) {
      double w = name[0] == 'g' ? wg : wb;
      Potential pot = make_potential(fine, make_profile(name, 1, w), 0.2, 16);
      if (auto r = expect_le(std::abs(potential_integral(pot) - 1.0), 1e-2,
                             "compressed-integral defect"))
        return r;
    }
    return std::nullopt;
  }));

  results.push_back(check("potential-transform-scaling", [&]() -> std::optional<std::string> {
    TorusGrid fine(1, 64, 2.0 * kPi);
    double beta = 0.2;
    std::int64_t N = 16;
    Potential pot = make_potential(fine, make_profile("gaussian", 1, wg), beta, N);
    for (int mode : {1, 2, 3, 5}) {
      int idx = mode;
      double got = potential_fourier(pot, &idx);
      double q = fine.wavenumber(idx) * std::pow(static_cast<double>(N), -beta);
      double want = pot.profile.fourier(&q);
      if (auto r = expect_le(std::abs(got - want), 1e-6, "transform-scaling defect"))
        return r;
    }
    return std::nullopt;
  }));

  results.push_back(check("evolution-conservation", [&]() -> std::optional<std::string> {
    Eigen::VectorXcd phi = reference::random_field(g1, rng);
    phi /= std::sqrt(field_mass(g1, phi));
    WaveFunction psi = product_state(g1, phi, 2);
    Potential pot = make_potential(g1, make_profile("gaussian", 1, wg), 0.2, 2);
    double e0 = nbody_energy(psi, pot);
    schrodinger_evolve(psi, pot, 0.05, 100);
    if (auto r = expect_le(std::abs(wf_norm(psi) - 1.0), 1e-10, "norm drift")) return r;
    return expect_le(std::abs(nbody_energy(psi, pot) - e0) / std::abs(e0), 1e-8,
                     "energy drift");
  }));

  results.push_back(check("solver-cross-check", [&]() -> std::optional<std::string> {
    TorusGrid g(1, 4, 2.0 * kPi);
    Eigen::VectorXcd phi = make_initial_field(g, "two_mode", 1, 0.2, 0.0);
    HierarchyProblem p;
    p.kind = HierarchyKind::gp;
    p.grid = g;
    p.K = 2;
    p.T = 0.02;
    p.steps = 8;
    MarginalSequence gamma0 = factorized_sequence(g, phi, p.K, p.xi, p.alpha);
    Trajectory a = picard_solve(p, gamma0);
    Trajectory b = duhamel_series_solve(p, gamma0, p.K - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
      worst = std::max(worst,
                       calh_xi_norm(axpy(1.0, a.samples[i], -1.0, b.samples[i])));
    return expect_le(worst, 1e-8, "route disagreement");
  }));

  if (with_filesystem) {
    results.push_back(check("container-roundtrip", [&]() -> std::optional<std::string> {
      fs::path dir = prepare_out(out) / "validate_scratch";
      fs::create_directories(dir);
      Marginal m = reference::random_marginal(g1, 2, rng);
      write_marginal(dir / "m.hkc", m);
      Marginal back = read_marginal(dir / "m.hkc");
      if (!(back.grid == m.grid) || back.k != m.k)
        return std::string("shape mismatch after reread");
      if (auto r = expect_le((back.data - m.data).cwiseAbs().maxCoeff(), 0.0,
                             "kernel reread defect"))
        return r;
      MarginalSequence seq = reference::random_bosonic_sequence(g1, 2, rng);
      write_sequence(dir / "seq.hkc", seq);
      MarginalSequence sback = read_sequence(dir / "seq.hkc");
      double worst = 0.0;
      for (int k = 1; k <= seq.K(); ++k)
        worst = std::max(
            worst, (sback.level(k).data - seq.level(k).data).cwiseAbs().maxCoeff());
      return expect_le(worst, 0.0, "sequence reread defect");
    }));
  }

  int failed = 0;
  for (const CheckResult& r : results) {
    if (r.failure) {
      ++failed;
      std::cout << "FAIL " << r.name << ": " << *r.failure << "\n";
    } else {
      std::cout << "ok   " << r.name << "\n";
    }
  }
  std::cout << "validate: " << results.size() - failed << " passed, " << failed
            << " failed\n";
  if (failed > 0) throw NumericalError("validate: invariant battery failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for mean-field hierarchies on the torus"};
  app.require_subcommand(0, 1);
  bool self_test = false;
  app.add_flag("--self-test", self_test,
               "run the in-memory validation battery and exit");

  CommonOpts nls_o, hier_o, conv_o, val_o;
  CLI::App* nls_cmd = app.add_subcommand("nls", "cubic-equation reference trajectory");
  add_common(nls_cmd, nls_o, true);
  CLI::App* hier_cmd = app.add_subcommand("hierarchy", "solve a truncated tower");
  add_common(hier_cmd, hier_o, true);
  CLI::App* conv_cmd =
      app.add_subcommand("converge", "per-N gap or full-chain experiment");
  add_common(conv_cmd, conv_o, true);
  CLI::App* val_cmd =
      app.add_subcommand("validate", "operator stack vs brute-force references");
  add_common(val_cmd, val_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (nls_cmd->parsed()) return run_nls(nls_o);
    if (hier_cmd->parsed()) return run_hierarchy(hier_o);
    if (conv_cmd->parsed()) return run_converge(conv_o);
    if (val_cmd->parsed()) return run_validate(val_o.seed, true, val_o.out);
    if (self_test) return run_validate(12345, false, ".");
    std::cerr << app.help() << "\n";
    return 2;
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NonContractiveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
