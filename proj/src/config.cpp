#include "hierakit/config.hpp"

#include <fstream>
#include <set>

namespace hierakit {

namespace {

// Pulls a section object and rejects keys outside `allowed`.
nlohmann::json section(const nlohmann::json& j, const std::string& name,
                       const std::set<std::string>& allowed, bool required) {
  if (!j.contains(name)) {
    if (required) throw InvalidInputError("config: missing section '" + name + "'");
    return nlohmann::json::object();
  }
  const nlohmann::json& s = j.at(name);
  if (!s.is_object())
    throw InvalidInputError("config: section '" + name + "' must be an object");
  for (const auto& [key, value] : s.items()) {
    (void)value;
    if (allowed.find(key) == allowed.end())
      throw InvalidInputError("config: unknown key '" + name + "." + key + "'");
  }
  return s;
}

template <typename T>
T get_or(const nlohmann::json& s, const std::string& key, T fallback) {
  if (!s.contains(key)) return fallback;
  try {
    return s.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInputError("config: bad value for '" + key + "'");
  }
}

}  // namespace

Eigen::VectorXcd make_initial_field(const TorusGrid& g, const std::string& type,
                                    int mode, double amp, double width) {
  Eigen::VectorXcd axis_field(g.M);
  const double h = g.spacing();
  if (type == "plane_wave") {
    for (int i = 0; i < g.M; ++i)
      axis_field[i] = std::polar(1.0, g.wavenumber(mode) * (i * h));
  } else if (type == "two_mode") {
    // 1 + amp * exp(i * mode * x); smooth, genuinely nonlinear dynamics.
    for (int i = 0; i < g.M; ++i)
      axis_field[i] =
          1.0 + amp * std::polar(1.0, g.wavenumber(mode) * (i * h));
  } else if (type == "gaussian") {
    if (width <= 0.0) throw InvalidInputError("initial field: width must be positive");
    for (int i = 0; i < g.M; ++i) {
      double x = i * h - 0.5 * g.L;
      double acc = 0.0;
      for (int n = -2; n <= 2; ++n)
        acc += std::exp(-0.5 * (x + n * g.L) * (x + n * g.L) / (width * width));
      axis_field[i] = acc;
    }
  } else {
    throw InvalidInputError("initial field: unknown type '" + type + "'");
  }

  Eigen::VectorXcd phi = Eigen::VectorXcd::Ones(1);
  for (int a = 0; a < g.d; ++a) {
    Eigen::VectorXcd next(phi.size() * g.M);
    for (std::int64_t i = 0; i < phi.size(); ++i)
      for (int m = 0; m < g.M; ++m) next[i * g.M + m] = phi[i] * axis_field[m];
    phi.swap(next);
  }
  double mass = g.cell_volume() * phi.squaredNorm();
  if (mass <= 0.0) throw InvalidInputError("initial field: zero mass");
  phi /= std::sqrt(mass);
  return phi;
}

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInputError("config: root must be an object");
  static const std::set<std::string> root_keys = {
      "schema_version", "grid",       "potential", "initial_field",
      "hierarchy",      "solver",     "nls",       "experiment",
      "output"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (root_keys.find(key) == root_keys.end())
      throw InvalidInputError("config: unknown key '" + key + "'");
  }
  if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer() ||
      j.at("schema_version").get<int>() != 1)
    throw InvalidInputError("config: schema_version must be the integer 1");

  RunConfig cfg;
  cfg.echo = j;

  nlohmann::json s = section(j, "grid", {"d", "M", "L"}, false);
  cfg.grid = TorusGrid(get_or(s, "d", 1), get_or(s, "M", 16), get_or(s, "L", 2.0 * kPi));

  s = section(j, "potential", {"profile", "width", "beta"}, false);
  std::string prof = get_or<std::string>(s, "profile", "gaussian");
  ProfileKind kind =
      prof == "gaussian" ? ProfileKind::gaussian : ProfileKind::cosine_bump;
  double width = get_or(s, "width", default_width(kind, cfg.grid.L));
  cfg.profile = make_profile(prof, cfg.grid.d, width);
  cfg.beta = get_or(s, "beta", 0.2);

  s = section(j, "initial_field", {"type", "mode", "amp", "width"}, false);
  cfg.phi0 = make_initial_field(cfg.grid, get_or<std::string>(s, "type", "two_mode"),
                                get_or(s, "mode", 1), get_or(s, "amp", 0.5),
                                get_or(s, "width", cfg.grid.L / 8.0));

  s = section(j, "hierarchy",
              {"kind", "K", "N", "xi", "xi_prime", "alpha", "kappa0", "delta_prime",
               "C0"},
              false);
  std::string kind_name = get_or<std::string>(s, "kind", "gp");
  if (kind_name == "gp")
    cfg.kind = HierarchyKind::gp;
  else if (kind_name == "bbgky")
    cfg.kind = HierarchyKind::bbgky;
  else
    throw InvalidInputError("config: hierarchy.kind must be 'gp' or 'bbgky'");
  cfg.K = get_or(s, "K", 2);
  cfg.N = get_or<std::int64_t>(s, "N", 16);
  cfg.xi = get_or(s, "xi", 0.3);
  cfg.xi_prime = get_or(s, "xi_prime", 0.6);
  cfg.alpha = get_or(s, "alpha", 1.0);
  cfg.kappa0 = get_or(s, "kappa0", 1.0);
  cfg.delta_prime = get_or(s, "delta_prime", 0.5);
  cfg.C0 = get_or(s, "C0", 2.0);

  s = section(j, "solver", {"T", "steps", "picard_tol", "max_iter", "method",
                            "duhamel_depth"},
              false);
  cfg.T = get_or(s, "T", 0.1);
  cfg.steps = get_or(s, "steps", 16);
  cfg.picard_tol = get_or(s, "picard_tol", 1e-10);
  cfg.max_iter = get_or(s, "max_iter", 60);
  cfg.method = get_or<std::string>(s, "method", "picard");
  if (cfg.method != "picard" && cfg.method != "duhamel")
    throw InvalidInputError("config: solver.method must be 'picard' or 'duhamel'");
  cfg.duhamel_depth = get_or(s, "duhamel_depth", 1);

  s = section(j, "nls", {"T", "samples", "substeps"}, false);
  cfg.nls_T = get_or(s, "T", 0.1);
  cfg.nls_samples = get_or(s, "samples", 16);
  cfg.nls_substeps = get_or(s, "substeps", 8);

  s = section(j, "experiment",
              {"mode", "N_list", "T", "steps", "substeps", "K", "K_gp",
               "self_compare"},
              false);
  cfg.experiment_mode = get_or<std::string>(s, "mode", "gap");
  if (cfg.experiment_mode != "gap" && cfg.experiment_mode != "derivation")
    throw InvalidInputError("config: experiment.mode must be 'gap' or 'derivation'");
  cfg.N_list = get_or(s, "N_list", std::vector<std::int64_t>{16, 64, 256});
  cfg.exp_T = get_or(s, "T", 0.05);
  cfg.exp_steps = get_or(s, "steps", 10);
  cfg.exp_substeps = get_or(s, "substeps", 8);
  if (s.contains("K")) cfg.K = s.at("K").get<int>();
  cfg.K_gp = get_or(s, "K_gp", 2);
  cfg.self_compare = get_or(s, "self_compare", false);

  s = section(j, "output", {"csv", "json", "trajectory_dir", "plot"}, false);
  cfg.csv_name = get_or<std::string>(s, "csv", "report.csv");
  cfg.json_name = get_or<std::string>(s, "json", "report.json");
  cfg.trajectory_dir = get_or<std::string>(s, "trajectory_dir", "");
  cfg.plot_name = get_or<std::string>(s, "plot", "report.gp");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("config: cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError("config: invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

HierarchyProblem to_problem(const RunConfig& cfg) {
  HierarchyProblem p;
  p.kind = cfg.kind;
  p.grid = cfg.grid;
  p.K = cfg.K;
  p.T = cfg.T;
  p.steps = cfg.steps;
  p.xi = cfg.xi;
  p.alpha = cfg.alpha;
  p.kappa0 = cfg.kappa0;
  p.picard_tol = cfg.picard_tol;
  p.max_iter = cfg.max_iter;
  if (cfg.kind == HierarchyKind::bbgky) {
    p.N = cfg.N;
    p.pot = make_potential(cfg.grid, cfg.profile, cfg.beta, cfg.N);
  }
  return p;
}

GapConfig to_gap_config(const RunConfig& cfg, int jobs) {
  GapConfig g;
  g.grid = cfg.grid;
  g.profile = cfg.profile;
  g.beta = cfg.beta;
  g.Ns = cfg.N_list;
  g.K = cfg.K;
  g.T = cfg.exp_T;
  g.steps = cfg.exp_steps;
  g.xi = cfg.xi;
  g.alpha = cfg.alpha;
  g.kappa0 = cfg.kappa0;
  g.phi0 = cfg.phi0;
  g.picard_tol = cfg.picard_tol;
  g.max_iter = cfg.max_iter;
  g.self_compare = cfg.self_compare;
  g.jobs = jobs;
  return g;
}

DerivationConfig to_derivation_config(const RunConfig& cfg, int jobs) {
  DerivationConfig d;
  d.grid = cfg.grid;
  d.profile = cfg.profile;
  d.beta = cfg.beta;
  for (std::int64_t n : cfg.N_list) {
    if (n < 2 || n > 6)
      throw InvalidInputError("config: derivation N_list entries must lie in [2,6]");
    d.Ns.push_back(static_cast<int>(n));
  }
  d.T = cfg.exp_T;
  d.steps = cfg.exp_steps;
  d.substeps = cfg.exp_substeps;
  d.xi = cfg.xi;
  d.alpha = cfg.alpha;
  d.delta_prime = cfg.delta_prime;
  d.C0 = cfg.C0;
  d.K_gp = cfg.K_gp;
  d.kappa0 = cfg.kappa0;
  d.phi0 = cfg.phi0;
  d.picard_tol = cfg.picard_tol;
  d.max_iter = cfg.max_iter;
  d.jobs = jobs;
  return d;
}

}  // namespace hierakit
