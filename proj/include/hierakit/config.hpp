#ifndef HIERAKIT_CONFIG_HPP_
#define HIERAKIT_CONFIG_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "hierakit/convergence.hpp"
#include "hierakit/solver.hpp"

namespace hierakit {

// Parsed run description. Sections are strict: unknown keys anywhere are
// rejected so typos fail loudly instead of silently using defaults.
struct RunConfig {
  TorusGrid grid;
  Profile profile;
  double beta = 0.2;

  // one-particle initial field, normalized to unit mass
  Eigen::VectorXcd phi0;

  // hierarchy section
  HierarchyKind kind = HierarchyKind::gp;
  int K = 2;
  std::int64_t N = 16;
  double xi = 0.3;
  double xi_prime = 0.6;
  double alpha = 1.0;
  double kappa0 = 1.0;
  double delta_prime = 0.5;
  double C0 = 2.0;

  // solver section
  double T = 0.1;
  int steps = 16;
  double picard_tol = 1e-10;
  int max_iter = 60;
  std::string method = "picard";  // or "duhamel"
  int duhamel_depth = 1;

  // nls section
  double nls_T = 0.1;
  int nls_samples = 16;
  int nls_substeps = 8;

  // experiment section
  std::string experiment_mode = "gap";  // or "derivation"
  std::vector<std::int64_t> N_list;
  double exp_T = 0.05;
  int exp_steps = 10;
  int exp_substeps = 8;
  int K_gp = 2;
  bool self_compare = false;

  // output section
  std::string csv_name = "report.csv";
  std::string json_name = "report.json";
  std::string trajectory_dir;  // empty: skip trajectory dump
  std::string plot_name = "report.gp";

  nlohmann::json echo;  // the config as parsed, for sidecars
};

RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const nlohmann::json& j);

// Builtin one-particle fields (per-axis product for d > 1), unit mass.
Eigen::VectorXcd make_initial_field(const TorusGrid& g, const std::string& type,
                                    int mode, double amp, double width);

GapConfig to_gap_config(const RunConfig& cfg, int jobs);
DerivationConfig to_derivation_config(const RunConfig& cfg, int jobs);
HierarchyProblem to_problem(const RunConfig& cfg);

}  // namespace hierakit

#endif  // HIERAKIT_CONFIG_HPP_
