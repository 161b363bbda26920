#ifndef HIERAKIT_IO_HPP_
#define HIERAKIT_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hierakit/nbody.hpp"
#include "hierakit/sequence.hpp"

namespace hierakit {

// Flat binary container: 8-byte magic, u64 little-endian header length, a
// JSON header, then the payload as interleaved little-endian float64
// (re,im) pairs. Kernel payloads are laid out row-major over the full
// index tuple (x_1..x_k, x'_1..x'_k).
void write_marginal(const std::filesystem::path& path, const Marginal& m);
Marginal read_marginal(const std::filesystem::path& path);

void write_sequence(const std::filesystem::path& path, const MarginalSequence& seq);
MarginalSequence read_sequence(const std::filesystem::path& path);

void write_wavefunction(const std::filesystem::path& path, const WaveFunction& psi);
WaveFunction read_wavefunction(const std::filesystem::path& path);

// Trajectory directory: manifest.json (times, grid, tower shape, caller
// metadata) plus one sequence container per sample.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const nlohmann::json& meta);
Trajectory read_trajectory(const std::filesystem::path& dir);

// Reports: CSV with a header row, every float rendered as %.12e so reruns
// are byte-identical, plus a JSON sidecar.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};
std::string format_double(double v);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// Minimal gnuplot companion for a report CSV (log-log optional).
void write_gnuplot_script(const std::filesystem::path& path, const std::string& csv_name,
                          const std::string& title, int xcol,
                          const std::vector<std::pair<int, std::string>>& ycols,
                          bool loglog);

}  // namespace hierakit

#endif  // HIERAKIT_IO_HPP_
