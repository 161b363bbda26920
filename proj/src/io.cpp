#include "hierakit/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace hierakit {

namespace {

constexpr char kMagic[8] = {'H', 'K', 'C', 'O', 'N', 'T', '1', '\0'};

void require_little_endian() {
  const std::uint32_t probe = 0x01020304;
  unsigned char bytes[4];
  std::memcpy(bytes, &probe, 4);
  if (bytes[0] != 0x04)
    throw NumericalError("container io: big-endian hosts are not supported");
}

void write_header(std::ofstream& out, const nlohmann::json& header) {
  std::string text = header.dump();
  std::uint64_t len = text.size();
  out.write(kMagic, 8);
  out.write(reinterpret_cast<const char*>(&len), 8);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

nlohmann::json read_header(std::ifstream& in, const std::filesystem::path& path) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw InvalidInputError("container io: bad magic in " + path.string());
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), 8);
  if (!in || len > (std::uint64_t{1} << 30))
    throw InvalidInputError("container io: corrupt header length in " + path.string());
  std::string text(len, '\0');
  in.read(text.data(), static_cast<std::streamsize>(len));
  if (!in) throw InvalidInputError("container io: truncated header in " + path.string());
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError("container io: header is not valid JSON in " + path.string() +
                            ": " + e.what());
  }
}

// Kernel payload in row-major full-tuple order means row index slow,
// column index fast; Eigen stores column-major, so stream element-wise.
void write_kernel_payload(std::ofstream& out, const Eigen::MatrixXcd& data) {
  std::vector<double> buf;
  buf.reserve(2 * static_cast<std::size_t>(data.cols()));
  for (std::int64_t r = 0; r < data.rows(); ++r) {
    buf.clear();
    for (std::int64_t c = 0; c < data.cols(); ++c) {
      buf.push_back(data(r, c).real());
      buf.push_back(data(r, c).imag());
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(double)));
  }
}

void read_kernel_payload(std::ifstream& in, Eigen::MatrixXcd& data,
                         const std::filesystem::path& path) {
  std::vector<double> buf(2 * static_cast<std::size_t>(data.cols()));
  for (std::int64_t r = 0; r < data.rows(); ++r) {
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (!in) throw InvalidInputError("container io: truncated payload in " + path.string());
    for (std::int64_t c = 0; c < data.cols(); ++c)
      data(r, c) = Complex(buf[2 * c], buf[2 * c + 1]);
  }
}

nlohmann::json grid_json(const TorusGrid& g) {
  return {{"d", g.d}, {"M", g.M}, {"L", g.L}};
}

TorusGrid grid_from_json(const nlohmann::json& j) {
  return TorusGrid(j.at("d").get<int>(), j.at("M").get<int>(), j.at("L").get<double>());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInputError("container io: cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("container io: cannot read " + path.string());
  return in;
}

}  // namespace

void write_marginal(const std::filesystem::path& path, const Marginal& m) {
  require_little_endian();
  nlohmann::json header = {
      {"schema", 1},
      {"role", "marginal"},
      {"grid", grid_json(m.grid)},
      {"k", m.k},
      {"count", m.data.size()},
      {"order", "row-major (x_1..x_k, x'_1..x'_k), float64 re/im pairs"},
  };
  std::ofstream out = open_out(path);
  write_header(out, header);
  write_kernel_payload(out, m.data);
  if (!out) throw NumericalError("container io: write failed for " + path.string());
}

Marginal read_marginal(const std::filesystem::path& path) {
  require_little_endian();
  std::ifstream in = open_in(path);
  nlohmann::json header = read_header(in, path);
  if (header.value("role", "") != "marginal")
    throw InvalidInputError("container io: expected a marginal container: " + path.string());
  Marginal m(grid_from_json(header.at("grid")), header.at("k").get<int>());
  if (header.at("count").get<std::int64_t>() != m.data.size())
    throw InvalidInputError("container io: count does not match grid/k in " + path.string());
  read_kernel_payload(in, m.data, path);
  return m;
}

void write_sequence(const std::filesystem::path& path, const MarginalSequence& seq) {
  require_little_endian();
  if (seq.K() < 1) throw InvalidInputError("container io: empty tower");
  nlohmann::json entries = nlohmann::json::array();
  std::int64_t offset = 0;
  for (const auto& lvl : seq.levels) {
    entries.push_back({{"k", lvl.k}, {"offset", offset}, {"count", lvl.data.size()}});
    offset += lvl.data.size();
  }
  nlohmann::json header = {
      {"schema", 1},
      {"role", "sequence"},
      {"grid", grid_json(seq.grid)},
      {"K", seq.K()},
      {"xi", seq.xi},
      {"alpha", seq.alpha},
      {"entries", entries},
      {"order", "per level k: row-major (x_1..x_k, x'_1..x'_k), float64 re/im pairs"},
  };
  std::ofstream out = open_out(path);
  write_header(out, header);
  for (const auto& lvl : seq.levels) write_kernel_payload(out, lvl.data);
  if (!out) throw NumericalError("container io: write failed for " + path.string());
}

MarginalSequence read_sequence(const std::filesystem::path& path) {
  require_little_endian();
  std::ifstream in = open_in(path);
  nlohmann::json header = read_header(in, path);
  if (header.value("role", "") != "sequence")
    throw InvalidInputError("container io: expected a sequence container: " + path.string());
  MarginalSequence seq;
  seq.grid = grid_from_json(header.at("grid"));
  seq.xi = header.at("xi").get<double>();
  seq.alpha = header.at("alpha").get<double>();
  int K = header.at("K").get<int>();
  const auto& entries = header.at("entries");
  if (static_cast<int>(entries.size()) != K)
    throw InvalidInputError("container io: entry table mismatch in " + path.string());
  for (int k = 1; k <= K; ++k) {
    if (entries[k - 1].at("k").get<int>() != k)
      throw InvalidInputError("container io: levels out of order in " + path.string());
    Marginal m(seq.grid, k);
    read_kernel_payload(in, m.data, path);
    seq.levels.push_back(std::move(m));
  }
  return seq;
}

void write_wavefunction(const std::filesystem::path& path, const WaveFunction& psi) {
  require_little_endian();
  nlohmann::json header = {
      {"schema", 1},
      {"role", "wavefunction"},
      {"grid", grid_json(psi.grid)},
      {"N", psi.N},
      {"count", psi.data.size()},
      {"order", "row-major (x_1..x_N), float64 re/im pairs"},
  };
  std::ofstream out = open_out(path);
  write_header(out, header);
  std::vector<double> buf(2 * static_cast<std::size_t>(psi.data.size()));
  for (std::int64_t i = 0; i < psi.data.size(); ++i) {
    buf[2 * i] = psi.data[i].real();
    buf[2 * i + 1] = psi.data[i].imag();
  }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
  if (!out) throw NumericalError("container io: write failed for " + path.string());
}

WaveFunction read_wavefunction(const std::filesystem::path& path) {
  require_little_endian();
  std::ifstream in = open_in(path);
  nlohmann::json header = read_header(in, path);
  if (header.value("role", "") != "wavefunction")
    throw InvalidInputError("container io: expected a wavefunction container: " +
                            path.string());
  WaveFunction psi(grid_from_json(header.at("grid")), header.at("N").get<int>());
  if (header.at("count").get<std::int64_t>() != psi.data.size())
    throw InvalidInputError("container io: count does not match grid/N in " + path.string());
  std::vector<double> buf(2 * static_cast<std::size_t>(psi.data.size()));
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(double)));
  if (!in) throw InvalidInputError("container io: truncated payload in " + path.string());
  for (std::int64_t i = 0; i < psi.data.size(); ++i)
    psi.data[i] = Complex(buf[2 * i], buf[2 * i + 1]);
  return psi;
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const nlohmann::json& meta) {
  if (traj.samples.empty() || traj.samples.size() != traj.times.size())
    throw InvalidInputError("trajectory io: empty or inconsistent trajectory");
  std::filesystem::create_directories(dir);
  nlohmann::json samples = nlohmann::json::array();
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "sample_%04zu.hkc", i);
    write_sequence(dir / name, traj.samples[i]);
    samples.push_back(name);
  }
  const MarginalSequence& first = traj.samples.front();
  nlohmann::json manifest = {
      {"schema", 1},
      {"role", "trajectory"},
      {"grid", grid_json(first.grid)},
      {"K", first.K()},
      {"xi", first.xi},
      {"alpha", first.alpha},
      {"times", traj.times},
      {"samples", samples},
      {"meta", meta},
  };
  write_json(dir / "manifest.json", manifest);
}

Trajectory read_trajectory(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw InvalidInputError("trajectory io: missing manifest in " + dir.string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError("trajectory io: bad manifest: " + std::string(e.what()));
  }
  if (manifest.value("role", "") != "trajectory")
    throw InvalidInputError("trajectory io: not a trajectory manifest: " + dir.string());
  Trajectory traj;
  traj.times = manifest.at("times").get<std::vector<double>>();
  for (const auto& name : manifest.at("samples"))
    traj.samples.push_back(read_sequence(dir / name.get<std::string>()));
  if (traj.samples.size() != traj.times.size())
    throw InvalidInputError("trajectory io: sample/time count mismatch in " + dir.string());
  return traj;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInputError("csv io: cannot write " + path.string());
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c > 0 ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw InvalidInputError("csv io: ragged row in " + path.string());
    for (std::size_t c = 0; c < row.size(); ++c) out << (c > 0 ? "," : "") << row[c];
    out << "\n";
  }
  if (!out) throw NumericalError("csv io: write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInputError("json io: cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw NumericalError("json io: write failed for " + path.string());
}

void write_gnuplot_script(const std::filesystem::path& path, const std::string& csv_name,
                          const std::string& title, int xcol,
                          const std::vector<std::pair<int, std::string>>& ycols,
                          bool loglog) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInputError("plot io: cannot write " + path.string());
  out << "set datafile separator ','\n";
  out << "set key autotitle columnhead\n";
  out << "set title '" << title << "'\n";
  if (loglog) out << "set logscale xy\n";
  out << "plot ";
  for (std::size_t i = 0; i < ycols.size(); ++i) {
    if (i > 0) out << ", ";
    out << "'" << csv_name << "' using " << xcol << ":" << ycols[i].first
        << " with linespoints title '" << ycols[i].second << "'";
  }
  out << "\n";
}

}  // namespace hierakit
