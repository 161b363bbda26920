#ifndef HIERAKIT_GRID_HPP_
#define HIERAKIT_GRID_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hierakit/errors.hpp"

namespace hierakit {

inline constexpr double kPi = 3.14159265358979323846;

// Uniform periodic grid on [0,L)^d with M points per axis, M a power of two.
// Site index along one axis is i in [0,M); the matching wavenumber is
// (2*pi/L) * f(i) with f(i) = i for i < M/2 and i - M otherwise.
struct TorusGrid {
  int d = 1;
  int M = 16;
  double L = 2.0 * kPi;

  TorusGrid() = default;
  TorusGrid(int d_, int M_, double L_) : d(d_), M(M_), L(L_) { validate(); }

  void validate() const {
    if (d < 1) throw InvalidInputError("grid: dimension must be >= 1");
    if (L <= 0.0) throw InvalidInputError("grid: box length must be positive");
    if (M < 2 || (M & (M - 1)) != 0)
      throw InvalidInputError("grid: points per axis must be a power of two >= 2");
  }

  double spacing() const { return L / M; }
  // Quadrature weight of one site in d dimensions.
  double cell_volume() const { return std::pow(spacing(), d); }
  // Number of sites for one particle, M^d.
  std::int64_t sites() const {
    std::int64_t s = 1;
    for (int i = 0; i < d; ++i) s *= M;
    return s;
  }
  int signed_freq(int i) const { return i < M / 2 ? i : i - M; }
  double wavenumber(int i) const { return 2.0 * kPi / L * signed_freq(i); }

  bool operator==(const TorusGrid& o) const { return d == o.d && M == o.M && L == o.L; }
};

// M^(d*k) with overflow guard; k counts particles on one side of a kernel.
inline std::int64_t pow_sites(const TorusGrid& g, int k) {
  std::int64_t s = 1;
  for (int i = 0; i < g.d * k; ++i) {
    if (s > (std::int64_t{1} << 62) / g.M)
      throw NumericalError("grid: index space exceeds 2^62");
    s *= g.M;
  }
  return s;
}

// Default in-memory budget for a single dense object (2 GiB), overridable
// through the HIERAKIT_BUDGET_BYTES environment variable.
std::int64_t memory_budget_bytes();

// Throws NumericalError if a dense complex array of `count` entries would
// exceed the budget. `what` names the object in the message.
void check_budget(std::int64_t count, const char* what);

// Per-axis table of <u>^alpha = (1 + u^2)^(alpha/2) over the M frequencies
// of a grid axis. Multi-axis weights are products of these.
struct BracketTable {
  double alpha = 1.0;
  Eigen::VectorXd w;  // size M, indexed by storage index

  BracketTable() = default;
  BracketTable(const TorusGrid& g, double alpha_) : alpha(alpha_), w(g.M) {
    for (int i = 0; i < g.M; ++i) {
      double u = g.wavenumber(i);
      w[i] = std::pow(1.0 + u * u, 0.5 * alpha_);
    }
  }
};

// Decodes flattened row-major index s over n axes of length M (axis 0
// slowest) into per-axis coordinates.
inline void decode_index(std::int64_t s, int n, int M, int* out) {
  for (int a = n - 1; a >= 0; --a) {
    out[a] = static_cast<int>(s % M);
    s /= M;
  }
}

inline std::int64_t encode_index(const int* coords, int n, int M) {
  std::int64_t s = 0;
  for (int a = 0; a < n; ++a) s = s * M + coords[a];
  return s;
}

}  // namespace hierakit

#endif  // HIERAKIT_GRID_HPP_
