#ifndef HIERAKIT_REFERENCE_HPP_
#define HIERAKIT_REFERENCE_HPP_

// Brute-force reference implementations: nested loops, direct DFT sums,
// explicit quadrature. Deliberately independent of the fast paths (no FFT,
// no slice arithmetic) so the two routes can be compared in validation.

#include <algorithm>
#include <numeric>
#include <vector>

#include "hierakit/collision.hpp"
#include "hierakit/marginal.hpp"
#include "hierakit/nbody.hpp"
#include "hierakit/rng.hpp"

namespace hierakit::reference {

inline std::vector<int> coords_of(std::int64_t s, int axes, int M) {
  std::vector<int> c(axes);
  decode_index(s, axes, M, c.data());
  return c;
}

// Direct unitary DFT over all axes, O(n^2).
inline Eigen::VectorXcd dft(const Eigen::VectorXcd& f, const TorusGrid& g, int axes,
                            bool forward) {
  const std::int64_t n = f.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  const double sgn = forward ? -1.0 : 1.0;
  for (std::int64_t u = 0; u < n; ++u) {
    std::vector<int> cu = coords_of(u, axes, g.M);
    Complex acc(0.0, 0.0);
    for (std::int64_t x = 0; x < n; ++x) {
      std::vector<int> cx = coords_of(x, axes, g.M);
      double phase = 0.0;
      for (int a = 0; a < axes; ++a)
        phase += 2.0 * kPi * cu[a] * cx[a] / g.M;
      acc += f[x] * std::polar(1.0, sgn * phase);
    }
    out[u] = acc / std::pow(std::sqrt(static_cast<double>(g.M)), axes);
  }
  return out;
}

inline Marginal partial_trace(const Marginal& m) {
  const std::int64_t s1 = m.grid.sites();
  Marginal out(m.grid, m.k - 1);
  for (std::int64_t r = 0; r < out.side(); ++r)
    for (std::int64_t c = 0; c < out.side(); ++c) {
      Complex acc(0.0, 0.0);
      for (std::int64_t y = 0; y < s1; ++y) acc += m.data(r * s1 + y, c * s1 + y);
      out.data(r, c) = m.grid.cell_volume() * acc;
    }
  return out;
}

// Contractions evaluated through the grid delta h^(-d) * kronecker and
// explicit h^d quadrature sums over the contracted pair of coordinates.
inline Marginal gp_b_plus(const Marginal& m, int j) {
  const std::int64_t s1 = m.grid.sites();
  const int k = m.k - 1;
  const double h_d = m.grid.cell_volume();
  Marginal out(m.grid, k);
  for (std::int64_t r = 0; r < out.side(); ++r) {
    std::vector<int> cr = coords_of(r, k, static_cast<int>(s1));
    for (std::int64_t c = 0; c < out.side(); ++c) {
      Complex acc(0.0, 0.0);
      for (std::int64_t y = 0; y < s1; ++y)
        for (std::int64_t yp = 0; yp < s1; ++yp) {
          double delta_l = (y == cr[j - 1]) ? 1.0 / h_d : 0.0;
          double delta_r = (yp == cr[j - 1]) ? 1.0 / h_d : 0.0;
          acc += delta_l * delta_r * m.data(r * s1 + y, c * s1 + yp);
        }
      out.data(r, c) = h_d * h_d * acc;
    }
  }
  return out;
}

inline Marginal gp_b_minus(const Marginal& m, int j) {
  const std::int64_t s1 = m.grid.sites();
  const int k = m.k - 1;
  const double h_d = m.grid.cell_volume();
  Marginal out(m.grid, k);
  for (std::int64_t r = 0; r < out.side(); ++r)
    for (std::int64_t c = 0; c < out.side(); ++c) {
      std::vector<int> cc = coords_of(c, k, static_cast<int>(s1));
      Complex acc(0.0, 0.0);
      for (std::int64_t y = 0; y < s1; ++y)
        for (std::int64_t yp = 0; yp < s1; ++yp) {
          double delta_l = (y == cc[j - 1]) ? 1.0 / h_d : 0.0;
          double delta_r = (yp == cc[j - 1]) ? 1.0 / h_d : 0.0;
          acc += delta_l * delta_r * m.data(r * s1 + y, c * s1 + yp);
        }
      out.data(r, c) = h_d * h_d * acc;
    }
  return out;
}

inline Marginal bbgky_b_main(const Marginal& m, const Potential& pot, std::int64_t N) {
  const std::int64_t s1 = m.grid.sites();
  const int k = m.k - 1;
  Marginal out(m.grid, k);
  for (std::int64_t r = 0; r < out.side(); ++r) {
    std::vector<int> cr = coords_of(r, k, static_cast<int>(s1));
    for (std::int64_t c = 0; c < out.side(); ++c) {
      std::vector<int> cc = coords_of(c, k, static_cast<int>(s1));
      Complex acc(0.0, 0.0);
      for (int j = 1; j <= k; ++j)
        for (std::int64_t y = 0; y < s1; ++y)
          acc += (pot.pair(cr[j - 1], y) - pot.pair(cc[j - 1], y)) *
                 m.data(r * s1 + y, c * s1 + y);
      out.data(r, c) = (static_cast<double>(N) - k) / static_cast<double>(N) *
                       m.grid.cell_volume() * acc;
    }
  }
  return out;
}

inline Marginal bbgky_b_error(const Marginal& m, const Potential& pot, std::int64_t N) {
  const std::int64_t s1 = m.grid.sites();
  Marginal out(m.grid, m.k);
  for (std::int64_t r = 0; r < m.side(); ++r) {
    std::vector<int> cr = coords_of(r, m.k, static_cast<int>(s1));
    for (std::int64_t c = 0; c < m.side(); ++c) {
      std::vector<int> cc = coords_of(c, m.k, static_cast<int>(s1));
      double w = 0.0;
      for (int i = 0; i < m.k; ++i)
        for (int j = i + 1; j < m.k; ++j)
          w += pot.pair(cr[i], cr[j]) - pot.pair(cc[i], cc[j]);
      out.data(r, c) = w / static_cast<double>(N) * m.data(r, c);
    }
  }
  return out;
}

inline Marginal marginal_from_wavefunction(const WaveFunction& psi, int k) {
  const std::int64_t s1 = psi.grid.sites();
  const std::int64_t side = pow_sites(psi.grid, k);
  const std::int64_t rest = psi.data.size() / side;
  Marginal out(psi.grid, k);
  const double w = std::pow(psi.grid.cell_volume(), psi.N - k);
  for (std::int64_t r = 0; r < side; ++r)
    for (std::int64_t c = 0; c < side; ++c) {
      Complex acc(0.0, 0.0);
      for (std::int64_t t = 0; t < rest; ++t)
        acc += psi.data[r * rest + t] * std::conj(psi.data[c * rest + t]);
      out.data(r, c) = w * acc;
    }
  (void)s1;
  return out;
}

// Direct-DFT route to the weighted kernel norm.
inline double h_alpha_norm(const Marginal& m, double alpha) {
  const int axes = m.k * m.grid.d;
  const std::int64_t side = m.side();
  Eigen::VectorXcd flat(side * side);
  // Row-major full-tuple flatten: row block slow, column fast.
  for (std::int64_t r = 0; r < side; ++r)
    for (std::int64_t c = 0; c < side; ++c) flat[r * side + c] = m.data(r, c);
  Eigen::VectorXcd hat = dft(flat, m.grid, 2 * axes, true);
  BracketTable table(m.grid, alpha);
  double acc = 0.0;
  for (std::int64_t i = 0; i < hat.size(); ++i) {
    std::vector<int> cu = coords_of(i, 2 * axes, m.grid.M);
    double wgt = 1.0;
    for (int a = 0; a < 2 * axes; ++a) wgt *= table.w[cu[a]];
    acc += wgt * wgt * std::norm(hat[i]);
  }
  return std::sqrt(std::pow(m.grid.cell_volume(), 2 * m.k) * acc);
}

// Random builders over the shared deterministic generator.
inline Eigen::VectorXcd random_field(const TorusGrid& g, Rng& rng) {
  Eigen::VectorXcd f(g.sites());
  for (std::int64_t i = 0; i < f.size(); ++i)
    f[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return f;
}

inline Marginal random_marginal(const TorusGrid& g, int k, Rng& rng) {
  Marginal m(g, k);
  for (std::int64_t c = 0; c < m.side(); ++c)
    for (std::int64_t r = 0; r < m.side(); ++r)
      m.data(r, c) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return m;
}

// Mixture of bosonic product kernels: hermitian, exchange symmetric, and
// admissible between neighboring levels when built from the same fields.
inline Marginal random_bosonic_marginal(const TorusGrid& g, int k, Rng& rng,
                                        int terms = 3) {
  Marginal m(g, k);
  for (int t = 0; t < terms; ++t) {
    Eigen::VectorXcd phi = random_field(g, rng);
    phi /= std::sqrt(g.cell_volume() * phi.squaredNorm());
    double w = rng.uniform(0.2, 1.0);
    m.data += w * factorized_marginal(g, phi, k).data;
  }
  return m;
}

// Same fields and weights at every level, so partial_trace(level k+1) equals
// level k exactly when each field has unit quadrature mass.
inline MarginalSequence random_bosonic_sequence(const TorusGrid& g, int K, Rng& rng,
                                                double xi = 0.3, double alpha = 1.0,
                                                int terms = 3) {
  std::vector<Eigen::VectorXcd> fields;
  std::vector<double> weights;
  for (int t = 0; t < terms; ++t) {
    Eigen::VectorXcd phi = random_field(g, rng);
    phi /= std::sqrt(g.cell_volume() * phi.squaredNorm());
    fields.push_back(phi);
    weights.push_back(rng.uniform(0.2, 1.0));
  }
  MarginalSequence seq{g, xi, alpha, {}};
  for (int k = 1; k <= K; ++k) {
    Marginal m(g, k);
    for (int t = 0; t < terms; ++t)
      m.data += weights[t] * factorized_marginal(g, fields[t], k).data;
    seq.levels.push_back(std::move(m));
  }
  return seq;
}

}  // namespace hierakit::reference

#endif  // HIERAKIT_REFERENCE_HPP_
