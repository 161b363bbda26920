#include "hierakit/nbody.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "hierakit/fft.hpp"

namespace hierakit {

namespace {

// W(x_1..x_N) = (1/N) Sum_{i<j} pair(site_i, site_j) over all states.
Eigen::VectorXd interaction_field(const TorusGrid& g, const Potential& pot, int N) {
  const std::int64_t s1 = g.sites();
  const std::int64_t total = pow_sites(g, N);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(total);
  std::vector<std::int64_t> site(N);
  for (std::int64_t s = 0; s < total; ++s) {
    std::int64_t rest = s;
    for (int j = N - 1; j >= 0; --j) {
      site[j] = rest % s1;
      rest /= s1;
    }
    double acc = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) acc += pot.pair(site[i], site[j]);
    w[s] = acc / N;
  }
  return w;
}

}  // namespace

double wf_norm(const WaveFunction& psi) {
  return std::sqrt(std::pow(psi.grid.cell_volume(), psi.N) * psi.data.squaredNorm());
}

WaveFunction product_state(const TorusGrid& g, const Eigen::VectorXcd& phi, int N) {
  if (phi.size() != g.sites())
    throw InvalidInputError("product_state: field size does not match grid");
  WaveFunction psi(g, N);
  Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
  for (int j = 0; j < N; ++j) {
    Eigen::VectorXcd next(acc.size() * phi.size());
    for (std::int64_t i = 0; i < acc.size(); ++i)
      for (std::int64_t s = 0; s < phi.size(); ++s)
        next[i * phi.size() + s] = acc[i] * phi[s];
    acc.swap(next);
  }
  psi.data = std::move(acc);
  return psi;
}

WaveFunction symmetrize_wavefunction(const WaveFunction& psi) {
  if (psi.N > 6)
    throw InvalidInputError("symmetrize_wavefunction: N > 6 not supported");
  const std::int64_t s1 = psi.grid.sites();
  std::vector<std::int64_t> stride(psi.N);
  stride[psi.N - 1] = 1;
  for (int j = psi.N - 2; j >= 0; --j) stride[j] = stride[j + 1] * s1;
  std::vector<int> perm(psi.N);
  std::iota(perm.begin(), perm.end(), 0);
  WaveFunction out(psi.grid, psi.N);
  std::int64_t count = 0;
  do {
    for (std::int64_t s = 0; s < psi.data.size(); ++s) {
      std::int64_t t = 0;
      for (int j = 0; j < psi.N; ++j) t += ((s / stride[perm[j]]) % s1) * stride[j];
      out.data[t] += psi.data[s];
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.data /= static_cast<double>(count);
  return out;
}

void schrodinger_evolve(WaveFunction& psi, const Potential& pot, double T, int steps) {
  if (steps < 1) throw InvalidInputError("schrodinger_evolve: steps must be >= 1");
  if (!(pot.grid == psi.grid))
    throw InvalidInputError("schrodinger_evolve: potential grid mismatch");
  const double dt = T / steps;
  const std::int64_t n = psi.data.size();
  Eigen::VectorXd w = interaction_field(psi.grid, pot, psi.N);
  Eigen::VectorXd kin = kinetic_symbol(psi.grid, psi.N * psi.grid.d);
  Eigen::VectorXcd half(n), full(n);
  for (std::int64_t i = 0; i < n; ++i) half[i] = std::polar(1.0, -0.5 * dt * w[i]);
  for (std::int64_t i = 0; i < n; ++i) full[i] = std::polar(1.0, -dt * kin[i]);
  for (int s = 0; s < steps; ++s) {
    psi.data.array() *= half.array();
    fourier_forward(psi.data, psi.grid, psi.N * psi.grid.d);
    psi.data.array() *= full.array();
    fourier_inverse(psi.data, psi.grid, psi.N * psi.grid.d);
    psi.data.array() *= half.array();
  }
  if (!psi.data.allFinite())
    throw NumericalError("schrodinger_evolve: non-finite amplitudes");
}

Marginal marginal_from_wavefunction(const WaveFunction& psi, int k) {
  if (k < 1 || k > psi.N)
    throw InvalidInputError("marginal_from_wavefunction: level out of range");
  const std::int64_t side = pow_sites(psi.grid, k);
  const std::int64_t rest = psi.data.size() / side;
  Marginal out(psi.grid, k);
  const double w = std::pow(psi.grid.cell_volume(), psi.N - k);
  // Flattened psi splits as (lead index) * rest + tail, lead = first k
  // particles, so blocks(tail, lead) = psi(lead, tail). The kernel is
  // out(x,x') = Sum_tail blocks(tail,x) * conj(blocks(tail,x')).
  Eigen::Map<const Eigen::MatrixXcd> blocks(psi.data.data(), rest, side);
  out.data = w * (blocks.transpose() * blocks.conjugate());
  return out;
}

double nbody_energy(const WaveFunction& psi, const Potential& pot) {
  Eigen::VectorXd w = interaction_field(psi.grid, pot, psi.N);
  Eigen::VectorXcd hat = psi.data;
  fourier_forward(hat, psi.grid, psi.N * psi.grid.d);
  Eigen::VectorXd kin = kinetic_symbol(psi.grid, psi.N * psi.grid.d);
  double e_kin = 0.0;
  for (std::int64_t i = 0; i < hat.size(); ++i) e_kin += kin[i] * std::norm(hat[i]);
  double e_pot = 0.0;
  for (std::int64_t i = 0; i < psi.data.size(); ++i)
    e_pot += w[i] * std::norm(psi.data[i]);
  return std::pow(psi.grid.cell_volume(), psi.N) * (e_kin + e_pot);
}

}  // namespace hierakit
