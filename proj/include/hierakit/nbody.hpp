#ifndef HIERAKIT_NBODY_HPP_
#define HIERAKIT_NBODY_HPP_

#include "hierakit/marginal.hpp"
#include "hierakit/potential.hpp"

namespace hierakit {

// N-particle state on the grid, flattened row-major with particle 1
// slowest. Normalized so that h^(dN) Sum |psi|^2 = 1.
struct WaveFunction {
  TorusGrid grid;
  int N = 1;
  Eigen::VectorXcd data;

  WaveFunction() = default;
  WaveFunction(const TorusGrid& g, int N_) : grid(g), N(N_) {
    if (N_ < 1) throw InvalidInputError("wavefunction: N must be >= 1");
    std::int64_t s = pow_sites(g, N_);
    check_budget(s, "wavefunction");
    data = Eigen::VectorXcd::Zero(s);
  }
};

double wf_norm(const WaveFunction& psi);

// phi^(x_1) * ... * phi(x_N); already exchange symmetric.
WaveFunction product_state(const TorusGrid& g, const Eigen::VectorXcd& phi, int N);

// Average over all N! particle permutations. N <= 6.
WaveFunction symmetrize_wavefunction(const WaveFunction& psi);

// Strang splitting for i d/dt psi = Sum_j(-Lap_j) psi + W psi with
// W = (1/N) Sum_{i<j} pair(x_i, x_j): half potential phase, full kinetic
// step in Fourier space, half potential phase. Second order in dt.
void schrodinger_evolve(WaveFunction& psi, const Potential& pot, double T, int steps);

// gamma^(k)(x;x') = h^(d(N-k)) Sum_rest psi(x,rest) conj(psi(x',rest)).
Marginal marginal_from_wavefunction(const WaveFunction& psi, int k);

// <psi, H psi> with H = Sum_j(-Lap_j) + W; real for hermitian H.
double nbody_energy(const WaveFunction& psi, const Potential& pot);

}  // namespace hierakit

#endif  // HIERAKIT_NBODY_HPP_
