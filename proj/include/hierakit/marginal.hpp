#ifndef HIERAKIT_MARGINAL_HPP_
#define HIERAKIT_MARGINAL_HPP_

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "hierakit/fft.hpp"
#include "hierakit/grid.hpp"

namespace hierakit {

using Complex = std::complex<double>;

// Dense k-particle kernel gamma(x_1..x_k ; x'_1..x'_k) on the grid.
// Rows flatten the unprimed block, columns the primed block, both row-major
// with particle 1 slowest and each particle contributing g.d axes.
struct Marginal {
  TorusGrid grid;
  int k = 1;
  Eigen::MatrixXcd data;

  Marginal() = default;
  Marginal(const TorusGrid& g, int k_) : grid(g), k(k_) {
    if (k_ < 1) throw InvalidInputError("marginal: level k must be >= 1");
    std::int64_t s = pow_sites(g, k_);
    check_budget(s * s, "marginal");
    data = Eigen::MatrixXcd::Zero(s, s);
  }

  std::int64_t side() const { return data.rows(); }
};

// Rank-one kernel prod_j phi(x_j) * conj(phi(x'_j)) from a one-particle
// field phi (flattened over g.d axes, size g.sites()).
Marginal factorized_marginal(const TorusGrid& g, const Eigen::VectorXcd& phi, int k);

// Contracts the last particle: out(x;x') = h^d Sum_y in(x,y; x',y).
Marginal partial_trace(const Marginal& m);

// h^(dk) Sum_x gamma(x;x).
Complex trace_of(const Marginal& m);

// Max-abs deviation from gamma(x;x') = conj(gamma(x';x)).
double hermiticity_defect(const Marginal& m);

// Max-abs deviation from invariance under simultaneous permutation of the
// k particles on both sides. Checks all k! permutations; k <= 6.
double symmetry_defect(const Marginal& m);

// Sobolev-type kernel norm: weight each Fourier mode pair by the product
// of <u>^alpha brackets over all axes of both sides, then take the
// quadrature-weighted l2 norm (weight h^(dk) per side).
double h_alpha_norm(const Marginal& m, double alpha);

// Free flow of the kernel: Fourier coefficients (plain forward transform on
// all axes) multiplied by exp(-i t (|u|^2 - |w|^2)) with u the unprimed and
// w the primed mode block. Exactly unitary and trace preserving.
Marginal free_propagate(const Marginal& m, double t);

// Spectral commutator term Sum_j [-Lap_j, gamma]: multiplies the plain
// Fourier coefficients by (|u|^2 - |w|^2).
Marginal laplacian_commutator(const Marginal& m);

}  // namespace hierakit

#endif  // HIERAKIT_MARGINAL_HPP_
