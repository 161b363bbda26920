#ifndef HIERAKIT_FFT_HPP_
#define HIERAKIT_FFT_HPP_

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "hierakit/grid.hpp"

namespace hierakit {

// Unitary DFT convention throughout: both directions carry 1/sqrt(M) per
// axis, so plain sums of squares are preserved exactly.
//
// Data is a flattened row-major tensor over `axes` axes of length g.M each
// (axis 0 slowest). Transforms are separable 1-D passes along every axis.

void fourier_forward(Eigen::VectorXcd& data, const TorusGrid& g, int axes);
void fourier_inverse(Eigen::VectorXcd& data, const TorusGrid& g, int axes);

// Kernel variant: rows flatten the unprimed axes, columns the primed axes,
// k*g.d axes of length g.M per side. All 2*k*g.d axes are transformed.
void fourier_forward(Eigen::MatrixXcd& data, const TorusGrid& g, int k);
void fourier_inverse(Eigen::MatrixXcd& data, const TorusGrid& g, int k);

// Sum_axes |u_axis|^2 for every flattened row-major multi-index over
// `axes` axes; the Fourier symbol of -Laplacian on that index space.
Eigen::VectorXd kinetic_symbol(const TorusGrid& g, int axes);

// Product of per-axis bracket weights <u>^alpha over `axes` axes for every
// flattened row-major multi-index.
Eigen::VectorXd bracket_symbol(const TorusGrid& g, int axes, double alpha);

}  // namespace hierakit

#endif  // HIERAKIT_FFT_HPP_
