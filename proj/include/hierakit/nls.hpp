#ifndef HIERAKIT_NLS_HPP_
#define HIERAKIT_NLS_HPP_

#include <vector>

#include <Eigen/Dense>

#include "hierakit/grid.hpp"

namespace hierakit {

// Strang split-step trajectory of the defocusing cubic equation
//   i d/dt phi = -Lap phi + kappa0 |phi|^2 phi
// sampled at `samples`+1 uniform times over [0,T], with `substeps` solver
// steps between consecutive samples. Records mass and energy drift.
struct NlsSolution {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> fields;
  double mass_drift = 0.0;    // max relative deviation of h^d sum |phi|^2
  double energy_drift = 0.0;  // max relative deviation of the Hamiltonian
};

NlsSolution nls_reference_solve(const TorusGrid& g, const Eigen::VectorXcd& phi0,
                                double kappa0, double T, int samples, int substeps);

// Hamiltonian h^d Sum (|grad phi|^2 + kappa0/2 |phi|^4), gradient spectral.
double nls_energy(const TorusGrid& g, const Eigen::VectorXcd& phi, double kappa0);

}  // namespace hierakit

#endif  // HIERAKIT_NLS_HPP_
