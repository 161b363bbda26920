#include "hierakit/nls.hpp"

#include <cmath>

#include "hierakit/fft.hpp"

namespace hierakit {

double nls_energy(const TorusGrid& g, const Eigen::VectorXcd& phi, double kappa0) {
  Eigen::VectorXcd hat = phi;
  fourier_forward(hat, g, g.d);
  Eigen::VectorXd kin = kinetic_symbol(g, g.d);
  double e = 0.0;
  for (std::int64_t i = 0; i < hat.size(); ++i) e += kin[i] * std::norm(hat[i]);
  for (std::int64_t i = 0; i < phi.size(); ++i)
    e += 0.5 * kappa0 * std::norm(phi[i]) * std::norm(phi[i]);
  return g.cell_volume() * e;
}

NlsSolution nls_reference_solve(const TorusGrid& g, const Eigen::VectorXcd& phi0,
                                double kappa0, double T, int samples, int substeps) {
  if (phi0.size() != g.sites())
    throw InvalidInputError("nls_reference_solve: field size does not match grid");
  if (samples < 1 || substeps < 1)
    throw InvalidInputError("nls_reference_solve: samples and substeps must be >= 1");
  if (T < 0.0) throw InvalidInputError("nls_reference_solve: T must be >= 0");

  NlsSolution sol;
  sol.times.resize(samples + 1);
  sol.fields.reserve(samples + 1);
  Eigen::VectorXcd phi = phi0;
  Eigen::VectorXd kin = kinetic_symbol(g, g.d);
  const double dt = T / (static_cast<double>(samples) * substeps);
  const double mass0 = g.cell_volume() * phi.squaredNorm();
  const double energy0 = nls_energy(g, phi, kappa0);

  sol.times[0] = 0.0;
  sol.fields.push_back(phi);
  for (int i = 1; i <= samples; ++i) {
    for (int s = 0; s < substeps; ++s) {
      // Half nonlinear phase (exact: |phi| is invariant), full kinetic,
      // half nonlinear phase.
      for (std::int64_t x = 0; x < phi.size(); ++x)
        phi[x] *= std::polar(1.0, -0.5 * dt * kappa0 * std::norm(phi[x]));
      fourier_forward(phi, g, g.d);
      for (std::int64_t x = 0; x < phi.size(); ++x)
        phi[x] *= std::polar(1.0, -dt * kin[x]);
      fourier_inverse(phi, g, g.d);
      for (std::int64_t x = 0; x < phi.size(); ++x)
        phi[x] *= std::polar(1.0, -0.5 * dt * kappa0 * std::norm(phi[x]));
    }
    if (!phi.allFinite()) throw NumericalError("nls_reference_solve: non-finite field");
    sol.times[i] = T * i / samples;
    sol.fields.push_back(phi);
    if (mass0 > 0.0) {
      double mass = g.cell_volume() * phi.squaredNorm();
      sol.mass_drift = std::max(sol.mass_drift, std::abs(mass - mass0) / mass0);
      double energy = nls_energy(g, phi, kappa0);
      if (std::abs(energy0) > 0.0)
        sol.energy_drift =
            std::max(sol.energy_drift, std::abs(energy - energy0) / std::abs(energy0));
    }
  }
  return sol;
}

}  // namespace hierakit
