#ifndef HIERAKIT_POTENTIAL_HPP_
#define HIERAKIT_POTENTIAL_HPP_

#include <string>

#include <Eigen/Dense>

#include "hierakit/grid.hpp"

namespace hierakit {

// Analytic pair-interaction profiles, unit integral over R^d by
// construction, effectively supported well inside the box.
enum class ProfileKind { gaussian, cosine_bump };

struct Profile {
  ProfileKind kind = ProfileKind::gaussian;
  double width = 0.0;  // gaussian: sigma per axis; bump: half-width per axis
  int d = 1;

  // Pointwise value at y in R^d (no periodization).
  double value(const double* y) const;
  // Radius beyond which the profile is below 1e-3 of its peak.
  double effective_radius() const;
  // Continuum Fourier transform at frequency q in R^d (integral convention
  // Int V(y) exp(-i q.y) dy), real by symmetry.
  double fourier(const double* q) const;
};

Profile make_profile(const std::string& name, int d, double width);
double default_width(ProfileKind kind, double L);

// Compressed interaction sampled on the grid: field(x) = N^(d*beta) *
// sum_images profile(N^beta * (x + n L)), x wrapped to [-L/2, L/2)^d.
struct Potential {
  TorusGrid grid;
  Profile profile;
  double beta = 0.0;
  std::int64_t N = 1;
  Eigen::VectorXd field;      // size g.sites(), flattened row-major
  Eigen::MatrixXd pair;       // pair(a,b) = field at site difference a-b
};

// Errors if the compressed profile would be narrower than two grid cells.
Potential make_potential(const TorusGrid& g, const Profile& profile, double beta,
                         std::int64_t N);

// Quadrature integral h^d Sum field.
double potential_integral(const Potential& pot);

// Discrete transform h^d Sum field(x) exp(-i q.x) at a grid mode, real by
// symmetry of the profiles. `mode` holds d storage indices.
double potential_fourier(const Potential& pot, const int* mode);

}  // namespace hierakit

#endif  // HIERAKIT_POTENTIAL_HPP_
