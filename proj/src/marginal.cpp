#include "hierakit/marginal.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace hierakit {

Marginal factorized_marginal(const TorusGrid& g, const Eigen::VectorXcd& phi, int k) {
  if (phi.size() != g.sites())
    throw InvalidInputError("factorized_marginal: field size does not match grid");
  Marginal m(g, k);
  // k-fold tensor power of phi, particle 1 slowest.
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXcd next(psi.size() * phi.size());
    for (std::int64_t i = 0; i < psi.size(); ++i)
      for (std::int64_t s = 0; s < phi.size(); ++s)
        next[i * phi.size() + s] = psi[i] * phi[s];
    psi.swap(next);
  }
  m.data = psi * psi.adjoint();
  return m;
}

Marginal partial_trace(const Marginal& m) {
  if (m.k < 2) throw InvalidInputError("partial_trace: need k >= 2");
  const std::int64_t s1 = m.grid.sites();
  const std::int64_t side = m.side() / s1;
  const double w = m.grid.cell_volume();
  Marginal out(m.grid, m.k - 1);
  for (std::int64_t r = 0; r < side; ++r)
    for (std::int64_t c = 0; c < side; ++c) {
      Complex acc(0.0, 0.0);
      for (std::int64_t y = 0; y < s1; ++y) acc += m.data(r * s1 + y, c * s1 + y);
      out.data(r, c) = w * acc;
    }
  return out;
}

Complex trace_of(const Marginal& m) {
  return std::pow(m.grid.cell_volume(), m.k) * m.data.trace();
}

double hermiticity_defect(const Marginal& m) {
  return (m.data - m.data.adjoint()).cwiseAbs().maxCoeff();
}

double symmetry_defect(const Marginal& m) {
  if (m.k > 6) throw InvalidInputError("symmetry_defect: k > 6 not supported");
  if (m.k == 1) return 0.0;
  const std::int64_t s1 = m.grid.sites();
  const std::int64_t side = m.side();
  std::vector<int> perm(m.k);
  std::iota(perm.begin(), perm.end(), 0);
  // Site of particle j inside a flattened index: strides s1^(k-1-j).
  std::vector<std::int64_t> stride(m.k);
  stride[m.k - 1] = 1;
  for (int j = m.k - 2; j >= 0; --j) stride[j] = stride[j + 1] * s1;
  std::vector<std::int64_t> map(side);
  double worst = 0.0;
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (std::int64_t s = 0; s < side; ++s) {
      std::int64_t t = 0;
      for (int j = 0; j < m.k; ++j) t += ((s / stride[perm[j]]) % s1) * stride[j];
      map[s] = t;
    }
    for (std::int64_t r = 0; r < side; ++r)
      for (std::int64_t c = 0; c < side; ++c)
        worst = std::max(worst, std::abs(m.data(r, c) - m.data(map[r], map[c])));
  }
  return worst;
}

double h_alpha_norm(const Marginal& m, double alpha) {
  Eigen::MatrixXcd hat = m.data;
  fourier_forward(hat, m.grid, m.k);
  Eigen::VectorXd br = bracket_symbol(m.grid, m.k * m.grid.d, alpha);
  double acc = 0.0;
  for (std::int64_t c = 0; c < hat.cols(); ++c)
    for (std::int64_t r = 0; r < hat.rows(); ++r)
      acc += std::norm(hat(r, c)) * br[r] * br[r] * br[c] * br[c];
  return std::sqrt(std::pow(m.grid.cell_volume(), 2 * m.k) * acc);
}

Marginal free_propagate(const Marginal& m, double t) {
  Marginal out = m;
  fourier_forward(out.data, m.grid, m.k);
  Eigen::VectorXd kin = kinetic_symbol(m.grid, m.k * m.grid.d);
  for (std::int64_t c = 0; c < out.data.cols(); ++c)
    for (std::int64_t r = 0; r < out.data.rows(); ++r)
      out.data(r, c) *= std::polar(1.0, -t * (kin[r] - kin[c]));
  fourier_inverse(out.data, m.grid, m.k);
  return out;
}

Marginal laplacian_commutator(const Marginal& m) {
  Marginal out = m;
  fourier_forward(out.data, m.grid, m.k);
  Eigen::VectorXd kin = kinetic_symbol(m.grid, m.k * m.grid.d);
  for (std::int64_t c = 0; c < out.data.cols(); ++c)
    for (std::int64_t r = 0; r < out.data.rows(); ++r)
      out.data(r, c) *= kin[r] - kin[c];
  fourier_inverse(out.data, m.grid, m.k);
  return out;
}

}  // namespace hierakit
