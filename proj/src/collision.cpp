#include "hierakit/collision.hpp"

#include <vector>

namespace hierakit {

namespace {

// Site of particle j (1-based among k) inside a flattened k-particle index.
inline std::int64_t particle_site(std::int64_t idx, int j, int k, std::int64_t s1) {
  std::int64_t div = 1;
  for (int i = 0; i < k - j; ++i) div *= s1;
  return (idx / div) % s1;
}

void require_contractible(const Marginal& m, int j) {
  if (m.k < 2) throw InvalidInputError("contraction: need a level >= 2 kernel");
  if (j < 1 || j > m.k - 1)
    throw InvalidInputError("contraction: particle index out of range");
}

// Sum_{i<j} pair(site_i, site_j) over one flattened k-particle index.
double pair_sum(const Potential& pot, std::int64_t idx, int k, std::int64_t s1) {
  std::vector<std::int64_t> site(k);
  for (int j = 1; j <= k; ++j) site[j - 1] = particle_site(idx, j, k, s1);
  double acc = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) acc += pot.pair(site[i], site[j]);
  return acc;
}

}  // namespace

Marginal gp_b_plus(const Marginal& m, int j) {
  require_contractible(m, j);
  const std::int64_t s1 = m.grid.sites();
  const int k = m.k - 1;
  Marginal out(m.grid, k);
  const std::int64_t side = out.side();
  for (std::int64_t c = 0; c < side; ++c)
    for (std::int64_t r = 0; r < side; ++r) {
      std::int64_t y = particle_site(r, j, k, s1);
      out.data(r, c) = m.data(r * s1 + y, c * s1 + y);
    }
  return out;
}

Marginal gp_b_minus(const Marginal& m, int j) {
  require_contractible(m, j);
  const std::int64_t s1 = m.grid.sites();
  const int k = m.k - 1;
  Marginal out(m.grid, k);
  const std::int64_t side = out.side();
#ifdef HIERAKIT_INJECT_FAULT
  const double sign = -1.0;  // deliberate defect for the validation drill
#else
  const double sign = 1.0;
#endif
  for (std::int64_t c = 0; c < side; ++c)
    for (std::int64_t r = 0; r < side; ++r) {
      std::int64_t y = particle_site(c, j, k, s1);
      out.data(r, c) = sign * m.data(r * s1 + y, c * s1 + y);
    }
  return out;
}

Marginal gp_b_full(const Marginal& m, double kappa0) {
  require_contractible(m, 1);
  const int k = m.k - 1;
  Marginal out(m.grid, k);
  for (int j = 1; j <= k; ++j) {
    Marginal p = gp_b_plus(m, j);
    Marginal q = gp_b_minus(m, j);
    out.data += p.data - q.data;
  }
  out.data *= kappa0;
  return out;
}

Marginal bbgky_b_main(const Marginal& m, const Potential& pot, std::int64_t N) {
  require_contractible(m, 1);
  if (!(pot.grid == m.grid))
    throw InvalidInputError("bbgky_b_main: potential grid mismatch");
  const int k = m.k - 1;
  if (N < k) throw InvalidInputError("bbgky_b_main: N must be >= output level");
  const std::int64_t s1 = m.grid.sites();
  Marginal out(m.grid, k);
  const std::int64_t side = out.side();
  const double pref =
      (static_cast<double>(N) - k) / static_cast<double>(N) * m.grid.cell_volume();
  for (std::int64_t c = 0; c < side; ++c)
    for (std::int64_t r = 0; r < side; ++r) {
      Complex acc(0.0, 0.0);
      for (int j = 1; j <= k; ++j) {
        std::int64_t sr = particle_site(r, j, k, s1);
        std::int64_t sc = particle_site(c, j, k, s1);
        for (std::int64_t y = 0; y < s1; ++y)
          acc += (pot.pair(sr, y) - pot.pair(sc, y)) * m.data(r * s1 + y, c * s1 + y);
      }
      out.data(r, c) = pref * acc;
    }
  return out;
}

Marginal bbgky_b_error(const Marginal& m, const Potential& pot, std::int64_t N) {
  if (!(pot.grid == m.grid))
    throw InvalidInputError("bbgky_b_error: potential grid mismatch");
  if (N < m.k) throw InvalidInputError("bbgky_b_error: N must be >= level");
  const std::int64_t s1 = m.grid.sites();
  const std::int64_t side = m.side();
  Marginal out(m.grid, m.k);
  Eigen::VectorXd w(side);
  for (std::int64_t s = 0; s < side; ++s) w[s] = pair_sum(pot, s, m.k, s1);
  const double pref = 1.0 / static_cast<double>(N);
  for (std::int64_t c = 0; c < side; ++c)
    for (std::int64_t r = 0; r < side; ++r)
      out.data(r, c) = pref * (w[r] - w[c]) * m.data(r, c);
  return out;
}

MarginalSequence gp_b(const MarginalSequence& seq, double kappa0) {
  MarginalSequence out = seq;
  for (int k = 1; k <= seq.K(); ++k) {
    if (k + 1 <= seq.K())
      out.level(k) = gp_b_full(seq.level(k + 1), kappa0);
    else
      out.level(k).data.setZero();
  }
  return out;
}

MarginalSequence bbgky_b(const MarginalSequence& seq, const Potential& pot,
                         std::int64_t N) {
  if (seq.K() > N)
    throw InvalidInputError("bbgky_b: truncation depth exceeds particle number");
  MarginalSequence out = seq;
  for (int k = 1; k <= seq.K(); ++k) {
    Marginal term = bbgky_b_error(seq.level(k), pot, N);
    if (k + 1 <= seq.K())
      term.data += bbgky_b_main(seq.level(k + 1), pot, N).data;
    out.level(k) = std::move(term);
  }
  return out;
}

}  // namespace hierakit
