#ifndef HIERAKIT_COLLISION_HPP_
#define HIERAKIT_COLLISION_HPP_

#include "hierakit/marginal.hpp"
#include "hierakit/potential.hpp"
#include "hierakit/sequence.hpp"

namespace hierakit {

// Delta-pair contractions mapping a level-(k+1) kernel to level k.
// With the grid delta h^(-d) * kronecker both are exact slices:
//   plus : out(x;x') = in(x, x_j ; x', x_j)
//   minus: out(x;x') = in(x, x'_j; x', x'_j)
// j indexes the contracted particle, 1 <= j <= k.
Marginal gp_b_plus(const Marginal& m, int j);
Marginal gp_b_minus(const Marginal& m, int j);

// kappa0 * Sum_j (plus_j - minus_j); trace-free on hermitian input.
Marginal gp_b_full(const Marginal& m, double kappa0);

// Scaled-potential counterpart of the contraction, level k+1 -> k:
//   ((N-k)/N) Sum_j h^d Sum_y [pair(x_j,y) - pair(x'_j,y)] in(x,y; x',y)
Marginal bbgky_b_main(const Marginal& m, const Potential& pot, std::int64_t N);

// Same-level multiplication term:
//   (1/N) Sum_{i<j<=k} [pair(x_i,x_j) - pair(x'_i,x'_j)] in(x;x')
Marginal bbgky_b_error(const Marginal& m, const Potential& pot, std::int64_t N);

// Sequence-level couplings. Level k of the output combines the main term
// fed by level k+1 (zero at the truncation top) plus, for the scaled
// kind, the same-level error term.
MarginalSequence gp_b(const MarginalSequence& seq, double kappa0);
MarginalSequence bbgky_b(const MarginalSequence& seq, const Potential& pot,
                         std::int64_t N);

}  // namespace hierakit

#endif  // HIERAKIT_COLLISION_HPP_
