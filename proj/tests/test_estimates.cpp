#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hierakit/estimates.hpp"
#include "hierakit/reference.hpp"
#include "hierakit/sequence.hpp"

using namespace hierakit;

namespace {

Marginal bosonic_level(const TorusGrid& g, int k, std::uint64_t seed) {
  Rng rng(seed);
  return reference::random_bosonic_marginal(g, k, rng);
}

}  // namespace

TEST_CASE("line fit recovers an exact line and rejects degenerate abscissae") {
  LineFit f = fit_line({1.0, 2.0, 3.0, 4.0}, {3.0, 5.0, 7.0, 9.0});
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_line({2.0, 2.0}, {1.0, 5.0}), InvalidInputError);
  CHECK_THROWS_AS(fit_line({1.0}, {1.0}), InvalidInputError);
}

TEST_CASE("smoothing ratio has the expected denominator and short-time law") {
  TorusGrid g(1, 16, 2.0 * kPi);
  Marginal gamma0 = bosonic_level(g, 2, 61);
  double alpha = 1.0;

  SmoothingProbe probe = strichartz_ratio(gamma0, alpha, 0.5, 40);
  CHECK(probe.denominator ==
        doctest::Approx((gamma0.k - 1) * h_alpha_norm(gamma0, alpha)).epsilon(1e-12));
  CHECK(probe.ratio == doctest::Approx(probe.numerator / probe.denominator));
  CHECK(probe.ratio > 1e-4);
  CHECK(probe.ratio < 100.0);

  // For T -> 0 the integrand is frozen, so the numerator approaches
  // sqrt(T) * ||B gamma0||.
  double T = 1e-4;
  SmoothingProbe tiny = strichartz_ratio(gamma0, alpha, T, 8);
  double frozen = std::sqrt(T) * h_alpha_norm(gp_b_full(gamma0, 1.0), alpha);
  CHECK(tiny.numerator == doctest::Approx(frozen).epsilon(1e-4));
}

TEST_CASE("same-level coupling strength decays in N with a clean slope") {
  TorusGrid g(1, 16, 2.0 * kPi);
  Marginal gamma0 = bosonic_level(g, 2, 62);
  Profile prof = make_profile("gaussian", 1, g.L / 8.0);
  std::vector<std::int64_t> Ns = {8, 16, 32, 64};
  ErrorScalingReport rep =
      bbgky_error_scaling(gamma0, prof, 0.2, Ns, 1.0, 0.1, 10, 200, 77);
  REQUIRE(rep.ratios.size() == Ns.size());
  for (double r : rep.ratios) CHECK(r > 0.0);
  for (std::size_t i = 1; i < rep.ratios.size(); ++i)
    CHECK(rep.ratios[i] < rep.ratios[i - 1]);
  CHECK(rep.slope < 0.0);
  CHECK(rep.ci_lo <= rep.slope);
  CHECK(rep.slope <= rep.ci_hi);
  CHECK(rep.ci_hi < 0.0);
  // d=1, alpha=1, beta=0.2: the predicted exponent is beta(d+2alpha-1)-1.
  CHECK(rep.slope == doctest::Approx(-0.6).epsilon(0.5));
}

TEST_CASE("bootstrap is deterministic in the seed") {
  TorusGrid g(1, 8, 2.0 * kPi);
  Marginal gamma0 = bosonic_level(g, 2, 63);
  Profile prof = make_profile("gaussian", 1, g.L / 8.0);
  std::vector<std::int64_t> Ns = {8, 32, 128};
  ErrorScalingReport a = bbgky_error_scaling(gamma0, prof, 0.2, Ns, 1.0, 0.05, 6, 64, 5);
  ErrorScalingReport b = bbgky_error_scaling(gamma0, prof, 0.2, Ns, 1.0, 0.05, 6, 64, 5);
  CHECK(a.ci_lo == b.ci_lo);
  CHECK(a.ci_hi == b.ci_hi);
  ErrorScalingReport c = bbgky_error_scaling(gamma0, prof, 0.2, Ns, 1.0, 0.05, 6, 64, 6);
  CHECK((c.ci_lo != a.ci_lo || c.ci_hi != a.ci_hi));
}

TEST_CASE("transform modulus decays at the rate set by the compression") {
  TorusGrid g(1, 128, 2.0 * kPi);
  Profile prof = make_profile("gaussian", 1, default_width(ProfileKind::gaussian, g.L));
  double delta = 0.5, beta = 0.2;
  std::vector<std::int64_t> Ns = {16, 32, 64, 128, 256};
  // The probed modes must reach past the crossover scale N^beta / width, or
  // the quotient never enters its decaying regime and the fit lands steep.
  HoelderRateReport rep = potential_difference_rate(g, prof, beta, delta, Ns, 16);
  REQUIRE(rep.factors.size() == Ns.size());
  CHECK(rep.expected_exponent == doctest::Approx(-delta * beta));
  // Factors shrink as N grows and the fitted exponent lands near -delta*beta.
  for (std::size_t i = 1; i < rep.factors.size(); ++i)
    CHECK(rep.factors[i] < rep.factors[i - 1]);
  CHECK(std::abs(rep.fitted_exponent - rep.expected_exponent) <
        0.3 * std::abs(rep.expected_exponent));
  // The transform modulus itself stays bounded by the profile mass.
  for (double s : rep.sup_vhat) CHECK(s <= 1.0 + 1e-9);
}

TEST_CASE("surface-integral estimate is positive, finite, and seed stable") {
  SurfaceConstantReport rep = estimate_J_constant(2, 1.0, 0.25, 4000, 99);
  CHECK(rep.sup_integral > 0.0);
  CHECK(std::isfinite(rep.sup_integral));
  CHECK(rep.constant == doctest::Approx(std::sqrt(rep.sup_integral)));
  CHECK(rep.stderr_at_sup < rep.sup_integral);

  SurfaceConstantReport again = estimate_J_constant(2, 1.0, 0.25, 4000, 99);
  CHECK(again.sup_integral == rep.sup_integral);
  CHECK(again.tau_at_sup == rep.tau_at_sup);
}

TEST_CASE("surface-integral estimate is stable under delta-width refinement") {
  std::vector<double> vals;
  for (double eps : {0.5, 0.25, 0.125})
    vals.push_back(estimate_J_constant(2, 1.0, eps, 20000, 7).sup_integral);
  for (std::size_t i = 1; i < vals.size(); ++i) {
    CHECK(vals[i] / vals[0] < 3.0);
    CHECK(vals[i] / vals[0] > 1.0 / 3.0);
  }
}

TEST_CASE("heavier bracket weights shrink the surface integral") {
  // Same seed pairs the samples, so the comparison is exact in the draw.
  SurfaceConstantReport light = estimate_J_constant(3, 1.0, 0.25, 8000, 21);
  SurfaceConstantReport heavy = estimate_J_constant(3, 1.5, 0.25, 8000, 21);
  CHECK(heavy.sup_integral < light.sup_integral);
}

TEST_CASE("surface-integral estimate validates its inputs") {
  CHECK_THROWS_AS(estimate_J_constant(1, 1.0, 0.25, 4000, 1), InvalidInputError);
  CHECK_THROWS_AS(estimate_J_constant(2, 1.0, 0.25, 10, 1), InvalidInputError);
  CHECK_THROWS_AS(estimate_J_constant(2, 1.0, -0.1, 4000, 1), InvalidInputError);
}
