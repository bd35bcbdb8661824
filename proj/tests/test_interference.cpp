#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "crnoma/interference.hpp"
#include "crnoma/sim.hpp"

using namespace crnoma;

namespace {

SystemParams pt_params(double lambda_b = 1e-3, double d0 = 2.0,
                       double alpha = 4.0) {
  SystemParams p;
  p.num_users = 1;
  p.alpha = alpha;
  p.user_zone_radius = 5.0;
  p.guard_radius = d0;
  p.pt_density = lambda_b;
  p.rho_s = p.rho_p = p.rho_b = 100.0;
  return p;
}

}  // namespace

TEST_CASE("laplace transform endpoints") {
  const SystemParams p = pt_params();
  CHECK(laplace_ib_exact(0.0, p) == 1.0);
  CHECK_THROWS_AS(laplace_ib_exact(-1.0, p), std::domain_error);

  const SystemParams empty = pt_params(0.0);
  for (double s : {0.5, 3.0, 20.0}) {
    CHECK(laplace_ib_exact(s, empty) == 1.0);
  }
}

TEST_CASE("laplace transform is decreasing in s and within (0,1]") {
  const SystemParams p = pt_params();
  double prev = 1.0;
  for (double s = 0.25; s <= 16.0; s *= 2.0) {
    const double v = laplace_ib_exact(s, p);
    CHECK(v > 0.0);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("quadrature laplace tracks the incomplete-gamma form") {
  const ChebyshevRule rule = chebyshev_rule(10);
  for (double d0 : {1.0, 2.0}) {
    const SystemParams p = pt_params(1e-3, d0);
    const LaplaceTerms terms = laplace_ib_terms(p, rule);
    CHECK(laplace_ib_gc(0.0, p, terms) == 1.0);
    for (double s : {0.1, 1.0, 10.0}) {
      CHECK(laplace_ib_gc(s, p, terms) ==
            Catch::Approx(laplace_ib_exact(s, p)).margin(1e-3));
    }
  }
}

TEST_CASE("laplace transform against sampled interference fields") {
  const SystemParams p = pt_params();
  const double s = 2.0;
  const std::uint64_t samples = 200'000;
  double sum_pl = 0.0, sum_sq_pl = 0.0;
  double sum_b = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    TrialRng rng(11, i);
    const double v = std::exp(-s * sample_interference_powerlaw(p, rng));
    sum_pl += v;
    sum_sq_pl += v * v;
    TrialRng rng_b(11, i);
    sum_b += std::exp(-s * sample_interference(p, rng_b));
  }
  const double mean = sum_pl / samples;
  const double se = std::sqrt((sum_sq_pl / samples - mean * mean) /
                              static_cast<double>(samples));
  // the closed form is the exact transform of the power-law field
  CHECK(std::abs(mean - laplace_ib_exact(s, p)) < 3.5 * se);
  // the bounded-loss field sits a documented ~2e-5 * s above it
  const double mean_b = sum_b / samples;
  CHECK(std::abs(mean_b - laplace_ib_exact(s, p)) < 3.5 * se + 1e-4 * s);
  CHECK(mean_b >= mean - 3.5 * se);
}
