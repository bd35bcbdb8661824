#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "crnoma/channel_cdf.hpp"
#include "crnoma/sim.hpp"

using namespace crnoma;

namespace {

SystemParams disc_params(int users = 3, double radius = 5.0,
                         double alpha = 4.0) {
  SystemParams p;
  p.num_users = users;
  p.alpha = alpha;
  p.user_zone_radius = radius;
  p.guard_radius = 2.0;
  p.rho_s = p.rho_p = p.rho_b = 100.0;
  return p;
}

// Independent oracle: trapezoidal refinement of the disc integral.
double unordered_cdf_trapezoid(double y, double radius, double alpha) {
  const auto f = [&](double r) {
    return (1.0 - std::exp(-(1.0 + std::pow(r, alpha)) * y)) * r;
  };
  double prev = 0.0;
  double curr = 0.5 * radius * (f(0.0) + f(radius));
  std::size_t n = 1;
  do {
    prev = curr;
    n *= 2;
    const double h = radius / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 1; i < n; i += 2) {
      acc += f(static_cast<double>(i) * h);
    }
    curr = 0.5 * prev + h * acc;
    // keep refining past coincidental early agreement (the integrand can be
    // linear at the first few sample points)
  } while ((std::abs(curr - prev) > 1e-13 || n < 1024) && n < (1u << 22));
  return 2.0 / (radius * radius) * curr;
}

}  // namespace

TEST_CASE("unordered exact CDF endpoints") {
  const SystemParams p = disc_params();
  CHECK(unordered_cdf_exact(0.0, p) == 0.0);
  CHECK(unordered_cdf_exact(1e6, p) == Catch::Approx(1.0).margin(1e-6));
  CHECK_THROWS_AS(unordered_cdf_exact(-0.1, p), std::domain_error);
}

TEST_CASE("unordered exact CDF against trapezoid refinement") {
  const SystemParams p = disc_params();
  for (double y : {0.05, 0.5, 2.0}) {
    CHECK(unordered_cdf_exact(y, p) ==
          Catch::Approx(unordered_cdf_trapezoid(y, 5.0, 4.0)).epsilon(1e-8));
  }
}

TEST_CASE("expansion structure") {
  const SystemParams p = disc_params();
  const CdfExpansion ex = unordered_cdf_expansion(p, chebyshev_rule(5));
  REQUIRE(ex.coeff.size() == 6);
  CHECK(ex.rate[0] == 0.0);
  double sum = std::accumulate(ex.coeff.begin(), ex.coeff.end(), 0.0);
  CHECK(sum == Catch::Approx(0.0).margin(1e-15));
  for (std::size_t n = 1; n < ex.rate.size(); ++n) {
    CHECK(ex.rate[n] >= 1.0);
    CHECK(ex.coeff[n] < 0.0);
  }
  // both endpoints are exact by the normalized construction
  CHECK(unordered_cdf_gc(0.0, p, chebyshev_rule(5)) == 0.0);
  CHECK(unordered_cdf_gc(1e6, p, chebyshev_rule(5)) ==
        Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("quadrature CDF tracks the exact integral") {
  const SystemParams p = disc_params();
  // Measured uniform fidelity of the normalized five-node rule against the
  // disc integral is ~1.4e-2 (worst near y ~ 0.06); a five-term exponential
  // sum cannot do better than a few 1e-3 over this y range regardless of
  // node placement.  Doubling the node count tightens it.
  const ChebyshevRule rule5 = chebyshev_rule(5);
  for (double y : {0.01, 0.1, 1.0, 10.0}) {
    CHECK(unordered_cdf_gc(y, p, rule5) ==
          Catch::Approx(unordered_cdf_exact(y, p)).margin(1.5e-2));
  }
  const ChebyshevRule rule20 = chebyshev_rule(20);
  for (double y : {0.01, 0.1, 1.0, 10.0}) {
    CHECK(unordered_cdf_gc(y, p, rule20) ==
          Catch::Approx(unordered_cdf_exact(y, p)).margin(2e-3));
  }
}

TEST_CASE("single user collapses order statistics") {
  const SystemParams p = disc_params(1);
  const ChebyshevRule rule = chebyshev_rule(5);
  for (double y : {0.0, 0.2, 1.0, 4.0}) {
    CHECK(ordered_cdf(y, 1, p, rule) ==
          Catch::Approx(unordered_cdf_gc(y, p, rule)).margin(1e-14));
  }
}

TEST_CASE("ordered CDF basics") {
  const SystemParams p = disc_params();
  const ChebyshevRule rule = chebyshev_rule(5);
  for (int m = 1; m <= 3; ++m) {
    CHECK(ordered_cdf(0.0, m, p, rule) == Catch::Approx(0.0).margin(1e-14));
  }
  CHECK_THROWS_AS(ordered_cdf(0.5, 0, p, rule), std::invalid_argument);
  CHECK_THROWS_AS(ordered_cdf(0.5, 4, p, rule), std::invalid_argument);

  // monotone in y, stochastically ordered in m
  for (int m = 1; m <= 3; ++m) {
    double prev = -1.0;
    for (int i = 0; i < 100; ++i) {
      const double y = 0.05 * (i + 1);
      const double v = ordered_cdf(y, m, p, rule);
      CHECK(v >= prev - 1e-12);
      if (m < 3) {
        CHECK(v >= ordered_cdf(y, m + 1, p, rule) - 1e-12);
      }
      prev = v;
    }
  }
}

TEST_CASE("order-statistics averaging identity") {
  const SystemParams p = disc_params();
  const ChebyshevRule rule = chebyshev_rule(5);
  for (int i = 0; i < 100; ++i) {
    const double y = 0.05 * (i + 1);
    double avg = 0.0;
    for (int m = 1; m <= 3; ++m) {
      avg += ordered_cdf(y, m, p, rule);
    }
    avg /= 3.0;
    CHECK(avg == Catch::Approx(unordered_cdf_gc(y, p, rule)).margin(1e-9));
  }
}

TEST_CASE("multinomial expansion matches the power form") {
  const SystemParams p = disc_params();
  const CdfExpansion ex = unordered_cdf_expansion(p, chebyshev_rule(5));
  const ChebyshevRule rule = chebyshev_rule(5);
  for (int m = 1; m <= 3; ++m) {
    const auto terms = ordered_cdf_terms(m, p, ex);
    for (double y : {0.1, 0.7, 3.0}) {
      double acc = 0.0;
      for (const ExpansionTerm& t : terms) {
        acc += t.weight * std::exp(-t.rate_sum * y);
      }
      CHECK(acc == Catch::Approx(ordered_cdf(y, m, p, rule)).margin(1e-12));
    }
  }
}

TEST_CASE("ordered CDF against sampled order statistics") {
  const SystemParams p = disc_params();
  const ChebyshevRule rule = chebyshev_rule(5);
  const std::uint64_t samples = 200'000;
  const double y = 0.5;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    TrialRng rng(7, i);
    const auto gains = sample_su_gains(3, p.user_zone_radius, p.alpha, rng);
    hits += gains[1] < y ? 1 : 0;  // 2nd smallest of 3
  }
  const double emp = static_cast<double>(hits) / samples;
  const double ana = ordered_cdf(y, 2, p, rule);
  const double se = std::sqrt(ana * (1.0 - ana) / samples);
  // additive term covers the five-node quadrature fidelity of the analytic
  // side (~1e-3 at this y), not just sampling noise
  CHECK(std::abs(emp - ana) < 3.0 * se + 5e-3);
}
