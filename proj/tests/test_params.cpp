#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "crnoma/params.hpp"

using namespace crnoma;

namespace {

SystemParams scenario_one() {
  SystemParams p;
  p.num_users = 3;
  p.alpha = 4.0;
  p.user_zone_radius = 5.0;
  p.guard_radius = 2.0;
  p.pt_density = 1e-3;
  p.pr_density = 1e-3;
  p.kappa = 1.0;
  p.rho_s = db_to_linear(30.0);
  p.rho_p = p.rho_s;
  p.rho_b = db_to_linear(20.0);
  return p;
}

}  // namespace

TEST_CASE("dB conversions") {
  CHECK(db_to_linear(20.0) == Catch::Approx(100.0));
  CHECK(db_to_linear(0.0) == Catch::Approx(1.0));
  CHECK(linear_to_db(db_to_linear(13.7)) == Catch::Approx(13.7).epsilon(1e-12));
}

TEST_CASE("three-user allocation thresholds") {
  const auto alloc =
      make_rate_allocation({0.5, 0.4, 0.1}, {0.1, 0.1, 0.1});
  const double tau = std::exp2(0.1) - 1.0;
  CHECK(alloc.feasible);
  for (int j = 0; j < 3; ++j) {
    CHECK(alloc.thresholds[j] == Catch::Approx(tau).epsilon(1e-14));
  }
  // direct arithmetic for each target
  CHECK(alloc.sinr_target[0] ==
        Catch::Approx(tau / (0.5 - tau * 0.5)).epsilon(1e-14));
  CHECK(alloc.sinr_target[1] ==
        Catch::Approx(tau / (0.4 - tau * 0.1)).epsilon(1e-14));
  CHECK(alloc.sinr_target[2] == Catch::Approx(tau / 0.1).epsilon(1e-14));
  CHECK(alloc.sinr_target[2] == Catch::Approx(0.7177346253629313).epsilon(1e-12));
}

TEST_CASE("feasibility boundary") {
  const auto alloc = make_rate_allocation({0.5, 0.5}, {1.0, 1.0});
  CHECK_FALSE(alloc.feasible);
  CHECK(std::isinf(alloc.sinr_target[0]));
}

TEST_CASE("zero-rate single user") {
  const auto alloc = make_rate_allocation({1.0}, {0.0});
  CHECK(alloc.feasible);
  CHECK(alloc.sinr_target[0] == 0.0);
  CHECK(alloc.sinr_target_max[0] == 0.0);
}

TEST_CASE("allocation input validation") {
  CHECK_THROWS_AS(make_rate_allocation({0.5, 0.4}, {0.1, 0.1}),
                  std::invalid_argument);  // sum != 1
  CHECK_THROWS_AS(make_rate_allocation({0.4, 0.6}, {0.1, 0.1}),
                  std::invalid_argument);  // ascending coefficients
  CHECK_THROWS_AS(make_rate_allocation({0.5, 0.5}, {0.1}),
                  std::invalid_argument);  // length mismatch
  CHECK_THROWS_AS(make_rate_allocation({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_rate_allocation({1.0}, {-0.1}), std::invalid_argument);
}

TEST_CASE("prefix maxima are nondecreasing") {
  const auto alloc = make_rate_allocation({0.6, 0.25, 0.15}, {0.3, 0.05, 0.2});
  for (std::size_t j = 1; j < 3; ++j) {
    CHECK(alloc.sinr_target_max[j] >= alloc.sinr_target_max[j - 1]);
    CHECK(alloc.sinr_target_max[j] >= alloc.sinr_target[j]);
  }
}

TEST_CASE("system parameter validation") {
  SystemParams p = scenario_one();
  CHECK_NOTHROW(p.validate());
  CHECK(p.delta() == Catch::Approx(0.5));

  SystemParams bad = p;
  bad.alpha = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.guard_radius = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.rho_p = 3.0;  // breaks the kappa tie
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.pt_density = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("rho_s rescaling reapplies tied ratios") {
  SystemParams p = scenario_one();
  const SystemParams q = p.at_rho_s_db(40.0);
  CHECK(q.rho_s == Catch::Approx(1e4));
  CHECK(q.rho_p == Catch::Approx(1e4));          // kappa = 1
  CHECK(q.rho_b == Catch::Approx(p.rho_b));      // nu unset: rho_b untouched
  CHECK_NOTHROW(q.validate());

  p.nu = 1.0;
  p.rho_b = p.rho_s;
  const SystemParams r = p.at_rho_s_db(40.0);
  CHECK(r.rho_b == Catch::Approx(1e4));
}
