#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "crnoma/quadrature.hpp"

using namespace crnoma;

TEST_CASE("single-node rule") {
  const ChebyshevRule rule = chebyshev_rule(1);
  REQUIRE(rule.count == 1);
  REQUIRE(rule.nodes.size() == 1);
  CHECK(rule.nodes[0] == Catch::Approx(0.0).margin(1e-16));
  CHECK(rule.weight == Catch::Approx(std::numbers::pi));
}

TEST_CASE("two-node rule has closed-form nodes") {
  const ChebyshevRule rule = chebyshev_rule(2);
  CHECK(rule.nodes[0] == Catch::Approx(std::sqrt(2.0) / 2.0));
  CHECK(rule.nodes[1] == Catch::Approx(-std::sqrt(2.0) / 2.0));
}

TEST_CASE("zero count rejected") {
  CHECK_THROWS_AS(chebyshev_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(chebyshev_rule(-3), std::invalid_argument);
}

TEST_CASE("node sequence is decreasing, symmetric, interior") {
  for (int count : {3, 5, 8, 17}) {
    const ChebyshevRule rule = chebyshev_rule(count);
    CHECK(rule.weight * count == Catch::Approx(std::numbers::pi));
    for (int n = 0; n < count; ++n) {
      CHECK(std::abs(rule.nodes[n]) < 1.0);
      if (n > 0) {
        CHECK(rule.nodes[n] < rule.nodes[n - 1]);
      }
      CHECK(rule.nodes[n] ==
            Catch::Approx(-rule.nodes[count - 1 - n]).margin(1e-15));
    }
  }
}

namespace {

// Weighted sum omega sum_n sqrt(1 - phi_n^2) f(phi_n) ~ int_{-1}^{1} f.
double weighted_sum(const ChebyshevRule& rule, double (*f)(double)) {
  double acc = 0.0;
  for (double phi : rule.nodes) {
    acc += std::sqrt(1.0 - phi * phi) * f(phi);
  }
  return rule.weight * acc;
}

}  // namespace

TEST_CASE("constant integrand at five nodes") {
  // Exact value of the rule applied to f = 1 is (pi/N) / sin(pi/(2N));
  // for N = 5 that is 2.0333, i.e. 0.034 away from int_{-1}^{1} dx = 2.
  const double approx =
      weighted_sum(chebyshev_rule(5), [](double) { return 1.0; });
  CHECK(approx == Catch::Approx(2.0).margin(0.04));
}

TEST_CASE("quadrature error decreases with node count") {
  double prev_err = 1e9;
  for (int count : {5, 20, 80}) {
    const double approx =
        weighted_sum(chebyshev_rule(count), [](double x) { return x * x; });
    const double err = std::abs(approx - 2.0 / 3.0);
    CHECK(err < prev_err);
    prev_err = err;
  }
  // The rule converges only at the O(1/count^2) rate for integrands that do
  // not match the Chebyshev weight; 80 nodes gives ~1.3e-4 here.
  CHECK(prev_err < 5e-4);
}

TEST_CASE("adaptive integration sanity") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0,
                  std::numbers::pi) == Catch::Approx(2.0).epsilon(1e-10));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0),
                  std::invalid_argument);
}
