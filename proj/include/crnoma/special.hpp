#pragma once

#include <cmath>
#include <stdexcept>

#include "crnoma/quadrature.hpp"

namespace crnoma {

// Euler gamma function for positive arguments.
inline double gamma_fn(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("gamma_fn: argument must be positive");
  }
  return std::tgamma(x);
}

// Lower incomplete gamma gamma(a, x) = int_0^x t^(a-1) e^(-t) dt for
// a in (0, 1).  The endpoint singularity is removed by the substitution
// u = t^a, which gives (1/a) int_0^{x^a} exp(-u^(1/a)) du with a smooth
// integrand.  Serves as the exact reference for the quadrature-based
// Laplace transform approximation.
inline double lower_incomplete_gamma(double a, double x) {
  if (!(a > 0.0 && a < 1.0)) {
    throw std::domain_error("lower_incomplete_gamma: a must be in (0, 1)");
  }
  if (x < 0.0) {
    throw std::domain_error("lower_incomplete_gamma: x must be nonnegative");
  }
  if (x == 0.0) {
    return 0.0;
  }
  const double upper = std::pow(x, a);
  const double inv_a = 1.0 / a;
  const double scale = std::min(upper * inv_a, gamma_fn(a));
  const auto integrand = [inv_a](double u) {
    return u == 0.0 ? 1.0 : std::exp(-std::pow(u, inv_a));
  };
  return inv_a * integrate(integrand, 0.0, upper, 1e-10 * scale);
}

}  // namespace crnoma
