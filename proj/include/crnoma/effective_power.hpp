#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crnoma/params.hpp"
#include "crnoma/special.hpp"

namespace crnoma {

// Distribution of the effective transmit SNR gamma_t = min(rho_p / G, rho_s)
// where G is the best secondary-BS-to-PR channel over the PR field.  The law
// is mixed: a continuous density on (0, rho_s) plus an atom at rho_s (the
// power cap binds when no PR is close enough).
struct GammaTDistribution {
  double atom_weight = 1.0;  // mass at rho_s
  double field_scale = 0.0;  // a_l = delta pi lambda_l Gamma(delta) / rho_p^delta
};

inline GammaTDistribution gamma_t_parts(const SystemParams& params) {
  const double delta = params.delta();
  GammaTDistribution dist;
  dist.field_scale = delta * std::numbers::pi * params.pr_density *
                     gamma_fn(delta) / std::pow(params.rho_p, delta);
  dist.atom_weight = std::exp(-dist.field_scale *
                              std::pow(params.rho_s, delta) *
                              std::exp(-params.rho_p / params.rho_s));
  return dist;
}

inline double gamma_t_cdf(double x, const SystemParams& params) {
  if (!(x > 0.0)) {
    throw std::domain_error("gamma_t_cdf: x must be positive");
  }
  if (x >= params.rho_s) {
    return 1.0;
  }
  const double scale = gamma_t_parts(params).field_scale;
  return 1.0 - std::exp(-scale * std::pow(x, params.delta()) *
                        std::exp(-params.rho_p / x));
}

// Continuous part of the density on (0, rho_s).
inline double gamma_t_density(double x, const SystemParams& params) {
  if (!(x > 0.0) || x >= params.rho_s) {
    return 0.0;
  }
  const double delta = params.delta();
  const double scale = gamma_t_parts(params).field_scale;
  const double ratio = params.rho_p / x;
  return (ratio + delta) * scale * std::pow(x, delta - 1.0) *
         std::exp(-scale * std::pow(x, delta) * std::exp(-ratio) - ratio);
}

}  // namespace crnoma
