#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crnoma/params.hpp"
#include "crnoma/quadrature.hpp"
#include "crnoma/special.hpp"

namespace crnoma {

// Laplace transform of the aggregate PT interference seen outside the guard
// zone of radius d_0:
//   L(s) = exp(-lambda_b pi [ (exp(-s d_0^-alpha) - 1) d_0^2
//                             + s^delta gamma(1 - delta, s d_0^-alpha) ]).
inline double laplace_ib_exact(double s, const SystemParams& params) {
  if (s < 0.0) {
    throw std::domain_error("laplace_ib_exact: s must be nonnegative");
  }
  if (s == 0.0 || params.pt_density == 0.0) {
    return 1.0;
  }
  const double d0 = params.guard_radius;
  const double delta = params.delta();
  const double d0_sq = d0 * d0;
  const double edge = s * std::pow(d0, -params.alpha);
  const double bracket = (std::exp(-edge) - 1.0) * d0_sq +
                         std::pow(s, delta) *
                             lower_incomplete_gamma(1.0 - delta, edge);
  return std::exp(-params.pt_density * std::numbers::pi * bracket);
}

// Quadrature approximation of the incomplete-gamma part of the transform.
// With t_l = (theta_l + 1)/2 the bracket becomes
//   (exp(-s d_0^-alpha) - 1) d_0^2 + s sum_l beta_l exp(-t_l s d_0^-alpha).
struct LaplaceTerms {
  std::vector<double> beta;
  std::vector<double> node;  // t_l in (0, 1)
};

inline LaplaceTerms laplace_ib_terms(const SystemParams& params,
                                     const ChebyshevRule& rule) {
  LaplaceTerms terms;
  const double d0 = params.guard_radius;
  const double delta = params.delta();
  const double prefactor = 0.5 * std::pow(d0, 2.0 - params.alpha) * rule.weight;
  terms.beta.reserve(rule.nodes.size());
  terms.node.reserve(rule.nodes.size());
  for (double theta : rule.nodes) {
    const double t = 0.5 * (theta + 1.0);
    terms.node.push_back(t);
    terms.beta.push_back(prefactor * std::sqrt(1.0 - theta * theta) *
                         std::pow(t, -delta));
  }
  return terms;
}

inline double laplace_ib_gc(double s, const SystemParams& params,
                            const LaplaceTerms& terms) {
  if (s < 0.0) {
    throw std::domain_error("laplace_ib_gc: s must be nonnegative");
  }
  if (s == 0.0 || params.pt_density == 0.0) {
    return 1.0;
  }
  const double d0 = params.guard_radius;
  const double edge = s * std::pow(d0, -params.alpha);
  double series = 0.0;
  for (std::size_t l = 0; l < terms.beta.size(); ++l) {
    series += terms.beta[l] * std::exp(-terms.node[l] * edge);
  }
  const double bracket = (std::exp(-edge) - 1.0) * d0 * d0 + s * series;
  return std::exp(-params.pt_density * std::numbers::pi * bracket);
}

inline double laplace_ib_gc(double s, const SystemParams& params,
                            const ChebyshevRule& rule) {
  return laplace_ib_gc(s, params, laplace_ib_terms(params, rule));
}

}  // namespace crnoma
