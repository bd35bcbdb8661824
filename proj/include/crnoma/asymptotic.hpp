#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "crnoma/channel_cdf.hpp"
#include "crnoma/outage.hpp"
#include "crnoma/params.hpp"
#include "crnoma/sim.hpp"

namespace crnoma {

// Leading coefficient C of the high-SNR asymptote C / rho_s^m of the
// fixed-rho_b regime.  C is a double expectation over the interference
// field and the normalized effective power, evaluated by sampling; the
// linearized unordered CDF supplies xi = psi_m (sum_n chi_n)^m / m, where
// chi_n carries the same 1/2 Jacobian factor as the CDF expansion
// coefficients.
inline double asymptotic_constant_fixed(int m, const SystemParams& params,
                                        const RateAllocation& alloc,
                                        const QuadratureSpec& quad,
                                        std::uint64_t trials = 1'000'000,
                                        std::uint64_t seed = 0x5eedc0de) {
  if (m < 1 || m > params.num_users) {
    throw std::invalid_argument(
        "asymptotic_constant_fixed: user index out of range");
  }
  if (!params.kappa || params.nu) {
    throw std::logic_error(
        "asymptotic_constant_fixed: requires the fixed-rho_b regime "
        "(kappa set, nu unset)");
  }
  if (!alloc.feasible) {
    throw std::logic_error(
        "asymptotic_constant_fixed: allocation is infeasible");
  }
  const double eps = alloc.sinr_target_max[static_cast<std::size_t>(m - 1)];
  if (eps == 0.0) {
    return 0.0;
  }

  // Linearized CDF slope chi_sum = sum_n (-coeff[n]) rate[n], taken from
  // the same normalized expansion as the exact expression so the asymptote
  // shares its quadrature convention.
  const CdfExpansion ex =
      unordered_cdf_expansion(params, chebyshev_rule(quad.cdf_nodes));
  double chi_sum = 0.0;
  for (std::size_t n = 1; n < ex.coeff.size(); ++n) {
    chi_sum += -ex.coeff[n] * ex.rate[n];
  }
  const double psi = detail::order_statistic_factor(params.num_users, m);
  const double xi = psi * std::pow(chi_sum, m) / m;

  double acc = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    TrialRng rng(seed, t);
    const double interference = sample_interference(params, rng);
    const double gamma_t_star =
        sample_gamma_t_star(params, *params.kappa, rng);
    acc += std::pow((params.rho_b * interference + 1.0) * eps / gamma_t_star,
                    m);
  }
  return xi * acc / static_cast<double>(trials);
}

// High-SNR asymptote C / rho_s^m of the fixed-rho_b regime, clamped to a
// probability.
inline double outage_asymptotic_fixed(int m, const SystemParams& params,
                                      const RateAllocation& alloc,
                                      const QuadratureSpec& quad,
                                      std::uint64_t trials = 1'000'000,
                                      std::uint64_t seed = 0x5eedc0de) {
  if (m < 1 || m > params.num_users) {
    throw std::invalid_argument(
        "outage_asymptotic_fixed: user index out of range");
  }
  if (!params.kappa || params.nu) {
    throw std::logic_error(
        "outage_asymptotic_fixed: requires the fixed-rho_b regime "
        "(kappa set, nu unset)");
  }
  if (!alloc.feasible) {
    return 1.0;
  }
  const double eps = alloc.sinr_target_max[static_cast<std::size_t>(m - 1)];
  if (eps == 0.0) {
    return 0.0;
  }
  const double constant =
      asymptotic_constant_fixed(m, params, alloc, quad, trials, seed);
  return detail::clamp_probability(constant / std::pow(params.rho_s, m));
}

}  // namespace crnoma
