#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crnoma/channel_cdf.hpp"
#include "crnoma/effective_power.hpp"
#include "crnoma/interference.hpp"
#include "crnoma/params.hpp"
#include "crnoma/quadrature.hpp"

namespace crnoma {

namespace detail {

// Precomputed pieces of the closed-form outage expression: the CDF
// expansion, the Laplace-transform terms, and the quadrature of the
// effective-power integral over (0, rho_s) via z = rho_s s_k.
struct OutageTables {
  CdfExpansion cdf;
  LaplaceTerms laplace;
  std::vector<double> power_node;    // s_k in (0, 1)
  std::vector<double> power_weight;  // eta_k
  double atom_weight = 1.0;
};

inline OutageTables make_outage_tables(const SystemParams& params,
                                       const QuadratureSpec& quad) {
  OutageTables tables;
  tables.cdf =
      unordered_cdf_expansion(params, chebyshev_rule(quad.cdf_nodes));
  tables.laplace =
      laplace_ib_terms(params, chebyshev_rule(quad.laplace_nodes));

  const GammaTDistribution dist = gamma_t_parts(params);
  tables.atom_weight = dist.atom_weight;
  const ChebyshevRule rule = chebyshev_rule(quad.power_nodes);
  const double delta = params.delta();
  const double rho_s_delta = std::pow(params.rho_s, delta);
  for (double phi : rule.nodes) {
    const double s = 0.5 * (phi + 1.0);
    const double ratio = params.rho_p / (params.rho_s * s);
    const double eta = 0.5 * rule.weight * std::sqrt(1.0 - phi * phi) *
                       (ratio + delta) * dist.field_scale * rho_s_delta *
                       std::pow(s, delta - 1.0) *
                       std::exp(-dist.field_scale * rho_s_delta *
                                std::pow(s, delta) * std::exp(-ratio));
    tables.power_node.push_back(s);
    tables.power_weight.push_back(eta);
  }
  return tables;
}

// E over (I_B, gamma_t) of exp(-u / gamma_t) L_IB(rho_b u / gamma_t),
// the per-term mixture weight with u = eps * sum q_n c_n.
inline double power_mixture(const OutageTables& tables,
                            const SystemParams& params, double u) {
  double acc = tables.atom_weight * std::exp(-u / params.rho_s) *
               laplace_ib_gc(params.rho_b * u / params.rho_s, params,
                             tables.laplace);
  for (std::size_t k = 0; k < tables.power_node.size(); ++k) {
    const double z = params.rho_s * tables.power_node[k];
    acc += tables.power_weight[k] *
           std::exp(-(params.rho_p + u) / z) *
           laplace_ib_gc(params.rho_b * u / z, params, tables.laplace);
  }
  return acc;
}

inline double clamp_probability(double p) {
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

// Pr{X_m < eps} assembled from the ordered-CDF expansion and the mixture
// over interference and effective power.
inline double threshold_outage(int m, double eps, const SystemParams& params,
                               const QuadratureSpec& quad) {
  if (m < 1 || m > params.num_users) {
    throw std::invalid_argument("threshold_outage: user index out of range");
  }
  if (eps == 0.0) {
    return 0.0;
  }
  if (std::isinf(eps)) {
    return 1.0;
  }
  const OutageTables tables = make_outage_tables(params, quad);
  const auto terms = ordered_cdf_terms(m, params, tables.cdf);
  double acc = 0.0;
  for (const ExpansionTerm& term : terms) {
    acc += term.weight * power_mixture(tables, params, eps * term.rate_sum);
  }
  return clamp_probability(acc);
}

}  // namespace detail

// Closed-form outage probability of the m-th ordered NOMA user.
inline double outage_exact(int m, const SystemParams& params,
                           const RateAllocation& alloc,
                           const QuadratureSpec& quad) {
  if (m < 1 || m > params.num_users) {
    throw std::invalid_argument("outage_exact: user index out of range");
  }
  if (!alloc.feasible) {
    return 1.0;
  }
  return detail::threshold_outage(
      m, alloc.sinr_target_max[static_cast<std::size_t>(m - 1)], params, quad);
}

// TDMA baseline: M equal slots, full power per slot, so the per-user rate is
// (1/M) log2(1 + X_m) and the threshold on X_m becomes 2^(M R_m) - 1.
inline double oma_outage_exact(int m, const SystemParams& params,
                               const RateAllocation& alloc,
                               const QuadratureSpec& quad) {
  if (m < 1 || m > params.num_users) {
    throw std::invalid_argument("oma_outage_exact: user index out of range");
  }
  const double rate = alloc.rates[static_cast<std::size_t>(m - 1)];
  const double eps = std::exp2(params.num_users * rate) - 1.0;
  return detail::threshold_outage(m, eps, params, quad);
}

// rho_s-independent outage limit of the proportional regime
// (rho_p = kappa rho_s, rho_b = nu rho_s, rho_s -> infinity).
inline double outage_floor_proportional(int m, const SystemParams& params,
                                        const RateAllocation& alloc,
                                        const QuadratureSpec& quad) {
  if (m < 1 || m > params.num_users) {
    throw std::invalid_argument(
        "outage_floor_proportional: user index out of range");
  }
  if (!params.kappa || !params.nu) {
    throw std::logic_error(
        "outage_floor_proportional: requires the proportional regime "
        "(kappa and nu both set)");
  }
  if (!alloc.feasible) {
    return 1.0;
  }
  const double eps = alloc.sinr_target_max[static_cast<std::size_t>(m - 1)];
  if (eps == 0.0) {
    return 0.0;
  }
  const double kappa = *params.kappa;
  const double nu = *params.nu;
  const double delta = params.delta();
  const double field_scale = delta * std::numbers::pi * params.pr_density *
                             gamma_fn(delta) / std::pow(kappa, delta);
  const double atom_weight = std::exp(-field_scale * std::exp(-kappa));

  const CdfExpansion ex =
      unordered_cdf_expansion(params, chebyshev_rule(quad.cdf_nodes));
  const LaplaceTerms laplace =
      laplace_ib_terms(params, chebyshev_rule(quad.laplace_nodes));
  const ChebyshevRule rule = chebyshev_rule(quad.power_nodes);

  std::vector<double> node, weight;
  for (double phi : rule.nodes) {
    const double s = 0.5 * (phi + 1.0);
    node.push_back(s);
    weight.push_back(0.5 * rule.weight * std::sqrt(1.0 - phi * phi) *
                     (kappa / s + delta) * field_scale *
                     std::pow(s, delta - 1.0) *
                     std::exp(-field_scale * std::pow(s, delta) *
                              std::exp(-kappa / s)));
  }

  const auto mixture = [&](double u) {
    double acc = atom_weight * laplace_ib_gc(nu * u, params, laplace);
    for (std::size_t k = 0; k < node.size(); ++k) {
      acc += weight[k] * std::exp(-kappa / node[k]) *
             laplace_ib_gc(nu * u / node[k], params, laplace);
    }
    return acc;
  };

  const auto terms = ordered_cdf_terms(m, params, ex);
  double acc = 0.0;
  for (const ExpansionTerm& term : terms) {
    acc += term.weight * mixture(eps * term.rate_sum);
  }
  return detail::clamp_probability(acc);
}

}  // namespace crnoma
