#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace crnoma {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Physical and deployment parameters of the underlay network.  SNR budgets
// are stored in linear units; dB is an input/output convention only.
struct SystemParams {
  int num_users = 1;           // M
  double alpha = 4.0;          // path-loss exponent, > 2
  double user_zone_radius = 5.0;  // R_D, meters
  double guard_radius = 2.0;      // d_0, meters, >= 1
  double pt_density = 0.0;        // lambda_b, points/m^2
  double pr_density = 0.0;        // lambda_l, points/m^2
  double rho_s = 1.0;  // max secondary transmit SNR, linear
  double rho_p = 1.0;  // interference-constraint SNR, linear
  double rho_b = 1.0;  // primary transmit SNR, linear
  std::optional<double> kappa;  // rho_p / rho_s, when tied
  std::optional<double> nu;     // rho_b / rho_s, when tied

  double delta() const { return 2.0 / alpha; }
  double rho_s_db() const { return linear_to_db(rho_s); }

  void validate() const {
    if (num_users < 1) {
      throw std::invalid_argument("SystemParams: num_users must be >= 1");
    }
    if (!(alpha > 2.0)) {
      // alpha <= 2 makes the plane-wide interference integral divergent.
      throw std::invalid_argument(
          "SystemParams: alpha must exceed 2 (divergent interference)");
    }
    if (!(guard_radius >= 1.0)) {
      throw std::invalid_argument("SystemParams: guard_radius must be >= 1");
    }
    if (!(user_zone_radius > 0.0)) {
      throw std::invalid_argument(
          "SystemParams: user_zone_radius must be positive");
    }
    if (pt_density < 0.0 || pr_density < 0.0) {
      throw std::invalid_argument("SystemParams: densities must be >= 0");
    }
    if (!(rho_s > 0.0) || !(rho_p > 0.0) || !(rho_b > 0.0)) {
      throw std::invalid_argument("SystemParams: SNRs must be positive");
    }
    if (kappa && std::abs(rho_p - *kappa * rho_s) >
                     1e-9 * std::max(1.0, rho_p)) {
      throw std::invalid_argument("SystemParams: rho_p != kappa * rho_s");
    }
    if (nu && std::abs(rho_b - *nu * rho_s) > 1e-9 * std::max(1.0, rho_b)) {
      throw std::invalid_argument("SystemParams: rho_b != nu * rho_s");
    }
  }

  // Copy with a new secondary SNR budget; tied ratios are reapplied.
  SystemParams at_rho_s(double new_rho_s) const {
    SystemParams out = *this;
    out.rho_s = new_rho_s;
    if (kappa) {
      out.rho_p = *kappa * new_rho_s;
    }
    if (nu) {
      out.rho_b = *nu * new_rho_s;
    }
    return out;
  }
  SystemParams at_rho_s_db(double db) const { return at_rho_s(db_to_linear(db)); }
};

// Power-domain allocation and rate targets of the NOMA users, with the
// derived SINR thresholds.  sinr_target[j] is the threshold the j-th
// message must clear; sinr_target_max[m] is its running prefix maximum.
struct RateAllocation {
  std::vector<double> coefficients;     // a_1 >= ... >= a_M, sum 1
  std::vector<double> rates;            // target rates, BPCU
  std::vector<double> thresholds;       // tau_j = 2^R_j - 1
  std::vector<double> sinr_target;      // eps_j
  std::vector<double> sinr_target_max;  // prefix maxima of eps_j
  bool feasible = false;

  int num_users() const { return static_cast<int>(coefficients.size()); }
};

inline RateAllocation make_rate_allocation(std::vector<double> a,
                                           std::vector<double> rates) {
  const std::size_t m_count = a.size();
  if (m_count == 0 || rates.size() != m_count) {
    throw std::invalid_argument(
        "make_rate_allocation: coefficient and rate lists must be nonempty "
        "and the same length");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < m_count; ++j) {
    if (!(a[j] > 0.0)) {
      throw std::invalid_argument(
          "make_rate_allocation: coefficients must be positive");
    }
    if (rates[j] < 0.0) {
      throw std::invalid_argument(
          "make_rate_allocation: rates must be nonnegative");
    }
    if (j > 0 && a[j] > a[j - 1]) {
      throw std::invalid_argument(
          "make_rate_allocation: coefficients must be nonincreasing");
    }
    sum += a[j];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "make_rate_allocation: coefficients must sum to 1");
  }

  RateAllocation alloc;
  alloc.coefficients = std::move(a);
  alloc.rates = std::move(rates);
  alloc.thresholds.resize(m_count);
  alloc.sinr_target.resize(m_count);
  alloc.sinr_target_max.resize(m_count);
  alloc.feasible = true;

  double tail = 0.0;  // sum of a_i for i > j, built back to front
  std::vector<double> tails(m_count, 0.0);
  for (std::size_t j = m_count; j-- > 0;) {
    tails[j] = tail;
    tail += alloc.coefficients[j];
  }
  for (std::size_t j = 0; j < m_count; ++j) {
    const double tau = std::exp2(alloc.rates[j]) - 1.0;
    alloc.thresholds[j] = tau;
    if (j + 1 == m_count) {
      alloc.sinr_target[j] = tau / alloc.coefficients[j];
    } else {
      const double denom = alloc.coefficients[j] - tau * tails[j];
      if (denom > 0.0) {
        alloc.sinr_target[j] = tau / denom;
      } else {
        alloc.sinr_target[j] = std::numeric_limits<double>::infinity();
        alloc.feasible = false;
      }
    }
    alloc.sinr_target_max[j] =
        j == 0 ? alloc.sinr_target[0]
               : std::max(alloc.sinr_target_max[j - 1], alloc.sinr_target[j]);
  }
  return alloc;
}

// The three complexity-accuracy tradeoff parameters of the closed-form
// outage expression.
struct QuadratureSpec {
  int cdf_nodes = 5;       // N: unordered-CDF expansion
  int power_nodes = 10;    // K: effective-power integral
  int laplace_nodes = 10;  // L: incomplete-gamma approximation

  void validate() const {
    if (cdf_nodes < 1 || power_nodes < 1 || laplace_nodes < 1) {
      throw std::invalid_argument("QuadratureSpec: node counts must be >= 1");
    }
  }
};

}  // namespace crnoma
