#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "crnoma/params.hpp"

namespace crnoma {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Per-trial random stream derived from (seed, trial index).  Trials draw
// from disjoint deterministic streams, so any partition of the trial range
// across workers reproduces the same estimate.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t state = seed;
    detail::splitmix64(state);
    state ^= trial * 0xD1B54A32D192ED03ULL;
    const std::uint64_t a = detail::splitmix64(state);
    const std::uint64_t b = detail::splitmix64(state);
    engine_.seed(a ^ (b << 1));
  }

  // Uniform on (0, 1), never exactly 0.
  double uniform() {
    const double u = (engine_() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform()); }

  int poisson(double mean) {
    if (mean <= 0.0) {
      return 0;
    }
    std::poisson_distribution<int> dist(mean);
    return dist(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

// Smallest radius at which the expected path-loss sum of the truncated PPP
// tail drops below tol: 2 pi lambda R^(2-alpha) / (alpha - 2) <= tol,
// floored at ten guard radii.
inline double truncation_radius(double lambda, double alpha, double tol,
                                double guard_radius) {
  if (!(alpha > 2.0)) {
    throw std::invalid_argument(
        "truncation_radius: alpha must exceed 2 (divergent interference)");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("truncation_radius: tol must be positive");
  }
  const double floor_radius = 10.0 * guard_radius;
  if (lambda <= 0.0) {
    return floor_radius;
  }
  const double r = std::pow(
      2.0 * std::numbers::pi * lambda / ((alpha - 2.0) * tol),
      1.0 / (alpha - 2.0));
  return std::max(floor_radius, r);
}

inline constexpr double kTruncationTol = 1e-6;

// Distances of a homogeneous PPP restricted to the annulus [r_min, r_max].
inline std::vector<double> sample_annulus_ppp(double lambda, double r_min,
                                              double r_max, TrialRng& rng) {
  if (!(r_min >= 0.0) || !(r_min < r_max)) {
    throw std::invalid_argument("sample_annulus_ppp: need 0 <= r_min < r_max");
  }
  const double area =
      std::numbers::pi * (r_max * r_max - r_min * r_min);
  const int count = rng.poisson(lambda * area);
  std::vector<double> distances(static_cast<std::size_t>(count));
  const double lo_sq = r_min * r_min;
  const double span_sq = r_max * r_max - lo_sq;
  for (double& d : distances) {
    d = std::sqrt(lo_sq + rng.uniform() * span_sq);
  }
  return distances;
}

// M unordered gains |h^|^2 / (1 + d^alpha) with Rayleigh fading and uniform
// placement in the disc, sorted ascending.
inline std::vector<double> sample_su_gains(int num_users, double radius,
                                           double alpha, TrialRng& rng) {
  if (num_users < 1) {
    throw std::invalid_argument("sample_su_gains: num_users must be >= 1");
  }
  std::vector<double> gains(static_cast<std::size_t>(num_users));
  for (double& g : gains) {
    const double d = radius * std::sqrt(rng.uniform());
    g = rng.exponential() / (1.0 + std::pow(d, alpha));
  }
  std::sort(gains.begin(), gains.end());
  return gains;
}

// Effective transmit SNR min(rho_p / G, rho_s) with G the best BS-to-PR
// channel over the PR field.  An empty field leaves the cap binding.
inline double sample_gamma_t(const SystemParams& params, TrialRng& rng,
                             double trunc_scale = 1.0) {
  const double r_max =
      trunc_scale * truncation_radius(params.pr_density, params.alpha,
                                      kTruncationTol, params.guard_radius);
  const auto distances =
      sample_annulus_ppp(params.pr_density, 0.0, r_max, rng);
  double best = 0.0;
  for (double d : distances) {
    best = std::max(best, rng.exponential() / (1.0 + std::pow(d, params.alpha)));
  }
  if (best <= 0.0) {
    return params.rho_s;
  }
  return std::min(params.rho_p / best, params.rho_s);
}

// Normalized limit gamma_t / rho_s = min(kappa / G, 1) of the fixed-power
// regime; used by the asymptotic constant.
inline double sample_gamma_t_star(const SystemParams& params, double kappa,
                                  TrialRng& rng, double trunc_scale = 1.0) {
  const double r_max =
      trunc_scale * truncation_radius(params.pr_density, params.alpha,
                                      kTruncationTol, params.guard_radius);
  const auto distances =
      sample_annulus_ppp(params.pr_density, 0.0, r_max, rng);
  double best = 0.0;
  for (double d : distances) {
    best = std::max(best, rng.exponential() / (1.0 + std::pow(d, params.alpha)));
  }
  if (best <= 0.0) {
    return 1.0;
  }
  return std::min(kappa / best, 1.0);
}

// Aggregate PT path-loss sum Sum 1/(1 + d^alpha) outside the guard zone;
// no fading multipliers.  This is the interference field the outage
// trials use.
inline double sample_interference(const SystemParams& params, TrialRng& rng,
                                  double trunc_scale = 1.0) {
  const double r_max =
      trunc_scale * truncation_radius(params.pt_density, params.alpha,
                                      kTruncationTol, params.guard_radius);
  const auto distances =
      sample_annulus_ppp(params.pt_density, params.guard_radius, r_max, rng);
  double acc = 0.0;
  for (double d : distances) {
    acc += 1.0 / (1.0 + std::pow(d, params.alpha));
  }
  return acc;
}

// Far-field variant Sum d^-alpha of the PT path-loss sum.  The closed-form
// Laplace transform is exact for this power-law field; the bounded-loss
// field above differs from it by ~s * 2 pi lambda_b * O(d_0^{2-2 alpha}),
// which is negligible for outage but resolvable at millions of samples.
// Cross-validation of the transform therefore samples this field.
inline double sample_interference_powerlaw(const SystemParams& params,
                                           TrialRng& rng,
                                           double trunc_scale = 1.0) {
  const double r_max =
      trunc_scale * truncation_radius(params.pt_density, params.alpha,
                                      kTruncationTol, params.guard_radius);
  const auto distances =
      sample_annulus_ppp(params.pt_density, params.guard_radius, r_max, rng);
  double acc = 0.0;
  for (double d : distances) {
    acc += std::pow(d, -params.alpha);
  }
  return acc;
}

struct TrialRealization {
  std::vector<double> ordered_gains;  // ascending
  double gamma_t = 0.0;
  std::vector<double> interference;  // per-user I_B
  std::vector<bool> noma_outage;
  std::vector<bool> oma_outage;
};

// Direct SIC chain test: user m is in outage iff some stage j <= m fails
// its SINR target tau_j.  Kept alongside the equivalent X_m threshold test
// as an independent route.
inline bool noma_outage_direct(double gain, double gamma_t,
                               double interference_scaled,
                               const RateAllocation& alloc, int m) {
  const int total = alloc.num_users();
  for (int j = 1; j <= m; ++j) {
    double tail = 0.0;
    for (int i = j + 1; i <= total; ++i) {
      tail += alloc.coefficients[static_cast<std::size_t>(i - 1)];
    }
    const double signal =
        gain * gamma_t * alloc.coefficients[static_cast<std::size_t>(j - 1)];
    const double sinr =
        signal / (gain * gamma_t * tail + interference_scaled + 1.0);
    if (sinr < alloc.thresholds[static_cast<std::size_t>(j - 1)]) {
      return true;
    }
  }
  return false;
}

// One network realization: gains, effective power, and an independent
// interference field per user (each SU sees its own PPP outside its own
// guard zone).
inline TrialRealization run_trial(const SystemParams& params,
                                  const RateAllocation& alloc, TrialRng& rng,
                                  double trunc_scale = 1.0) {
  const int m_count = params.num_users;
  TrialRealization trial;
  trial.ordered_gains =
      sample_su_gains(m_count, params.user_zone_radius, params.alpha, rng);
  trial.gamma_t = sample_gamma_t(params, rng, trunc_scale);
  trial.interference.resize(static_cast<std::size_t>(m_count));
  trial.noma_outage.resize(static_cast<std::size_t>(m_count));
  trial.oma_outage.resize(static_cast<std::size_t>(m_count));
  for (int m = 1; m <= m_count; ++m) {
    const std::size_t idx = static_cast<std::size_t>(m - 1);
    trial.interference[idx] = sample_interference(params, rng, trunc_scale);
    const double x =
        trial.ordered_gains[idx] * trial.gamma_t /
        (params.rho_b * trial.interference[idx] + 1.0);
    trial.noma_outage[idx] =
        !alloc.feasible || x < alloc.sinr_target_max[idx];
    trial.oma_outage[idx] =
        x < std::exp2(m_count * alloc.rates[idx]) - 1.0;
  }
  return trial;
}

struct MonteCarloEstimate {
  std::vector<double> per_user_outage;
  std::vector<double> std_err;
  std::vector<double> per_user_oma_outage;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double truncation_radius_pt = 0.0;
};

// Outage frequency per user.  The estimate depends only on (seed, trials,
// params, alloc), not on the worker count.
inline MonteCarloEstimate estimate_outage(const SystemParams& params,
                                          const RateAllocation& alloc,
                                          std::uint64_t trials,
                                          std::uint64_t seed,
                                          unsigned workers = 0,
                                          double trunc_scale = 1.0) {
  if (trials < 1) {
    throw std::invalid_argument("estimate_outage: trials must be >= 1");
  }
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  const std::size_t m_count = static_cast<std::size_t>(params.num_users);
  std::vector<std::vector<std::uint64_t>> noma_counts(
      workers, std::vector<std::uint64_t>(m_count, 0));
  std::vector<std::vector<std::uint64_t>> oma_counts(
      workers, std::vector<std::uint64_t>(m_count, 0));

  const auto work = [&](unsigned w) {
    for (std::uint64_t t = w; t < trials; t += workers) {
      TrialRng rng(seed, t);
      const TrialRealization trial = run_trial(params, alloc, rng, trunc_scale);
      for (std::size_t m = 0; m < m_count; ++m) {
        noma_counts[w][m] += trial.noma_outage[m] ? 1 : 0;
        oma_counts[w][m] += trial.oma_outage[m] ? 1 : 0;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work, w);
    }
    for (auto& th : pool) {
      th.join();
    }
  }

  MonteCarloEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.truncation_radius_pt = truncation_radius(
      params.pt_density, params.alpha, kTruncationTol, params.guard_radius);
  est.per_user_outage.assign(m_count, 0.0);
  est.std_err.assign(m_count, 0.0);
  est.per_user_oma_outage.assign(m_count, 0.0);
  for (std::size_t m = 0; m < m_count; ++m) {
    std::uint64_t noma = 0;
    std::uint64_t oma = 0;
    for (unsigned w = 0; w < workers; ++w) {
      noma += noma_counts[w][m];
      oma += oma_counts[w][m];
    }
    const double p = static_cast<double>(noma) / static_cast<double>(trials);
    est.per_user_outage[m] = p;
    est.std_err[m] = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    est.per_user_oma_outage[m] =
        static_cast<double>(oma) / static_cast<double>(trials);
  }
  return est;
}

}  // namespace crnoma
