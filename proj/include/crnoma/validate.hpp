#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "crnoma/channel_cdf.hpp"
#include "crnoma/config.hpp"
#include "crnoma/effective_power.hpp"
#include "crnoma/interference.hpp"
#include "crnoma/outage.hpp"
#include "crnoma/sim.hpp"

namespace crnoma {

// Tolerances and sample counts of the cross-validation suite.  These are
// the same bands the test suite uses; they are exposed here so runs can
// tighten or relax them without recompiling.
struct ValidateOptions {
  double quadrature_tol = 1e-3;
  // The five-node channel-CDF rule has a measured uniform fidelity of
  // ~1.4e-2 against the disc integral; its band is wider than the
  // Laplace-transform rule's.
  double cdf_tol = 2e-2;
  double ks_tol = 0.01;
  double normalization_tol = 1e-6;
  double outage_rel_tol = 0.10;
  double sigma_band = 3.0;
  double min_outage = 1e-3;  // skip cross-validation below this level
  std::uint64_t ks_samples = 100'000;
  std::uint64_t laplace_samples = 1'000'000;
  std::uint64_t ordered_samples = 200'000;
  std::uint64_t outage_trials = 0;  // 0: take the sweep trial count

  static ValidateOptions quick() {
    ValidateOptions opt;
    opt.ks_samples = 20'000;
    opt.laplace_samples = 100'000;
    opt.ordered_samples = 50'000;
    opt.outage_trials = 50'000;
    opt.sigma_band = 4.0;
    opt.ks_tol = 0.02;
    return opt;
  }
};

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.pass; });
  }
  std::string to_string() const {
    std::ostringstream out;
    for (const ValidationCheck& c : checks) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail
          << "\n";
    }
    out << (all_pass() ? "all checks passed" : "validation FAILED") << "\n";
    return out.str();
  }
};

namespace detail {

// Two-sided KS distance between a sorted sample and a (possibly mixed)
// reference law given by its CDF and left limit.
template <typename Cdf, typename CdfLeft>
double ks_distance(std::vector<double> sorted, const Cdf& cdf,
                   const CdfLeft& cdf_left) {
  const std::size_t n = sorted.size();
  double dist = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && sorted[j] == sorted[i]) {
      ++j;
    }
    const double v = sorted[i];
    const double above = static_cast<double>(j) / n;   // F_n(v)
    const double below = static_cast<double>(i) / n;   // F_n(v-)
    dist = std::max(dist, std::abs(above - cdf(v)));
    dist = std::max(dist, std::abs(below - cdf_left(v)));
    i = j;
  }
  return dist;
}

}  // namespace detail

inline ValidationReport validate(const Config& cfg,
                                 const ValidateOptions& opt = {}) {
  ValidationReport report;
  const SystemParams& params = cfg.system;
  const std::uint64_t seed = cfg.sweep.seed;
  std::ostringstream detail;
  detail.precision(4);

  // 1. Unordered-CDF quadrature against the disc integral.
  {
    const ChebyshevRule rule = chebyshev_rule(cfg.quad.cdf_nodes);
    const CdfExpansion ex = unordered_cdf_expansion(params, rule);
    double worst = 0.0;
    for (int i = 0; i <= 50; ++i) {
      const double y = std::pow(10.0, -3.0 + 5.0 * i / 50.0);
      worst = std::max(worst, std::abs(eval_expansion(ex, y) -
                                       unordered_cdf_exact(y, params)));
    }
    detail.str("");
    detail << "max |gc - exact| = " << worst << " (tol " << opt.cdf_tol
           << ")";
    report.checks.push_back(
        {"unordered-cdf quadrature", worst <= opt.cdf_tol, detail.str()});
  }

  // 2. Laplace-transform quadrature against the incomplete-gamma form.
  {
    const ChebyshevRule rule = chebyshev_rule(cfg.quad.laplace_nodes);
    const LaplaceTerms terms = laplace_ib_terms(params, rule);
    double worst = 0.0;
    for (double s : {0.1, 1.0, 10.0}) {
      worst = std::max(worst, std::abs(laplace_ib_gc(s, params, terms) -
                                       laplace_ib_exact(s, params)));
    }
    detail.str("");
    detail << "max |gc - exact| = " << worst << " (tol "
           << opt.quadrature_tol << ")";
    report.checks.push_back(
        {"laplace quadrature", worst <= opt.quadrature_tol, detail.str()});
  }

  // 3. Effective-power law: KS fit, atom mass, and normalization.
  {
    std::vector<double> samples(opt.ks_samples);
    std::uint64_t at_cap = 0;
    for (std::uint64_t i = 0; i < opt.ks_samples; ++i) {
      TrialRng rng(seed ^ 0xA11CE, i);
      samples[i] = sample_gamma_t(params, rng);
      if (samples[i] >= params.rho_s) {
        ++at_cap;
      }
    }
    std::sort(samples.begin(), samples.end());
    const GammaTDistribution dist = gamma_t_parts(params);
    const double ks = detail::ks_distance(
        samples, [&](double x) { return gamma_t_cdf(x, params); },
        [&](double x) {
          return x >= params.rho_s ? 1.0 - dist.atom_weight
                                   : gamma_t_cdf(x, params);
        });
    const double atom_emp =
        static_cast<double>(at_cap) / static_cast<double>(opt.ks_samples);
    const double atom_se =
        std::sqrt(dist.atom_weight * (1.0 - dist.atom_weight) /
                  static_cast<double>(opt.ks_samples));
    const double mass =
        dist.atom_weight +
        integrate([&](double x) { return gamma_t_density(x, params); }, 0.0,
                  params.rho_s, 1e-10);
    const bool pass =
        ks <= opt.ks_tol &&
        std::abs(atom_emp - dist.atom_weight) <=
            std::max(opt.sigma_band * atom_se, 1e-12) &&
        std::abs(mass - 1.0) <= opt.normalization_tol;
    detail.str("");
    detail << "KS = " << ks << " (tol " << opt.ks_tol << "), atom "
           << atom_emp << " vs " << dist.atom_weight << ", mass = " << mass;
    report.checks.push_back({"gamma_t distribution", pass, detail.str()});
  }

  // 4. Interference Laplace transform against sampled power-law fields
  //    (the law the closed form describes; the bounded-loss outage field
  //    sits ~2e-5 * s away from it).
  {
    bool pass = true;
    detail.str("");
    for (double s : {0.5, 2.0, 8.0}) {
      double sum = 0.0, sum_sq = 0.0;
      for (std::uint64_t i = 0; i < opt.laplace_samples; ++i) {
        TrialRng rng(seed ^ 0x1B, i);
        const double v =
            std::exp(-s * sample_interference_powerlaw(params, rng));
        sum += v;
        sum_sq += v * v;
      }
      const double n = static_cast<double>(opt.laplace_samples);
      const double mean = sum / n;
      const double se =
          std::sqrt(std::max(sum_sq / n - mean * mean, 0.0) / n);
      const double exact = laplace_ib_exact(s, params);
      if (std::abs(mean - exact) >
          std::max(opt.sigma_band * se, 1e-12)) {
        pass = false;
      }
      detail << "s=" << s << ": " << mean << " vs " << exact << "; ";
    }
    report.checks.push_back({"laplace empirical", pass, detail.str()});
  }

  // 5. Ordered-channel CDF against sampled order statistics.
  {
    const ChebyshevRule rule = chebyshev_rule(cfg.quad.cdf_nodes);
    const std::size_t users = static_cast<std::size_t>(params.num_users);
    std::vector<std::vector<std::uint64_t>> hits;
    const std::vector<double> probes = {0.05, 0.2, 0.8};
    hits.assign(probes.size(), std::vector<std::uint64_t>(users, 0));
    for (std::uint64_t i = 0; i < opt.ordered_samples; ++i) {
      TrialRng rng(seed ^ 0x0D, i);
      const auto gains = sample_su_gains(params.num_users,
                                         params.user_zone_radius,
                                         params.alpha, rng);
      for (std::size_t p = 0; p < probes.size(); ++p) {
        for (std::size_t m = 0; m < users; ++m) {
          hits[p][m] += gains[m] < probes[p] ? 1 : 0;
        }
      }
    }
    bool pass = true;
    double worst_gap = 0.0;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      for (std::size_t m = 0; m < users; ++m) {
        const double emp = static_cast<double>(hits[p][m]) /
                           static_cast<double>(opt.ordered_samples);
        const double ana = ordered_cdf(probes[p], static_cast<int>(m) + 1,
                                       params, rule);
        const double se = std::sqrt(
            std::max(ana * (1.0 - ana), 1e-12) /
            static_cast<double>(opt.ordered_samples));
        // order statistics amplify the unordered-CDF quadrature error by
        // up to a factor of the user count
        const double band = std::max(opt.sigma_band * se,
                                     params.num_users * opt.cdf_tol);
        worst_gap = std::max(worst_gap, std::abs(emp - ana) - band);
        if (std::abs(emp - ana) > band) {
          pass = false;
        }
      }
    }
    detail.str("");
    detail << "worst excess over band = " << worst_gap;
    report.checks.push_back({"ordered-cdf empirical", pass, detail.str()});
  }

  // 6. Closed-form outage against Monte Carlo at the first sweep point.
  {
    const SystemParams point = params.at_rho_s_db(cfg.sweep.rho_s_db.front());
    const std::uint64_t trials =
        opt.outage_trials ? opt.outage_trials : cfg.sweep.trials;
    const MonteCarloEstimate est =
        estimate_outage(point, cfg.alloc, trials, seed);
    bool pass = true;
    detail.str("");
    for (int m = 1; m <= params.num_users; ++m) {
      const std::size_t idx = static_cast<std::size_t>(m - 1);
      const double ana = outage_exact(m, point, cfg.alloc, cfg.quad);
      const double sim = est.per_user_outage[idx];
      detail << "m=" << m << ": " << ana << " vs " << sim << "; ";
      if (std::max(ana, sim) < opt.min_outage) {
        continue;
      }
      const double band = std::max(opt.outage_rel_tol * sim,
                                   opt.sigma_band * est.std_err[idx]);
      if (std::abs(ana - sim) > band) {
        pass = false;
      }
    }
    report.checks.push_back({"outage cross-validation", pass, detail.str()});
  }

  return report;
}

}  // namespace crnoma
