#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crnoma/asymptotic.hpp"
#include "crnoma/config.hpp"
#include "crnoma/outage.hpp"
#include "crnoma/sim.hpp"

namespace crnoma {

// One sweep of rho_s: per point and per user the analytic outage, the
// Monte Carlo estimate, the regime-appropriate asymptote, and the OMA
// baseline.  Values are indexed [point][user].
struct OutageCurve {
  std::vector<double> rho_s_db;
  int num_users = 0;
  std::vector<std::vector<double>> analytic;
  std::vector<std::vector<double>> sim_mean;
  std::vector<std::vector<double>> sim_stderr;
  std::vector<std::vector<double>> asymptote;
  std::vector<std::vector<double>> oma_analytic;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::string config_text;  // resolved configuration for artifact metadata
};

inline OutageCurve run_sweep(const Config& cfg, unsigned workers = 0) {
  const std::size_t users = static_cast<std::size_t>(cfg.system.num_users);
  OutageCurve curve;
  curve.rho_s_db = cfg.sweep.rho_s_db;
  curve.num_users = cfg.system.num_users;
  curve.seed = cfg.sweep.seed;
  curve.trials = cfg.sweep.trials;
  curve.config_text = serialize_config(cfg);

  // Asymptotes do not depend on the sweep point: the fixed regime scales
  // the constant by rho_s^-m, the proportional regime is flat.
  std::vector<double> asym_constant(users, 0.0);
  for (std::size_t m = 0; m < users; ++m) {
    if (cfg.sweep.regime == SweepRegime::fixed_rho_b) {
      if (cfg.alloc.feasible &&
          cfg.alloc.sinr_target_max[m] > 0.0) {
        asym_constant[m] = asymptotic_constant_fixed(
            static_cast<int>(m) + 1, cfg.system, cfg.alloc, cfg.quad,
            std::min<std::uint64_t>(cfg.sweep.trials, 200'000),
            cfg.sweep.seed);
      }
    } else {
      asym_constant[m] = outage_floor_proportional(
          static_cast<int>(m) + 1, cfg.system, cfg.alloc, cfg.quad);
    }
  }

  for (double db : curve.rho_s_db) {
    const SystemParams point = cfg.system.at_rho_s_db(db);
    const MonteCarloEstimate est = estimate_outage(
        point, cfg.alloc, cfg.sweep.trials, cfg.sweep.seed, workers);
    std::vector<double> analytic(users), asym(users), oma(users);
    for (std::size_t m = 0; m < users; ++m) {
      const int user = static_cast<int>(m) + 1;
      analytic[m] = outage_exact(user, point, cfg.alloc, cfg.quad);
      oma[m] = oma_outage_exact(user, point, cfg.alloc, cfg.quad);
      if (!cfg.alloc.feasible) {
        asym[m] = 1.0;
      } else if (cfg.sweep.regime == SweepRegime::fixed_rho_b) {
        asym[m] = detail::clamp_probability(
            asym_constant[m] / std::pow(point.rho_s, user));
      } else {
        asym[m] = asym_constant[m];
      }
    }
    curve.analytic.push_back(std::move(analytic));
    curve.sim_mean.push_back(est.per_user_outage);
    curve.sim_stderr.push_back(est.std_err);
    curve.asymptote.push_back(std::move(asym));
    curve.oma_analytic.push_back(std::move(oma));
  }
  return curve;
}

// Least-squares slope of -log10(P_m) against log10(rho_s) over the points
// whose rho_s (dB) lies inside [window.first, window.second].
inline std::vector<double> fit_diversity(const OutageCurve& curve,
                                         std::pair<double, double> window) {
  std::vector<std::size_t> in_window;
  for (std::size_t i = 0; i < curve.rho_s_db.size(); ++i) {
    if (curve.rho_s_db[i] >= window.first &&
        curve.rho_s_db[i] <= window.second) {
      in_window.push_back(i);
    }
  }
  if (in_window.size() < 2) {
    throw std::invalid_argument(
        "fit_diversity: window must contain at least two sweep points");
  }
  std::vector<double> slopes;
  for (int m = 0; m < curve.num_users; ++m) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i : in_window) {
      const double p = curve.analytic[i][static_cast<std::size_t>(m)];
      if (!(p > 0.0)) {
        throw std::invalid_argument(
            "fit_diversity: analytic outage must be positive in the window");
      }
      const double x = curve.rho_s_db[i] / 10.0;  // log10 of linear rho_s
      const double y = -std::log10(p);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(in_window.size());
    slopes.push_back((n * sxy - sx * sy) / (n * sxx - sx * sx));
  }
  return slopes;
}

namespace detail {

inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string comment_block(const std::string& text,
                                 const std::string& prefix) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    out << prefix << line << "\n";
  }
  return out.str();
}

}  // namespace detail

inline void emit_csv(const OutageCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("emit_csv: cannot write '" + path + "'");
  }
  out << "# outage sweep, seed=" << curve.seed << ", trials=" << curve.trials
      << "\n";
  out << detail::comment_block(curve.config_text, "# ");
  out << "rho_s_dB,user_index,analytic,sim_mean,sim_stderr,asymptote,"
         "oma_analytic\n";
  for (std::size_t i = 0; i < curve.rho_s_db.size(); ++i) {
    for (int m = 0; m < curve.num_users; ++m) {
      const std::size_t u = static_cast<std::size_t>(m);
      out << detail::format_g17(curve.rho_s_db[i]) << ',' << (m + 1) << ','
          << detail::format_g17(curve.analytic[i][u]) << ','
          << detail::format_g17(curve.sim_mean[i][u]) << ','
          << detail::format_g17(curve.sim_stderr[i][u]) << ','
          << detail::format_g17(curve.asymptote[i][u]) << ','
          << detail::format_g17(curve.oma_analytic[i][u]) << "\n";
    }
  }
}

// Self-contained log-y SVG line chart, one polyline per (user, series).
inline void emit_svg(const OutageCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("emit_svg: cannot write '" + path + "'");
  }
  const double width = 800.0, height = 600.0;
  const double ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
  const double x_lo = curve.rho_s_db.empty() ? 0.0 : curve.rho_s_db.front();
  const double x_hi = curve.rho_s_db.empty() ? 1.0 : curve.rho_s_db.back();
  const double x_span = x_hi > x_lo ? x_hi - x_lo : 1.0;
  double y_lo = -6.0;  // log10 floor
  const double y_hi = 0.0;

  const auto map_x = [&](double db) {
    return ml + (db - x_lo) / x_span * (width - ml - mr);
  };
  const auto map_y = [&](double log_p) {
    return mt + (y_hi - log_p) / (y_hi - y_lo) * (height - mt - mb);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<!--\n" << curve.config_text << "-->\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << (height - mb) << "\" x2=\""
      << (width - mr) << "\" y2=\"" << (height - mb)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << (height - mb) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (width / 2) << "\" y=\"" << (height - 10)
      << "\" text-anchor=\"middle\">rho_s (dB)</text>\n";
  out << "<text x=\"15\" y=\"" << (height / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << (height / 2) << ")\">outage probability (log10)</text>\n";

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                 "#9467bd", "#ff7f0e", "#8c564b"};
  struct Series {
    const char* name;
    const std::vector<std::vector<double>> OutageCurve::* data;
    const char* dash;
  };
  const Series series[] = {
      {"analytic", &OutageCurve::analytic, ""},
      {"sim", &OutageCurve::sim_mean, "6,3"},
      {"asymptote", &OutageCurve::asymptote, "2,3"},
      {"oma", &OutageCurve::oma_analytic, "10,4"},
  };
  for (int m = 0; m < curve.num_users; ++m) {
    const char* color = colors[m % 6];
    for (const Series& s : series) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\"";
      if (s.dash[0] != '\0') {
        out << " stroke-dasharray=\"" << s.dash << "\"";
      }
      out << " data-series=\"user" << (m + 1) << '-' << s.name
          << "\" points=\"";
      for (std::size_t i = 0; i < curve.rho_s_db.size(); ++i) {
        const double p = (curve.*(s.data))[i][static_cast<std::size_t>(m)];
        if (!(p > 0.0)) {
          continue;
        }
        const double log_p = std::max(std::log10(p), y_lo);
        out << map_x(curve.rho_s_db[i]) << ',' << map_y(log_p) << ' ';
      }
      out << "\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace crnoma
