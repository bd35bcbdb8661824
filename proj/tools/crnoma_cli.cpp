// Command-line front end: outage evaluation, simulation, sweeps,
// cross-validation, and diversity-slope fitting over a config file.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crnoma/crnoma.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::vector<double>> rho_s_db;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

crnoma::Config load_with_overrides(const CommonArgs& args) {
  crnoma::Config cfg = crnoma::load_config(args.config_path);
  if (args.rho_s_db) {
    cfg.sweep.rho_s_db = *args.rho_s_db;
    for (std::size_t i = 1; i < cfg.sweep.rho_s_db.size(); ++i) {
      if (!(cfg.sweep.rho_s_db[i] > cfg.sweep.rho_s_db[i - 1])) {
        throw crnoma::ConfigError(
            "--rho-s-db points must be strictly increasing");
      }
    }
    cfg.system = cfg.system.at_rho_s_db(cfg.sweep.rho_s_db.front());
  }
  if (args.trials) {
    if (*args.trials < 1) {
      throw crnoma::ConfigError("--trials must be >= 1");
    }
    cfg.sweep.trials = *args.trials;
  }
  if (args.seed) {
    cfg.sweep.seed = *args.seed;
  }
  return cfg;
}

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "configuration file")
      ->required();
  sub->add_option("--rho-s-db", args.rho_s_db,
                  "override sweep points (dB, strictly increasing)");
  sub->add_option("--trials", args.trials, "override Monte Carlo trials");
  sub->add_option("--seed", args.seed, "override random seed");
  sub->add_option("--out", args.out_dir, "output directory");
}

int cmd_outage(const CommonArgs& args) {
  const crnoma::Config cfg = load_with_overrides(args);
  std::printf("rho_s_dB  user  analytic      oma_analytic\n");
  for (double db : cfg.sweep.rho_s_db) {
    const crnoma::SystemParams point = cfg.system.at_rho_s_db(db);
    for (int m = 1; m <= point.num_users; ++m) {
      std::printf("%8.2f  %4d  %.6e  %.6e\n", db, m,
                  crnoma::outage_exact(m, point, cfg.alloc, cfg.quad),
                  crnoma::oma_outage_exact(m, point, cfg.alloc, cfg.quad));
    }
  }
  return 0;
}

int cmd_simulate(const CommonArgs& args, unsigned workers) {
  const crnoma::Config cfg = load_with_overrides(args);
  std::printf("rho_s_dB  user  sim_mean      sim_stderr    (trials=%llu seed=%llu)\n",
              static_cast<unsigned long long>(cfg.sweep.trials),
              static_cast<unsigned long long>(cfg.sweep.seed));
  for (double db : cfg.sweep.rho_s_db) {
    const crnoma::SystemParams point = cfg.system.at_rho_s_db(db);
    const crnoma::MonteCarloEstimate est = crnoma::estimate_outage(
        point, cfg.alloc, cfg.sweep.trials, cfg.sweep.seed, workers);
    for (int m = 1; m <= point.num_users; ++m) {
      std::printf("%8.2f  %4d  %.6e  %.6e\n", db, m,
                  est.per_user_outage[static_cast<std::size_t>(m - 1)],
                  est.std_err[static_cast<std::size_t>(m - 1)]);
    }
  }
  return 0;
}

int cmd_sweep(const CommonArgs& args, unsigned workers) {
  const crnoma::Config cfg = load_with_overrides(args);
  const crnoma::OutageCurve curve = crnoma::run_sweep(cfg, workers);
  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path out(args.out_dir);
  if (cfg.sweep.emit.csv) {
    crnoma::emit_csv(curve, (out / "outage_curve.csv").string());
    std::cout << "wrote " << (out / "outage_curve.csv").string() << "\n";
  }
  if (cfg.sweep.emit.svg) {
    crnoma::emit_svg(curve, (out / "outage_curve.svg").string());
    std::cout << "wrote " << (out / "outage_curve.svg").string() << "\n";
  }
  if (cfg.sweep.emit.report) {
    const crnoma::ValidationReport report = crnoma::validate(cfg);
    std::ofstream rep(out / "validation_report.txt");
    rep << report.to_string();
    std::cout << "wrote " << (out / "validation_report.txt").string() << "\n";
    if (!report.all_pass()) {
      return 2;
    }
  }
  return 0;
}

int cmd_validate(const CommonArgs& args, bool quick) {
  const crnoma::Config cfg = load_with_overrides(args);
  const crnoma::ValidateOptions opt =
      quick ? crnoma::ValidateOptions::quick() : crnoma::ValidateOptions{};
  const crnoma::ValidationReport report = crnoma::validate(cfg, opt);
  std::cout << report.to_string();
  return report.all_pass() ? 0 : 2;
}

int cmd_diversity(const CommonArgs& args, std::vector<double> window,
                  unsigned workers) {
  crnoma::Config cfg = load_with_overrides(args);
  // Slopes are fitted on the analytic curve; a single trial keeps the
  // simulation leg of the sweep cheap unless the user overrode it.
  if (!args.trials) {
    cfg.sweep.trials = 1;
  }
  const crnoma::OutageCurve curve = crnoma::run_sweep(cfg, workers);
  if (window.empty()) {
    window = {cfg.sweep.rho_s_db.front(), cfg.sweep.rho_s_db.back()};
  }
  const std::vector<double> slopes =
      crnoma::fit_diversity(curve, {window[0], window[1]});
  std::printf("diversity slopes over [%.1f, %.1f] dB:\n", window[0],
              window[1]);
  for (std::size_t m = 0; m < slopes.size(); ++m) {
    std::printf("  user %zu: %.4f\n", m + 1, slopes[m]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outage analysis toolkit for NOMA in underlay cognitive "
               "radio networks"};
  app.require_subcommand(1);

  unsigned workers = 0;
  app.add_option("--workers", workers,
                 "worker threads for simulation (0 = hardware)");

  CommonArgs outage_args, simulate_args, sweep_args, validate_args,
      diversity_args;
  bool quick = false;
  std::vector<double> window;

  add_common(app.add_subcommand("outage", "closed-form outage per user"),
             outage_args);
  add_common(app.add_subcommand("simulate", "Monte Carlo outage estimate"),
             simulate_args);
  add_common(app.add_subcommand("sweep", "full sweep with CSV/SVG emission"),
             sweep_args);
  CLI::App* validate_sub =
      app.add_subcommand("validate", "analytic-vs-simulation checks");
  add_common(validate_sub, validate_args);
  validate_sub->add_flag("--quick", quick, "reduced sample counts");
  CLI::App* diversity_sub =
      app.add_subcommand("diversity", "fit outage slopes vs rho_s");
  add_common(diversity_sub, diversity_args);
  diversity_sub
      ->add_option("--window-db", window, "fit window [lo hi] in dB")
      ->expected(2);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("outage")) {
      return cmd_outage(outage_args);
    }
    if (app.got_subcommand("simulate")) {
      return cmd_simulate(simulate_args, workers);
    }
    if (app.got_subcommand("sweep")) {
      return cmd_sweep(sweep_args, workers);
    }
    if (app.got_subcommand("validate")) {
      return cmd_validate(validate_args, quick);
    }
    if (app.got_subcommand("diversity")) {
      return cmd_diversity(diversity_args, window, workers);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
