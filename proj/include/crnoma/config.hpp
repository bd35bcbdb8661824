#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crnoma/params.hpp"

namespace crnoma {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepRegime { fixed_rho_b, proportional };

struct EmitFlags {
  bool csv = true;
  bool svg = false;
  bool report = false;
};

struct SweepSpec {
  std::vector<double> rho_s_db;  // strictly increasing
  SweepRegime regime = SweepRegime::fixed_rho_b;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  EmitFlags emit;
};

struct Config {
  SystemParams system;  // rho_s taken from the first sweep point
  RateAllocation alloc;
  QuadratureSpec quad;
  SweepSpec sweep;
};

namespace detail {

struct ConfigEntry {
  std::string value;
  int line = 0;
  bool used = false;
};

using ConfigMap = std::map<std::string, ConfigEntry>;  // "section.key"

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline ConfigMap parse_key_values(std::istream& in) {
  ConfigMap map;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') {
      continue;
    }
    if (text.front() == '[') {
      if (text.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed section header");
      }
      section = trim(text.substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value' inside a section");
    }
    const std::string key = section + "." + trim(text.substr(0, eq));
    if (map.count(key)) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    }
    map[key] = {trim(text.substr(eq + 1)), line_no, false};
  }
  return map;
}

inline ConfigEntry* find(ConfigMap& map, const std::string& key) {
  auto it = map.find(key);
  if (it == map.end()) {
    return nullptr;
  }
  it->second.used = true;
  return &it->second;
}

inline ConfigEntry& require(ConfigMap& map, const std::string& key) {
  ConfigEntry* entry = find(map, key);
  if (!entry) {
    throw ConfigError("config: missing required key '" + key + "'");
  }
  return *entry;
}

inline double to_double(const ConfigEntry& e, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(e.value, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != e.value.size()) {
    throw ConfigError("config line " + std::to_string(e.line) + ": key '" +
                      key + "' is not a number");
  }
  return v;
}

inline std::uint64_t to_u64(const ConfigEntry& e, const std::string& key) {
  const double v = to_double(e, key);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
    throw ConfigError("config line " + std::to_string(e.line) + ": key '" +
                      key + "' must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(v);
}

inline std::vector<double> to_list(const ConfigEntry& e,
                                   const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      continue;
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != item.size()) {
      throw ConfigError("config line " + std::to_string(e.line) + ": key '" +
                        key + "' has a non-numeric entry '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) {
    throw ConfigError("config line " + std::to_string(e.line) + ": key '" +
                      key + "' must list at least one value");
  }
  return out;
}

}  // namespace detail

inline Config load_config_stream(std::istream& in) {
  using namespace detail;
  ConfigMap map = parse_key_values(in);

  Config cfg;

  // [sweep] first: the system block needs the first rho_s point.
  cfg.sweep.rho_s_db = to_list(require(map, "sweep.rho_s_dB"), "sweep.rho_s_dB");
  for (std::size_t i = 1; i < cfg.sweep.rho_s_db.size(); ++i) {
    if (!(cfg.sweep.rho_s_db[i] > cfg.sweep.rho_s_db[i - 1])) {
      throw ConfigError(
          "config: [sweep] rho_s_dB points must be strictly increasing");
    }
  }
  const ConfigEntry& regime = require(map, "sweep.regime");
  if (regime.value == "fixed_rho_b") {
    cfg.sweep.regime = SweepRegime::fixed_rho_b;
  } else if (regime.value == "proportional") {
    cfg.sweep.regime = SweepRegime::proportional;
  } else {
    throw ConfigError("config line " + std::to_string(regime.line) +
                      ": regime must be fixed_rho_b or proportional");
  }
  cfg.sweep.trials = to_u64(require(map, "sweep.trials"), "sweep.trials");
  if (cfg.sweep.trials < 1) {
    throw ConfigError("config: [sweep] trials must be >= 1");
  }
  cfg.sweep.seed = to_u64(require(map, "sweep.seed"), "sweep.seed");
  if (ConfigEntry* emit = find(map, "sweep.emit")) {
    cfg.sweep.emit = {false, false, false};
    std::stringstream ss(emit->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item == "csv") {
        cfg.sweep.emit.csv = true;
      } else if (item == "svg") {
        cfg.sweep.emit.svg = true;
      } else if (item == "report") {
        cfg.sweep.emit.report = true;
      } else if (!item.empty()) {
        throw ConfigError("config line " + std::to_string(emit->line) +
                          ": unknown emit flag '" + item + "'");
      }
    }
  }

  // [system]
  SystemParams& sys = cfg.system;
  const double users = to_double(require(map, "system.M"), "system.M");
  if (users < 1.0 || users != static_cast<int>(users)) {
    throw ConfigError("config: [system] M must be a positive integer");
  }
  sys.num_users = static_cast<int>(users);
  sys.alpha = to_double(require(map, "system.alpha"), "system.alpha");
  if (!(sys.alpha > 2.0)) {
    throw ConfigError(
        "config: [system] alpha must exceed 2: the plane-wide interference "
        "integral diverges otherwise");
  }
  sys.user_zone_radius = to_double(require(map, "system.R_D"), "system.R_D");
  sys.guard_radius = to_double(require(map, "system.d_0"), "system.d_0");
  sys.pt_density = to_double(require(map, "system.lambda_b"), "system.lambda_b");
  sys.pr_density = to_double(require(map, "system.lambda_l"), "system.lambda_l");
  sys.kappa = to_double(require(map, "system.kappa"), "system.kappa");
  if (!(*sys.kappa > 0.0)) {
    throw ConfigError("config: [system] kappa must be positive");
  }
  ConfigEntry* rho_b_db = find(map, "system.rho_b_dB");
  ConfigEntry* nu = find(map, "system.nu");
  if (cfg.sweep.regime == SweepRegime::fixed_rho_b) {
    if (!rho_b_db || nu) {
      throw ConfigError(
          "config: regime fixed_rho_b requires [system] rho_b_dB and "
          "forbids nu");
    }
    sys.rho_b = db_to_linear(to_double(*rho_b_db, "system.rho_b_dB"));
  } else {
    if (!nu || rho_b_db) {
      throw ConfigError(
          "config: regime proportional requires [system] nu and forbids "
          "rho_b_dB");
    }
    sys.nu = to_double(*nu, "system.nu");
    if (!(*sys.nu > 0.0)) {
      throw ConfigError("config: [system] nu must be positive");
    }
  }
  sys.rho_s = db_to_linear(cfg.sweep.rho_s_db.front());
  sys.rho_p = *sys.kappa * sys.rho_s;
  if (sys.nu) {
    sys.rho_b = *sys.nu * sys.rho_s;
  }
  try {
    sys.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: [system] ") + e.what());
  }

  // [allocation]
  const auto a = to_list(require(map, "allocation.a"), "allocation.a");
  const auto rates = to_list(require(map, "allocation.R"), "allocation.R");
  if (static_cast<int>(a.size()) != sys.num_users ||
      static_cast<int>(rates.size()) != sys.num_users) {
    throw ConfigError("config: [allocation] a and R must each list M values");
  }
  try {
    cfg.alloc = make_rate_allocation(a, rates);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: [allocation] ") + e.what());
  }

  // [quadrature]
  if (ConfigEntry* n = find(map, "quadrature.N")) {
    cfg.quad.cdf_nodes = static_cast<int>(to_u64(*n, "quadrature.N"));
  }
  if (ConfigEntry* k = find(map, "quadrature.K")) {
    cfg.quad.power_nodes = static_cast<int>(to_u64(*k, "quadrature.K"));
  }
  if (ConfigEntry* l = find(map, "quadrature.L")) {
    cfg.quad.laplace_nodes = static_cast<int>(to_u64(*l, "quadrature.L"));
  }
  try {
    cfg.quad.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: [quadrature] ") + e.what());
  }

  for (const auto& [key, entry] : map) {
    if (!entry.used) {
      throw ConfigError("config line " + std::to_string(entry.line) +
                        ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  return load_config_stream(in);
}

// Canonical text form of a loaded configuration; embedded in emitted
// artifacts so any output can be reproduced from its own metadata.
inline std::string serialize_config(const Config& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "[system]\n";
  out << "M = " << cfg.system.num_users << "\n";
  out << "alpha = " << cfg.system.alpha << "\n";
  out << "R_D = " << cfg.system.user_zone_radius << "\n";
  out << "d_0 = " << cfg.system.guard_radius << "\n";
  out << "lambda_b = " << cfg.system.pt_density << "\n";
  out << "lambda_l = " << cfg.system.pr_density << "\n";
  out << "kappa = " << *cfg.system.kappa << "\n";
  if (cfg.sweep.regime == SweepRegime::fixed_rho_b) {
    out << "rho_b_dB = " << linear_to_db(cfg.system.rho_b) << "\n";
  } else {
    out << "nu = " << *cfg.system.nu << "\n";
  }
  out << "\n[allocation]\n";
  out << "a = ";
  for (std::size_t i = 0; i < cfg.alloc.coefficients.size(); ++i) {
    out << (i ? ", " : "") << cfg.alloc.coefficients[i];
  }
  out << "\nR = ";
  for (std::size_t i = 0; i < cfg.alloc.rates.size(); ++i) {
    out << (i ? ", " : "") << cfg.alloc.rates[i];
  }
  out << "\n\n[quadrature]\n";
  out << "N = " << cfg.quad.cdf_nodes << "\n";
  out << "K = " << cfg.quad.power_nodes << "\n";
  out << "L = " << cfg.quad.laplace_nodes << "\n";
  out << "\n[sweep]\n";
  out << "rho_s_dB = ";
  for (std::size_t i = 0; i < cfg.sweep.rho_s_db.size(); ++i) {
    out << (i ? ", " : "") << cfg.sweep.rho_s_db[i];
  }
  out << "\nregime = "
      << (cfg.sweep.regime == SweepRegime::fixed_rho_b ? "fixed_rho_b"
                                                       : "proportional")
      << "\n";
  out << "trials = " << cfg.sweep.trials << "\n";
  out << "seed = " << cfg.sweep.seed << "\n";
  out << "emit =";
  bool first = true;
  if (cfg.sweep.emit.csv) {
    out << (first ? " " : ", ") << "csv";
    first = false;
  }
  if (cfg.sweep.emit.svg) {
    out << (first ? " " : ", ") << "svg";
    first = false;
  }
  if (cfg.sweep.emit.report) {
    out << (first ? " " : ", ") << "report";
    first = false;
  }
  out << "\n";
  return out.str();
}

}  // namespace crnoma
