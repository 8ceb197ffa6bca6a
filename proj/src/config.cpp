#include "levyset/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace levyset {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ParsedConfig ParsedConfig::from_string(const std::string& text) {
  ParsedConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    }
    cfg.kv_[key] = value;
  }
  return cfg;
}

ParsedConfig ParsedConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

bool ParsedConfig::has(const std::string& key) const { return kv_.count(key) != 0; }

void ParsedConfig::set(const std::string& key, std::string value) {
  kv_[key] = std::move(value);
}

std::string ParsedConfig::str(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double ParsedConfig::number(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config key '" + key + "' is not a number: " + it->second);
  }
}

long long ParsedConfig::integer(const std::string& key, long long fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config key '" + key + "' is not an integer: " + it->second);
  }
}

std::vector<double> ParsedConfig::number_list(const std::string& key,
                                              const std::vector<double>& fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::vector<double> out;
  std::istringstream in(it->second);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw std::invalid_argument("config key '" + key + "' has a bad list entry: " + tok);
    }
  }
  if (out.empty()) throw std::invalid_argument("config key '" + key + "' is an empty list");
  return out;
}

std::vector<int> ParsedConfig::int_list(const std::string& key,
                                        const std::vector<int>& fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::vector<int> out;
  for (double v : number_list(key, {})) out.push_back(static_cast<int>(v));
  return out;
}

Kernel kernel_from_config(const ParsedConfig& cfg) {
  const std::string type = cfg.str("kernel.type", "rl");
  const double horizon = cfg.number("kernel.horizon", 1.0);
  if (type == "exp") {
    return make_exponential(cfg.number("kernel.kappa", 1.0), horizon);
  }
  if (type == "rl") {
    return make_riemann_liouville(cfg.number("kernel.beta", 0.75), horizon);
  }
  if (type == "mg") {
    const std::string arg = cfg.str("kernel.mg_argument", "total");
    if (arg != "total" && arg != "running") {
      throw std::invalid_argument("kernel.mg_argument must be 'total' or 'running'");
    }
    return make_molchan_golosov(cfg.number("kernel.beta", 0.75), horizon,
                                arg == "total" ? MgArgument::OverTotalTime
                                               : MgArgument::OverRunningTime);
  }
  if (type == "exp*rl") {
    return make_product(make_exponential(cfg.number("kernel.kappa", 1.0), horizon),
                        make_riemann_liouville(cfg.number("kernel.beta", 0.75), horizon));
  }
  throw std::invalid_argument("unknown kernel.type: " + type);
}

LevyDriverSpec driver_from_config(const ParsedConfig& cfg) {
  const std::string jumps = cfg.str("driver.jumps", "stable");
  const double horizon = cfg.number("driver.horizon", 1.0);
  if (jumps == "none") {
    LevyDriverSpec spec;
    spec.horizon = horizon;
    validate_driver(spec);
    return spec;
  }
  if (jumps == "stable") {
    return make_stable_driver(cfg.number("driver.alpha", 1.5), cfg.number("driver.C", 1.0),
                              cfg.number("driver.eps", 1e-3),
                              static_cast<int>(cfg.integer("driver.dim", 1)), horizon);
  }
  if (jumps == "cp") {
    return make_compound_poisson_driver(
        cp_uniform_symmetric(cfg.number("driver.rate", 1.0), cfg.number("driver.mark_lo", 1.0),
                             cfg.number("driver.mark_hi", 2.0)),
        horizon);
  }
  throw std::invalid_argument("unknown driver.jumps: " + jumps);
}

BFamily family_from_config(const ParsedConfig& cfg) {
  const std::string type = cfg.str("family.type", "shifted");
  if (type == "shifted") return shifted_constant_family();
  if (type == "accumulating") return accumulating_family();
  if (type == "fixed_gap") return fixed_gap_family(cfg.number("family.delta", 0.1));
  throw std::invalid_argument("unknown family.type: " + type);
}

MonotoneIngredients ingredients_from_config(const ParsedConfig& cfg) {
  MonotoneIngredients ing;
  ing.x0 = {cfg.number("monotone.x0_lo", 0.0), cfg.number("monotone.x0_hi", 0.0)};
  ing.k1 = {cfg.number("monotone.k1_lo", 0.0), cfg.number("monotone.k1_hi", 0.0)};
  ing.k2 = cfg.number_list("monotone.k2", {0.0});
  ing.k3 = {cfg.number("monotone.k3_lo", 0.0), cfg.number("monotone.k3_hi", 0.0)};
  ing.k4 = cfg.number_list("monotone.k4", {0.0});
  if (ing.x0.lo > ing.x0.hi || ing.k1.lo > ing.k1.hi || ing.k3.lo > ing.k3.hi) {
    throw std::invalid_argument("monotone intervals need lo <= hi");
  }
  return ing;
}

std::vector<Violation> validate_config(const ParsedConfig& cfg, const std::string& subcommand) {
  std::vector<Violation> out;
  Kernel kernel;
  bool have_kernel = false;
  try {
    kernel = kernel_from_config(cfg);
    have_kernel = true;
  } catch (const std::exception& e) {
    out.push_back({true, std::string("kernel: ") + e.what()});
  }
  LevyDriverSpec driver;
  bool have_driver = false;
  try {
    driver = driver_from_config(cfg);
    have_driver = true;
  } catch (const std::exception& e) {
    out.push_back({true, std::string("driver: ") + e.what()});
  }
  try {
    ingredients_from_config(cfg);
  } catch (const std::exception& e) {
    out.push_back({true, std::string("monotone: ") + e.what()});
  }

  if (subcommand == "unbounded-growth") {
    try {
      const BFamily family = family_from_config(cfg);
      const double t = cfg.number("experiment.t", 1.0);
      for (int n : cfg.int_list("experiment.n_values", {2, 4, 8, 16, 32, 64, 128, 256})) {
        verify_separation(family, n, 0.0, t, cfg.number("experiment.r", 1.0));
      }
      const double alpha = cfg.number("driver.alpha", 1.5);
      if (!(alpha > 1.0 && alpha < 2.0)) {
        out.push_back({true, "unbounded-growth: driver.alpha must lie in (1, 2)"});
      }
    } catch (const std::exception& e) {
      out.push_back({true, std::string("separation certificate: ") + e.what()});
    }
  }
  if (subcommand == "bounded-check" && have_driver && !finite_variation_small_jumps(driver)) {
    out.push_back({true,
                   "bounded-check: small jumps must have finite variation (alpha < 1 or "
                   "finite activity)"});
  }
  if (subcommand == "explosion" && have_kernel && !kernel.singular) {
    out.push_back({true, "explosion: kernel must be singular"});
  }
  if (have_driver && !symmetric_small_jumps(driver)) {
    out.push_back({true,
                   "driver: compensated small-jump integrals require symmetric marks; "
                   "asymmetric infinite-variation measures are not supported"});
  }
  if ((subcommand == "monotone-demo" || subcommand == "simulate") && have_kernel && have_driver) {
    try {
      const IntegrabilityReport ir =
          integrability_condition_check(ingredients_from_config(cfg), driver);
      if (!ir.finite) {
        out.push_back({true, "monotone: integrability conditions fail (suprema not finite)"});
      }
    } catch (const std::exception& e) {
      out.push_back({true, std::string("integrability check: ") + e.what()});
    }
    if (kernel.singular && infinite_activity(driver)) {
      out.push_back({false,
                     "warning: singular kernel with infinitely active jumps kills the "
                     "increasing process instantly; it is never integrably bounded"});
    }
  }
  return out;
}

}  // namespace levyset
