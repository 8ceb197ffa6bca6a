#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "levyset/config.hpp"
#include "levyset/monotone.hpp"
#include "levyset/parallel.hpp"
#include "levyset/presets.hpp"
#include "levyset/report.hpp"
#include "levyset/slepian.hpp"
#include "levyset/svint.hpp"

namespace {

using namespace levyset;

struct Options {
  std::string config_path;
  std::uint64_t seed = 1;
  long long reps = -1;  // -1: subcommand default
  std::string out_dir = "out";
  int workers = 1;
  std::string preset;
  bool dump_paths = false;
};

std::ofstream open_output(const Options& opt, const std::string& filename) {
  std::filesystem::create_directories(opt.out_dir);
  const auto path = std::filesystem::path(opt.out_dir) / filename;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path.string());
  return os;
}

int finish(const Options& opt, const ExperimentReport& report, const std::string& csv_name) {
  auto os = open_output(opt, csv_name);
  write_report_csv(report, os);
  print_report(report, std::cout);
  return report.passed() ? 0 : 2;
}

long long reps_or(const Options& opt, long long fallback) {
  return opt.reps > 0 ? opt.reps : fallback;
}

int run_unbounded_growth(const Options& opt, const ParsedConfig& cfg) {
  GrowthExperimentConfig gc;
  gc.alpha = cfg.number("driver.alpha", 1.5);
  gc.stable_scale = cfg.number("driver.C", 1.0);
  gc.truncation_eps = cfg.number("driver.eps", 1e-3);
  gc.n_values = cfg.int_list("experiment.n_values", {2, 4, 8, 16, 32, 64, 128, 256});
  gc.family = family_from_config(cfg);
  gc.t = cfg.number("experiment.t", 1.0);
  gc.kernel_beta = cfg.number("kernel.beta", 2.0);
  gc.reps = static_cast<int>(reps_or(opt, 20000));
  gc.r = cfg.number("experiment.r", 1.0);
  gc.seed = opt.seed;
  gc.workers = opt.workers;
  return finish(opt, unboundedness_experiment(gc), "unbounded-growth.csv");
}

int run_bounded_check(const Options& opt, ParsedConfig cfg) {
  if (!cfg.has("driver.alpha")) cfg.set("driver.alpha", "0.5");
  BoundednessConfig bc;
  bc.driver = driver_from_config(cfg);
  bc.kernel = kernel_from_config(cfg);
  bc.family_multipliers = cfg.number_list("family.multipliers", {1.0, 2.0});
  bc.t = cfg.number("experiment.t", 1.0);
  bc.reps = static_cast<int>(reps_or(opt, 10000));
  bc.combinations = static_cast<int>(cfg.integer("experiment.combinations", 1000));
  bc.seed = opt.seed;
  bc.workers = opt.workers;
  return finish(opt, boundedness_bound_check(bc), "bounded-check.csv");
}

int run_explosion(const Options& opt, const ParsedConfig& cfg) {
  const Kernel kernel = kernel_from_config(cfg);
  const double rate = cfg.number("driver.rate", 1.0);
  const double horizon = cfg.number("driver.horizon", 1.0);
  const int reps = static_cast<int>(reps_or(opt, 10000));
  return finish(
      opt, explosion_probability_experiment(kernel, rate, horizon, reps, opt.seed, opt.workers),
      "explosion.csv");
}

int run_covariance(const Options& opt, ParsedConfig cfg) {
  CovarianceConfig cc;
  cc.t = cfg.number("experiment.t", 1.0);
  std::vector<double> default_u;
  for (int k = 3; k <= 10; ++k) default_u.push_back(std::ldexp(1.0, -k));
  cc.u_values = cfg.number_list("experiment.u_values", default_u);
  double u_max = 0.0;
  for (double u : cc.u_values) u_max = std::max(u_max, u);
  if (!cfg.has("kernel.horizon")) {
    cfg.set("kernel.horizon", format_double(cc.t + u_max));
  }
  cc.kernel = kernel_from_config(cfg);
  cc.reps = static_cast<int>(reps_or(opt, 0));
  cc.seed = opt.seed;
  cc.workers = opt.workers;
  return finish(opt, covariance_decay_check(cc), "covariance.csv");
}

int run_stable_max(const Options& opt, const ParsedConfig& cfg) {
  StableMaxConfig sc;
  sc.alpha = cfg.number("driver.alpha", 1.5);
  sc.n_values = cfg.int_list("experiment.n_values", {2, 8, 32, 128});
  sc.scale = cfg.number("experiment.scale", 1.0);
  sc.reps = static_cast<int>(reps_or(opt, 20000));
  sc.seed = opt.seed;
  sc.workers = opt.workers;
  return finish(opt, stable_vector_maximum(sc), "stable-max.csv");
}

int run_slepian(const Options& opt, const ParsedConfig& cfg) {
  SlepianConfig sc = default_slepian_config();
  sc.alpha = cfg.number("slepian.alpha", 1.5);
  sc.rho = cfg.number("slepian.rho", 1.0);
  if (cfg.has("kernel.type") || cfg.has("kernel.beta")) sc.kernel = kernel_from_config(cfg);
  if (cfg.has("family.type")) sc.family = family_from_config(cfg);
  sc.t0 = cfg.number("experiment.t0", 0.0);
  sc.t = cfg.number("experiment.t", 1.0);
  const std::vector<int> ns = cfg.int_list("experiment.n_values", {2, 3, 4, 6, 8, 12, 16, 24, 32});
  const ExperimentReport report = comparison_report(sc, ns);
  auto table = open_output(opt, "slepian.csv");
  write_slepian_csv(report, table);
  return finish(opt, report, "slepian-report.csv");
}

void dump_rep0_path(const Options& opt, const PathRealization& path, int brownian_dim) {
  auto inc = open_output(opt, "increments.csv");
  inc << "time,component,value\n";
  for (std::size_t i = 0; i + 1 < path.grid.size(); ++i) {
    for (int col = 0; col < brownian_dim; ++col) {
      inc << format_double(path.grid[i + 1]) << "," << col << ","
          << format_double(path.brownian_increments[i * static_cast<std::size_t>(brownian_dim) +
                                                    static_cast<std::size_t>(col)])
          << "\n";
    }
  }
  auto jmp = open_output(opt, "jumps.csv");
  jmp << "time";
  const int d = path.jumps.empty() ? 1 : static_cast<int>(path.jumps.front().mark.size());
  for (int c = 1; c <= d; ++c) jmp << ",z" << c;
  jmp << ",class\n";
  for (const JumpEvent& jump : path.jumps) {
    jmp << format_double(jump.time);
    for (double z : jump.mark) jmp << "," << format_double(z);
    jmp << "," << (jump.size_class == JumpSizeClass::Large ? "large" : "small") << "\n";
  }
}

int run_simulate(const Options& opt, const ParsedConfig& cfg) {
  const Kernel kernel = kernel_from_config(cfg);
  const LevyDriverSpec driver = driver_from_config(cfg);
  const MonotoneIngredients ing = ingredients_from_config(cfg);
  const int grid_size = static_cast<int>(cfg.integer("experiment.grid_size", 256));
  const long long reps = reps_or(opt, 4);

  auto os = open_output(opt, "simulate.csv");
  ExperimentReport report;
  report.name = "simulate";
  report.seed = opt.seed;
  report.reps = reps;
  report.truncation_eps = infinite_activity(driver) ? driver.truncation_eps : 0.0;
  report.truncation_variance = truncation_error_variance(driver);
  long long exploded_paths = 0;
  for (long long rep = 0; rep < reps; ++rep) {
    PathRealization path =
        sample_path(driver, grid_size, opt.seed, substream(static_cast<std::uint64_t>(rep), 0));
    path = insert_jump_times(path, driver.brownian_dim, opt.seed,
                             substream(static_cast<std::uint64_t>(rep), 1));
    if (opt.dump_paths && rep == 0) dump_rep0_path(opt, path, driver.brownian_dim);
    const SetPath sp = build_set_path(ing, kernel, path);
    write_set_path_csv(sp, Tau{}, rep, os, rep == 0);
    for (const auto& v : sp.values) {
      if (v.exploded) {
        ++exploded_paths;
        break;
      }
    }
  }
  ReportRow row;
  row.experiment = "simulate.exploded_path_fraction";
  row.x = static_cast<double>(reps);
  row.estimate = static_cast<double>(exploded_paths) / static_cast<double>(reps);
  row.verdict = "info:fraction_of_paths_with_directed_infinity";
  report.rows.push_back(std::move(row));
  return finish(opt, report, "simulate-report.csv");
}

int run_monotone_demo(const Options& opt, const ParsedConfig& cfg) {
  if (opt.preset.empty()) {
    std::cerr << "monotone-demo requires --preset example6|example7|example8|example9\n";
    return 1;
  }
  const double beta = cfg.number("kernel.beta", 0.0);
  const int grid_size = static_cast<int>(cfg.integer("experiment.grid_size", 0));
  const MonotoneDemoSetup setup = monotone_demo_setup(opt.preset, beta, grid_size);
  const long long reps = reps_or(opt, 4);
  const double width_tol = cfg.number("experiment.width_tol", 1e-9);

  ExperimentReport report;
  report.name = "monotone-demo." + setup.name;
  report.seed = opt.seed;
  report.reps = reps;
  report.truncation_eps = infinite_activity(setup.driver) ? setup.driver.truncation_eps : 0.0;
  report.truncation_variance = truncation_error_variance(setup.driver);

  auto os = open_output(opt, "monotone-demo.csv");
  os << "rep,t,x_lo,x_hi,x_exploded,down_lo,down_hi,tau_hit,up_lo,up_hi,up_exploded,w_conv\n";

  const bool need_brownian = [&] {
    for (double c : setup.ingredients.k2) {
      if (c != 0.0) return true;
    }
    return false;
  }();

  long long exploded_paths = 0;
  double max_identity_error = 0.0;
  bool explosion_absorbing = true;
  for (long long rep = 0; rep < reps; ++rep) {
    PathRealization path = sample_path(setup.driver, setup.grid_size, opt.seed,
                                       substream(static_cast<std::uint64_t>(rep), 0));
    path = insert_jump_times(path, setup.driver.brownian_dim, opt.seed,
                             substream(static_cast<std::uint64_t>(rep), 1));
    std::vector<std::vector<double>> table;
    std::vector<double> w_conv(path.grid.size(), 0.0);
    const std::vector<std::vector<double>>* table_ptr = nullptr;
    if (need_brownian) {
      table = convolution_weight_table(setup.kernel, path.grid);
      w_conv = convoluted_brownian_scalar(table, path);
      table_ptr = &table;
    }
    const SetPath sp = build_set_path(setup.ingredients, setup.kernel, path, table_ptr);
    const auto [down, tau] = decreasing_process(sp, width_tol);
    const SetPath up = increasing_process(sp);

    double run_min = 0.0, run_max = 0.0;
    bool seen_exploded = false;
    for (std::size_t i = 0; i < sp.times.size(); ++i) {
      run_min = std::min(run_min, w_conv[i]);
      run_max = std::max(run_max, w_conv[i]);
      const auto& xv = sp.values[i];
      const auto& dv = down.values[i];
      const auto& uv = up.values[i];
      if (seen_exploded && !uv.exploded) explosion_absorbing = false;
      if (uv.exploded) seen_exploded = true;
      os << rep << "," << format_double(sp.times[i]) << ","
         << format_double(xv.exploded ? -HUGE_VAL : xv.iv.lo) << ","
         << format_double(xv.exploded ? HUGE_VAL : xv.iv.hi) << "," << (xv.exploded ? 1 : 0)
         << "," << format_double(dv.iv.lo) << "," << format_double(dv.iv.hi) << ","
         << ((tau.hit && i >= tau.index) ? 1 : 0) << ","
         << format_double(uv.exploded ? -HUGE_VAL : uv.iv.lo) << ","
         << format_double(uv.exploded ? HUGE_VAL : uv.iv.hi) << "," << (uv.exploded ? 1 : 0)
         << "," << format_double(w_conv[i]) << "\n";
      if (setup.name == "example9" && !uv.exploded) {
        max_identity_error = std::max(max_identity_error, std::abs(uv.iv.lo - run_min));
        max_identity_error = std::max(max_identity_error, std::abs(uv.iv.hi - run_max));
      }
    }
    if (seen_exploded) ++exploded_paths;
  }

  ReportRow frac;
  frac.experiment = "monotone_demo.exploded_path_fraction";
  frac.estimate = static_cast<double>(exploded_paths) / static_cast<double>(reps);
  frac.verdict = "info:fraction_of_paths_with_directed_infinity";
  report.rows.push_back(std::move(frac));

  ReportRow absorb;
  absorb.experiment = "monotone_demo.explosion_absorbing";
  absorb.estimate = explosion_absorbing ? 1.0 : 0.0;
  absorb.verdict = explosion_absorbing ? "pass:increasing_explosion_absorbs"
                                       : "fail:increasing_explosion_absorbs";
  report.rows.push_back(std::move(absorb));

  if (setup.name == "example9") {
    ReportRow ident;
    ident.experiment = "monotone_demo.up_equals_running_min_max";
    ident.estimate = max_identity_error;
    ident.reference = 1e-12;
    ident.verdict = max_identity_error <= 1e-12 ? "pass:identity_exact" : "fail:identity_exact";
    report.rows.push_back(std::move(ident));
  }
  return finish(opt, report, "monotone-demo-report.csv");
}

int run_validate(const ParsedConfig& cfg, const std::string& target) {
  const std::vector<Violation> violations = validate_config(cfg, target);
  bool errors = false;
  for (const auto& v : violations) {
    std::cout << (v.is_error ? "error: " : "warning: ") << v.message << "\n";
    errors = errors || v.is_error;
  }
  if (violations.empty()) std::cout << "config ok\n";
  return errors ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-valued convoluted Levy integral experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "key = value configuration file");
  app.add_option("--seed", opt.seed, "master seed");
  app.add_option("--reps", opt.reps, "Monte Carlo repetitions");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--workers", opt.workers, "worker threads (results are worker-invariant)");
  app.add_option("--preset", opt.preset, "monotone-demo preset name");
  app.add_flag("--dump-paths", opt.dump_paths, "dump rep-0 increments and jumps to CSV");

  std::string validate_target = "simulate";
  auto* sim = app.add_subcommand("simulate", "sample set-valued paths and write them to CSV");
  auto* growth =
      app.add_subcommand("unbounded-growth", "expected maximum growth of the jump functional family");
  auto* bounded =
      app.add_subcommand("bounded-check", "second-moment bound for finite-variation jumps");
  auto* explosion =
      app.add_subcommand("explosion", "explosion probability under a singular kernel");
  auto* covariance = app.add_subcommand("covariance", "covariance decay exponent of the kernel");
  auto* demo = app.add_subcommand("monotone-demo", "bundled set-monotone process demos");
  auto* slepian = app.add_subcommand("slepian", "comparison-failure table");
  auto* stable = app.add_subcommand("stable-max", "expected maximum of stable vectors");
  auto* validate = app.add_subcommand("validate", "dry-run the configured preconditions");
  validate->add_option("target", validate_target, "subcommand to validate against");

  CLI11_PARSE(app, argc, argv);

  try {
    ParsedConfig cfg;
    if (!opt.config_path.empty()) cfg = ParsedConfig::from_file(opt.config_path);
    opt.workers = resolve_workers(opt.workers);

    const CLI::App* sub = app.get_subcommands().front();
    if (sub != validate) {
      const auto violations = validate_config(cfg, sub->get_name());
      bool errors = false;
      for (const auto& v : violations) {
        std::cerr << (v.is_error ? "error: " : "warning: ") << v.message << "\n";
        errors = errors || v.is_error;
      }
      if (errors) return 1;
    }

    if (sub == sim) return run_simulate(opt, cfg);
    if (sub == growth) return run_unbounded_growth(opt, cfg);
    if (sub == bounded) return run_bounded_check(opt, cfg);
    if (sub == explosion) return run_explosion(opt, cfg);
    if (sub == covariance) return run_covariance(opt, cfg);
    if (sub == demo) return run_monotone_demo(opt, cfg);
    if (sub == slepian) return run_slepian(opt, cfg);
    if (sub == stable) return run_stable_max(opt, cfg);
    if (sub == validate) return run_validate(cfg, validate_target);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
