#include "levyset/monotone.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "levyset/parallel.hpp"
#include "levyset/stats.hpp"
#include "levyset/svint.hpp"

namespace levyset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double elapsed_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool is_grid_point(const std::vector<double>& grid, double t) {
  const auto it = std::lower_bound(grid.begin(), grid.end(), t);
  return it != grid.end() && *it == t;
}

Interval family_hull(const std::vector<double>& members, double s) {
  double lo = members.front() * s;
  double hi = lo;
  for (double c : members) {
    lo = std::min(lo, c * s);
    hi = std::max(hi, c * s);
  }
  return {lo, hi};
}

bool family_nonzero(const std::vector<double>& members) {
  for (double c : members) {
    if (c != 0.0) return true;
  }
  return false;
}

}  // namespace

PathRealization insert_jump_times(const PathRealization& path, int brownian_dim,
                                  std::uint64_t seed, std::uint64_t bridge_stream) {
  if (path.jumps.empty()) return path;
  CounterRng rng(seed, bridge_stream);
  const int m = brownian_dim;

  PathRealization out;
  out.seed = path.seed;
  out.stream = path.stream;
  out.jumps = path.jumps;
  out.grid.push_back(path.grid.front());

  std::size_t next_jump = 0;
  for (std::size_t cell = 0; cell + 1 < path.grid.size(); ++cell) {
    double a = path.grid[cell];
    const double b = path.grid[cell + 1];
    std::vector<double> rest(path.brownian_increments.begin() + static_cast<long>(cell * m),
                             path.brownian_increments.begin() + static_cast<long>((cell + 1) * m));
    while (next_jump < path.jumps.size() && path.jumps[next_jump].time < b) {
      const double tau = path.jumps[next_jump].time;
      ++next_jump;
      if (tau <= a) continue;  // duplicate or already a grid point
      const double frac = (tau - a) / (b - a);
      const double sd = std::sqrt(frac * (1.0 - frac) * (b - a));
      for (int col = 0; col < m; ++col) {
        const double w1 = frac * rest[static_cast<std::size_t>(col)] + sd * rng.next_gaussian();
        out.brownian_increments.push_back(w1);
        rest[static_cast<std::size_t>(col)] -= w1;
      }
      out.grid.push_back(tau);
      a = tau;
    }
    out.brownian_increments.insert(out.brownian_increments.end(), rest.begin(), rest.end());
    out.grid.push_back(b);
  }
  return out;
}

std::vector<double> convoluted_brownian_scalar(const std::vector<std::vector<double>>& weights,
                                               const PathRealization& path) {
  std::vector<double> out(path.grid.size(), 0.0);
  for (std::size_t i = 1; i < path.grid.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      acc += weights[i][j] * path.brownian_increments[j];
    }
    out[i] = acc;
  }
  return out;
}

SetPath build_set_path(const MonotoneIngredients& ing, const Kernel& k,
                       const PathRealization& path,
                       const std::vector<std::vector<double>>* weight_table) {
  for (const JumpEvent& jump : path.jumps) {
    if (!is_grid_point(path.grid, jump.time)) {
      throw std::invalid_argument(
          "build_set_path: jump times must be evaluation times (insert_jump_times first)");
    }
  }
  const bool need_brownian = family_nonzero(ing.k2);
  std::vector<std::vector<double>> local_table;
  if (need_brownian && weight_table == nullptr) {
    local_table = convolution_weight_table(k, path.grid);
    weight_table = &local_table;
  }
  std::vector<double> brownian;
  if (need_brownian) brownian = convoluted_brownian_scalar(*weight_table, path);

  const bool k1_nonzero = ing.k1.lo != 0.0 || ing.k1.hi != 0.0;
  const bool k3_nonzero = ing.k3.lo != 0.0 || ing.k3.hi != 0.0;
  const bool k4_nonzero = family_nonzero(ing.k4);

  SetPath sp;
  sp.times = path.grid;
  sp.values.resize(path.grid.size());
  sp.values[0].iv = ing.x0;

  for (std::size_t i = 1; i < path.grid.size(); ++i) {
    const double t = path.grid[i];
    ExtendedInterval v;
    Interval acc = ing.x0;
    if (k1_nonzero) {
      acc = minkowski_sum(acc, aumann_interval_integral(k, ing.k1.lo, ing.k1.hi, 0.0, t));
    }
    if (need_brownian) {
      acc = minkowski_sum(acc, family_hull(ing.k2, brownian[i]));
    }
    double small_sum = 0.0;
    Interval large_acc{0.0, 0.0};
    for (const JumpEvent& jump : path.jumps) {
      if (jump.time > t) break;
      const double z = jump.mark[0];
      bool at_sing = false;
      const double w = jump_weight(k, t, jump.time, &at_sing);
      if (jump.size_class == JumpSizeClass::Large) {
        if (!k3_nonzero || z == 0.0) continue;
        if (at_sing) {
          v.exploded = true;
          for (double c : {ing.k3.lo, ing.k3.hi}) {
            if (c * z > 0.0) v.dir_pos = true;
            if (c * z < 0.0) v.dir_neg = true;
          }
          continue;
        }
        const Interval per_jump = family_hull({ing.k3.lo, ing.k3.hi}, w * z);
        large_acc = minkowski_sum(large_acc, per_jump);
      } else {
        if (!k4_nonzero || z == 0.0) continue;
        if (at_sing) {
          v.exploded = true;
          for (double c : ing.k4) {
            if (c * z > 0.0) v.dir_pos = true;
            if (c * z < 0.0) v.dir_neg = true;
          }
          continue;
        }
        small_sum += w * z;
      }
    }
    if (!v.exploded) {
      if (k3_nonzero) acc = minkowski_sum(acc, large_acc);
      if (k4_nonzero) acc = minkowski_sum(acc, family_hull(ing.k4, small_sum));
      v.iv = acc;
    }
    sp.values[i] = v;
  }
  return sp;
}

std::pair<SetPath, Tau> decreasing_process(const SetPath& sp, double width_tol) {
  if (sp.values.empty()) throw std::invalid_argument("decreasing_process: empty path");
  if (sp.values[0].exploded) {
    throw std::invalid_argument("decreasing_process: initial value must be finite");
  }
  SetPath out;
  out.times = sp.times;
  out.values.resize(sp.values.size());
  Tau tau;
  Interval running = sp.values[0].iv;
  out.values[0].iv = running;
  if (width(running) <= width_tol) {
    tau.hit = true;
    tau.index = 0;
    tau.time = sp.times[0];
  }
  for (std::size_t i = 1; i < sp.values.size(); ++i) {
    if (!tau.hit) {
      const ExtendedInterval& v = sp.values[i];
      if (!v.exploded) {
        // Exploded inputs carry no finite constraint; the intersection skips
        // them (a prior finite value always exists, X0 is finite).
        const auto inter = intersect(running, v.iv);
        if (!inter) {
          tau.hit = true;
          tau.index = i;
          tau.time = sp.times[i];
          tau.empty_intersection = true;
        } else {
          running = *inter;
          if (width(running) <= width_tol) {
            tau.hit = true;
            tau.index = i;
            tau.time = sp.times[i];
          }
        }
      }
    }
    out.values[i].iv = running;
  }
  return {std::move(out), tau};
}

SetPath increasing_process(const SetPath& sp) {
  if (sp.values.empty()) throw std::invalid_argument("increasing_process: empty path");
  SetPath out;
  out.times = sp.times;
  out.values.resize(sp.values.size());
  ExtendedInterval running = sp.values[0];
  out.values[0] = running;
  for (std::size_t i = 1; i < sp.values.size(); ++i) {
    const ExtendedInterval& v = sp.values[i];
    if (v.exploded) {
      running.exploded = true;
      running.dir_neg = running.dir_neg || v.dir_neg;
      running.dir_pos = running.dir_pos || v.dir_pos;
    } else if (!running.exploded) {
      running.iv = union_hull(running.iv, v.iv);
    }
    out.values[i] = running;
  }
  return out;
}

ExperimentReport explosion_probability_experiment(const Kernel& k, double rate, double horizon,
                                                  int reps, std::uint64_t seed, int workers) {
  const auto start = std::chrono::steady_clock::now();
  if (!k.singular) {
    throw std::invalid_argument("explosion experiment requires a singular kernel");
  }
  LevyDriverSpec driver;
  driver.horizon = horizon;
  if (rate > 0.0) {
    driver = make_compound_poisson_driver(cp_uniform_symmetric(rate, 1.0, 2.0), horizon);
  }

  std::vector<double> exploded(static_cast<std::size_t>(reps));
  run_reps(reps, workers, [&](long long rep) {
    const PathRealization path =
        sample_path(driver, 2, seed, substream(static_cast<std::uint64_t>(rep), 0));
    exploded[static_cast<std::size_t>(rep)] = path.jumps.empty() ? 0.0 : 1.0;
  });

  const MeanStderr ms = mean_stderr(exploded);
  const double reference = 1.0 - std::exp(-rate * horizon);
  const double se = std::sqrt(std::max(ms.mean * (1.0 - ms.mean), 1e-12) /
                              static_cast<double>(reps));

  ExperimentReport report;
  report.name = "explosion";
  report.seed = seed;
  report.reps = reps;
  report.extra["rate"] = rate;
  report.extra["horizon"] = horizon;
  ReportRow row;
  row.experiment = "explosion.fraction_of_paths_with_jump";
  row.x = horizon;
  row.estimate = ms.mean;
  row.stderr_value = se;
  row.reference = reference;
  row.verdict = std::abs(ms.mean - reference) <= 3.0 * se + 1e-12
                    ? "pass:fraction_within_3se_of_poisson"
                    : "fail:fraction_within_3se_of_poisson";
  report.rows.push_back(std::move(row));
  report.wall_seconds = elapsed_since(start);
  return report;
}

ExperimentReport covariance_decay_check(const CovarianceConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.u_values.empty()) throw std::invalid_argument("need at least one lag");
  double u_max = 0.0;
  for (double u : cfg.u_values) {
    if (!(u > 0.0)) throw std::invalid_argument("lags must be positive");
    u_max = std::max(u_max, u);
  }
  if (cfg.t + u_max > cfg.kernel.horizon) {
    throw std::invalid_argument("covariance check needs t + max(u) <= kernel horizon");
  }

  const Kernel& k = cfg.kernel;
  const double var = l2_norm_sq(k, cfg.t);

  std::vector<double> lags = cfg.u_values;
  std::sort(lags.begin(), lags.end());
  std::vector<double> cov_quad(lags.size());
  for (std::size_t i = 0; i < lags.size(); ++i) {
    const double u = lags[i];
    if (k.power < 0.0) {
      auto phi = [&k, &cfg, u](double s) {
        return k.smooth(cfg.t, s) * k.eval(cfg.t + u, s);
      };
      cov_quad[i] = integrate_endpoint_power_or_throw(phi, 0.0, cfg.t, k.power);
    } else {
      auto f = [&k, &cfg, u](double s) { return k.eval(cfg.t, s) * k.eval(cfg.t + u, s); };
      cov_quad[i] = integrate_or_throw(f, 0.0, cfg.t);
    }
  }

  // Optional MC cross-check on a shared dyadic grid.
  std::vector<double> cov_mc(lags.size(), 0.0), cov_mc_se(lags.size(), 0.0);
  if (cfg.reps > 0) {
    double step = u_max;
    for (double u : lags) step = std::min(step, u);
    const double horizon = cfg.t + u_max;
    const int grid_size = static_cast<int>(std::llround(horizon / step));
    LevyDriverSpec driver;
    driver.horizon = horizon;
    PathRealization probe = sample_path(driver, grid_size, cfg.seed, 0);
    const std::vector<double> w_t = cell_averaged_weights(k, probe.grid, 0.0, cfg.t);
    std::vector<std::vector<double>> w_u(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) {
      w_u[i] = cell_averaged_weights(k, probe.grid, 0.0, cfg.t + lags[i]);
    }
    std::vector<double> base(static_cast<std::size_t>(cfg.reps));
    std::vector<std::vector<double>> shifted(lags.size(),
                                             std::vector<double>(static_cast<std::size_t>(cfg.reps)));
    run_reps(cfg.reps, cfg.workers, [&](long long rep) {
      const PathRealization path =
          sample_path(driver, grid_size, cfg.seed, substream(static_cast<std::uint64_t>(rep), 0));
      double x = 0.0;
      for (std::size_t j = 0; j < w_t.size(); ++j) x += w_t[j] * path.brownian_increments[j];
      base[static_cast<std::size_t>(rep)] = x;
      for (std::size_t i = 0; i < lags.size(); ++i) {
        double y = 0.0;
        for (std::size_t j = 0; j < w_u[i].size(); ++j) {
          y += w_u[i][j] * path.brownian_increments[j];
        }
        shifted[i][static_cast<std::size_t>(rep)] = y;
      }
    });
    const MeanStderr mb = mean_stderr(base);
    for (std::size_t i = 0; i < lags.size(); ++i) {
      const MeanStderr msft = mean_stderr(shifted[i]);
      std::vector<double> prod(static_cast<std::size_t>(cfg.reps));
      for (long long rep = 0; rep < cfg.reps; ++rep) {
        prod[static_cast<std::size_t>(rep)] =
            (base[static_cast<std::size_t>(rep)] - mb.mean) *
            (shifted[i][static_cast<std::size_t>(rep)] - msft.mean);
      }
      const MeanStderr mp = mean_stderr(prod);
      cov_mc[i] = mp.mean * static_cast<double>(cfg.reps) / static_cast<double>(cfg.reps - 1);
      cov_mc_se[i] = mp.se;
    }
  }

  ExperimentReport report;
  report.name = "covariance";
  report.seed = cfg.seed;
  report.reps = cfg.reps;
  report.extra["variance"] = var;
  report.extra["t"] = cfg.t;

  std::vector<double> log_u(lags.size()), log_dev(lags.size());
  for (std::size_t i = 0; i < lags.size(); ++i) {
    const double dev = std::abs(cov_quad[i] - var);
    log_u[i] = std::log(lags[i]);
    log_dev[i] = std::log(dev);
    ReportRow row;
    row.experiment = "covariance.lag";
    row.x = lags[i];
    row.estimate = cfg.reps > 0 ? cov_mc[i] : cov_quad[i];
    row.stderr_value = cfg.reps > 0 ? cov_mc_se[i] : 0.0;
    row.reference = cov_quad[i];
    if (cfg.reps > 0) {
      row.verdict = std::abs(cov_mc[i] - cov_quad[i]) <= 3.0 * cov_mc_se[i]
                        ? "pass:mc_matches_quadrature_3se"
                        : "fail:mc_matches_quadrature_3se";
    } else {
      row.verdict = "info:quadrature_only";
    }
    report.rows.push_back(std::move(row));
  }

  const OlsFit fit = ols_fit(log_u, log_dev);
  ReportRow expo;
  expo.experiment = "covariance.exponent_loglog_slope";
  expo.x = 0;
  expo.estimate = fit.slope;
  expo.stderr_value = fit.slope_se;
  expo.reference = fit.r_squared;
  if (k.singular) {
    expo.verdict = (fit.slope > 0.0 && fit.slope < 1.0) ? "pass:singular_exponent_in_0_1"
                                                        : "fail:singular_exponent_in_0_1";
  } else if (k.power > 0.0) {
    expo.verdict = fit.slope > 1.0 ? "pass:vanishing_kernel_exponent_above_1"
                                   : "fail:vanishing_kernel_exponent_above_1";
  } else {
    expo.verdict = "info:kernel_limit_finite_nonzero";
  }
  report.rows.push_back(std::move(expo));

  // Diagnostic: remove the first-order lag term (stationary kernels) and fit
  // the remainder exponent, which exposes the roughness index 2*beta - 1.
  if (k.stationary && !k.singular) {
    const double g_at_t = k.eval(cfg.t, 0.0);
    const double g_at_0 = k.power > 0.0 ? 0.0 : k.smooth(cfg.t, cfg.t);
    const double c1 = 0.5 * (g_at_t * g_at_t - g_at_0 * g_at_0);
    bool ok = true;
    std::vector<double> log_res(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) {
      const double res = std::abs(cov_quad[i] - var - c1 * lags[i]);
      if (res <= 0.0) {
        ok = false;
        break;
      }
      log_res[i] = std::log(res);
    }
    if (ok) {
      const OlsFit rfit = ols_fit(log_u, log_res);
      ReportRow row;
      row.experiment = "covariance.residual_exponent_after_linear_term";
      row.x = c1;
      row.estimate = rfit.slope;
      row.stderr_value = rfit.slope_se;
      row.reference = rfit.r_squared;
      row.verdict = "info:first_order_term_removed";
      report.rows.push_back(std::move(row));
    }
  }
  report.wall_seconds = elapsed_since(start);
  return report;
}

IntegrabilityReport integrability_condition_check(const MonotoneIngredients& ing,
                                                  const LevyDriverSpec& driver) {
  IntegrabilityReport out;
  out.k1_sup = hausdorff_to_origin(ing.k1);
  const double k3_sup = hausdorff_to_origin(ing.k3);
  double abs_large = 0.0;
  if (const auto* st = std::get_if<StableSpec>(&driver.jumps)) {
    abs_large = st->dim * stable_levy_density_integrals(st->alpha, st->C, 1.0, kInf).abs_moment;
  } else if (const auto* cp = std::get_if<CompoundPoissonSpec>(&driver.jumps)) {
    abs_large = cp->abs_moment_large;
  }
  out.k3_integral = k3_sup == 0.0 ? 0.0 : k3_sup * abs_large;
  out.finite = std::isfinite(out.k1_sup) && std::isfinite(out.k3_integral);
  return out;
}

void write_set_path_csv(const SetPath& sp, const Tau& tau, long long rep, std::ostream& os,
                        bool header) {
  if (header) os << "rep,t,lo,hi,exploded,tau_hit\n";
  for (std::size_t i = 0; i < sp.times.size(); ++i) {
    const ExtendedInterval& v = sp.values[i];
    const bool tau_hit = tau.hit && i >= tau.index;
    os << rep << "," << format_double(sp.times[i]) << ","
       << format_double(v.exploded ? (v.dir_neg ? -kInf : kInf) : v.iv.lo) << ","
       << format_double(v.exploded ? (v.dir_pos ? kInf : -kInf) : v.iv.hi) << ","
       << (v.exploded ? 1 : 0) << "," << (tau_hit ? 1 : 0) << "\n";
  }
}

}  // namespace levyset
