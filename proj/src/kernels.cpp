#include "levyset/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "levyset/special.hpp"

namespace levyset {

namespace {

void check_triangle(const Kernel& k, double t, double s) {
  if (!(t > 0.0) || t > k.horizon || s < 0.0 || s >= t) {
    throw std::domain_error("kernel evaluated outside {0 <= s < t <= T}: t=" +
                            std::to_string(t) + " s=" + std::to_string(s) + " T=" +
                            std::to_string(k.horizon));
  }
}

double power_part(double lag, double p) {
  if (p == 0.0) return 1.0;
  if (p == 1.0) return lag;
  return std::pow(lag, p);
}

}  // namespace

double Kernel::eval(double t, double s) const {
  check_triangle(*this, t, s);
  return power_part(t - s, power) * smooth(t, s);
}

double Kernel::param(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end()) throw std::out_of_range("kernel has no parameter '" + name + "'");
  return it->second;
}

Kernel make_exponential(double kappa, double horizon) {
  if (!(kappa > 0.0)) throw std::invalid_argument("exponential kernel requires kappa > 0");
  Kernel k;
  k.label = "exp";
  k.horizon = horizon;
  k.power = 0.0;
  k.stationary = true;
  k.singular = false;
  k.params["kappa"] = kappa;
  k.smooth = [kappa](double t, double s) { return std::exp(-kappa * (t - s)); };
  k.lag_antiderivative = [kappa](double tau) { return (1.0 - std::exp(-kappa * tau)) / kappa; };
  return k;
}

Kernel make_riemann_liouville(double beta, double horizon) {
  if (!(beta > 0.5)) throw std::invalid_argument("Riemann-Liouville kernel requires beta > 1/2");
  Kernel k;
  k.label = "rl";
  k.horizon = horizon;
  k.power = beta - 1.0;
  k.stationary = true;
  k.singular = beta < 1.0;
  k.params["beta"] = beta;
  const double inv_gamma = 1.0 / std::tgamma(beta);
  k.smooth = [inv_gamma](double, double) { return inv_gamma; };
  k.lag_antiderivative = [beta, inv_gamma](double tau) {
    return std::pow(tau, beta) * inv_gamma / beta;
  };
  return k;
}

Kernel make_molchan_golosov(double beta, double horizon, MgArgument argument) {
  if (!(beta > 0.5)) throw std::invalid_argument("Molchan-Golosov kernel requires beta > 1/2");
  Kernel k;
  k.label = "mg";
  k.horizon = horizon;
  k.power = beta - 1.0;
  k.stationary = false;
  k.singular = beta < 1.0;
  k.params["beta"] = beta;
  k.params["argument_over_running_time"] = argument == MgArgument::OverRunningTime ? 1.0 : 0.0;
  if (argument == MgArgument::OverTotalTime) {
    k.smooth = [beta](double t, double s) {
      return gauss_2f1(-beta, beta - 1.0, beta, -(t - s) / t);
    };
  } else {
    k.smooth = [beta](double t, double s) {
      if (s <= 0.0) throw std::domain_error("Molchan-Golosov running-time argument needs s > 0");
      return gauss_2f1(-beta, beta - 1.0, beta, -(t - s) / s);
    };
  }
  return k;
}

Kernel make_product(const Kernel& a, const Kernel& b) {
  if (a.horizon != b.horizon) {
    throw std::invalid_argument("product kernel requires factors with the same horizon");
  }
  Kernel k;
  k.label = a.label + "*" + b.label;
  k.horizon = a.horizon;
  k.power = a.power + b.power;
  k.stationary = a.stationary && b.stationary;
  k.singular = a.singular || b.singular;
  for (const auto& [name, value] : a.params) k.params[a.label + "." + name] = value;
  for (const auto& [name, value] : b.params) k.params[b.label + "." + name] = value;
  k.smooth = [sa = a.smooth, sb = b.smooth](double t, double s) { return sa(t, s) * sb(t, s); };
  return k;
}

Kernel make_custom(std::string label, double horizon, double power, bool stationary,
                   std::function<double(double, double)> smooth) {
  Kernel k;
  k.label = std::move(label);
  k.horizon = horizon;
  k.power = power;
  k.stationary = stationary;
  k.singular = power < 0.0;
  k.smooth = std::move(smooth);
  return k;
}

double l2_norm_sq(const Kernel& k, double t) {
  if (!(t > 0.0) || t > k.horizon) {
    throw std::domain_error("l2_norm_sq: t must lie in (0, T]");
  }
  const double rho = 2.0 * k.power;
  auto sq = [&k, t](double s) {
    const double v = k.smooth(t, s);
    return v * v;
  };
  if (rho <= -1.0) {
    throw QuadratureError("kernel profile is not square integrable (endpoint exponent " +
                          std::to_string(k.power) + ")");
  }
  if (k.power < 0.0) {
    return integrate_endpoint_power_or_throw(sq, 0.0, t, rho);
  }
  auto full = [&k, t](double s) {
    const double g = power_part(t - s, k.power) * k.smooth(t, s);
    return g * g;
  };
  return integrate_or_throw(full, 0.0, t);
}

double kernel_integral(const Kernel& k, double t, double a, double b) {
  if (a > b || a < 0.0 || b > t) throw std::domain_error("kernel_integral: need 0 <= a <= b <= t");
  if (a == b) return 0.0;
  if (k.power < 0.0 && b >= t) {
    auto phi = [&k, t](double s) { return k.smooth(t, s); };
    return integrate_endpoint_power_or_throw(phi, a, t, k.power);
  }
  auto f = [&k, t](double s) { return power_part(t - s, k.power) * k.smooth(t, s); };
  return integrate_or_throw(f, a, b);
}

std::pair<double, double> kernel_signed_part_integrals(const Kernel& k, double t, double a,
                                                       double b) {
  if (a > b || a < 0.0 || b > t) {
    throw std::domain_error("kernel_signed_part_integrals: need 0 <= a <= b <= t");
  }
  if (a == b) return {0.0, 0.0};
  // The bundled kernels are positive; the generic route below also covers
  // sign-changing custom kernels (kinked integrands are fine for the
  // adaptive rule at the configured tolerances).
  const double upper = k.power < 0.0 && b >= t ? t : b;
  auto eval_at = [&k, t](double s) { return power_part(t - s, k.power) * k.smooth(t, s); };
  if (k.power < 0.0 && b >= t) {
    auto pos = [&k, t](double s) { return std::max(k.smooth(t, s), 0.0); };
    auto neg = [&k, t](double s) { return std::min(k.smooth(t, s), 0.0); };
    return {integrate_endpoint_power_or_throw(pos, a, upper, k.power),
            integrate_endpoint_power_or_throw(neg, a, upper, k.power)};
  }
  auto pos = [&eval_at](double s) { return std::max(eval_at(s), 0.0); };
  auto neg = [&eval_at](double s) { return std::min(eval_at(s), 0.0); };
  return {integrate_or_throw(pos, a, upper), integrate_or_throw(neg, a, upper)};
}

namespace {

long long grid_index_of(std::span<const double> grid, double t, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
      return static_cast<long long>(i);
    }
  }
  throw std::invalid_argument(std::string(what) + " must be a grid point");
}

double cell_weight(const Kernel& k, double t, double a, double b) {
  const double dt = b - a;
  if (k.stationary && k.lag_antiderivative) {
    const double upper = k.lag_antiderivative(t - a);
    const double lower = b >= t ? 0.0 : k.lag_antiderivative(t - b);
    return (upper - lower) / dt;
  }
  return kernel_integral(k, t, a, b) / dt;
}

}  // namespace

std::vector<double> cell_averaged_weights(const Kernel& k, std::span<const double> grid,
                                          double t0, double t) {
  const long long i0 = grid_index_of(grid, t0, "t0");
  const long long i1 = grid_index_of(grid, t, "t");
  if (i0 >= i1) throw std::invalid_argument("cell_averaged_weights: need t0 < t");
  std::vector<double> w(grid.size() - 1, 0.0);
  for (long long i = i0; i < i1; ++i) {
    w[static_cast<std::size_t>(i)] = cell_weight(k, t, grid[i], grid[i + 1]);
  }
  return w;
}

std::vector<std::vector<double>> convolution_weight_table(const Kernel& k,
                                                          std::span<const double> grid) {
  std::vector<std::vector<double>> table(grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    table[i].resize(i);
    for (std::size_t j = 0; j < i; ++j) {
      table[i][j] = cell_weight(k, grid[i], grid[j], grid[j + 1]);
    }
  }
  return table;
}

}  // namespace levyset
