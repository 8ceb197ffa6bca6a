#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace levyset {

// Neumaier compensated sum in index order; the fixed order keeps reductions
// independent of the worker count.
inline double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

struct MeanStderr {
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
};

inline MeanStderr mean_stderr(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) throw std::invalid_argument("mean_stderr: empty sample");
  MeanStderr out;
  out.mean = compensated_sum(xs) / static_cast<double>(n);
  if (n == 1) return out;
  double ss = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double d = (x - out.mean) * (x - out.mean);
    const double t = ss + d;
    comp += (ss - t) + d;
    ss = t;
  }
  const double var = (ss + comp) / static_cast<double>(n - 1);
  out.sd = std::sqrt(var);
  out.se = out.sd / std::sqrt(static_cast<double>(n));
  return out;
}

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double t_stat = 0.0;
  double r_squared = 0.0;
};

inline OlsFit ols_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3) throw std::invalid_argument("ols_fit: need >= 3 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_fit: degenerate regressor");
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ssr += r * r;
  }
  const double sigma2 = ssr / static_cast<double>(n - 2);
  fit.slope_se = std::sqrt(sigma2 / sxx);
  fit.t_stat = fit.slope_se > 0.0 ? fit.slope / fit.slope_se
                                  : (fit.slope == 0.0 ? 0.0 : 1e308);
  fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return fit;
}

}  // namespace levyset
