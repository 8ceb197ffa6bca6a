#include "levyset/special.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace levyset {

namespace {

double hyp_series(double a, double b, double c, double x) {
  // Terminating when a or b is a nonpositive integer; otherwise truncated at
  // relative 1e-15.
  double term = 1.0;
  double sum = 1.0;
  const long long cap = 2'000'000;
  for (long long k = 0; k < cap; ++k) {
    const double ck = c + static_cast<double>(k);
    if (ck == 0.0) throw std::domain_error("2F1: c parameter hits a nonpositive integer");
    term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
            (ck * (static_cast<double>(k) + 1.0)) * x;
    if (term == 0.0) return sum;
    sum += term;
    if (std::abs(term) < 1e-15 * std::abs(sum)) return sum;
  }
  throw std::domain_error("2F1 series did not converge within the term cap (argument " +
                          std::to_string(x) + ")");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double x) {
  if (x > 0.0) throw std::domain_error("gauss_2f1: only arguments x <= 0 are supported");
  if (x == 0.0 || a == 0.0 || b == 0.0) return 1.0;  // terminating at the constant term
  if (x > -0.9) return hyp_series(a, b, c, x);
  const double w = x / (x - 1.0);
  return std::pow(1.0 - x, -a) * hyp_series(a, c - b, c, w);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_q: requires a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // Series for P(a, x); Q = 1 - P.
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  // Continued fraction for Q(a, x) (modified Lentz).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double chi_square_p_value(double stat, int dof) {
  if (dof <= 0) throw std::domain_error("chi_square_p_value: dof must be positive");
  if (stat <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * stat);
}

double ks_two_sample_p_value(double d, long long n1, long long n2) {
  const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                    static_cast<double>(n1 + n2);
  const double sq = std::sqrt(ne);
  const double lambda = (sq + 0.12 + 0.11 / sq) * d;
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * lambda * lambda * k * k);
    sum += term;
    if (std::abs(term) < 1e-16) break;
    sign = -sign;
  }
  const double p = 2.0 * sum;
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace levyset
