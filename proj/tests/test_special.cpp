#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "levyset/special.hpp"

using namespace levyset;

namespace {

// Plain truncated power series, valid for |x| < 1; the independent check for
// the production evaluator inside its direct regime.
double series_2f1(double a, double b, double c, double x, int terms) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("gauss 2F1 basics") {
  CHECK(gauss_2f1(0.3, 0.7, 1.1, 0.0) == 1.0);
  // b = 0 terminates the series at the constant term.
  CHECK(gauss_2f1(-1.0, 0.0, 1.0, -0.8) == 1.0);
  CHECK(gauss_2f1(-1.0, 0.0, 1.0, -7.3) == 1.0);
  CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.0, 0.25), std::domain_error);
}

TEST_CASE("gauss 2F1 against the direct series in the small-argument regime") {
  const double mine = gauss_2f1(-0.6, -0.4, 0.6, -0.5);
  CHECK(mine == doctest::Approx(series_2f1(-0.6, -0.4, 0.6, -0.5, 200)).epsilon(1e-12));
  CHECK(mine == doctest::Approx(0.8066084667554176).epsilon(1e-13));
}

TEST_CASE("gauss 2F1 in the Pfaff regime") {
  CHECK(gauss_2f1(-0.75, -0.25, 0.75, -3.0) ==
        doctest::Approx(0.32415017161191917).epsilon(1e-12));
  CHECK(gauss_2f1(-1.5, 0.5, 1.5, -5.0) == doctest::Approx(4.851811268506594).epsilon(1e-12));
  CHECK(gauss_2f1(-0.6, -0.4, 0.6, -40.0) == doctest::Approx(-7.968609975521060).epsilon(1e-11));
}

TEST_CASE("gauss 2F1 satisfies the Euler transformation") {
  // 2F1(a,b;c;x) = (1-x)^(c-a-b) 2F1(c-a, c-b; c; x); the two sides route
  // through different series.
  for (double x : {-0.3, -0.95, -2.0, -10.0}) {
    const double a = -0.8, b = -0.2, c = 0.8;
    const double lhs = gauss_2f1(a, b, c, x);
    const double rhs = std::pow(1.0 - x, c - a - b) * gauss_2f1(c - a, c - b, c, x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("regularized upper incomplete gamma") {
  for (double x : {0.1, 0.7, 2.0, 9.0}) {
    CHECK(gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
  }
  CHECK(gamma_q(0.5, 2.0) == doctest::Approx(0.04550026389635841).epsilon(1e-12));
  CHECK(gamma_q(3.5, 1.25) == doctest::Approx(0.9270970650134738).epsilon(1e-12));
  CHECK(gamma_q(2.0, 0.0) == 1.0);
  CHECK_THROWS_AS(gamma_q(-1.0, 1.0), std::domain_error);
}

TEST_CASE("chi-square tail") {
  CHECK(chi_square_p_value(0.0, 5) == 1.0);
  // Q(k=2, x) = exp(-x/2).
  CHECK(chi_square_p_value(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
  CHECK(chi_square_p_value(40.0, 5) < 1e-6);
}

TEST_CASE("two-sample KS p-value is monotone in the statistic") {
  const double p1 = ks_two_sample_p_value(0.02, 1000, 1000);
  const double p2 = ks_two_sample_p_value(0.06, 1000, 1000);
  const double p3 = ks_two_sample_p_value(0.15, 1000, 1000);
  CHECK(p1 > p2);
  CHECK(p2 > p3);
  CHECK(p1 > 0.9);
  CHECK(p3 < 1e-4);
}
