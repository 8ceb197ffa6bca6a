#include <doctest.h>

#include <cmath>

#include "levyset/quadrature.hpp"
#include "levyset/special.hpp"

using namespace levyset;

TEST_CASE("adaptive quadrature on smooth integrands") {
  auto r = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, 3.141592653589793);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

  r = integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0);
  CHECK(r.value == 0.0);
  CHECK(r.converged);
}

TEST_CASE("endpoint power substitution removes the singularity") {
  // (1 - s)^(-1/2) integrates to 2 on [0, 1].
  auto r = integrate_endpoint_power([](double) { return 1.0; }, 0.0, 1.0, -0.5);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

  // (1 - s)^(-1/4) e^s ds = e * (lower incomplete gamma(3/4, 1)).
  const double oracle = std::exp(1.0) * (1.0 - gamma_q(0.75, 1.0)) * std::tgamma(0.75);
  r = integrate_endpoint_power([](double s) { return std::exp(s); }, 0.0, 1.0, -0.25);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-10));

  // rho = 0 degenerates to the plain integral.
  r = integrate_endpoint_power([](double s) { return s; }, 0.0, 2.0, 0.0);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("non-integrable exponents are rejected") {
  CHECK_THROWS_AS(integrate_endpoint_power([](double) { return 1.0; }, 0.0, 1.0, -1.0),
                  QuadratureError);
  CHECK_THROWS_AS(integrate_endpoint_power([](double) { return 1.0; }, 0.0, 1.0, 0.5),
                  QuadratureError);
}

TEST_CASE("failure to converge is reported, and the throwing wrapper throws") {
  // A needle the rule cannot resolve within one interval budget.
  auto needle = [](double x) { return std::abs(x - 0.123456) < 1e-13 ? 1e13 : 1.0 / (1e-12 + std::abs(x - 0.123456)); };
  QuadTol tol;
  tol.max_intervals = 4;
  const auto r = integrate_adaptive(needle, 0.0, 1.0, tol);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(integrate_or_throw(needle, 0.0, 1.0, tol), QuadratureError);
}

TEST_CASE("oscillating integrand with kinks") {
  // |sin(8s)| over [0, pi] = 16/8 = 2.
  auto r = integrate_adaptive([](double s) { return std::abs(std::sin(8.0 * s)); }, 0.0,
                              3.141592653589793);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}
