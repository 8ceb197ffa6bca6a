#include <doctest.h>

#include <cmath>
#include <vector>

#include "levyset/kernels.hpp"
#include "levyset/rng.hpp"

using namespace levyset;

namespace {

double rl_l2_closed_form(double beta, double t) {
  const double g = std::tgamma(beta);
  return std::pow(t, 2.0 * beta - 1.0) / ((2.0 * beta - 1.0) * g * g);
}

double exp_l2_closed_form(double kappa, double t) {
  return (1.0 - std::exp(-2.0 * kappa * t)) / (2.0 * kappa);
}

// Truncated power series with a Pfaff transform for arguments below -1; the
// oracle stays independent of the production evaluator.
double mg_factor_oracle(double beta, double x) {
  auto series = [](double a, double b, double c, double x_, int terms) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < terms; ++k) {
      term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x_;
      sum += term;
    }
    return sum;
  };
  if (x > -1.0) return series(-beta, beta - 1.0, beta, x, 200);
  const double w = x / (x - 1.0);
  return std::pow(1.0 - x, beta) * series(-beta, 1.0, beta, w, 200);
}

}  // namespace

TEST_CASE("exponential kernel") {
  const Kernel k = make_exponential(2.0, 1.0);
  CHECK(k.stationary);
  CHECK_FALSE(k.singular);
  CHECK(k.eval(1.0, 0.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  const Kernel k1 = make_exponential(1.0, 1.0);
  CHECK(k1.eval(1.0, 1.0 - 1e-13) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(l2_norm_sq(k1, 1.0) == doctest::Approx(exp_l2_closed_form(1.0, 1.0)).epsilon(1e-8));
  CHECK_THROWS_AS(make_exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_exponential(-1.0), std::invalid_argument);
}

TEST_CASE("Riemann-Liouville kernel") {
  const Kernel flat = make_riemann_liouville(1.0, 1.0);
  CHECK_FALSE(flat.singular);
  CHECK(flat.eval(0.9, 0.1) == doctest::Approx(1.0).epsilon(1e-14));

  const Kernel k = make_riemann_liouville(0.75, 1.0);
  CHECK(k.singular);
  CHECK(k.stationary);
  CHECK(l2_norm_sq(k, 1.0) == doctest::Approx(rl_l2_closed_form(0.75, 1.0)).epsilon(1e-8));
  CHECK_THROWS_AS(make_riemann_liouville(0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_riemann_liouville(0.2), std::invalid_argument);
}

TEST_CASE("l2 norms match analytic closed forms to relative 1e-6") {
  for (double kappa : {0.5, 1.0, 2.0}) {
    const Kernel k = make_exponential(kappa, 1.0);
    for (double t : {0.5, 1.0}) {
      CHECK(l2_norm_sq(k, t) == doctest::Approx(exp_l2_closed_form(kappa, t)).epsilon(1e-6));
    }
  }
  for (double beta : {0.6, 0.75, 1.0, 1.5}) {
    const Kernel k = make_riemann_liouville(beta, 1.0);
    for (double t : {0.5, 1.0}) {
      CHECK(l2_norm_sq(k, t) == doctest::Approx(rl_l2_closed_form(beta, t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("l2 norm grows as beta approaches 1/2") {
  CHECK(l2_norm_sq(make_riemann_liouville(0.51, 1.0), 1.0) >
        10.0 * l2_norm_sq(make_riemann_liouville(0.75, 1.0), 1.0));
}

TEST_CASE("Molchan-Golosov kernel") {
  const Kernel flat = make_molchan_golosov(1.0, 1.0);
  CHECK(flat.eval(1.0, 0.3) == doctest::Approx(1.0).epsilon(1e-14));

  const Kernel k = make_molchan_golosov(0.6, 1.0);
  CHECK(k.singular);
  CHECK_FALSE(k.stationary);
  // hypergeometric factor tends to 1 as the argument vanishes
  CHECK(k.smooth(1.0, 1.0 - 1e-12) == doctest::Approx(1.0).epsilon(1e-10));
  const double oracle = std::pow(0.5, -0.4) * mg_factor_oracle(0.6, -0.5);
  CHECK(k.eval(1.0, 0.5) == doctest::Approx(oracle).epsilon(1e-10));
  // frozen from an independent multiprecision evaluation
  CHECK(k.eval(1.0, 0.5) == doctest::Approx(1.0643262527801687).epsilon(1e-11));

  // The running-time argument convention diverges as s -> 0 but must agree
  // with the series oracle at interior points.
  const Kernel kr = make_molchan_golosov(0.6, 1.0, MgArgument::OverRunningTime);
  const double xr = -(1.0 - 0.4) / 0.4;
  CHECK(kr.eval(1.0, 0.4) ==
        doctest::Approx(std::pow(0.6, -0.4) * mg_factor_oracle(0.6, xr)).epsilon(1e-9));
  CHECK(l2_norm_sq(k, 1.0) > 0.0);
}

TEST_CASE("product kernel") {
  const Kernel e = make_exponential(1.0, 1.0);
  const Kernel rl1 = make_riemann_liouville(1.0, 1.0);
  const Kernel p1 = make_product(e, rl1);
  for (double s : {0.1, 0.5, 0.9}) {
    CHECK(p1.eval(1.0, s) == doctest::Approx(e.eval(1.0, s)).epsilon(1e-14));
  }

  const Kernel p2 = make_product(e, make_riemann_liouville(0.75, 1.0));
  CHECK(p2.singular);
  CHECK(p2.stationary);
  const double oracle = std::exp(-0.5) * std::pow(0.5, -0.25) / std::tgamma(0.75);
  CHECK(p2.eval(1.0, 0.5) == doctest::Approx(oracle).epsilon(1e-12));

  CHECK_THROWS_AS(make_product(make_exponential(1.0, 1.0), make_exponential(1.0, 2.0)),
                  std::invalid_argument);
}

TEST_CASE("stationary kernels shift-invariant at 1e-12") {
  const std::vector<Kernel> kernels = {
      make_exponential(1.3, 1.0), make_riemann_liouville(0.8, 1.0),
      make_product(make_exponential(0.7, 1.0), make_riemann_liouville(1.2, 1.0))};
  CounterRng rng(11, 0);
  for (const Kernel& k : kernels) {
    for (int i = 0; i < 100; ++i) {
      const double t = 0.2 + 0.8 * rng.next_unit();
      const double s = t * rng.next_unit() * 0.999;
      const double h = (1.0 - t) * rng.next_unit();
      const double a = k.eval(t, s);
      CHECK(std::isfinite(a));
      CHECK(a == doctest::Approx(k.eval(t + h, s + h)).epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluation outside the triangle is a contract violation") {
  const Kernel k = make_riemann_liouville(0.75, 1.0);
  CHECK_THROWS_AS(k.eval(0.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(k.eval(0.5, 0.7), std::domain_error);
  CHECK_THROWS_AS(k.eval(1.2, 0.1), std::domain_error);
  CHECK_THROWS_AS(k.eval(0.5, -0.1), std::domain_error);
  CHECK_THROWS_AS(l2_norm_sq(k, 1.5), std::domain_error);
}

TEST_CASE("square-integrability failure raises a quadrature error") {
  // product of two strongly singular profiles: combined exponent -0.8
  const Kernel bad = make_product(make_riemann_liouville(0.6, 1.0),
                                  make_riemann_liouville(0.6, 1.0));
  CHECK_THROWS_AS(l2_norm_sq(bad, 1.0), QuadratureError);
}

TEST_CASE("cell-averaged weights") {
  const int m = 64;
  std::vector<double> grid(m + 1);
  for (int i = 0; i <= m; ++i) grid[i] = static_cast<double>(i) / m;

  SUBCASE("flat kernel gives unit weights") {
    const auto w = cell_averaged_weights(make_riemann_liouville(1.0, 1.0), grid, 0.0, 1.0);
    for (double wi : w) CHECK(wi == doctest::Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("singular kernel: weights match the exact antiderivative") {
    const double beta = 0.75;
    const Kernel k = make_riemann_liouville(beta, 1.0);
    const auto w = cell_averaged_weights(k, grid, 0.0, 1.0);
    const double gb = std::tgamma(beta);
    for (int i = 0; i < m; ++i) {
      const double a = 1.0 - grid[i], b = 1.0 - grid[i + 1];
      const double expect = (std::pow(a, beta) - std::pow(b, beta)) / (beta * gb) * m;
      CHECK(w[i] == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(std::isfinite(w[m - 1]));
  }

  SUBCASE("weights restricted to [t0, t] are zero elsewhere") {
    const auto w =
        cell_averaged_weights(make_exponential(1.0, 1.0), grid, grid[16], grid[48]);
    for (int i = 0; i < 16; ++i) CHECK(w[i] == 0.0);
    for (int i = 48; i < m; ++i) CHECK(w[i] == 0.0);
    CHECK(w[20] != 0.0);
  }

  SUBCASE("off-grid endpoints are rejected") {
    CHECK_THROWS_AS(cell_averaged_weights(make_exponential(1.0, 1.0), grid, 0.0, 0.51234),
                    std::invalid_argument);
  }
}

TEST_CASE("convolution weight table agrees with the per-target weights") {
  const Kernel k = make_molchan_golosov(0.8, 1.0);
  std::vector<double> grid = {0.0, 0.2, 0.45, 0.7, 1.0};
  const auto table = convolution_weight_table(k, grid);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto w = cell_averaged_weights(k, grid, 0.0, grid[i]);
    REQUIRE(table[i].size() == i);
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(table[i][j] == doctest::Approx(w[j]).epsilon(1e-12));
    }
  }
}
