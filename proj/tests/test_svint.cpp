#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "levyset/kernels.hpp"
#include "levyset/levy.hpp"
#include "levyset/stats.hpp"
#include "levyset/svint.hpp"

using namespace levyset;

namespace {

Selector linear_time_selector(IntegrandClass q, double a, double b) {
  Selector s;
  s.q = q;
  s.bound = std::abs(a) + std::abs(b);
  s.time_fn = [a, b](double t) { return std::vector<double>{a + b * t}; };
  return s;
}

Selector linear_jump_selector(IntegrandClass q, double a, double b) {
  return scalar_jump_selector(q, [a, b](double s) { return a + b * s; },
                              std::abs(a) + std::abs(b));
}

Selector add_selectors(const Selector& x, const Selector& y) {
  Selector s;
  s.q = x.q;
  s.bound = x.bound + y.bound;
  if (x.time_fn) {
    s.time_fn = [fx = x.time_fn, fy = y.time_fn](double t) {
      auto vx = fx(t);
      const auto vy = fy(t);
      for (std::size_t i = 0; i < vx.size(); ++i) vx[i] += vy[i];
      return vx;
    };
  }
  if (x.jump_fn) {
    s.jump_fn = [fx = x.jump_fn, fy = y.jump_fn](double t, const std::vector<double>& z) {
      auto vx = fx(t, z);
      const auto vy = fy(t, z);
      for (std::size_t i = 0; i < vx.size(); ++i) vx[i] += vy[i];
      return vx;
    };
  }
  return s;
}

Selector scale_selector(const Selector& x, double c) {
  Selector s;
  s.q = x.q;
  s.bound = std::abs(c) * x.bound;
  if (x.time_fn) {
    s.time_fn = [f = x.time_fn, c](double t) {
      auto v = f(t);
      for (double& e : v) e *= c;
      return v;
    };
  }
  if (x.jump_fn) {
    s.jump_fn = [f = x.jump_fn, c](double t, const std::vector<double>& z) {
      auto v = f(t, z);
      for (double& e : v) e *= c;
      return v;
    };
  }
  return s;
}

}  // namespace

TEST_CASE("flat kernel reduces the Brownian functional to the plain sum") {
  const Kernel flat = make_riemann_liouville(1.0, 1.0);
  LevyDriverSpec spec;
  spec.horizon = 1.0;
  const PathRealization path = sample_path(spec, 64, 4, 0);
  const ExtendedVec v = integral_functional(flat, constant_brownian_selector({1.0}), path, 0.0,
                                            1.0, spec);
  double total = 0.0;
  for (double w : path.brownian_increments) total += w;
  CHECK_FALSE(v.exploded());
  CHECK(v.value[0] == doctest::Approx(total).epsilon(1e-13));
}

TEST_CASE("drift functional against the analytic antiderivative") {
  const Kernel k = make_exponential(2.0, 1.0);
  LevyDriverSpec spec;
  const PathRealization path = sample_path(spec, 8, 4, 0);
  const ExtendedVec v =
      integral_functional(k, constant_drift_selector({1.0}), path, 0.0, 1.0, spec);
  CHECK(v.value[0] == doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-8));

  // singular kernel route
  const Kernel rl = make_riemann_liouville(0.75, 1.0);
  const ExtendedVec w =
      integral_functional(rl, constant_drift_selector({1.0}), path, 0.0, 1.0, spec);
  const double beta = 0.75;
  CHECK(w.value[0] ==
        doctest::Approx(1.0 / (beta * std::tgamma(beta))).epsilon(1e-8));
}

TEST_CASE("Brownian isometry at Monte Carlo scale") {
  const Kernel k = make_riemann_liouville(0.75, 1.0);
  LevyDriverSpec spec;
  spec.horizon = 1.0;
  const int grid_size = 1024;
  const PathRealization probe = sample_path(spec, grid_size, 1, 0);
  const std::vector<double> weights = cell_averaged_weights(k, probe.grid, 0.0, 1.0);
  const int reps = 4000;
  std::vector<double> sq(reps);
  for (int rep = 0; rep < reps; ++rep) {
    const PathRealization path = sample_path(spec, grid_size, 1, static_cast<std::uint64_t>(rep));
    double x = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) x += weights[j] * path.brownian_increments[j];
    sq[rep] = x * x;
  }
  const MeanStderr ms = mean_stderr(sq);
  CHECK(std::abs(ms.mean - l2_norm_sq(k, 1.0)) < 3.0 * ms.se);
}

TEST_CASE("linearity of the functional in the selector, per path") {
  const Kernel k = make_riemann_liouville(0.8, 1.0);
  const LevyDriverSpec spec = make_stable_driver(1.5, 1.0, 0.01);
  const PathRealization path = sample_path(spec, 32, 9, 0);
  const double a = -1.7;
  for (IntegrandClass q : {IntegrandClass::Drift, IntegrandClass::Brownian,
                           IntegrandClass::LargeJump, IntegrandClass::SmallJump}) {
    Selector h1, h2;
    if (q == IntegrandClass::Drift || q == IntegrandClass::Brownian) {
      h1 = linear_time_selector(q, 0.4, 1.1);
      h2 = linear_time_selector(q, -0.3, 0.7);
    } else {
      h1 = linear_jump_selector(q, 0.4, 1.1);
      h2 = linear_jump_selector(q, -0.3, 0.7);
    }
    const Selector combo = add_selectors(scale_selector(h1, a), h2);
    const double lhs = integral_functional(k, combo, path, 0.0, 1.0, spec).value[0];
    const double rhs = a * integral_functional(k, h1, path, 0.0, 1.0, spec).value[0] +
                       integral_functional(k, h2, path, 0.0, 1.0, spec).value[0];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("set integral of a family") {
  const Kernel k = make_riemann_liouville(1.0, 1.0);
  LevyDriverSpec spec;
  const PathRealization path = sample_path(spec, 32, 5, 0);

  SelectorFamily singleton{IntegrandClass::Brownian, {constant_brownian_selector({0.5})}, "s"};
  const ExtendedSetValue sv = sv_integral(k, singleton, path, 0.0, 1.0, spec);
  CHECK(sv.value().size() == 1);

  SelectorFamily pm{IntegrandClass::Brownian,
                    {constant_brownian_selector({1.0}), constant_brownian_selector({-1.0})},
                    "pm"};
  const ExtendedSetValue sv2 = sv_integral(k, pm, path, 0.0, 1.0, spec);
  REQUIRE(sv2.value().size() == 2);
  CHECK(sv2.value().point(0)[0] == doctest::Approx(-sv2.value().point(1)[0]).epsilon(1e-14));

  SelectorFamily wrong{IntegrandClass::Brownian, {constant_drift_selector({1.0})}, "w"};
  CHECK_THROWS_AS(sv_integral(k, wrong, path, 0.0, 1.0, spec), std::invalid_argument);
}

TEST_CASE("Minkowski additivity of the set integral, per path, all four classes") {
  const Kernel k = make_riemann_liouville(0.75, 1.0);
  const LevyDriverSpec spec = make_stable_driver(1.5, 1.0, 0.02);
  for (int rep = 0; rep < 20; ++rep) {
    const PathRealization path = sample_path(spec, 16, 31, static_cast<std::uint64_t>(rep));
    for (IntegrandClass q : {IntegrandClass::Drift, IntegrandClass::Brownian,
                             IntegrandClass::LargeJump, IntegrandClass::SmallJump}) {
      const bool time_class = q == IntegrandClass::Drift || q == IntegrandClass::Brownian;
      SelectorFamily K{q, {}, "K"};
      SelectorFamily H{q, {}, "H"};
      if (time_class) {
        K.members = {linear_time_selector(q, 0.2, 0.5), linear_time_selector(q, -0.4, 1.0)};
        H.members = {linear_time_selector(q, 1.0, 0.0), linear_time_selector(q, 0.1, -0.6),
                     linear_time_selector(q, -0.2, 0.2)};
      } else {
        K.members = {linear_jump_selector(q, 0.2, 0.5), linear_jump_selector(q, -0.4, 1.0)};
        H.members = {linear_jump_selector(q, 1.0, 0.0), linear_jump_selector(q, 0.1, -0.6),
                     linear_jump_selector(q, -0.2, 0.2)};
      }
      SelectorFamily KH{q, {}, "K+H"};
      for (const Selector& a : K.members) {
        for (const Selector& b : H.members) KH.members.push_back(add_selectors(a, b));
      }
      const SetValue lhs = sv_integral(k, KH, path, 0.0, 1.0, spec).value();
      const SetValue rhs = minkowski_sum(sv_integral(k, K, path, 0.0, 1.0, spec).value(),
                                         sv_integral(k, H, path, 0.0, 1.0, spec).value());
      CHECK(hausdorff(lhs, rhs) <= 1e-10);
    }
  }
}

TEST_CASE("convex-hull closure of a finite family matches the hull of the image") {
  const Kernel k = make_riemann_liouville(1.5, 1.0);
  LevyDriverSpec spec;
  const PathRealization path = sample_path(spec, 32, 8, 0);
  SelectorFamily fam{IntegrandClass::Brownian,
                     {constant_brownian_selector({0.0}), constant_brownian_selector({1.0})},
                     "pair"};
  SelectorFamily closed = fam;
  for (double w : {0.25, 0.5, 0.75}) {
    closed.members.push_back(add_selectors(scale_selector(fam.members[0], 1.0 - w),
                                           scale_selector(fam.members[1], w)));
  }
  const SetValue hull_small = convex_hull(sv_integral(k, fam, path, 0.0, 1.0, spec).value());
  const SetValue hull_big = convex_hull(sv_integral(k, closed, path, 0.0, 1.0, spec).value());
  CHECK(hausdorff(hull_small, hull_big) <= 1e-10);
}

TEST_CASE("compensated small-jump functional: centered and isometric") {
  const Kernel k = make_riemann_liouville(0.75, 1.0);
  const LevyDriverSpec spec = make_stable_driver(1.5, 0.5, 0.005);
  const Selector h = constant_jump_selector(IntegrandClass::SmallJump, 1.0);
  const int reps = 4000;
  std::vector<double> vals(reps), sq(reps);
  for (int rep = 0; rep < reps; ++rep) {
    const PathRealization path = sample_path(spec, 2, 77, static_cast<std::uint64_t>(rep));
    const double v = integral_functional(k, h, path, 0.0, 1.0, spec).value[0];
    vals[rep] = v;
    sq[rep] = v * v;
  }
  const MeanStderr mv = mean_stderr(vals);
  CHECK(std::abs(mv.mean) < 3.0 * mv.se);
  // isometry against the eps-truncated measure
  const MeanStderr msq = mean_stderr(sq);
  const double oracle =
      l2_norm_sq(k, 1.0) *
      stable_levy_density_integrals(1.5, 0.5, spec.truncation_eps, 1.0).second_moment;
  CHECK(std::abs(msq.mean - oracle) < 3.0 * msq.se);
}

TEST_CASE("q=4 on an asymmetric mark distribution is rejected") {
  CompoundPoissonSpec cp = cp_uniform_symmetric(2.0, 0.2, 0.8);
  cp.symmetric_marks = false;  // marks biased; compensator would be nonzero
  const LevyDriverSpec spec = make_compound_poisson_driver(cp);
  const PathRealization path = sample_path(spec, 8, 3, 0);
  const Kernel k = make_exponential(1.0, 1.0);
  CHECK_THROWS_AS(integral_functional(k, constant_jump_selector(IntegrandClass::SmallJump, 1.0),
                                      path, 0.0, 1.0, spec),
                  std::invalid_argument);
  // the uncompensated large-jump class stays valid
  CHECK_NOTHROW(integral_functional(k, constant_jump_selector(IntegrandClass::LargeJump, 1.0),
                                    path, 0.0, 1.0, spec));
}

TEST_CASE("a jump at the evaluation time of a singular kernel explodes") {
  const Kernel k = make_riemann_liouville(0.75, 1.0);
  PathRealization path;
  path.grid = {0.0, 0.5, 1.0};
  path.brownian_increments = {0.0, 0.0};
  path.jumps.push_back({0.5, {2.0}, JumpSizeClass::Large});
  LevyDriverSpec spec;
  spec.jumps = CompoundPoissonSpec{};

  const Selector h = constant_jump_selector(IntegrandClass::LargeJump, 1.0);
  const ExtendedVec at_jump = integral_functional(k, h, path, 0.0, 0.5, spec);
  REQUIRE(at_jump.exploded());
  CHECK(at_jump.directions[0][0] == 1.0);

  // strictly past the jump the value is finite again
  const ExtendedVec past = integral_functional(k, h, path, 0.0, 1.0, spec);
  CHECK_FALSE(past.exploded());
  CHECK(past.value[0] == doctest::Approx(k.eval(1.0, 0.5) * 2.0).epsilon(1e-12));

  // a vanishing selector does not explode
  const Selector zero = constant_jump_selector(IntegrandClass::LargeJump, 0.0);
  CHECK_FALSE(integral_functional(k, zero, path, 0.0, 0.5, spec).exploded());

  // flat kernels take the boundary limit instead
  const Kernel flat = make_exponential(1.0, 1.0);
  const ExtendedVec lim = integral_functional(flat, h, path, 0.0, 0.5, spec);
  CHECK(lim.value[0] == doctest::Approx(2.0).epsilon(1e-12));

  SelectorFamily fam{IntegrandClass::LargeJump, {h, zero}, "f"};
  const ExtendedSetValue sv = sv_integral(k, fam, path, 0.0, 0.5, spec);
  CHECK(sv.is_exploded());
}

TEST_CASE("aumann interval integral") {
  const Kernel pos = make_exponential(1.0, 1.0);
  const double g_total = (1.0 - std::exp(-1.0));
  SUBCASE("sign-constant kernels use the extreme selectors") {
    const Interval iv = aumann_interval_integral(pos, -0.5, 2.0, 0.0, 1.0);
    CHECK(iv.lo == doctest::Approx(-0.5 * g_total).epsilon(1e-10));
    CHECK(iv.hi == doctest::Approx(2.0 * g_total).epsilon(1e-10));
  }
  SUBCASE("degenerate interval") {
    const Interval iv = aumann_interval_integral(pos, 0.7, 0.7, 0.0, 1.0);
    CHECK(iv.lo == doctest::Approx(0.7 * g_total).epsilon(1e-12));
    CHECK(iv.hi == doctest::Approx(iv.lo).epsilon(1e-14));
  }
  SUBCASE("lo > hi is rejected") {
    CHECK_THROWS_AS(aumann_interval_integral(pos, 1.0, 0.0, 0.0, 1.0), std::invalid_argument);
  }
  SUBCASE("sign-changing kernel against the 2^m selector enumeration") {
    const Kernel osc =
        make_custom("sinusoid", 1.0, 0.0, true,
                    [](double t, double s) { return std::sin(9.0 * (t - s)); });
    const double lo = -0.5, hi = 1.5;
    const Interval mine = aumann_interval_integral(osc, lo, hi, 0.0, 1.0);

    const int m = 12;
    std::vector<double> cell(m);
    for (int i = 0; i < m; ++i) {
      cell[i] = kernel_integral(osc, 1.0, static_cast<double>(i) / m,
                                static_cast<double>(i + 1) / m);
    }
    double best_lo = 1e300, best_hi = -1e300;
    for (int mask = 0; mask < (1 << m); ++mask) {
      double v = 0.0;
      for (int i = 0; i < m; ++i) v += ((mask >> i) & 1 ? hi : lo) * cell[i];
      best_lo = std::min(best_lo, v);
      best_hi = std::max(best_hi, v);
    }
    CHECK(hausdorff(Interval{best_lo, best_hi}, mine) <= 1e-3);
    // exactness for the sign-constant case at the same resolution
    const Interval exact = aumann_interval_integral(pos, lo, hi, 0.0, 1.0);
    std::vector<double> pcell(m);
    for (int i = 0; i < m; ++i) {
      pcell[i] = kernel_integral(pos, 1.0, static_cast<double>(i) / m,
                                 static_cast<double>(i + 1) / m);
    }
    double plo = 0.0, phi = 0.0;
    for (int i = 0; i < m; ++i) {
      plo += lo * pcell[i];
      phi += hi * pcell[i];
    }
    CHECK(hausdorff(Interval{plo, phi}, exact) <= 1e-10);
  }
}

TEST_CASE("decomposable combinations") {
  CounterRng rng(3, 3);
  const std::vector<std::vector<double>> values = {{1.0, 0.0}, {0.0, 2.0}};
  SUBCASE("single value with weight one") {
    CHECK(decomposable_combination(values, std::vector<double>{1.0, 0.0}, rng) == values[0]);
  }
  SUBCASE("weight-sum violation") {
    CHECK_THROWS_AS(decomposable_combination(values, std::vector<double>{0.5, 0.4}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(decomposable_combination(values, std::vector<double>{1.5, -0.5}, rng),
                    std::invalid_argument);
  }
  SUBCASE("second moment of any combination is at most the family maximum") {
    // X1 = N(0,1), X2 = 2 N(0,1): E||combo||^2 <= 4 + MC error
    CounterRng noise(5, 1);
    const int reps = 10000;
    std::vector<double> sq(reps);
    for (int rep = 0; rep < reps; ++rep) {
      const double g = noise.next_gaussian();
      const std::vector<std::vector<double>> vals = {{g}, {2.0 * g}};
      const auto v = decomposable_combination(vals, std::vector<double>{0.3, 0.7}, noise);
      sq[rep] = v[0] * v[0];
    }
    const MeanStderr ms = mean_stderr(sq);
    CHECK(ms.mean <= 4.0 + 3.0 * ms.se);
  }
}

TEST_CASE("separation certificates") {
  const BFamily shifted = shifted_constant_family();
  const SeparationCertificate cert = verify_separation(shifted, 4, 0.0, 1.0, 1.0);
  // nearest pair gap is 1/(n+1) = 0.2 over a unit interval
  CHECK(cert.epsilon == doctest::Approx(0.2).epsilon(1e-12));

  BFamily degenerate;
  degenerate.constant_in_time = true;
  degenerate.value = [](int, int, double) { return 1.0; };
  CHECK_THROWS_AS(verify_separation(degenerate, 3, 0.0, 1.0, 1.0), std::invalid_argument);

  BFamily wiggly;
  wiggly.constant_in_time = false;
  wiggly.value = [](int, int j, double s) { return std::sin(s + j); };
  CHECK(verify_separation(wiggly, 3, 0.0, 1.0, 1.0).epsilon > 0.0);
}

TEST_CASE("growth experiment: monotone estimates and positive slope") {
  GrowthExperimentConfig cfg;
  cfg.truncation_eps = 0.05;
  cfg.n_values = {2, 4, 8, 16};
  cfg.reps = 600;
  cfg.seed = 11;
  const ExperimentReport report = unboundedness_experiment(cfg);
  CHECK(report.passed());
  double prev = -1.0;
  int rows_seen = 0;
  for (const auto& row : report.rows) {
    if (row.experiment != "unbounded_growth.max_abs") continue;
    CHECK(row.estimate >= prev);  // shared paths make this exact
    prev = row.estimate;
    ++rows_seen;
  }
  CHECK(rows_seen == 4);
  const auto& summary = report.rows.back();
  CHECK(summary.estimate > 0.0);
  CHECK(summary.reference > 3.0);  // t-statistic
  CHECK(report.truncation_variance ==
        doctest::Approx(2.0 * std::pow(0.05, 0.5) / 0.5).epsilon(1e-12));
}

TEST_CASE("growth experiment rejects bad configurations") {
  GrowthExperimentConfig cfg;
  cfg.alpha = 0.8;  // finite variation: the construction needs alpha in (1,2)
  CHECK_THROWS_AS(unboundedness_experiment(cfg), std::invalid_argument);

  GrowthExperimentConfig dup;
  dup.family.value = [](int, int, double) { return 2.0; };
  dup.family.constant_in_time = true;
  dup.family.label = "degenerate";
  CHECK_THROWS_AS(unboundedness_experiment(dup), std::invalid_argument);
}

TEST_CASE("boundedness check stays under the quadrature bound") {
  BoundednessConfig cfg;
  cfg.driver = make_stable_driver(0.5, 1.0, 1e-3);
  cfg.kernel = make_riemann_liouville(0.75, 1.0);
  cfg.reps = 2000;
  cfg.combinations = 100;
  cfg.seed = 3;
  const ExperimentReport report = boundedness_bound_check(cfg);
  CHECK(report.passed());

  // compound Poisson route: singleton family isometry within 3 SE
  BoundednessConfig cp_cfg;
  cp_cfg.driver = make_compound_poisson_driver(cp_uniform_symmetric(3.0, 0.1, 0.9));
  cp_cfg.kernel = make_exponential(1.0, 1.0);
  cp_cfg.family_multipliers = {1.0};
  cp_cfg.reps = 4000;
  cp_cfg.combinations = 10;
  cp_cfg.seed = 5;
  const ExperimentReport cp_report = boundedness_bound_check(cp_cfg);
  CHECK(cp_report.passed());

  BoundednessConfig bad;
  bad.driver = make_stable_driver(1.5, 1.0, 1e-2);  // infinite variation
  bad.kernel = cfg.kernel;
  CHECK_THROWS_AS(boundedness_bound_check(bad), std::invalid_argument);
}

TEST_CASE("empty-jump paths sit below any bound") {
  BoundednessConfig cfg;
  cfg.driver = make_compound_poisson_driver(cp_uniform_symmetric(0.0, 0.1, 0.9));
  cfg.kernel = make_exponential(1.0, 1.0);
  cfg.reps = 50;
  cfg.combinations = 4;
  const ExperimentReport report = boundedness_bound_check(cfg);
  for (const auto& row : report.rows) {
    if (row.experiment == "bounded_check.sup_combination_second_moment") {
      CHECK(row.estimate == 0.0);
      CHECK(row.estimate <= row.reference);
    }
  }
}

TEST_CASE("stable vector maximum") {
  StableMaxConfig cfg;
  cfg.n_values = {1, 2, 8, 32};
  cfg.reps = 3000;
  cfg.seed = 21;
  const ExperimentReport base = stable_vector_maximum(cfg);
  CHECK(base.passed());

  SUBCASE("positive homogeneity is exact under shared randomness") {
    StableMaxConfig scaled = cfg;
    scaled.scale = 2.0;
    const ExperimentReport doubled = stable_vector_maximum(scaled);
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
      if (base.rows[i].experiment != "stable_max.expected_max_abs") continue;
      CHECK(doubled.rows[i].estimate ==
            doctest::Approx(2.0 * base.rows[i].estimate).epsilon(1e-12));
    }
  }

  SUBCASE("estimate stabilizes and the standard error shrinks with reps") {
    StableMaxConfig big = cfg;
    big.reps = 16 * cfg.reps;
    const ExperimentReport more = stable_vector_maximum(big);
    // first row is n = 1: E|Y_1| finite for alpha > 1
    const auto& small_row = base.rows.front();
    const auto& big_row = more.rows.front();
    CHECK(big_row.stderr_value < small_row.stderr_value);
    CHECK(std::abs(big_row.estimate - small_row.estimate) <
          4.0 * (small_row.stderr_value + big_row.stderr_value));
  }
}

TEST_CASE("substreams are disjoint across tags") {
  CHECK(substream(5, 0) != substream(5, 1));
  CHECK(substream(5, 0) == 5);
  CHECK(substream(0, 2) != substream(1, 2));
}
