#include "levyset/levy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levyset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kJumpCountGuard = 1e7;

double restricted_uniform_moment(double lo, double hi, double x1, double x2, int order) {
  // integral of z^order over (x1, x2) intersected with (lo, hi), under the
  // U(lo, hi) magnitude density.
  const double c1 = std::max(lo, x1);
  const double c2 = std::min(hi, x2);
  if (c1 >= c2) return 0.0;
  const double p = order + 1;
  return (std::pow(c2, p) - std::pow(c1, p)) / p / (hi - lo);
}

}  // namespace

CompoundPoissonSpec cp_uniform_symmetric(double rate, double lo, double hi) {
  if (!(rate >= 0.0)) throw std::invalid_argument("compound Poisson rate must be >= 0");
  if (!(0.0 < lo && lo < hi)) throw std::invalid_argument("mark magnitudes need 0 < lo < hi");
  CompoundPoissonSpec cp;
  cp.rate = rate;
  cp.symmetric_marks = true;
  cp.sample_mark = [lo, hi](CounterRng& rng) {
    const double mag = lo + (hi - lo) * rng.next_unit();
    return std::vector<double>{rng.next_sign() ? mag : -mag};
  };
  cp.mass_small = rate * restricted_uniform_moment(lo, hi, 0.0, 1.0, 0);
  cp.mass_large = rate * restricted_uniform_moment(lo, hi, 1.0, kInf, 0);
  cp.abs_moment_small = rate * restricted_uniform_moment(lo, hi, 0.0, 1.0, 1);
  cp.abs_moment_large = rate * restricted_uniform_moment(lo, hi, 1.0, kInf, 1);
  cp.second_moment_small = rate * restricted_uniform_moment(lo, hi, 0.0, 1.0, 2);
  return cp;
}

LevyDriverSpec make_stable_driver(double alpha, double C, double eps, int dim, double horizon) {
  LevyDriverSpec spec;
  spec.dim = dim;
  spec.brownian_dim = 1;
  spec.jumps = StableSpec{alpha, C, dim};
  spec.truncation_eps = eps;
  spec.horizon = horizon;
  validate_driver(spec);
  return spec;
}

LevyDriverSpec make_holtsmark_driver(double C, double eps, double horizon) {
  return make_stable_driver(1.5, C, eps, 1, horizon);
}

LevyDriverSpec make_compound_poisson_driver(CompoundPoissonSpec cp, double horizon) {
  LevyDriverSpec spec;
  spec.jumps = std::move(cp);
  spec.horizon = horizon;
  validate_driver(spec);
  return spec;
}

void validate_driver(const LevyDriverSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("driver dim must be >= 1");
  if (spec.brownian_dim < 1) throw std::invalid_argument("driver brownian_dim must be >= 1");
  if (!spec.drift.empty() && spec.drift.size() != static_cast<std::size_t>(spec.dim)) {
    throw std::invalid_argument("drift vector must have length dim");
  }
  if (!spec.dispersion.empty() &&
      spec.dispersion.size() !=
          static_cast<std::size_t>(spec.dim) * static_cast<std::size_t>(spec.brownian_dim)) {
    throw std::invalid_argument("dispersion matrix must be dim x brownian_dim");
  }
  if (!(spec.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (const auto* st = std::get_if<StableSpec>(&spec.jumps)) {
    if (!(st->alpha > 0.0 && st->alpha < 2.0)) {
      throw std::invalid_argument("stable index alpha must lie in (0, 2)");
    }
    if (!(st->C > 0.0)) throw std::invalid_argument("stable scale C must be positive");
    if (st->dim != spec.dim) throw std::invalid_argument("stable spec dim must match driver dim");
    if (!(spec.truncation_eps > 0.0 && spec.truncation_eps < 1.0)) {
      throw std::invalid_argument("truncation eps must lie in (0, 1)");
    }
    const double expected =
        spec.horizon * small_jump_intensity(spec) + spec.horizon * large_jump_intensity(spec);
    if (expected > kJumpCountGuard) {
      throw std::invalid_argument("expected jump count " + std::to_string(expected) +
                                  " exceeds guard; truncation eps too small");
    }
  }
  if (const auto* cp = std::get_if<CompoundPoissonSpec>(&spec.jumps)) {
    if (!(cp->rate >= 0.0)) throw std::invalid_argument("compound Poisson rate must be >= 0");
    if (cp->rate > 0.0 && !cp->sample_mark) {
      throw std::invalid_argument("compound Poisson spec needs a mark sampler");
    }
    if (cp->rate * spec.horizon > kJumpCountGuard) {
      throw std::invalid_argument("expected jump count exceeds guard");
    }
  }
}

bool has_jumps(const LevyDriverSpec& spec) {
  if (std::holds_alternative<StableSpec>(spec.jumps)) return true;
  if (const auto* cp = std::get_if<CompoundPoissonSpec>(&spec.jumps)) return cp->rate > 0.0;
  return false;
}

bool infinite_activity(const LevyDriverSpec& spec) {
  return std::holds_alternative<StableSpec>(spec.jumps);
}

bool finite_variation_small_jumps(const LevyDriverSpec& spec) {
  if (const auto* st = std::get_if<StableSpec>(&spec.jumps)) return st->alpha < 1.0;
  return true;
}

bool symmetric_small_jumps(const LevyDriverSpec& spec) {
  if (const auto* cp = std::get_if<CompoundPoissonSpec>(&spec.jumps)) return cp->symmetric_marks;
  return true;  // stable specs are symmetric by construction
}

DensityIntegrals stable_levy_density_integrals(double alpha, double C, double a, double b) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in (0, 2)");
  if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
  if (!(a >= 0.0) || !(b > a)) throw std::invalid_argument("need 0 <= a < b");
  DensityIntegrals out{};
  const double bma = std::isinf(b) ? 0.0 : std::pow(b, -alpha);
  out.mass = a == 0.0 ? kInf : 2.0 * C / alpha * (std::pow(a, -alpha) - bma);

  if (alpha == 1.0) {
    out.abs_moment = (a == 0.0 || std::isinf(b)) ? kInf : 2.0 * C * std::log(b / a);
  } else {
    const double p = 1.0 - alpha;
    const double at = a == 0.0 ? (p > 0.0 ? 0.0 : kInf) : std::pow(a, p);
    const double bt = std::isinf(b) ? (p < 0.0 ? 0.0 : kInf) : std::pow(b, p);
    if (std::isinf(at) || std::isinf(bt)) {
      out.abs_moment = kInf;
    } else {
      out.abs_moment = 2.0 * C * (bt - at) / p;
    }
  }

  const double q = 2.0 - alpha;
  if (std::isinf(b)) {
    out.second_moment = kInf;
  } else {
    const double aq = a == 0.0 ? 0.0 : std::pow(a, q);
    out.second_moment = 2.0 * C * (std::pow(b, q) - aq) / q;
  }
  return out;
}

double truncation_error_variance(const LevyDriverSpec& spec) {
  const auto* st = std::get_if<StableSpec>(&spec.jumps);
  if (st == nullptr) return 0.0;
  const double eps = spec.truncation_eps;
  return st->dim * 2.0 * st->C * std::pow(eps, 2.0 - st->alpha) / (2.0 - st->alpha);
}

double small_jump_intensity(const LevyDriverSpec& spec) {
  if (const auto* st = std::get_if<StableSpec>(&spec.jumps)) {
    return st->dim *
           stable_levy_density_integrals(st->alpha, st->C, spec.truncation_eps, 1.0).mass;
  }
  if (const auto* cp = std::get_if<CompoundPoissonSpec>(&spec.jumps)) return cp->mass_small;
  return 0.0;
}

double large_jump_intensity(const LevyDriverSpec& spec) {
  if (const auto* st = std::get_if<StableSpec>(&spec.jumps)) {
    return st->dim * stable_levy_density_integrals(st->alpha, st->C, 1.0, kInf).mass;
  }
  if (const auto* cp = std::get_if<CompoundPoissonSpec>(&spec.jumps)) return cp->mass_large;
  return 0.0;
}

namespace {

// Arrival times of `count` events on (0, T), already sorted: normalized
// partial sums of exponential spacings (order statistics of uniforms).
std::vector<double> sorted_arrival_times(long long count, double horizon, CounterRng& rng) {
  std::vector<double> times(static_cast<std::size_t>(count));
  double acc = 0.0;
  for (auto& t : times) {
    acc += rng.next_exponential();
    t = acc;
  }
  acc += rng.next_exponential();
  for (auto& t : times) t *= horizon / acc;
  return times;
}

// Inverse-CDF magnitude of the normalized restriction of C|z|^{-alpha-1} to
// (a, b): |Z| = (a^{-alpha} - u (a^{-alpha} - b^{-alpha}))^{-1/alpha}.
double stable_restricted_magnitude(double alpha, double a, double b, double u) {
  const double am = std::pow(a, -alpha);
  const double bm = std::isinf(b) ? 0.0 : std::pow(b, -alpha);
  return std::pow(am - u * (am - bm), -1.0 / alpha);
}

void append_stable_class(std::vector<JumpEvent>& out, const StableSpec& st, double eps_lo,
                         double hi, JumpSizeClass cls, double horizon, CounterRng& rng) {
  const double per_axis = stable_levy_density_integrals(st.alpha, st.C, eps_lo, hi).mass;
  const double mean = st.dim * per_axis * horizon;
  const long long count = rng.next_poisson(mean);
  if (count > static_cast<long long>(kJumpCountGuard)) {
    throw std::invalid_argument("sampled jump count exceeds guard; truncation eps too small");
  }
  const auto times = sorted_arrival_times(count, horizon, rng);
  for (double t : times) {
    const std::size_t axis =
        st.dim == 1 ? 0 : static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(st.dim)));
    const double mag = stable_restricted_magnitude(st.alpha, eps_lo, hi, rng.next_unit());
    std::vector<double> mark(static_cast<std::size_t>(st.dim), 0.0);
    mark[axis] = rng.next_sign() ? mag : -mag;
    out.push_back({t, std::move(mark), cls});
  }
}

double mark_norm(const std::vector<double>& z) {
  double s = 0.0;
  for (double x : z) s += x * x;
  return std::sqrt(s);
}

}  // namespace

PathRealization sample_path(const LevyDriverSpec& spec, int grid_size, std::uint64_t seed,
                            std::uint64_t stream) {
  validate_driver(spec);
  if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
  CounterRng rng(seed, stream);

  PathRealization path;
  path.seed = seed;
  path.stream = stream;
  const int m = spec.brownian_dim;
  const double dt = spec.horizon / grid_size;
  path.grid.resize(static_cast<std::size_t>(grid_size) + 1);
  for (int i = 0; i <= grid_size; ++i) path.grid[static_cast<std::size_t>(i)] = dt * i;
  path.grid.back() = spec.horizon;

  path.brownian_increments.resize(static_cast<std::size_t>(grid_size) * m);
  const double sdt = std::sqrt(dt);
  for (auto& w : path.brownian_increments) w = sdt * rng.next_gaussian();

  if (const auto* st = std::get_if<StableSpec>(&spec.jumps)) {
    std::vector<JumpEvent> large, small;
    append_stable_class(large, *st, 1.0, kInf, JumpSizeClass::Large, spec.horizon, rng);
    append_stable_class(small, *st, spec.truncation_eps, 1.0, JumpSizeClass::Small, spec.horizon,
                        rng);
    path.jumps.reserve(large.size() + small.size());
    std::merge(large.begin(), large.end(), small.begin(), small.end(),
               std::back_inserter(path.jumps),
               [](const JumpEvent& a, const JumpEvent& b) { return a.time < b.time; });
  } else if (const auto* cp = std::get_if<CompoundPoissonSpec>(&spec.jumps)) {
    if (cp->rate > 0.0) {
      const long long count = rng.next_poisson(cp->rate * spec.horizon);
      const auto times = sorted_arrival_times(count, spec.horizon, rng);
      path.jumps.reserve(times.size());
      for (double t : times) {
        std::vector<double> mark = cp->sample_mark(rng);
        if (mark.size() != static_cast<std::size_t>(spec.dim)) {
          throw std::invalid_argument("mark sampler returned wrong dimension");
        }
        const double nz = mark_norm(mark);
        if (nz == 0.0) throw std::invalid_argument("mark sampler returned a zero mark");
        const JumpSizeClass cls = nz >= 1.0 ? JumpSizeClass::Large : JumpSizeClass::Small;
        path.jumps.push_back({t, std::move(mark), cls});
      }
    }
  }
  return path;
}

}  // namespace levyset
