#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "levyset/rng.hpp"

namespace levyset {

enum class JumpSizeClass { Large, Small };

struct JumpEvent {
  double time;
  std::vector<double> mark;
  JumpSizeClass size_class;
};

// Finite-activity jumps: Poisson(rate * T) events with user-sampled marks.
// The restricted nu-moments (nu = rate * mark law) back the closed-form
// oracles and bound checks; the helper constructors fill them in.
struct CompoundPoissonSpec {
  double rate = 1.0;
  std::function<std::vector<double>(CounterRng&)> sample_mark;
  bool symmetric_marks = true;
  double mass_small = 0.0;           // nu(0 < |z| < 1)
  double mass_large = 0.0;           // nu(|z| >= 1)
  double abs_moment_small = 0.0;     // int_{|z|<1} |z| nu(dz)
  double abs_moment_large = 0.0;     // int_{|z|>=1} |z| nu(dz)
  double second_moment_small = 0.0;  // int_{|z|<1} z^2 nu(dz)
};

// Marks are +/- U(lo, hi) with equal sign probability, 0 < lo < hi.
CompoundPoissonSpec cp_uniform_symmetric(double rate, double lo, double hi);

// Symmetric alpha-stable jump measure nu(dz) = C |z|^{-alpha-1} dz per axis,
// supported on the punctured union of axes in dimension `dim`.
struct StableSpec {
  double alpha = 1.5;
  double C = 1.0;
  int dim = 1;
};

struct LevyDriverSpec {
  int dim = 1;
  int brownian_dim = 1;
  std::vector<double> drift;       // size dim; empty means zero
  std::vector<double> dispersion;  // dim x brownian_dim row-major; empty means zero
  std::variant<std::monostate, CompoundPoissonSpec, StableSpec> jumps;
  double truncation_eps = 1e-3;
  double horizon = 1.0;
};

LevyDriverSpec make_stable_driver(double alpha, double C, double eps, int dim = 1,
                                  double horizon = 1.0);
// The Holtsmark case is the symmetric 3/2-stable measure.
LevyDriverSpec make_holtsmark_driver(double C, double eps, double horizon = 1.0);
LevyDriverSpec make_compound_poisson_driver(CompoundPoissonSpec cp, double horizon = 1.0);

// Throws std::invalid_argument naming the violated precondition.
void validate_driver(const LevyDriverSpec& spec);

bool has_jumps(const LevyDriverSpec& spec);
bool infinite_activity(const LevyDriverSpec& spec);
bool finite_variation_small_jumps(const LevyDriverSpec& spec);
bool symmetric_small_jumps(const LevyDriverSpec& spec);

struct DensityIntegrals {
  double mass;
  double abs_moment;
  double second_moment;
};

// Closed-form integrals of the two-sided 1-D stable density C|z|^{-alpha-1}
// over {a < |z| < b}; divergent entries come back as +infinity.
DensityIntegrals stable_levy_density_integrals(double alpha, double C, double a, double b);

// Per-unit-time variance discarded by the eps-truncation of small jumps,
// summed over axes: d * 2C eps^{2-alpha} / (2-alpha). Zero for finite-activity
// or jump-free specs.
double truncation_error_variance(const LevyDriverSpec& spec);

// Expected small/large-class jump counts per unit time.
double small_jump_intensity(const LevyDriverSpec& spec);
double large_jump_intensity(const LevyDriverSpec& spec);

struct PathRealization {
  std::vector<double> grid;                  // grid_size + 1 times, 0 = t_0 < ... = T
  std::vector<double> brownian_increments;   // grid_size x brownian_dim row-major
  std::vector<JumpEvent> jumps;              // sorted by time, times in (0, T)
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Deterministic function of (spec, grid_size, seed, stream). Throws
// std::invalid_argument when the expected jump count exceeds the overflow
// guard (truncation eps too small).
PathRealization sample_path(const LevyDriverSpec& spec, int grid_size, std::uint64_t seed,
                            std::uint64_t stream);

}  // namespace levyset
