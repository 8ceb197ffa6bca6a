#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levyset/kernels.hpp"
#include "levyset/levy.hpp"
#include "levyset/report.hpp"
#include "levyset/setval.hpp"

namespace levyset {

// The four integrand classes of the convoluted integral functional.
enum class IntegrandClass { Drift = 1, Brownian = 2, LargeJump = 3, SmallJump = 4 };

// A single deterministic integrand. Drift selectors map s to R^d, Brownian
// selectors map s to R^{d x m} (row-major), jump selectors map (s, z) to R^d.
struct Selector {
  IntegrandClass q = IntegrandClass::Drift;
  std::function<std::vector<double>(double)> time_fn;
  std::function<std::vector<double>(double, const std::vector<double>&)> jump_fn;
  double bound = 0.0;  // uniform bound on the norm, for certificate checks
};

Selector constant_drift_selector(std::vector<double> value);
Selector constant_brownian_selector(std::vector<double> value);  // d x m row-major
// f(s, z) = c(s) * z with scalar c; q picks the jump class.
Selector scalar_jump_selector(IntegrandClass q, std::function<double(double)> c, double bound);
Selector constant_jump_selector(IntegrandClass q, double c);

struct SelectorFamily {
  IntegrandClass q = IntegrandClass::Drift;
  std::vector<Selector> members;
  std::string label;
};

// A d-vector or a point at directed infinity.
struct ExtendedVec {
  std::vector<double> value;
  std::vector<std::vector<double>> directions;  // nonempty means exploded
  bool exploded() const { return !directions.empty(); }
};

// Weight g(t, s) applied to a jump at time s <= t: the kernel value for
// s < t, the limit g(t, t-) for s == t (infinite when singular -> the caller
// turns the jump into a directed infinity).
double jump_weight(const Kernel& k, double t, double s, bool* at_singularity);

// Eq-by-eq evaluation of the four convoluted integral functionals on one
// path realization. For q = 2 the kernel is cell-averaged over the grid
// cells; jump classes sum kernel-weighted marks. Requires t0, t to be grid
// points for q = 2.
ExtendedVec integral_functional(const Kernel& k, const Selector& h, const PathRealization& path,
                                double t0, double t, const LevyDriverSpec& spec);

// Pointwise image of a finite selector family; exploded as soon as any
// member explodes.
ExtendedSetValue sv_integral(const Kernel& k, const SelectorFamily& family,
                             const PathRealization& path, double t0, double t,
                             const LevyDriverSpec& spec);

// Exact decomposable-hull interval for the d = 1 Aumann integral of the
// interval [lo, hi]: selectors may switch between the extremes with the sign
// of the kernel.
Interval aumann_interval_integral(const Kernel& k, double lo, double hi, double t0, double t);

// Samples the partition index from the weights and returns values[J].
std::size_t decomposable_combination_index(std::span<const double> weights, CounterRng& rng);
std::vector<double> decomposable_combination(const std::vector<std::vector<double>>& values,
                                             std::span<const double> weights, CounterRng& rng);

// Family b_j(s), 1-based j, for the infinite-variation experiments.
struct BFamily {
  std::string label;
  bool constant_in_time = true;
  std::function<double(int, int, double)> value;  // (n, j, s)
};

BFamily shifted_constant_family();        // b_j = 1 + j / (n + 1)
BFamily accumulating_family();            // b_1 = 1, b_j = 1 + 1/j for j >= 2
BFamily fixed_gap_family(double delta);   // b_j = 1 + j * delta

struct SeparationCertificate {
  double r = 1.0;
  double epsilon = 0.0;
  int row_index = 1;
};

// inf over pairs j < j' of the L^r separation integral on [t0, t], by
// quadrature (exact for constant families). Throws std::invalid_argument
// when the family degenerates (epsilon ~ 0).
SeparationCertificate verify_separation(const BFamily& family, int n, double t0, double t,
                                        double r = 1.0);

// Derived substreams of a per-rep stream (tag in the top bits).
inline std::uint64_t substream(std::uint64_t rep, unsigned tag) {
  return rep | (static_cast<std::uint64_t>(tag) << 48);
}

struct GrowthExperimentConfig {
  double alpha = 1.5;
  double stable_scale = 1.0;
  double truncation_eps = 1e-3;
  std::vector<int> n_values = {2, 4, 8, 16, 32, 64, 128, 256};
  BFamily family = shifted_constant_family();
  double t = 1.0;
  double kernel_beta = 2.0;  // Riemann-Liouville exponent for the weight
  int reps = 20000;
  double r = 1.0;
  std::uint64_t seed = 1;
  int workers = 1;
};

// E max_{j <= n} |Y_j| for Y_j the large-plus-truncated-small jump functional
// with selector b_j(s) z on one shared path per rep, together with the
// regression of the estimates against log^{(alpha-1)/alpha} n.
ExperimentReport unboundedness_experiment(const GrowthExperimentConfig& cfg);

struct BoundednessConfig {
  LevyDriverSpec driver;    // finite variation: alpha < 1 stable, or compound Poisson
  Kernel kernel;
  std::vector<double> family_multipliers = {1.0, 2.0};
  double t = 1.0;
  int reps = 10000;
  int combinations = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
};

// Empirical sup over sampled decomposable combinations of E||eta||^2 against
// the quadrature-evaluated moment bound for the compensated-measure integral.
ExperimentReport boundedness_bound_check(const BoundednessConfig& cfg);

struct StableMaxConfig {
  double alpha = 1.5;
  std::vector<int> n_values = {2, 8, 32, 128};
  double scale = 1.0;
  int reps = 20000;
  std::uint64_t seed = 1;
  int workers = 1;
};

// Direct sampler for E max_{j <= n} |Y_j| with Y iid-axes symmetric stable.
ExperimentReport stable_vector_maximum(const StableMaxConfig& cfg);

}  // namespace levyset
