#pragma once

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "levyset/kernels.hpp"
#include "levyset/levy.hpp"
#include "levyset/report.hpp"
#include "levyset/setval.hpp"

namespace levyset {

// d = 1 extended value: a closed interval or a directed infinity.
struct ExtendedInterval {
  bool exploded = false;
  Interval iv{};
  bool dir_neg = false;
  bool dir_pos = false;
};

struct SetPath {
  std::vector<double> times;
  std::vector<ExtendedInterval> values;
};

// Ingredients of the one-dimensional set-valued process: X0 plus drift
// interval K1, finite Brownian family K2, large-jump multiplier interval K3,
// and finite small-jump multiplier family K4 (members act as c * z).
struct MonotoneIngredients {
  Interval x0{0.0, 0.0};
  Interval k1{0.0, 0.0};
  std::vector<double> k2{0.0};
  Interval k3{0.0, 0.0};
  std::vector<double> k4{0.0};
};

// Splits grid cells at every jump time, conditioning the Brownian increments
// on the split (Brownian bridge), so that each jump time becomes an
// evaluation time. Deterministic given (seed, bridge_stream).
PathRealization insert_jump_times(const PathRealization& path, int brownian_dim,
                                  std::uint64_t seed, std::uint64_t bridge_stream);

// Scalar convoluted Brownian integral at every grid time (unit selector).
std::vector<double> convoluted_brownian_scalar(const std::vector<std::vector<double>>& weights,
                                               const PathRealization& path);

// Evaluates the set-valued process on the path grid. Jump times must already
// be grid points; a singular kernel turns every jump time into a directed
// infinity (when the corresponding multipliers are nonzero).
SetPath build_set_path(const MonotoneIngredients& ing, const Kernel& k,
                       const PathRealization& path,
                       const std::vector<std::vector<double>>* weight_table = nullptr);

struct Tau {
  bool hit = false;
  std::size_t index = 0;
  double time = 0.0;
  bool empty_intersection = false;  // grid-resolution diagnostic
};

// Running intersection frozen at the first singleton (width <= width_tol).
// Exploded inputs are skipped by the intersection; an empty running
// intersection freezes at the previous value and flags the diagnostic.
std::pair<SetPath, Tau> decreasing_process(const SetPath& sp, double width_tol = 1e-9);

// Running closed convex union hull; once exploded, exploded forever.
SetPath increasing_process(const SetPath& sp);

// Fraction of paths with at least one jump in (0, T], which under a singular
// kernel is exactly the event of an exploded value; compared against the
// Poisson reference 1 - exp(-rate * T).
ExperimentReport explosion_probability_experiment(const Kernel& k, double rate, double horizon,
                                                  int reps, std::uint64_t seed, int workers);

struct CovarianceConfig {
  Kernel kernel;
  double t = 1.0;
  std::vector<double> u_values;  // lags, t + u <= horizon
  int reps = 0;                  // 0: quadrature only
  std::uint64_t seed = 1;
  int workers = 1;
};

// Quadrature covariance deviation |Cov(u) - Var| with its log-log exponent
// fit; optional MC cross-check of the covariance values.
ExperimentReport covariance_decay_check(const CovarianceConfig& cfg);

struct IntegrabilityReport {
  double k1_sup = 0.0;       // sup_s d_H(K1(s-), {0})
  double k3_integral = 0.0;  // sup_s int_{|z|>=1} d_H(K3(s-,z), {0}) nu(dz)
  bool finite = false;
};

IntegrabilityReport integrability_condition_check(const MonotoneIngredients& ing,
                                                  const LevyDriverSpec& driver);

// CSV schema: rep,t,lo,hi,exploded,tau_hit
void write_set_path_csv(const SetPath& sp, const Tau& tau, long long rep, std::ostream& os,
                        bool header);

}  // namespace levyset
