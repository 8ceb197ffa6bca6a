#pragma once

#include <ostream>
#include <vector>

#include "levyset/kernels.hpp"
#include "levyset/report.hpp"
#include "levyset/svint.hpp"

namespace levyset {

// Comparison between the n-independent witness mass A3 and the family-driven
// mass A4 for the stable specialization (conjugate measure a scalar multiple;
// normalization constant fixed to 1).
struct SlepianConfig {
  double alpha = 1.5;  // in (1, 2)
  double rho = 1.0;
  Kernel kernel;
  double t0 = 0.0;
  double t = 1.0;
  BFamily family;
};

SlepianConfig default_slepian_config();

// A3 = (2 / alpha) * rho^{-alpha/2}; constant in n.
double eval_A3(const SlepianConfig& cfg, int n);

// A4 with reference selector `witness_index` (1-based):
//   (2 / rho^{alpha/2}) * int |g(t,s)|^alpha * inf_{j' != k} |b_k - b_j'|^alpha ds.
double eval_A4(const SlepianConfig& cfg, int n, int witness_index = 1);

// A4 minimized over the witness index: the sharpest admissible witness set.
double eval_A4_sharpest(const SlepianConfig& cfg, int n);

// Table of (n, A3, A4) with strict-decrease and crossover verdicts. A4 uses
// the sharpest witness.
ExperimentReport comparison_report(const SlepianConfig& cfg, const std::vector<int>& n_values);

// CSV schema: n,A3,A4,ratio
void write_slepian_csv(const ExperimentReport& report, std::ostream& os);

}  // namespace levyset
