#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "levyset/quadrature.hpp"

namespace levyset {

// Which hypergeometric argument the Molchan-Golosov kernel uses. The two
// published forms disagree; OverTotalTime, -(t-s)/t, is the default and the
// only one with a square-integrable profile for all beta > 1/2.
enum class MgArgument { OverTotalTime, OverRunningTime };

// A Volterra-type kernel g(t, s) on the triangle {0 <= s < t <= T}, stored as
// g(t, s) = (t - s)^power * smooth(t, s) so that endpoint singularities can be
// removed algebraically inside quadrature and cell averaging.
struct Kernel {
  std::string label;
  double horizon = 1.0;
  double power = 0.0;
  bool stationary = false;
  bool singular = false;
  std::map<std::string, double> params;
  std::function<double(double, double)> smooth;
  // Optional closed form for A(tau) = integral of g over lag in [0, tau];
  // only meaningful for stationary kernels.
  std::function<double(double)> lag_antiderivative;

  // Throws std::domain_error outside {0 <= s < t <= horizon}.
  double eval(double t, double s) const;

  double param(const std::string& name) const;
};

Kernel make_exponential(double kappa, double horizon = 1.0);
Kernel make_riemann_liouville(double beta, double horizon = 1.0);
Kernel make_molchan_golosov(double beta, double horizon = 1.0,
                            MgArgument argument = MgArgument::OverTotalTime);
Kernel make_product(const Kernel& a, const Kernel& b);
Kernel make_custom(std::string label, double horizon, double power, bool stationary,
                   std::function<double(double, double)> smooth);

// L2([0,t)) norm squared of g(t, .), singularity-aware. Throws QuadratureError
// when the profile is not square integrable or the quadrature fails.
double l2_norm_sq(const Kernel& k, double t);

// Integral of g(t, s) ds over [a, b] with b <= t; uses the endpoint
// substitution when b touches t and the kernel has a negative power.
double kernel_integral(const Kernel& k, double t, double a, double b);

// Integrals of the positive and negative parts of g(t, .) over [a, b]
// (negative part signed, i.e. integral of min(g, 0)).
std::pair<double, double> kernel_signed_part_integrals(const Kernel& k, double t, double a,
                                                       double b);

// Cell-averaged weights w_i = (1/dt_i) * integral of g(t, u) over cell i, for
// the cells of `grid` inside [t0, t]. t0 and t must be grid points. Cells
// outside [t0, t] get weight zero.
std::vector<double> cell_averaged_weights(const Kernel& k, std::span<const double> grid,
                                          double t0, double t);

// Lower-triangular weight table for every grid time: row i (i >= 1) holds the
// cell-averaged weights for target time grid[i] over cells 0..i-1.
std::vector<std::vector<double>> convolution_weight_table(const Kernel& k,
                                                          std::span<const double> grid);

}  // namespace levyset
