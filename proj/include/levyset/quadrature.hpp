#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace levyset {

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadTol {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_intervals = 4000;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Single Gauss-Kronrod 7-15 panel with QUADPACK-style error estimate.
QuadResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

// Globally adaptive GK15: splits the worst interval until the summed error
// estimate meets max(abs_tol, rel_tol * |integral|).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              QuadTol tol = {});

// Integral of (b - s)^rho * phi(s) over [a, b) for rho in (-1, 0], phi smooth
// up to s = b. The substitution u = (b - s)^(rho + 1) removes the endpoint
// power exactly, so the transformed integrand is phi(b - u^{1/(rho+1)}) / (rho+1).
QuadResult integrate_endpoint_power(const std::function<double(double)>& phi, double a, double b,
                                    double rho, QuadTol tol = {});

// As above but throws QuadratureError when the error estimate stays above tolerance.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          QuadTol tol = {});
double integrate_endpoint_power_or_throw(const std::function<double(double)>& phi, double a,
                                         double b, double rho, QuadTol tol = {});

}  // namespace levyset
