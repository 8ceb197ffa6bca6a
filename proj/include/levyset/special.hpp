#pragma once

namespace levyset {

// Gauss hypergeometric 2F1(a, b; c; x) for real x <= 0. Direct power series
// for |x| < 0.9, otherwise the Pfaff transform
//   2F1(a, b; c; x) = (1 - x)^{-a} 2F1(a, c - b; c; x / (x - 1)),
// which maps x <= 0 into [0, 1). Throws std::domain_error when the series
// fails to converge within the term cap.
double gauss_2f1(double a, double b, double c, double x);

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// Upper tail of a chi-square distribution with dof degrees of freedom.
double chi_square_p_value(double stat, int dof);

// Asymptotic two-sample Kolmogorov-Smirnov p-value for statistic d with
// sample sizes n1, n2.
double ks_two_sample_p_value(double d, long long n1, long long n2);

}  // namespace levyset
