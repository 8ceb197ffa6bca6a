#include "levyset/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace levyset {

namespace {

// QUADPACK dqk15 nodes and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839998060601660, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, integral, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15_segment(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    fv1[j] = f(c - x);
    fv2[j] = f(c + x);
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * fsum;
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  resasc *= std::abs(h);
  resabs *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (eps50 > 0.0) err = std::max(err, eps50);
  return {a, b, resk * h, err};
}

}  // namespace

QuadResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const Segment s = gk15_segment(f, a, b);
  return {s.integral, s.error, 15, true};
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              QuadTol tol) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> queue;
  queue.push(gk15_segment(f, a, b));
  out.evaluations = 15;
  double total = queue.top().integral;
  double total_err = queue.top().error;
  int intervals = 1;
  while (total_err > std::max(tol.abs_tol, tol.rel_tol * std::abs(total)) &&
         intervals < tol.max_intervals) {
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      queue.push(worst);  // interval at machine resolution
      break;
    }
    const Segment left = gk15_segment(f, worst.a, mid);
    const Segment right = gk15_segment(f, mid, worst.b);
    out.evaluations += 30;
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++intervals;
  }
  out.value = total;
  out.abs_error = total_err;
  out.converged = total_err <= std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
  return out;
}

QuadResult integrate_endpoint_power(const std::function<double(double)>& phi, double a, double b,
                                    double rho, QuadTol tol) {
  if (!(rho > -1.0 && rho <= 0.0)) {
    throw QuadratureError("endpoint power must lie in (-1, 0], got " + std::to_string(rho));
  }
  if (a == b) return {0.0, 0.0, 0, true};
  const double q = rho + 1.0;
  const double upper = std::pow(b - a, q);
  const double inv_q = 1.0 / q;
  auto transformed = [&phi, b, q, inv_q](double u) {
    const double s = b - std::pow(u, inv_q);
    return phi(s) / q;
  };
  return integrate_adaptive(transformed, 0.0, upper, tol);
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          QuadTol tol) {
  const QuadResult r = integrate_adaptive(f, a, b, tol);
  if (!r.converged) {
    throw QuadratureError("adaptive quadrature did not converge: error estimate " +
                          std::to_string(r.abs_error));
  }
  return r.value;
}

double integrate_endpoint_power_or_throw(const std::function<double(double)>& phi, double a,
                                         double b, double rho, QuadTol tol) {
  const QuadResult r = integrate_endpoint_power(phi, a, b, rho, tol);
  if (!r.converged) {
    throw QuadratureError("endpoint-substituted quadrature did not converge: error estimate " +
                          std::to_string(r.abs_error));
  }
  return r.value;
}

}  // namespace levyset
