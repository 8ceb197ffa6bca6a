#include "levyset/setval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace levyset {

namespace {

void require_same_dim(int a, int b) {
  if (a != b) {
    throw std::invalid_argument("set-value dimension mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
  }
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double norm(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

std::vector<double> dedup_points(int dim, const std::vector<double>& pts) {
  const std::size_t n = pts.size() / static_cast<std::size_t>(dim);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(pts.begin() + a * dim, pts.begin() + (a + 1) * dim,
                                        pts.begin() + b * dim, pts.begin() + (b + 1) * dim);
  });
  std::vector<double> out;
  out.reserve(pts.size());
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    if (!out.empty() &&
        std::equal(pts.begin() + i * dim, pts.begin() + (i + 1) * dim, out.end() - dim)) {
      continue;
    }
    out.insert(out.end(), pts.begin() + i * dim, pts.begin() + (i + 1) * dim);
  }
  return out;
}

// --- 2-D hull: Andrew monotone chain over deduplicated points, CCW order.
std::vector<double> hull_2d(const std::vector<double>& pts) {
  const std::size_t n = pts.size() / 2;
  if (n <= 2) return pts;
  std::vector<std::array<double, 2>> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = {pts[2 * i], pts[2 * i + 1]};
  std::sort(p.begin(), p.end());
  auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                  const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<double, 2>> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  std::vector<double> out;
  out.reserve(2 * h.size());
  for (const auto& q : h) {
    out.push_back(q[0]);
    out.push_back(q[1]);
  }
  return out;
}

// --- 3-D hull: incremental insertion with horizon repair. Returns triangle
// faces with outward orientation, or nullopt when the cloud is degenerate
// (collinear/coplanar), in which case callers keep the deduplicated points.
struct Hull3 {
  std::vector<std::array<double, 3>> v;
  std::vector<std::array<std::size_t, 3>> faces;
};

std::array<double, 3> cross3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
std::array<double, 3> sub3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double signed_volume(const std::array<double, 3>& a, const std::array<double, 3>& b,
                     const std::array<double, 3>& c, const std::array<double, 3>& d) {
  return dot3(sub3(b, a), cross3(sub3(c, a), sub3(d, a)));
}

std::optional<Hull3> hull_3d(const std::vector<double>& pts) {
  const std::size_t n = pts.size() / 3;
  if (n < 4) return std::nullopt;
  std::vector<std::array<double, 3>> p(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = {pts[3 * i], pts[3 * i + 1], pts[3 * i + 2]};
    for (double x : p[i]) scale = std::max(scale, std::abs(x));
  }
  const double eps = 1e-10 * std::max(1.0, scale * scale * scale);

  // Initial tetrahedron: greedy farthest-point choices.
  std::size_t i1 = 1;
  double best = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = sq_dist({p[i].data(), 3}, {p[0].data(), 3});
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (best <= eps * eps) return std::nullopt;
  std::size_t i2 = 0;
  best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = cross3(sub3(p[i1], p[0]), sub3(p[i], p[0]));
    const double d = dot3(c, c);
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= eps * eps) return std::nullopt;
  std::size_t i3 = 0;
  best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(signed_volume(p[0], p[i1], p[i2], p[i]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= eps) return std::nullopt;

  Hull3 hull;
  hull.v = p;
  auto add_face = [&](std::size_t a, std::size_t b, std::size_t c,
                      const std::array<double, 3>& inside) {
    // Orient so that the interior point lies on the negative side.
    const auto nrm = cross3(sub3(p[b], p[a]), sub3(p[c], p[a]));
    if (dot3(nrm, sub3(inside, p[a])) > 0) {
      hull.faces.push_back({a, c, b});
    } else {
      hull.faces.push_back({a, b, c});
    }
  };
  const std::array<double, 3> centroid = {
      (p[0][0] + p[i1][0] + p[i2][0] + p[i3][0]) / 4.0,
      (p[0][1] + p[i1][1] + p[i2][1] + p[i3][1]) / 4.0,
      (p[0][2] + p[i1][2] + p[i2][2] + p[i3][2]) / 4.0};
  add_face(0, i1, i2, centroid);
  add_face(0, i1, i3, centroid);
  add_face(0, i2, i3, centroid);
  add_face(i1, i2, i3, centroid);

  auto face_sees = [&](const std::array<std::size_t, 3>& f, const std::array<double, 3>& q) {
    const auto nrm = cross3(sub3(hull.v[f[1]], hull.v[f[0]]), sub3(hull.v[f[2]], hull.v[f[0]]));
    return dot3(nrm, sub3(q, hull.v[f[0]])) > eps;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || i == i1 || i == i2 || i == i3) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < hull.faces.size(); ++f) {
      if (face_sees(hull.faces[f], p[i])) visible.push_back(f);
    }
    if (visible.empty()) continue;
    // Horizon edges appear exactly once among the visible faces.
    std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
    for (std::size_t f : visible) {
      const auto& face = hull.faces[f];
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = face[e];
        const std::size_t b = face[(e + 1) % 3];
        edge_count[{std::min(a, b), std::max(a, b)}]++;
      }
    }
    std::vector<std::array<std::size_t, 2>> horizon;
    for (std::size_t f : visible) {
      const auto& face = hull.faces[f];
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = face[e];
        const std::size_t b = face[(e + 1) % 3];
        if (edge_count[{std::min(a, b), std::max(a, b)}] == 1) horizon.push_back({a, b});
      }
    }
    std::sort(visible.rbegin(), visible.rend());
    for (std::size_t f : visible) hull.faces.erase(hull.faces.begin() + static_cast<long>(f));
    for (const auto& [a, b] : horizon) {
      // Keeping the horizon edge direction preserves outward orientation.
      hull.faces.push_back({a, b, i});
    }
  }
  return hull;
}

// Distance from a point to a triangle (Ericson, Real-Time Collision Detection).
double sq_dist_point_triangle(std::span<const double> pt, const std::array<double, 3>& a,
                              const std::array<double, 3>& b, const std::array<double, 3>& c) {
  const std::array<double, 3> p = {pt[0], pt[1], pt[2]};
  const auto ab = sub3(b, a), ac = sub3(c, a), ap = sub3(p, a);
  const double d1 = dot3(ab, ap), d2 = dot3(ac, ap);
  if (d1 <= 0 && d2 <= 0) return dot3(ap, ap);
  const auto bp = sub3(p, b);
  const double d3 = dot3(ab, bp), d4 = dot3(ac, bp);
  if (d3 >= 0 && d4 <= d3) return dot3(bp, bp);
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    const double t = d1 / (d1 - d3);
    const std::array<double, 3> q = {a[0] + t * ab[0], a[1] + t * ab[1], a[2] + t * ab[2]};
    return sq_dist({q.data(), 3}, pt);
  }
  const auto cp = sub3(p, c);
  const double d5 = dot3(ab, cp), d6 = dot3(ac, cp);
  if (d6 >= 0 && d5 <= d6) return dot3(cp, cp);
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    const double t = d2 / (d2 - d6);
    const std::array<double, 3> q = {a[0] + t * ac[0], a[1] + t * ac[1], a[2] + t * ac[2]};
    return sq_dist({q.data(), 3}, pt);
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    const double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    const std::array<double, 3> q = {b[0] + t * (c[0] - b[0]), b[1] + t * (c[1] - b[1]),
                                     b[2] + t * (c[2] - b[2])};
    return sq_dist({q.data(), 3}, pt);
  }
  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom, w = vc * denom;
  const std::array<double, 3> q = {a[0] + ab[0] * v + ac[0] * w, a[1] + ab[1] * v + ac[1] * w,
                                   a[2] + ab[2] * v + ac[2] * w};
  return sq_dist({q.data(), 3}, pt);
}

double sq_dist_point_segment2(std::span<const double> p, std::span<const double> a,
                              std::span<const double> b) {
  const double abx = b[0] - a[0], aby = b[1] - a[1];
  const double apx = p[0] - a[0], apy = p[1] - a[1];
  const double len2 = abx * abx + aby * aby;
  double t = len2 > 0 ? (apx * abx + apy * aby) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double qx = a[0] + t * abx, qy = a[1] + t * aby;
  const double dx = p[0] - qx, dy = p[1] - qy;
  return dx * dx + dy * dy;
}

// Distance from a point to the convex set represented by `b` (hull of its
// points when convexified, else the finite point set itself).
double dist_point_to_set(std::span<const double> p, const SetValue& b) {
  const int d = b.dim();
  if (!b.convexified() || d > 3 || b.size() == 1) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < b.size(); ++i) best = std::min(best, sq_dist(p, b.point(i)));
    return std::sqrt(best);
  }
  if (d == 1) {
    double lo = b.point(0)[0], hi = lo;
    for (std::size_t i = 1; i < b.size(); ++i) {
      lo = std::min(lo, b.point(i)[0]);
      hi = std::max(hi, b.point(i)[0]);
    }
    const double x = p[0];
    return x < lo ? lo - x : (x > hi ? x - hi : 0.0);
  }
  if (d == 2) {
    // Inside test against CCW hull edges, else nearest edge.
    const std::size_t n = b.size();
    if (n == 2) return std::sqrt(sq_dist_point_segment2(p, b.point(0), b.point(1)));
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const auto a0 = b.point(i);
      const auto a1 = b.point((i + 1) % n);
      const double cr = (a1[0] - a0[0]) * (p[1] - a0[1]) - (a1[1] - a0[1]) * (p[0] - a0[0]);
      if (cr < 0) inside = false;
      best = std::min(best, sq_dist_point_segment2(p, a0, a1));
    }
    return inside ? 0.0 : std::sqrt(best);
  }
  // d == 3: rebuild faces; fall back to the point cloud if degenerate.
  const auto hull = hull_3d(b.flat());
  if (!hull) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < b.size(); ++i) best = std::min(best, sq_dist(p, b.point(i)));
    return std::sqrt(best);
  }
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : hull->faces) {
    const auto& a0 = hull->v[f[0]];
    const auto& a1 = hull->v[f[1]];
    const auto& a2 = hull->v[f[2]];
    const auto nrm = cross3(sub3(a1, a0), sub3(a2, a0));
    const std::array<double, 3> pp = {p[0], p[1], p[2]};
    if (dot3(nrm, sub3(pp, a0)) > 0) inside = false;
    best = std::min(best, sq_dist_point_triangle(p, a0, a1, a2));
  }
  return inside ? 0.0 : std::sqrt(best);
}

std::vector<double> canonicalize(int dim, std::vector<double> pts) {
  pts = dedup_points(dim, pts);
  const std::size_t n = pts.size() / static_cast<std::size_t>(dim);
  if (n <= 1) return pts;
  if (dim == 1) {
    const auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    if (*lo == *hi) return {*lo};
    return {*lo, *hi};
  }
  if (dim == 2) return hull_2d(pts);
  if (dim == 3) {
    const auto hull = hull_3d(pts);
    if (!hull) return pts;
    std::vector<bool> used(hull->v.size(), false);
    for (const auto& f : hull->faces) {
      used[f[0]] = used[f[1]] = used[f[2]] = true;
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < hull->v.size(); ++i) {
      if (used[i]) out.insert(out.end(), hull->v[i].begin(), hull->v[i].end());
    }
    return dedup_points(3, out);
  }
  return pts;
}

}  // namespace

// ---- Interval operations

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

Interval union_hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval minkowski_sum(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

Interval scale(double c, const Interval& a) {
  return c >= 0 ? Interval{c * a.lo, c * a.hi} : Interval{c * a.hi, c * a.lo};
}

double hausdorff(const Interval& a, const Interval& b) {
  return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

// ---- SetValue

SetValue::SetValue(int dim, std::vector<double> flat_points, bool convexified)
    : dim_(dim), convexified_(convexified), pts_(std::move(flat_points)) {
  if (dim_ < 1) throw std::invalid_argument("SetValue: dimension must be positive");
  if (pts_.empty() || pts_.size() % static_cast<std::size_t>(dim_) != 0) {
    throw std::invalid_argument("SetValue: point list empty or not a multiple of dim");
  }
  for (double x : pts_) {
    if (!std::isfinite(x)) throw std::invalid_argument("SetValue: points must be finite");
  }
  if (convexified_) pts_ = canonicalize(dim_, std::move(pts_));
}

SetValue SetValue::singleton(std::span<const double> p) {
  return SetValue(static_cast<int>(p.size()), std::vector<double>(p.begin(), p.end()));
}

SetValue SetValue::from_interval(const Interval& iv) {
  if (iv.lo == iv.hi) return SetValue(1, {iv.lo}, true);
  return SetValue(1, {iv.lo, iv.hi}, true);
}

Interval SetValue::to_interval() const {
  if (dim_ != 1) throw std::invalid_argument("to_interval: requires dim == 1");
  const auto [lo, hi] = std::minmax_element(pts_.begin(), pts_.end());
  return {*lo, *hi};
}

SetValue convex_hull(const SetValue& a) { return SetValue(a.dim(), a.flat(), true); }

SetValue minkowski_sum(const SetValue& a, const SetValue& b) {
  require_same_dim(a.dim(), b.dim());
  const int d = a.dim();
  std::vector<double> pts;
  pts.reserve(a.size() * b.size() * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto pa = a.point(i);
      const auto pb = b.point(j);
      for (int k = 0; k < d; ++k) pts.push_back(pa[k] + pb[k]);
    }
  }
  return SetValue(d, std::move(pts), a.convexified() || b.convexified());
}

SetValue scale(double c, const SetValue& a) {
  std::vector<double> pts = a.flat();
  for (double& x : pts) x *= c;
  return SetValue(a.dim(), std::move(pts), a.convexified());
}

SetValue scale_matrix(std::span<const double> m, const SetValue& a) {
  const int d = a.dim();
  if (m.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
    throw std::invalid_argument("scale_matrix: matrix must be d x d");
  }
  std::vector<double> pts(a.flat().size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto p = a.point(i);
    for (int r = 0; r < d; ++r) {
      double s = 0.0;
      for (int c = 0; c < d; ++c) s += m[static_cast<std::size_t>(r) * d + c] * p[c];
      pts[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(r)] = s;
    }
  }
  return SetValue(d, std::move(pts), a.convexified());
}

double hausdorff(const SetValue& a, const SetValue& b) {
  require_same_dim(a.dim(), b.dim());
  double d_ab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d_ab = std::max(d_ab, dist_point_to_set(a.point(i), b));
  }
  double d_ba = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    d_ba = std::max(d_ba, dist_point_to_set(b.point(i), a));
  }
  return std::max(d_ab, d_ba);
}

double hausdorff_to_origin(const SetValue& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, norm(a.point(i)));
  return best;
}

// ---- ExtendedSetValue

ExtendedSetValue ExtendedSetValue::finite(SetValue v) {
  ExtendedSetValue e;
  e.finite_ = std::move(v);
  return e;
}

ExtendedSetValue ExtendedSetValue::exploded(std::vector<std::vector<double>> unit_directions) {
  if (unit_directions.empty()) {
    throw std::invalid_argument("exploded value needs at least one direction");
  }
  ExtendedSetValue e;
  e.directions_ = std::move(unit_directions);
  return e;
}

const SetValue& ExtendedSetValue::value() const {
  if (!finite_) throw std::logic_error("value() called on an exploded set value");
  return *finite_;
}

}  // namespace levyset
