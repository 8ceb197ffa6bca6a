#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace levyset {

// Closed interval, the d = 1 set value.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

std::optional<Interval> intersect(const Interval& a, const Interval& b);
Interval union_hull(const Interval& a, const Interval& b);
Interval minkowski_sum(const Interval& a, const Interval& b);
Interval scale(double c, const Interval& a);
double hausdorff(const Interval& a, const Interval& b);
inline double hausdorff_to_origin(const Interval& a) {
  return std::max(a.lo < 0 ? -a.lo : a.lo, a.hi < 0 ? -a.hi : a.hi);
}
inline double width(const Interval& a) { return a.hi - a.lo; }

// A nonempty finite point set in R^d. When `convexified` is set the value
// stands for the convex hull of the points and is kept canonical: for d <= 3
// only hull vertices are retained (d = 1 collapses to {lo, hi}); higher
// dimensions keep the raw cloud.
class SetValue {
 public:
  SetValue(int dim, std::vector<double> flat_points, bool convexified = false);

  int dim() const { return dim_; }
  std::size_t size() const { return pts_.size() / static_cast<std::size_t>(dim_); }
  bool convexified() const { return convexified_; }
  std::span<const double> point(std::size_t i) const {
    return {pts_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& flat() const { return pts_; }

  static SetValue singleton(std::span<const double> p);
  static SetValue from_interval(const Interval& iv);
  Interval to_interval() const;  // requires dim == 1

 private:
  int dim_;
  bool convexified_;
  std::vector<double> pts_;
};

SetValue convex_hull(const SetValue& a);
SetValue minkowski_sum(const SetValue& a, const SetValue& b);
SetValue scale(double c, const SetValue& a);
SetValue scale_matrix(std::span<const double> m, const SetValue& a);  // row-major d x d
double hausdorff(const SetValue& a, const SetValue& b);
double hausdorff_to_origin(const SetValue& a);

// Either a finite set value or a point at directed infinity. Explosion
// absorbs: a value cannot mix finite points with infinite directions.
class ExtendedSetValue {
 public:
  static ExtendedSetValue finite(SetValue v);
  static ExtendedSetValue exploded(std::vector<std::vector<double>> unit_directions);

  bool is_exploded() const { return !directions_.empty(); }
  const SetValue& value() const;
  const std::vector<std::vector<double>>& directions() const { return directions_; }

 private:
  ExtendedSetValue() = default;
  std::optional<SetValue> finite_;
  std::vector<std::vector<double>> directions_;
};

}  // namespace levyset
