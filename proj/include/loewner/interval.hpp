#pragma once

#include <limits>
#include <string>
#include <vector>

namespace loewner {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Non-degenerate real interval, possibly unbounded. A closed endpoint is
/// always finite.
class Interval {
 public:
  /// Throws EmptyDomain when lo >= hi and InvalidArgument when an infinite
  /// endpoint is flagged closed.
  Interval(double lo, double hi, bool lo_closed, bool hi_closed);

  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval real_line() { return {-kInf, kInf, false, false}; }
  static Interval positive() { return {0.0, kInf, false, false}; }
  static Interval nonnegative() { return {0.0, kInf, true, false}; }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }

  bool lo_finite() const;
  bool hi_finite() const;
  bool bounded() const { return lo_finite() && hi_finite(); }
  double width() const { return hi_ - lo_; }

  bool contains(double x) const;
  bool in_closure(double x) const;
  bool interior(double x) const { return x > lo_ && x < hi_; }
  /// Finite endpoint of the closure that does not belong to the interval.
  bool excluded_endpoint(double x) const;
  bool is_endpoint(double x) const { return x == lo_ || x == hi_; }

  bool contains(const Interval& other) const;

  /// Intersection; throws EmptyDomain if it degenerates.
  Interval intersect(const Interval& other) const;
  /// Removes an endpoint from the interval (no-op if already excluded).
  Interval without_endpoint(double x) const;
  Interval with_closed_endpoint(double x) const;

  /// Bounded sampling window: unchanged if bounded, otherwise a window of the
  /// given length anchored at the finite end (or centered at 0).
  Interval clipped(double length = 20.0) const;
  /// Compact sub-window shrunk by `fraction` of the width from each end.
  Interval shrunk(double fraction) const;

  std::string describe() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
  bool lo_closed_;
  bool hi_closed_;
};

/// Scan grid of `count` points covering the interval. Bounded intervals get a
/// uniform grid with open endpoints nudged inward; unbounded sides use
/// geometric spacing out to distance 1e6 from the finite end.
std::vector<double> scan_grid(const Interval& interval, std::size_t count);

}  // namespace loewner
