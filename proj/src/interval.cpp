#include "loewner/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loewner/error.hpp"

namespace loewner {

namespace {

std::string endpoint_text(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Interval::Interval(double lo, double hi, bool lo_closed, bool hi_closed)
    : lo_(lo), hi_(hi), lo_closed_(lo_closed), hi_closed_(hi_closed) {
  if (std::isnan(lo) || std::isnan(hi)) fail(ErrorKind::InvalidArgument, "interval endpoint is NaN");
  if (!(lo < hi)) fail(ErrorKind::EmptyDomain, "degenerate interval " + describe());
  if ((lo_closed && !std::isfinite(lo)) || (hi_closed && !std::isfinite(hi)))
    fail(ErrorKind::InvalidArgument, "closed endpoint must be finite");
}

bool Interval::lo_finite() const { return std::isfinite(lo_); }
bool Interval::hi_finite() const { return std::isfinite(hi_); }

bool Interval::contains(double x) const {
  if (std::isnan(x)) return false;
  const bool above = lo_closed_ ? x >= lo_ : x > lo_;
  const bool below = hi_closed_ ? x <= hi_ : x < hi_;
  return above && below;
}

bool Interval::in_closure(double x) const { return std::isfinite(x) && x >= lo_ && x <= hi_; }

bool Interval::excluded_endpoint(double x) const {
  return (x == lo_ && lo_finite() && !lo_closed_) || (x == hi_ && hi_finite() && !hi_closed_);
}

bool Interval::contains(const Interval& other) const {
  const bool lo_ok = other.lo_ > lo_ || (other.lo_ == lo_ && (lo_closed_ || !other.lo_closed_));
  const bool hi_ok = other.hi_ < hi_ || (other.hi_ == hi_ && (hi_closed_ || !other.hi_closed_));
  return lo_ok && hi_ok;
}

Interval Interval::intersect(const Interval& other) const {
  double lo = lo_;
  bool lc = lo_closed_;
  if (other.lo_ > lo) {
    lo = other.lo_;
    lc = other.lo_closed_;
  } else if (other.lo_ == lo) {
    lc = lc && other.lo_closed_;
  }
  double hi = hi_;
  bool hc = hi_closed_;
  if (other.hi_ < hi) {
    hi = other.hi_;
    hc = other.hi_closed_;
  } else if (other.hi_ == hi) {
    hc = hc && other.hi_closed_;
  }
  return {lo, hi, lc, hc};
}

Interval Interval::without_endpoint(double x) const {
  return {lo_, hi_, lo_closed_ && x != lo_, hi_closed_ && x != hi_};
}

Interval Interval::with_closed_endpoint(double x) const {
  return {lo_, hi_, lo_closed_ || (x == lo_ && lo_finite()), hi_closed_ || (x == hi_ && hi_finite())};
}

Interval Interval::clipped(double length) const {
  if (bounded()) return *this;
  if (lo_finite()) return {lo_, lo_ + length, lo_closed_, false};
  if (hi_finite()) return {hi_ - length, hi_, false, hi_closed_};
  return {-0.5 * length, 0.5 * length, false, false};
}

Interval Interval::shrunk(double fraction) const {
  const Interval b = clipped();
  const double d = fraction * b.width();
  return Interval::closed(b.lo_ + d, b.hi_ - d);
}

std::string Interval::describe() const {
  return std::string(lo_closed_ ? "[" : "(") + endpoint_text(lo_) + ", " + endpoint_text(hi_) +
         (hi_closed_ ? "]" : ")");
}

std::vector<double> scan_grid(const Interval& interval, std::size_t count) {
  count = std::max<std::size_t>(count, 3);
  std::vector<double> grid;
  grid.reserve(count + 1);
  const double lo = interval.lo();
  const double hi = interval.hi();
  if (interval.bounded()) {
    const double nudge = 1e-9 * (hi - lo);
    for (std::size_t i = 0; i < count; ++i) {
      double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      if (i == 0 && !interval.lo_closed()) x = lo + nudge;
      if (i + 1 == count) x = interval.hi_closed() ? hi : hi - nudge;
      grid.push_back(x);
    }
    return grid;
  }
  // geometric offsets 1e-6 .. 1e6
  auto offsets = [](std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = std::pow(10.0, -6.0 + 12.0 * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
  };
  if (interval.lo_finite()) {
    if (interval.lo_closed()) grid.push_back(lo);
    for (double d : offsets(count)) grid.push_back(lo + d);
    return grid;
  }
  if (interval.hi_finite()) {
    for (double d : offsets(count)) grid.push_back(hi - d);
    std::reverse(grid.begin(), grid.end());
    if (interval.hi_closed()) grid.push_back(hi);
    return grid;
  }
  const auto half = offsets(count / 2);
  for (auto it = half.rbegin(); it != half.rend(); ++it) grid.push_back(-*it);
  grid.push_back(0.0);
  for (double d : half) grid.push_back(d);
  return grid;
}

}  // namespace loewner
