#include "loewner/measure_types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loewner/error.hpp"

namespace loewner {

double DiscreteMeasure::total_weight() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.w;
  return s;
}

double DiscreteMeasure::mass_at(double r) const {
  for (const Atom& a : atoms_)
    if (a.r == r) return a.w;
  return 0.0;
}

void DiscreteMeasure::validate(const Interval& interval, int side) const {
  std::vector<double> locs;
  for (const Atom& a : atoms_) {
    std::ostringstream at;
    at.precision(17);
    at << "atom (" << a.r << ", " << a.w << ")";
    if (!std::isfinite(a.r) || !std::isfinite(a.w)) fail(ErrorKind::InvalidArgument, at.str() + " is not finite");
    if (a.w < 0.0) fail(ErrorKind::InvalidArgument, at.str() + " has negative weight");
    if (interval.contains(a.r))
      fail(ErrorKind::InvalidArgument, at.str() + " lies inside " + interval.describe());
    if (side > 0 && !(a.r >= interval.hi()))
      fail(ErrorKind::InvalidArgument, at.str() + " is not to the right of " + interval.describe());
    if (side < 0 && !(a.r <= interval.lo()))
      fail(ErrorKind::InvalidArgument, at.str() + " is not to the left of " + interval.describe());
    locs.push_back(a.r);
  }
  std::sort(locs.begin(), locs.end());
  if (std::adjacent_find(locs.begin(), locs.end()) != locs.end())
    fail(ErrorKind::InvalidArgument, "atom locations must be distinct");
}

void OMRep::validate() const {
  if (!(a >= 0.0)) fail(ErrorKind::InvalidArgument, "OM representation needs a >= 0");
  if (!interval.contains(x0)) fail(ErrorKind::InvalidArgument, "x0 must lie in " + interval.describe());
  mu.validate(interval);
}

void OCRep::validate() const {
  if (!(a >= 0.0)) fail(ErrorKind::InvalidArgument, "OC representation needs a >= 0");
  if (!interval.interior(x0)) fail(ErrorKind::InvalidArgument, "x0 must be interior to " + interval.describe());
  mu_plus.validate(interval, +1);
  mu_minus.validate(interval, -1);
}

void SOCRep::validate() const {
  if (!(a >= 0.0)) fail(ErrorKind::InvalidArgument, "SOC representation needs a >= 0");
  mu_plus.validate(interval, +1);
  mu_minus.validate(interval, -1);
}

}  // namespace loewner
