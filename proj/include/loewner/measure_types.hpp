#pragma once

#include <vector>

#include "loewner/interval.hpp"

namespace loewner {

struct Atom {
  double r;
  double w;
};

/// Finite positive atomic measure supported off an interval.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  double total_weight() const;
  /// Weight of the atom located exactly at r (0 when absent).
  double mass_at(double r) const;

  /// Throws InvalidArgument unless weights are >= 0, locations are distinct
  /// and every atom lies strictly outside `interval`. A non-zero `side`
  /// additionally requires every atom to lie right (+1) or left (-1) of it.
  void validate(const Interval& interval, int side = 0) const;

 private:
  std::vector<Atom> atoms_;
};

/// a x + b + sum w (1/(r-x) - 1/(r-x0)).
struct OMRep {
  double a = 0.0;
  double b = 0.0;
  double x0 = 0.0;
  DiscreteMeasure mu;
  Interval interval = Interval::real_line();

  void validate() const;
};

/// a x^2 + b x + c plus the Taylor-subtracted Cauchy kernels around x0.
struct OCRep {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double x0 = 0.0;
  DiscreteMeasure mu_plus;
  DiscreteMeasure mu_minus;
  Interval interval = Interval::real_line();

  void validate() const;
};

/// a + sum_plus w/(r-x) + sum_minus w/(x-r).
struct SOCRep {
  double a = 0.0;
  DiscreteMeasure mu_plus;
  DiscreteMeasure mu_minus;
  Interval interval = Interval::real_line();

  void validate() const;
};

// Formula-only evaluation (no domain checks), generic over double, complex
// and Jet arguments.

template <class T>
T om_formula(const OMRep& rep, const T& x) {
  T s = rep.a * x + rep.b;
  for (const Atom& at : rep.mu.atoms()) s = s + at.w * (1.0 / (at.r - x)) - at.w / (at.r - rep.x0);
  return s;
}

template <class T>
T soc_formula(const SOCRep& rep, const T& x) {
  T s = x * 0.0 + rep.a;
  for (const Atom& at : rep.mu_plus.atoms()) s = s + at.w / (at.r - x);
  for (const Atom& at : rep.mu_minus.atoms()) s = s + at.w / (x - at.r);
  return s;
}

template <class T>
T oc_formula(const OCRep& rep, const T& x) {
  const T d = x - rep.x0;
  T s = rep.a * x * x + rep.b * x + rep.c;
  for (const Atom& at : rep.mu_plus.atoms()) {
    const double q = (at.r - rep.x0) * (at.r - rep.x0);
    s = s + at.w * (d * d / ((at.r - x) * q));
  }
  for (const Atom& at : rep.mu_minus.atoms()) {
    const double q = (rep.x0 - at.r) * (rep.x0 - at.r);
    s = s + at.w * (d * d / ((x - at.r) * q));
  }
  return s;
}

}  // namespace loewner
