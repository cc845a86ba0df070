#pragma once

#include <cstddef>
#include <vector>

namespace loewner {

/// Truncated Taylor series c0 + c1 t + c2 t^2 + ... used for forward-mode
/// differentiation of expression trees. Binary operations truncate to the
/// shorter operand; removing a removable singularity shortens a jet by one.
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  static Jet constant(double value, std::size_t size);
  /// The independent variable x + t.
  static Jet variable(double x, std::size_t size);

  std::size_t size() const { return c_.size(); }
  double operator[](std::size_t k) const { return c_[k]; }
  double value() const { return c_.at(0); }
  const std::vector<double>& coeffs() const { return c_; }

  /// Drops the constant term (which must vanish) and shifts: F(t)/t.
  Jet divided_by_t() const;

  Jet operator-() const;
  Jet& operator+=(double v);
  Jet& operator*=(double v);

 private:
  std::vector<double> c_;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(const Jet& a, double b);
Jet operator+(double a, const Jet& b);
Jet operator-(const Jet& a, double b);
Jet operator-(double a, const Jet& b);
Jet operator*(const Jet& a, double b);
Jet operator*(double a, const Jet& b);
Jet operator/(const Jet& a, double b);
Jet operator/(double a, const Jet& b);

Jet log(const Jet& a);
Jet exp(const Jet& a);
/// Real power through exp(alpha log a); requires a.value() > 0.
Jet pow(const Jet& a, double alpha);
Jet ipow(const Jet& a, int n);

}  // namespace loewner
