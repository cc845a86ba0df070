#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "loewner/funexpr.hpp"

namespace loewner {

using Rational = boost::multiprecision::cpp_rational;

/// Dense polynomial with exact rational coefficients, ascending order.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c) { return Poly({c}); }
  static Poly x_minus(const Rational& root) { return Poly({-root, Rational(1)}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; divisor must be non-zero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  /// Monic greatest common divisor.
  static Poly gcd(Poly a, Poly b);
  Poly monic() const;

  std::string describe() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Reduced ratio num/den with monic denominator.
class RationalFunction {
 public:
  RationalFunction(Poly num, Poly den);
  static RationalFunction constant(const Rational& c) { return {Poly::constant(c), Poly::constant(1)}; }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  /// max(deg num, deg den); the zero function has degree 0.
  int degree() const;
  bool is_zero() const { return num_.is_zero(); }
  double eval(double x) const { return num_.eval(x) / den_.eval(x); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

  std::string describe() const;

 private:
  Poly num_;
  Poly den_;
};

/// Symbolic closure of a tree into a reduced rational function. Throws
/// NotRational for non-rational leaves.
RationalFunction to_rational(const FunctionExpr& f);
std::optional<RationalFunction> try_rational(const FunctionExpr& f);

}  // namespace loewner
