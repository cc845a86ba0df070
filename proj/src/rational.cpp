#include "loewner/rational.hpp"

#include <sstream>

#include "loewner/error.hpp"

namespace loewner {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + static_cast<double>(*it);
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k < a.c_.size()) c[k] += a.c_[k];
    if (k < b.c_.size()) c[k] += b.c_[k];
  }
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + Rational(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(const Rational& s, const Poly& p) {
  std::vector<Rational> c = p.c_;
  for (Rational& v : c) v *= s;
  return Poly(std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
  Poly rem = a;
  if (rem.degree() < b.degree()) return {Poly(), rem};
  std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - b.degree() + 1));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
    const Rational factor = rem.leading() / b.leading();
    q[shift] = factor;
    std::vector<Rational> sub(shift + b.c_.size());
    for (std::size_t k = 0; k < b.c_.size(); ++k) sub[shift + k] = factor * b.c_[k];
    rem = rem - Poly(std::move(sub));
  }
  return {Poly(std::move(q)), rem};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return (Rational(1) / leading()) * *this;
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::string Poly::describe() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) os << " + ";
    os << "(" << c_[k] << ")";
    if (k == 1) os << "x";
    if (k > 1) os << "x^" << k;
  }
  return os.str();
}

RationalFunction::RationalFunction(Poly num, Poly den) {
  if (den.is_zero()) fail(ErrorKind::InvalidArgument, "rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly::constant(1);
    return;
  }
  const Poly g = Poly::gcd(num, den);
  num = Poly::divmod(num, g).first;
  den = Poly::divmod(den, g).first;
  const Rational lead = den.leading();
  num_ = (Rational(1) / lead) * num;
  den_ = (Rational(1) / lead) * den;
}

int RationalFunction::degree() const { return std::max(std::max(num_.degree(), den_.degree()), 0); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) fail(ErrorKind::InvalidArgument, "division by the zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RationalFunction::describe() const { return "[" + num_.describe() + "] / [" + den_.describe() + "]"; }

namespace {

Rational exact(double v) { return Rational(v); }

RationalFunction x_fn() { return {Poly({Rational(0), Rational(1)}), Poly::constant(1)}; }

RationalFunction cauchy(double r, double w) {
  // w / (r - x)
  return {Poly::constant(exact(w)), Poly({exact(r), Rational(-1)})};
}

RationalFunction from_measure_om(const OMRep& rep) {
  RationalFunction s{Poly({exact(rep.b), exact(rep.a)}), Poly::constant(1)};
  for (const Atom& at : rep.mu.atoms())
    s = s + cauchy(at.r, at.w) - RationalFunction::constant(exact(at.w) / (exact(at.r) - exact(rep.x0)));
  return s;
}

RationalFunction from_measure_soc(const SOCRep& rep) {
  RationalFunction s = RationalFunction::constant(exact(rep.a));
  for (const Atom& at : rep.mu_plus.atoms()) s = s + cauchy(at.r, at.w);
  for (const Atom& at : rep.mu_minus.atoms()) s = s - cauchy(at.r, at.w);
  return s;
}

RationalFunction from_measure_oc(const OCRep& rep) {
  RationalFunction s{Poly({exact(rep.c), exact(rep.b), exact(rep.a)}), Poly::constant(1)};
  const RationalFunction d = x_fn() - RationalFunction::constant(exact(rep.x0));
  const RationalFunction d2 = d * d;
  for (const Atom& at : rep.mu_plus.atoms()) {
    const Rational q = (exact(at.r) - exact(rep.x0)) * (exact(at.r) - exact(rep.x0));
    s = s + d2 * cauchy(at.r, at.w) * RationalFunction::constant(Rational(1) / q);
  }
  for (const Atom& at : rep.mu_minus.atoms()) {
    const Rational q = (exact(rep.x0) - exact(at.r)) * (exact(rep.x0) - exact(at.r));
    s = s - d2 * cauchy(at.r, at.w) * RationalFunction::constant(Rational(1) / q);
  }
  return s;
}

RationalFunction substitute(const RationalFunction& outer, const RationalFunction& inner) {
  const int m = std::max(outer.num().degree(), outer.den().degree());
  auto homog = [&](const Poly& p) {
    Poly acc;
    for (int k = 0; k <= p.degree(); ++k) {
      Poly term = Poly::constant(p.coeffs()[static_cast<std::size_t>(k)]);
      for (int i = 0; i < k; ++i) term = term * inner.num();
      for (int i = k; i < m; ++i) term = term * inner.den();
      acc = acc + term;
    }
    return acc;
  };
  return {homog(outer.num()), homog(outer.den())};
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

RationalFunction to_rational(const FunctionExpr& f) {
  return std::visit(
      overloaded{
          [](const ConstantNode& n) { return RationalFunction::constant(exact(n.c)); },
          [](const AffineNode& n) { return RationalFunction{Poly({exact(n.b), exact(n.a)}), Poly::constant(1)}; },
          [&](const PowerNode& n) -> RationalFunction {
            if (n.alpha != std::round(n.alpha) || std::abs(n.alpha) > 64)
              fail(ErrorKind::NotRational, f.describe() + " has a non-integer exponent");
            const int k = static_cast<int>(std::abs(n.alpha));
            std::vector<Rational> c(static_cast<std::size_t>(k) + 1);
            c.back() = 1;
            const RationalFunction p{Poly(std::move(c)), Poly::constant(1)};
            return n.alpha >= 0 ? p : RationalFunction::constant(1) / p;
          },
          [](const ReciprocalNode&) { return RationalFunction{Poly::constant(1), Poly({Rational(0), Rational(1)})}; },
          [&](const CatalogNode& n) -> RationalFunction {
            fail(ErrorKind::NotRational, "catalog entry " + n.name + " is not rational");
          },
          [](const DiffQuotNode& n) -> RationalFunction {
            const RationalFunction g = to_rational(n.child);
            const Rational x0 = exact(n.x0);
            const Rational dv = g.den()(x0);
            if (dv == 0) fail(ErrorKind::NotRational, "difference quotient centered at a pole");
            const Rational v = g.num()(x0) / dv;
            const Poly shifted = g.num() - v * g.den();
            auto [q, r] = Poly::divmod(shifted, Poly::x_minus(x0));
            if (!r.is_zero()) fail(ErrorKind::NotRational, "inexact division in difference quotient");
            return {q, g.den()};
          },
          [](const NegRecipNode& n) {
            const RationalFunction g = to_rational(n.child);
            if (g.is_zero()) fail(ErrorKind::ZeroFunction, "negative reciprocal of zero");
            return RationalFunction{Rational(-1) * g.den(), g.num()};
          },
          [](const MulLinearNode& n) {
            const RationalFunction g = to_rational(n.child);
            return RationalFunction{g.num() * Poly::x_minus(exact(n.x0)) + exact(n.c) * g.den(), g.den()};
          },
          [](const ComposeNode& n) { return substitute(to_rational(n.outer), to_rational(n.inner)); },
          [](const MeasureOMNode& n) { return from_measure_om(n.rep); },
          [](const MeasureOCNode& n) { return from_measure_oc(n.rep); },
          [](const MeasureSOCNode& n) { return from_measure_soc(n.rep); },
          [](const QuotientNode& n) {
            std::vector<Rational> a, b;
            for (double v : n.num) a.push_back(exact(v));
            for (double v : n.den) b.push_back(exact(v));
            return RationalFunction{Poly(std::move(a)), Poly(std::move(b))};
          },
      },
      f.node().data);
}

std::optional<RationalFunction> try_rational(const FunctionExpr& f) {
  try {
    return to_rational(f);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotRational) return std::nullopt;
    throw;
  }
}

}  // namespace loewner
