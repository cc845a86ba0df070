#include "loewner/funexpr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loewner/error.hpp"
#include "loewner/jet.hpp"

namespace loewner {

using cplx = std::complex<double>;

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Constant: return "constant";
    case NodeKind::Affine: return "affine";
    case NodeKind::Power: return "power";
    case NodeKind::Reciprocal: return "reciprocal";
    case NodeKind::Catalog: return "catalog";
    case NodeKind::DiffQuot: return "diffquot";
    case NodeKind::NegRecip: return "negrecip";
    case NodeKind::MulLinear: return "mullinear";
    case NodeKind::Compose: return "compose";
    case NodeKind::MeasureOM: return "measure_om";
    case NodeKind::MeasureOC: return "measure_oc";
    case NodeKind::MeasureSOC: return "measure_soc";
    case NodeKind::Quotient: return "quotient";
  }
  return "unknown";
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool is_integer_exponent(double alpha) { return alpha == std::round(alpha) && std::abs(alpha) <= 64.0; }

Interval restrict(const Interval& natural, const std::optional<Interval>& on) {
  return on ? natural.intersect(*on) : natural;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---- scalar helpers over double / complex / Jet ----

double lift(double c, double) { return c; }
cplx lift(double c, const cplx&) { return {c, 0.0}; }
Jet lift(double c, const Jet& like) { return Jet::constant(c, like.size()); }

double lead(double x) { return x; }
double lead(const Jet& x) { return x.value(); }

template <class T>
T int_pow(const T& x, int n) {
  if (n < 0) return T(1.0) / int_pow(x, -n);
  T r(1.0);
  T b = x;
  unsigned e = static_cast<unsigned>(n);
  while (e > 0) {
    if (e & 1u) r = r * b;
    e >>= 1;
    if (e > 0) b = b * b;
  }
  return r;
}
Jet int_pow(const Jet& x, int n) { return ipow(x, n); }

double real_pow(double x, double alpha) {
  if (x < 0.0) fail(ErrorKind::BranchError, "non-integer power of negative base " + num(x));
  return std::pow(x, alpha);
}
cplx real_pow(const cplx& z, double alpha) { return std::pow(z, alpha); }
Jet real_pow(const Jet& x, double alpha) {
  if (x.size() == 1 || x.value() == 0.0) {
    if (x.value() < 0.0) fail(ErrorKind::BranchError, "non-integer power of negative base");
    if (x.size() == 1) return Jet(std::vector<double>{std::pow(x.value(), alpha)});
  }
  return pow(x, alpha);
}

double do_log(double x) {
  if (x < 0.0) fail(ErrorKind::BranchError, "log of negative number");
  return std::log(x);
}
cplx do_log(const cplx& z) { return std::log(z); }
Jet do_log(const Jet& x) { return log(x); }

double do_exp(double x) { return std::exp(x); }
cplx do_exp(const cplx& z) { return std::exp(z); }
Jet do_exp(const Jet& x) { return exp(x); }

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double param(const FunctionExpr::Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

template <class T>
T eval_impl(const FunctionExpr& f, const T& x, bool relaxed);

template <class T>
T eval_catalog(const CatalogNode& n, const T& x) {
  switch (n.id) {
    case CatalogId::PowDiff: {
      const double alpha = param(n.params, "alpha", 0.5);
      const double length = param(n.params, "L", 2.0);
      return real_pow(x, alpha) - real_pow(length - x, alpha);
    }
    case CatalogId::Log:
      return do_log(x);
    case CatalogId::XLogX:
      if constexpr (std::is_same_v<T, double>) {
        if (x == 0.0) return 0.0;
      }
      return x * do_log(x);
    case CatalogId::Exp:
      return do_exp(x);
    case CatalogId::Softplus:
      if constexpr (std::is_same_v<T, double>) {
        return softplus(x);
      } else if constexpr (std::is_same_v<T, Jet>) {
        const double x0 = x.value();
        const double h = 1e-5 * (1.0 + std::abs(x0));
        const double d = (-softplus(x0 + 2 * h) + 8 * softplus(x0 + h) - 8 * softplus(x0 - h) + softplus(x0 - 2 * h)) /
                         (12 * h);
        if (x.size() < 2) return Jet(std::vector<double>{softplus(x0)});
        return Jet(std::vector<double>{softplus(x0), d * x[1]});
      } else {
        fail(ErrorKind::UnsupportedNode, "catalog entry '" + n.name + "' has no holomorphic extension");
      }
  }
  fail(ErrorKind::UnsupportedNode, "unknown catalog entry");
}

template <class T>
T eval_node(const Node& node, const T& x, bool relaxed) {
  return std::visit(
      overloaded{
          [&](const ConstantNode& n) -> T { return lift(n.c, x); },
          [&](const AffineNode& n) -> T { return n.a * x + n.b; },
          [&](const PowerNode& n) -> T {
            if (is_integer_exponent(n.alpha)) return int_pow(x, static_cast<int>(n.alpha));
            return real_pow(x, n.alpha);
          },
          [&](const ReciprocalNode&) -> T { return 1.0 / x; },
          [&](const CatalogNode& n) -> T { return eval_catalog(n, x); },
          [&](const DiffQuotNode& n) -> T {
            if constexpr (std::is_same_v<T, double>) {
              if (x == n.x0) {
                if (std::isnan(n.deriv_at_x0)) {
                  if (relaxed) return std::nan("");
                  fail(ErrorKind::DomainError, "difference quotient evaluated at excluded center");
                }
                return n.deriv_at_x0;
              }
              return (eval_impl(n.child, x, relaxed) - n.child_at_x0) / (x - n.x0);
            } else if constexpr (std::is_same_v<T, Jet>) {
              const Jet fx = eval_impl(n.child, x, relaxed);
              if (x.value() == n.x0) return (fx - n.child_at_x0).divided_by_t() / (x - n.x0).divided_by_t();
              return (fx - n.child_at_x0) / (x - n.x0);
            } else {
              return (eval_impl(n.child, x, relaxed) - n.child_at_x0) / (x - n.x0);
            }
          },
          [&](const NegRecipNode& n) -> T { return -1.0 / eval_impl(n.child, x, relaxed); },
          [&](const MulLinearNode& n) -> T { return eval_impl(n.child, x, relaxed) * (x - n.x0) + n.c; },
          [&](const ComposeNode& n) -> T {
            const T inner = eval_impl(n.inner, x, relaxed);
            if constexpr (!std::is_same_v<T, cplx>) {
              const double v = lead(inner);
              const Interval& d = n.outer.domain();
              if (!(relaxed ? d.in_closure(v) : d.contains(v)))
                fail(ErrorKind::DomainError, "inner value " + num(v) + " outside outer domain " + d.describe());
            }
            return eval_impl(n.outer, inner, relaxed);
          },
          [&](const MeasureOMNode& n) -> T { return om_formula(n.rep, x); },
          [&](const MeasureOCNode& n) -> T { return oc_formula(n.rep, x); },
          [&](const MeasureSOCNode& n) -> T { return soc_formula(n.rep, x); },
          [&](const QuotientNode& n) -> T {
            auto horner = [&](const std::vector<double>& c) {
              T acc = lift(0.0, x);
              for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
              return acc;
            };
            return horner(n.num) / horner(n.den);
          },
      },
      node.data);
}

template <class T>
T eval_impl(const FunctionExpr& f, const T& x, bool relaxed) {
  return eval_node(f.node(), x, relaxed);
}

}  // namespace

// ---- factories ----

namespace {

std::shared_ptr<Node> make_node(Node::Data data, Interval domain, std::size_t depth) {
  auto n = std::make_shared<Node>(Node{std::move(data), domain, depth});
  return n;
}

}  // namespace

FunctionExpr FunctionExpr::constant(double c, std::optional<Interval> on) {
  return FunctionExpr(make_node(ConstantNode{c}, restrict(Interval::real_line(), on), 0));
}

FunctionExpr FunctionExpr::affine(double a, double b, std::optional<Interval> on) {
  return FunctionExpr(make_node(AffineNode{a, b}, restrict(Interval::real_line(), on), 0));
}

FunctionExpr FunctionExpr::power(double alpha, std::optional<Interval> on) {
  Interval natural = Interval::real_line();
  if (!is_integer_exponent(alpha) || alpha < 0)
    natural = alpha > 0 ? Interval::nonnegative() : Interval::positive();
  return FunctionExpr(make_node(PowerNode{alpha}, restrict(natural, on), 0));
}

FunctionExpr FunctionExpr::reciprocal(std::optional<Interval> on) {
  return FunctionExpr(make_node(ReciprocalNode{}, restrict(Interval::positive(), on), 0));
}

FunctionExpr FunctionExpr::catalog(const std::string& name, Params params, std::optional<Interval> on) {
  CatalogId id{};
  Interval natural = Interval::real_line();
  if (name == "pow_diff") {
    id = CatalogId::PowDiff;
    const double alpha = param(params, "alpha", 0.5);
    const double length = param(params, "L", 2.0);
    if (!(alpha > 0.0) || !(length > 0.0)) fail(ErrorKind::InvalidArgument, "pow_diff needs alpha > 0 and L > 0");
    params.emplace("alpha", alpha);
    params.emplace("L", length);
    natural = Interval::closed(0.0, length);
  } else if (name == "log") {
    id = CatalogId::Log;
    natural = Interval::positive();
  } else if (name == "xlogx") {
    id = CatalogId::XLogX;
    natural = Interval::nonnegative();
  } else if (name == "exp") {
    id = CatalogId::Exp;
  } else if (name == "softplus") {
    id = CatalogId::Softplus;
  } else {
    fail(ErrorKind::InvalidArgument, "unknown catalog entry '" + name + "'");
  }
  return FunctionExpr(make_node(CatalogNode{name, id, std::move(params)}, restrict(natural, on), 0));
}

FunctionExpr FunctionExpr::diff_quot(FunctionExpr child, double x0) {
  const Interval& d = child.domain();
  if (!d.in_closure(x0))
    fail(ErrorKind::OutsideClosure, "center " + num(x0) + " outside the closure of " + d.describe());
  const double fx0 = d.contains(x0) ? eval_real(child, x0) : finite_limit(child, x0);
  const double deriv = d.interior(x0) ? eval_deriv(child, x0) : std::nan("");
  const Interval domain = d.is_endpoint(x0) ? d.without_endpoint(x0) : d;
  const std::size_t depth = child.jet_depth() + 1;
  return FunctionExpr(make_node(DiffQuotNode{std::move(child), x0, fx0, deriv}, domain, depth));
}

FunctionExpr FunctionExpr::neg_recip(FunctionExpr child, int sign) {
  if (sign != 1 && sign != -1) fail(ErrorKind::InvalidArgument, "sign must be +1 or -1");
  const Interval domain = child.domain();
  const SignScan scan = sign_scan(child, domain, sign);
  std::string note;
  if (!scan.ok) {
    note = scan.all_zero ? "child vanishes on the scan grid"
                         : "child has value " + num(scan.offending_value) + " at " + num(scan.offending_x);
  }
  const std::size_t depth = child.jet_depth();
  return FunctionExpr(make_node(NegRecipNode{std::move(child), sign, scan.ok, note}, domain, depth));
}

FunctionExpr FunctionExpr::mul_linear(FunctionExpr child, double x0, double c) {
  const Interval domain = child.domain();
  if (!domain.in_closure(x0))
    fail(ErrorKind::OutsideClosure, "center " + num(x0) + " outside the closure of " + domain.describe());
  const std::size_t depth = child.jet_depth();
  return FunctionExpr(make_node(MulLinearNode{std::move(child), x0, c}, domain, depth));
}

FunctionExpr FunctionExpr::compose(FunctionExpr outer, FunctionExpr inner) {
  const Interval domain = inner.domain();
  const std::size_t depth = outer.jet_depth() + inner.jet_depth();
  return FunctionExpr(make_node(ComposeNode{std::move(outer), std::move(inner)}, domain, depth));
}

FunctionExpr FunctionExpr::measure_om(OMRep rep) {
  rep.validate();
  const Interval domain = rep.interval;
  return FunctionExpr(make_node(MeasureOMNode{std::move(rep)}, domain, 0));
}

FunctionExpr FunctionExpr::measure_oc(OCRep rep) {
  rep.validate();
  const Interval domain = rep.interval;
  return FunctionExpr(make_node(MeasureOCNode{std::move(rep)}, domain, 0));
}

FunctionExpr FunctionExpr::measure_soc(SOCRep rep) {
  rep.validate();
  const Interval domain = rep.interval;
  return FunctionExpr(make_node(MeasureSOCNode{std::move(rep)}, domain, 0));
}

FunctionExpr FunctionExpr::quotient(std::vector<double> numer, std::vector<double> denom, std::optional<Interval> on) {
  if (numer.empty()) numer.push_back(0.0);
  if (denom.empty() || std::all_of(denom.begin(), denom.end(), [](double v) { return v == 0.0; }))
    fail(ErrorKind::InvalidArgument, "quotient denominator is the zero polynomial");
  const Interval domain = restrict(Interval::real_line(), on);
  auto horner = [&](double x) {
    double acc = 0.0;
    for (auto it = denom.rbegin(); it != denom.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  double prev = 0.0;
  bool first = true;
  for (double x : scan_grid(domain, 1001)) {
    const double v = horner(x);
    if (v == 0.0 || (!first && (v > 0) != (prev > 0)))
      fail(ErrorKind::InvalidArgument, "quotient denominator vanishes in " + domain.describe());
    prev = v;
    first = false;
  }
  return FunctionExpr(make_node(QuotientNode{std::move(numer), std::move(denom)}, domain, 0));
}

NodeKind FunctionExpr::kind() const { return static_cast<NodeKind>(node_->data.index()); }
const Interval& FunctionExpr::domain() const { return node_->domain; }
std::size_t FunctionExpr::jet_depth() const { return node_->depth; }

std::string FunctionExpr::describe() const {
  auto atoms_text = [](const DiscreteMeasure& m) {
    std::string s = "{";
    for (std::size_t i = 0; i < m.atoms().size(); ++i) {
      if (i) s += ", ";
      s += "(" + num(m.atoms()[i].r) + ", " + num(m.atoms()[i].w) + ")";
    }
    return s + "}";
  };
  auto poly_text = [](const std::vector<double>& c) {
    std::string s;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) s += " + ";
      s += num(c[k]);
      if (k == 1) s += "*x";
      if (k > 1) s += "*x^" + std::to_string(k);
    }
    return "(" + s + ")";
  };
  return std::visit(
      overloaded{
          [&](const ConstantNode& n) { return num(n.c); },
          [&](const AffineNode& n) {
            if (n.a == 1.0 && n.b == 0.0) return std::string("x");
            return num(n.a) + "*x + " + num(n.b);
          },
          [&](const PowerNode& n) { return "x^" + num(n.alpha); },
          [&](const ReciprocalNode&) { return std::string("1/x"); },
          [&](const CatalogNode& n) {
            std::string s = n.name + "(";
            bool first = true;
            for (const auto& [k, v] : n.params) {
              s += (first ? "" : ", ") + k + "=" + num(v);
              first = false;
            }
            return s + ")";
          },
          [&](const DiffQuotNode& n) { return "dq(" + n.child.describe() + "; " + num(n.x0) + ")"; },
          [&](const NegRecipNode& n) { return "-1/(" + n.child.describe() + ")"; },
          [&](const MulLinearNode& n) {
            return "(" + n.child.describe() + ")*(x - " + num(n.x0) + ") + " + num(n.c);
          },
          [&](const ComposeNode& n) { return n.outer.describe() + " o (" + n.inner.describe() + ")"; },
          [&](const MeasureOMNode& n) {
            return "om[a=" + num(n.rep.a) + ", b=" + num(n.rep.b) + ", x0=" + num(n.rep.x0) + ", mu=" +
                   atoms_text(n.rep.mu) + "]";
          },
          [&](const MeasureOCNode& n) {
            return "oc[a=" + num(n.rep.a) + ", b=" + num(n.rep.b) + ", c=" + num(n.rep.c) + ", x0=" + num(n.rep.x0) +
                   ", mu+=" + atoms_text(n.rep.mu_plus) + ", mu-=" + atoms_text(n.rep.mu_minus) + "]";
          },
          [&](const MeasureSOCNode& n) {
            return "soc[a=" + num(n.rep.a) + ", mu+=" + atoms_text(n.rep.mu_plus) + ", mu-=" +
                   atoms_text(n.rep.mu_minus) + "]";
          },
          [&](const QuotientNode& n) { return poly_text(n.num) + "/" + poly_text(n.den); },
      },
      node_->data);
}

// ---- evaluation entry points ----

double eval_real(const FunctionExpr& f, double x) {
  if (!f.domain().contains(x))
    fail(ErrorKind::DomainError, num(x) + " outside domain " + f.domain().describe() + " of " + f.describe());
  return eval_impl(f, x, false);
}

double eval_closure(const FunctionExpr& f, double x) {
  if (!f.domain().in_closure(x))
    fail(ErrorKind::DomainError, num(x) + " outside the closure of " + f.domain().describe());
  if (f.domain().contains(x)) return eval_impl(f, x, false);
  return eval_impl(f, x, true);
}

cplx eval_complex(const FunctionExpr& f, cplx z) {
  if (!(z.imag() > 0.0)) fail(ErrorKind::DomainError, "complex evaluation needs Im z > 0");
  return eval_impl(f, z, false);
}

std::vector<double> taylor(const FunctionExpr& f, double x, std::size_t order) {
  if (!f.domain().contains(x)) fail(ErrorKind::DomainError, num(x) + " outside domain " + f.domain().describe());
  const Jet out = eval_impl(f, Jet::variable(x, order + 1 + f.jet_depth()), false);
  if (out.size() < order + 1)
    fail(ErrorKind::UnsupportedNode, "no Taylor rule to order " + std::to_string(order) + " for " + f.describe());
  return {out.coeffs().begin(), out.coeffs().begin() + static_cast<std::ptrdiff_t>(order + 1)};
}

double eval_deriv(const FunctionExpr& f, double x) {
  if (!f.domain().interior(x) || !f.domain().contains(x))
    fail(ErrorKind::DomainError, "derivative needs an interior point; got " + num(x));
  return taylor(f, x, 1)[1];
}

Interval domain_of(const FunctionExpr& f) { return f.domain(); }

double finite_limit(const FunctionExpr& f, double x0) {
  const Interval& d = f.domain();
  if (d.contains(x0)) return eval_real(f, x0);
  if (!d.in_closure(x0) || !d.is_endpoint(x0))
    fail(ErrorKind::OutsideClosure, num(x0) + " is not a point of the closure of " + d.describe());
  double v = std::nan("");
  try {
    v = eval_closure(f, x0);
  } catch (const Error&) {
  }
  if (!std::isfinite(v)) fail(ErrorKind::NoFiniteLimit, "no finite limit of " + f.describe() + " at " + num(x0));
  const double dir = x0 == d.lo() ? 1.0 : -1.0;
  const double scale = std::min(1.0, d.clipped().width() / 10.0);
  double first_gap = 0.0;
  double last_gap = 0.0;
  for (int k = 2; k <= 6; ++k) {
    const double xk = x0 + dir * scale * std::pow(10.0, -k);
    const double fk = eval_real(f, xk);
    if (!std::isfinite(fk)) fail(ErrorKind::NoFiniteLimit, "non-finite value near " + num(x0));
    const double gap = std::abs(fk - v);
    if (k == 2) first_gap = gap;
    last_gap = gap;
  }
  const double allowed = 1e-2 * (1.0 + std::abs(v));
  if (last_gap > allowed || last_gap > first_gap + 1e-12 * (1.0 + std::abs(v)))
    fail(ErrorKind::NoFiniteLimit, "approach values do not settle at " + num(x0));
  return v;
}

SignScan sign_scan(const FunctionExpr& f, const Interval& on, int sign, std::size_t points) {
  SignScan out;
  auto record = [&](double x, double v) {
    if (out.ok) {
      out.ok = false;
      out.offending_x = x;
      out.offending_value = v;
    }
  };
  for (double x : scan_grid(on, points)) {
    double v = std::nan("");
    try {
      v = eval_real(f, x);
    } catch (const Error&) {
    }
    if (v != 0.0) out.all_zero = false;
    if (!(sign * v > 0.0)) record(x, v);
  }
  for (double e : {on.lo(), on.hi()}) {
    if (!std::isfinite(e) || on.contains(e) || !f.domain().in_closure(e)) continue;
    double v = std::nan("");
    try {
      v = eval_closure(f, e);
    } catch (const Error&) {
    }
    if (sign * v < 0.0) record(e, v);
  }
  if (out.ok) out.all_zero = false;
  return out;
}

RangeEstimate sample_range(const FunctionExpr& f, const Interval& on, std::size_t points) {
  RangeEstimate r{kInf, -kInf};
  auto take = [&](double v) {
    if (std::isnan(v)) return;
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
  };
  for (double x : scan_grid(on, points)) take(eval_real(f, x));
  for (double e : {on.lo(), on.hi()}) {
    if (!std::isfinite(e) || on.contains(e) || !f.domain().in_closure(e)) continue;
    try {
      take(eval_closure(f, e));
    } catch (const Error&) {
    }
  }
  return r;
}

}  // namespace loewner
