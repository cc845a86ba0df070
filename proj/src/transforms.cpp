#include "loewner/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loewner/error.hpp"

namespace loewner {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

FunctionExpr checked_neg_recip(const FunctionExpr& f, int sign) {
  const SignScan scan = sign_scan(f, f.domain(), sign);
  if (scan.all_zero) fail(ErrorKind::ZeroFunction, "function vanishes identically on the scan grid");
  if (!scan.ok)
    fail(sign > 0 ? ErrorKind::NotPositive : ErrorKind::NotNegative,
         "value " + num(scan.offending_value) + " at x = " + num(scan.offending_x));
  return FunctionExpr::neg_recip(f, sign);
}

// sup and inf of f(x)(x - x0) over a grid plus finite endpoint limits.
std::pair<double, double> product_extrema(const FunctionExpr& f, double x0, const Interval& interval,
                                          std::size_t points) {
  double sup = -kInf;
  double inf = kInf;
  auto take = [&](double x, double fx) {
    const double v = fx * (x - x0);
    if (!std::isfinite(v))
      fail(ErrorKind::Unbounded, "f(x)(x - x0) is not finite near x = " + num(x));
    sup = std::max(sup, v);
    inf = std::min(inf, v);
  };
  for (double x : scan_grid(interval, points)) take(x, eval_real(f, x));
  for (double e : {interval.lo(), interval.hi()}) {
    if (interval.contains(e)) continue;
    double v = std::nan("");
    try {
      v = eval_closure(f, e);
    } catch (const Error&) {
    }
    if (std::isnan(v)) continue;
    take(e, v);
  }
  return {sup, inf};
}

}  // namespace

FunctionExpr diff_quotient(const FunctionExpr& f, double x0) { return FunctionExpr::diff_quot(f, x0); }

FunctionExpr neg_reciprocal(const FunctionExpr& f) { return checked_neg_recip(f, +1); }

FunctionExpr neg_reciprocal_of_negative(const FunctionExpr& f) { return checked_neg_recip(f, -1); }

FunctionExpr mul_linear(const FunctionExpr& f, double x0, double c) { return FunctionExpr::mul_linear(f, x0, c); }

double choose_shift(const FunctionExpr& f, double x0, const Interval& interval) {
  if (!interval.bounded())
    fail(ErrorKind::Unbounded, "interval " + interval.describe() + " is unbounded");
  if (!f.domain().contains(interval))
    fail(ErrorKind::InvalidArgument, "interval " + interval.describe() + " is not inside the domain of f");
  const auto [sup1, inf1] = product_extrema(f, x0, interval, 1001);
  const auto [sup2, inf2] = product_extrema(f, x0, interval, 4001);
  if (std::abs(sup2 - sup1) > 0.1 * std::max(1.0, std::abs(sup1)))
    fail(ErrorKind::Unbounded, "grid supremum moves from " + num(sup1) + " to " + num(sup2) + " under refinement; the product may be unbounded");
  const double sup = std::max(sup1, sup2);
  const double range = sup - std::min(inf1, inf2);
  return -sup - std::max(1.0, 0.1 * range);
}

std::string to_string(ComposeMode m) {
  switch (m) {
    case ComposeMode::strong: return "strong";
    case ComposeMode::convex: return "convex";
    case ComposeMode::unchecked: return "unchecked";
  }
  return "?";
}

ComposeMode compose_mode_from_string(const std::string& s) {
  for (ComposeMode m : {ComposeMode::strong, ComposeMode::convex, ComposeMode::unchecked})
    if (to_string(m) == s) return m;
  fail(ErrorKind::ParseError, "unknown composition mode '" + s + "'");
}

namespace {

void require_pass(const Certificate& c, const std::string& clause) {
  if (c.verdict == Verdict::pass) return;
  std::string msg = clause + " (" + to_string(c.verdict) + ")";
  if (!c.diagnostic.empty()) msg += ": " + c.diagnostic;
  fail(ErrorKind::HypothesisViolated, msg);
}

bool bound_inside(double v, const Interval& d) {
  if (v == kInf) return d.hi() == kInf;
  if (v == -kInf) return d.lo() == -kInf;
  return d.in_closure(v);
}

}  // namespace

ComposeResult compose_checked(const FunctionExpr& phi, const FunctionExpr& f, ComposeMode mode,
                              const CertifyConfig& cfg, bool certify_result) {
  const Interval& dphi = phi.domain();
  ComposeResult out{FunctionExpr::compose(phi, f), mode, {}, std::nullopt, {}};
  if (mode == ComposeMode::unchecked) return out;

  const RangeEstimate range = sample_range(f, f.domain());
  if (!bound_inside(range.lo, dphi) || !bound_inside(range.hi, dphi))
    fail(ErrorKind::HypothesisViolated, "range [" + num(range.lo) + ", " + num(range.hi) +
                                            "] of f is not inside the domain " + dphi.describe() + " of phi");

  if (mode == ComposeMode::strong) {
    if (!dphi.contains(0.0)) fail(ErrorKind::HypothesisViolated, "0 is not in the domain of phi");
    const double phi0 = eval_real(phi, 0.0);
    if (phi0 < 0.0) fail(ErrorKind::HypothesisViolated, "phi(0) = " + num(phi0) + " is negative");
  } else {
    if (!dphi.contains(0.0)) {
      if (dphi.lo() != 0.0) fail(ErrorKind::HypothesisViolated, "0 is neither in the domain of phi nor its left endpoint");
      try {
        finite_limit(phi, 0.0);
      } catch (const Error& e) {
        out.notes.push_back(std::string("phi has no finite limit at the left endpoint 0: ") + e.what());
      }
    }
  }

  out.hypotheses.push_back(check_monotone(phi, dphi, cfg));
  require_pass(out.hypotheses.back(), "phi is not operator monotone");
  out.hypotheses.push_back(check_loewner_sets(phi, dphi, cfg));
  require_pass(out.hypotheses.back(), "phi fails the Loewner matrix test");
  out.hypotheses.push_back(check_strong(f, f.domain(), cfg));
  require_pass(out.hypotheses.back(), "f is not strongly operator convex");

  if (certify_result) {
    out.promised = mode == ComposeMode::strong ? check_strong(out.expr, out.expr.domain(), cfg)
                                               : check_convex(out.expr, out.expr.domain(), cfg);
  }
  return out;
}

}  // namespace loewner
