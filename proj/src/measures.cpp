#include "loewner/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
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

void require_in(const Interval& interval, double x) {
  if (!interval.contains(x)) fail(ErrorKind::DomainError, num(x) + " is outside " + interval.describe());
}

}  // namespace

double eval_om(const OMRep& rep, double x) {
  require_in(rep.interval, x);
  return om_formula(rep, x);
}

double eval_soc(const SOCRep& rep, double x) {
  require_in(rep.interval, x);
  return soc_formula(rep, x);
}

double eval_oc(const OCRep& rep, double x) {
  require_in(rep.interval, x);
  return oc_formula(rep, x);
}

SOCRep om_to_soc(const OMRep& rep, double x0) {
  if (!rep.interval.in_closure(x0)) fail(ErrorKind::OutsideClosure, num(x0) + " is outside " + rep.interval.describe());
  std::vector<Atom> plus;
  std::vector<Atom> minus;
  for (const Atom& at : rep.mu.atoms()) {
    if (at.r == x0) fail(ErrorKind::AtomAtX0, "atom located at the center " + num(x0));
    const Atom scaled{at.r, at.w / std::abs(x0 - at.r)};
    (at.r > x0 ? plus : minus).push_back(scaled);
  }
  SOCRep out;
  out.a = rep.a;
  out.mu_plus = DiscreteMeasure(std::move(plus));
  out.mu_minus = DiscreteMeasure(std::move(minus));
  out.interval = rep.interval;
  return out;
}

OMRep soc_to_om(const SOCRep& rep, double x1) {
  require_in(rep.interval, x1);
  OMRep out;
  out.a = 0.0;
  out.x0 = x1;
  out.interval = rep.interval;
  std::vector<Atom> atoms;
  double b = 0.0;
  for (const Atom& at : rep.mu_plus.atoms()) {
    const double d = at.r - x1;
    atoms.push_back({at.r, at.w / std::abs(d)});
    b += at.w / (d * d);
  }
  for (const Atom& at : rep.mu_minus.atoms()) {
    const double d = at.r - x1;
    atoms.push_back({at.r, at.w / std::abs(d)});
    b -= at.w / (d * d);
  }
  out.b = b;
  out.mu = DiscreteMeasure(std::move(atoms));
  return out;
}

EndpointExtension extend_at_endpoint(const SOCRep& g, double b) {
  const Interval& I = g.interval;
  int side = 0;
  if (I.hi_finite() && b == I.hi() && !I.contains(b)) side = +1;
  if (I.lo_finite() && b == I.lo() && !I.contains(b)) side = -1;
  if (side == 0) fail(ErrorKind::NotEndpoint, num(b) + " is not an excluded finite endpoint of " + I.describe());

  const DiscreteMeasure& boundary = side > 0 ? g.mu_plus : g.mu_minus;
  const double delta = boundary.mass_at(b);
  std::vector<Atom> atoms;
  for (const DiscreteMeasure* m : {&g.mu_plus, &g.mu_minus})
    for (const Atom& at : m->atoms())
      if (at.r != b) atoms.push_back({at.r, at.w * std::abs(at.r - b)});

  EndpointExtension ext;
  ext.b = b;
  ext.side = side;
  ext.delta = delta;
  ext.rep.a = g.a;
  ext.rep.x0 = b;
  ext.rep.b = -g.a * b - side * delta;
  ext.rep.mu = DiscreteMeasure(std::move(atoms));
  ext.rep.interval = I.with_closed_endpoint(b);
  ext.value_at_b = -side * delta;

  ext.max_residual = 0.0;
  const Interval w = I.clipped();
  for (int k = 0; k < 100; ++k) {
    const double x = w.lo() + w.width() * (k + 0.5) / 100.0;
    ext.max_residual = std::max(ext.max_residual, endpoint_identity_residual(g, ext, x));
  }
  return ext;
}

double endpoint_identity_residual(const SOCRep& g, const EndpointExtension& ext, double x) {
  const double lhs = (om_formula(ext.rep, x) - ext.value_at_b) / (x - ext.b);
  const double kernel = ext.side > 0 ? ext.delta / (ext.b - x) : ext.delta / (x - ext.b);
  const double rhs = eval_soc(g, x) - kernel;
  return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

OCRep substitute_square(const OCRep& phi) {
  if (!phi.mu_minus.empty()) fail(ErrorKind::NonzeroMuMinus, "the left-hand measure must vanish");
  if (phi.x0 != 0.0) fail(ErrorKind::InvalidArgument, "the representation must be centered at 0");
  if (phi.a != 0.0) fail(ErrorKind::InvalidArgument, "a quadratic term in phi gives a quartic term in g");
  if (!phi.interval.contains(0.0)) fail(ErrorKind::InvalidArgument, "0 must lie in the interval of phi");
  std::vector<Atom> plus;
  std::vector<Atom> minus;
  double shift = 0.0;
  for (const Atom& at : phi.mu_plus.atoms()) {
    if (at.r <= 0.0) fail(ErrorKind::NegativeAtom, "atom at " + num(at.r) + " is not positive");
    const double s = std::sqrt(at.r);
    plus.push_back({s, at.w / (2.0 * s)});
    minus.push_back({-s, at.w / (2.0 * s)});
    shift += at.w / (at.r * at.r);
  }
  const double h = phi.interval.hi_finite() ? std::sqrt(phi.interval.hi()) : kInf;
  OCRep g;
  g.a = phi.b - shift;
  g.b = 0.0;
  g.c = phi.c;
  g.x0 = 0.0;
  g.mu_plus = DiscreteMeasure(std::move(plus));
  g.mu_minus = DiscreteMeasure(std::move(minus));
  g.interval = Interval(-h, h, false, false);
  return g;
}

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int evaluations = 0;
  bool exhausted = false;

  static double rule(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double step(double a, double fa, double b, double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    evaluations += 2;
    const double left = rule(a, fa, flm, m, fm);
    const double right = rule(m, fm, frm, b, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0 || evaluations > 4000000) {
      exhausted = true;
      return left + right + delta / 15.0;
    }
    return step(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           step(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
  }

  double integrate(double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    evaluations += 3;
    return step(a, fa, b, fb, m, fm, rule(a, fa, fm, b, fb), tol, 60);
  }
};

}  // namespace

PoissonRecovery recover_atom_weight(const FunctionExpr& f, double r, double window_lo, double window_hi,
                                    std::vector<double> eps_list, int side) {
  if (!(window_lo < r && r < window_hi))
    fail(ErrorKind::InvalidArgument, "window must contain the atom location " + num(r));
  if (eps_list.size() < 2) fail(ErrorKind::InvalidArgument, "need at least two eps values");
  for (double e : eps_list)
    if (!(e > 0.0)) fail(ErrorKind::InvalidArgument, "eps values must be positive");
  const double eps_max = *std::max_element(eps_list.begin(), eps_list.end());
  if (std::min(r - window_lo, window_hi - r) < 10.0 * eps_max)
    fail(ErrorKind::WindowContainsPole, "atom at " + num(r) + " is within 10 eps of the window boundary");

  PoissonRecovery out;
  out.eps = eps_list;
  const double tol = 1e-10;
  for (double eps : eps_list) {
    const std::function<double(double)> integrand = [&](double t) {
      return side * eval_complex(f, {t, eps}).imag() / std::numbers::pi;
    };
    std::vector<double> cuts{window_lo, window_hi, r};
    for (double k : {1.0, 10.0, 100.0, 1000.0})
      for (double s : {-1.0, 1.0}) {
        const double c = r + s * k * eps;
        if (c > window_lo && c < window_hi) cuts.push_back(c);
      }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Simpson simpson{integrand};
    double total = 0.0;
    const double panel_tol = tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += simpson.integrate(cuts[i], cuts[i + 1], panel_tol);
    if (simpson.exhausted || !std::isfinite(total))
      fail(ErrorKind::QuadratureFailure, "adaptive quadrature did not converge at eps = " + num(eps));
    out.raw.push_back(total);
  }

  // Linear extrapolation to eps = 0 from the two smallest eps.
  std::vector<std::size_t> order(eps_list.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eps_list[a] < eps_list[b]; });
  const double e1 = eps_list[order[0]];
  const double e2 = eps_list[order[1]];
  const double r1 = out.raw[order[0]];
  const double r2 = out.raw[order[1]];
  out.weight = (e2 * r1 - e1 * r2) / (e2 - e1);
  return out;
}

}  // namespace loewner
