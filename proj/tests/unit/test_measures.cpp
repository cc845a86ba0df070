#include <cmath>
#include <numbers>

#include "doctest.h"
#include "loewner/classify.hpp"
#include "loewner/error.hpp"
#include "loewner/measures.hpp"

using namespace loewner;
using doctest::Approx;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

OMRep single_atom() {
  OMRep rep;
  rep.mu = DiscreteMeasure({{2.0, 1.0}});
  rep.interval = Interval::open(0, 1);
  return rep;
}

// Random OM representation on (-1, 1) with up to ten atoms.
OMRep random_om(Rng& rng) {
  OMRep rep;
  rep.a = rng.uniform(0, 2);
  rep.b = rng.uniform(-2, 2);
  rep.interval = Interval::open(-1, 1);
  rep.x0 = rng.uniform(-0.9, 0.9);
  std::vector<Atom> atoms;
  const auto n = rng.index(11);
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = rng.uniform(0.05, 5);
    const double r = i % 2 == 0 ? 1.0 + gap : -1.0 - gap;
    atoms.push_back({r, rng.uniform(0, 3)});
  }
  rep.mu = DiscreteMeasure(std::move(atoms));
  return rep;
}

}  // namespace

TEST_CASE("representation evaluation") {
  OMRep lin;
  lin.a = 1;
  lin.b = 2;
  CHECK(eval_om(lin, 3.0) == 5.0);
  CHECK(eval_om(single_atom(), 0.5) == Approx(1.0 / 1.5 - 0.5).epsilon(1e-15));
  OMRep at;
  at.a = 0.7;
  at.b = -1.2;
  at.x0 = 0.25;
  at.mu = DiscreteMeasure({{3.0, 2.0}, {-4.0, 1.0}});
  at.interval = Interval::open(-1, 1);
  CHECK(eval_om(at, 0.25) == Approx(0.7 * 0.25 - 1.2));

  SOCRep c;
  c.a = 5;
  CHECK(eval_soc(c, -100.0) == 5.0);
  SOCRep right;
  right.mu_plus = DiscreteMeasure({{2.0, 1.0}});
  right.interval = Interval::open(0, 1);
  CHECK(eval_soc(right, 0.5) == Approx(2.0 / 3.0));
  SOCRep left;
  left.mu_minus = DiscreteMeasure({{-1.0, 1.0}});
  left.interval = Interval::positive();
  CHECK(eval_soc(left, 1.0) == Approx(0.5));
  CHECK(kind_of([&] { eval_soc(right, 1.5); }) == ErrorKind::DomainError);

  OCRep q;
  q.a = 1;
  CHECK(eval_oc(q, 2.0) == 4.0);
  OCRep o;
  o.a = 0.3;
  o.b = -0.4;
  o.c = 2.0;
  o.x0 = 1.0;
  o.mu_plus = DiscreteMeasure({{2.0, 1.0}});
  o.interval = Interval::open(0, 2);
  CHECK(eval_oc(o, 1.0) == Approx(0.3 - 0.4 + 2.0));
  OCRep one;
  one.x0 = 1.0;
  one.mu_plus = DiscreteMeasure({{2.0, 1.0}});
  one.interval = Interval::open(0, 2);
  CHECK(eval_oc(one, 1.5) == Approx(0.5));
}

TEST_CASE("representation validation") {
  OMRep bad = single_atom();
  bad.mu = DiscreteMeasure({{0.5, 1.0}});
  CHECK_THROWS_AS(FunctionExpr::measure_om(bad), Error);
  OMRep neg = single_atom();
  neg.a = -1;
  CHECK_THROWS_AS(FunctionExpr::measure_om(neg), Error);
  OCRep edge;
  edge.x0 = 0.0;
  edge.interval = Interval::closed(0, 1);
  CHECK_THROWS_AS(FunctionExpr::measure_oc(edge), Error);
}

TEST_CASE("om_to_soc examples") {
  OMRep lin;
  lin.a = 1;
  lin.b = 7;
  const SOCRep s = om_to_soc(lin, 0.0);
  CHECK(s.a == 1.0);
  CHECK(s.mu_plus.empty());
  const SOCRep one = om_to_soc(single_atom(), 0.0);
  REQUIRE(one.mu_plus.atoms().size() == 1);
  CHECK(one.mu_plus.atoms()[0].w == 0.5);
  CHECK(eval_soc(one, 0.5) == Approx(1.0 / 3.0));
  OMRep two;
  two.x0 = 1.0;
  two.mu = DiscreteMeasure({{-1.0, 2.0}, {3.0, 3.0}});
  two.interval = Interval::open(0, 2);
  const SOCRep t = om_to_soc(two, 1.0);
  CHECK(t.mu_minus.atoms()[0].r == -1.0);
  CHECK(t.mu_minus.atoms()[0].w == 1.0);
  CHECK(t.mu_plus.atoms()[0].r == 3.0);
  CHECK(t.mu_plus.atoms()[0].w == 1.5);
}

TEST_CASE("measure-level difference quotient matches the function level") {
  Rng rng(31);
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    const OMRep rep = random_om(rng);
    for (int k = 0; k < 5; ++k) {
      const double x0 = rng.uniform(-0.95, 0.95);
      const SOCRep s = om_to_soc(rep, x0);
      const double f0 = eval_om(rep, x0);
      for (int j = 0; j < 200; ++j) {
        const double x = -0.995 + 1.99 * (j + 0.5) / 200.0;
        if (x == x0) continue;
        const double want = (eval_om(rep, x) - f0) / (x - x0);
        const double got = eval_soc(s, x);
        if (std::abs(got - want) > 1e-10 * (1.0 + std::abs(want))) ++failures;
      }
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("soc_to_om inverts to the difference quotient") {
  SOCRep s;
  s.a = 0.4;
  s.mu_plus = DiscreteMeasure({{2.0, 1.0}, {4.0, 0.5}});
  s.mu_minus = DiscreteMeasure({{-3.0, 2.0}});
  s.interval = Interval::open(-1, 1);
  const double x1 = 0.3;
  const OMRep om = soc_to_om(s, x1);
  for (double x : {-0.8, -0.1, 0.6, 0.95}) {
    const double want = (eval_soc(s, x) - eval_soc(s, x1)) / (x - x1);
    CHECK(eval_om(om, x) == Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("endpoint extension") {
  SOCRep plain;
  plain.a = 1.0;
  plain.mu_plus = DiscreteMeasure({{2.0, 1.0}});
  plain.interval = Interval::open(0, 1);
  const auto e0 = extend_at_endpoint(plain, 1.0);
  CHECK(e0.delta == 0.0);
  CHECK(e0.max_residual < 1e-12);

  SOCRep g;
  g.mu_plus = DiscreteMeasure({{1.0, 0.7}});
  g.interval = Interval::open(0, 1);
  const auto e1 = extend_at_endpoint(g, 1.0);
  CHECK(e1.delta == 0.7);
  CHECK(e1.value_at_b == -0.7);

  SOCRep two;
  two.mu_plus = DiscreteMeasure({{1.0, 0.7}, {2.0, 1.0}});
  two.interval = Interval::open(0, 1);
  const auto e2 = extend_at_endpoint(two, 1.0);
  CHECK(endpoint_identity_residual(two, e2, 0.5) < 1e-12);
  // Direct check: f~(x) = (x - 1) g(x).
  for (double x : {0.1, 0.5, 0.9}) CHECK(eval_om(e2.rep, x) == Approx((x - 1) * eval_soc(two, x)).epsilon(1e-13));

  SOCRep lft;
  lft.a = 0.2;
  lft.mu_minus = DiscreteMeasure({{0.0, 0.4}, {-2.0, 1.0}});
  lft.interval = Interval::open(0, 1);
  const auto e3 = extend_at_endpoint(lft, 0.0);
  CHECK(e3.delta == 0.4);
  CHECK(e3.value_at_b == 0.4);
  CHECK(e3.max_residual < 1e-12);
  CHECK(kind_of([&] { extend_at_endpoint(g, 0.5); }) == ErrorKind::NotEndpoint);
}

TEST_CASE("square substitution") {
  OCRep poly;
  poly.b = 2.0;
  poly.c = -1.0;
  poly.interval = Interval::open(-1, 1);
  const OCRep gp = substitute_square(poly);
  CHECK(eval_oc(gp, 0.5) == Approx(2.0 * 0.25 - 1.0));

  OCRep phi;
  phi.b = 0.3;
  phi.c = 0.1;
  phi.mu_plus = DiscreteMeasure({{4.0, 2.0}});
  phi.interval = Interval::open(-1, 1);
  const OCRep g = substitute_square(phi);
  REQUIRE(g.mu_plus.atoms().size() == 1);
  CHECK(g.mu_plus.atoms()[0].r == 2.0);
  CHECK(g.mu_plus.atoms()[0].w == 0.5);
  CHECK(g.mu_minus.atoms()[0].r == -2.0);
  CHECK(g.mu_minus.atoms()[0].w == 0.5);
  for (int i = 0; i < 200; ++i) {
    const double x = -0.995 + 1.99 * (i + 0.5) / 200.0;
    const double want = eval_oc(phi, x * x);
    CHECK(std::abs(eval_oc(g, x) - want) <= 1e-12 * (1.0 + std::abs(want)));
  }
  OCRep m = phi;
  m.mu_minus = DiscreteMeasure({{-2.0, 1.0}});
  CHECK(kind_of([&] { substitute_square(m); }) == ErrorKind::NonzeroMuMinus);
}

TEST_CASE("Poisson recovery") {
  SOCRep one;
  one.mu_plus = DiscreteMeasure({{2.0, 1.0}});
  one.interval = Interval::open(-1, 1);
  const auto f1 = FunctionExpr::measure_soc(one);
  const auto r1 = recover_atom_weight(f1, 2.0, 1.5, 2.5);
  CHECK(std::abs(r1.weight - 1.0) < 1e-2);
  for (std::size_t i = 0; i < r1.raw.size(); ++i) {
    const double closed = 2.0 / std::numbers::pi * std::atan(0.5 / r1.eps[i]);
    CHECK(r1.raw[i] == Approx(closed).epsilon(1e-8));
  }
  // Errors shrink as eps decreases.
  for (std::size_t i = 1; i < r1.raw.size(); ++i) CHECK(std::abs(r1.raw[i] - 1.0) < std::abs(r1.raw[i - 1] - 1.0));

  CHECK(std::abs(recover_atom_weight(FunctionExpr::constant(5.0), 0.0, -1, 1).weight) < 1e-12);

  SOCRep two;
  two.mu_plus = DiscreteMeasure({{2.0, 1.0}, {5.0, 3.0}});
  two.interval = Interval::open(-1, 1);
  CHECK(std::abs(recover_atom_weight(FunctionExpr::measure_soc(two), 5.0, 4.0, 6.0).weight - 3.0) < 3e-2);

  SOCRep lft;
  lft.mu_minus = DiscreteMeasure({{-2.0, 1.5}});
  lft.interval = Interval::open(-1, 1);
  const auto rl = recover_atom_weight(FunctionExpr::measure_soc(lft), -2.0, -2.5, -1.5, {1e-2, 1e-3, 1e-4}, -1);
  CHECK(std::abs(rl.weight - 1.5) < 1.5e-2);
  CHECK(kind_of([&] { recover_atom_weight(f1, 2.0, 1.95, 2.5); }) == ErrorKind::WindowContainsPole);
}

TEST_CASE("representations pass their class certifiers") {
  CertifyConfig cfg;
  cfg.trials = 60;
  Rng rng(77);
  for (int i = 0; i < 5; ++i) {
    const OMRep rep = random_om(rng);
    const auto f = FunctionExpr::measure_om(rep);
    CHECK(check_monotone(f, rep.interval, cfg).verdict == Verdict::pass);
    CHECK(check_strong(FunctionExpr::measure_soc(om_to_soc(rep, rep.x0)), rep.interval, cfg).verdict ==
          Verdict::pass);
    OCRep oc;
    oc.a = rep.a;
    oc.b = rep.b;
    oc.c = 0.5;
    oc.x0 = rep.x0;
    oc.interval = rep.interval;
    std::vector<Atom> plus, minus;
    for (const Atom& at : rep.mu.atoms()) (at.r > 1 ? plus : minus).push_back(at);
    oc.mu_plus = DiscreteMeasure(plus);
    oc.mu_minus = DiscreteMeasure(minus);
    CHECK(check_convex(FunctionExpr::measure_oc(oc), oc.interval, cfg).verdict == Verdict::pass);
  }
}

TEST_CASE("strictly positive SOC representations") {
  SOCRep s;
  s.mu_plus = DiscreteMeasure({{3.0, 1e-3}});
  s.interval = Interval::open(-1, 1);
  for (double x : scan_grid(s.interval, 101)) CHECK(eval_soc(s, x) > 0.0);
}
