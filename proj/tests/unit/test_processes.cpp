#include <cmath>

#include "doctest.h"
#include "loewner/measures.hpp"
#include "loewner/processes.hpp"

using namespace loewner;
using doctest::Approx;

namespace {

PipelineOptions light(bool certify = false) {
  PipelineOptions o;
  o.certify = certify;
  o.cfg.trials = 40;
  return o;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("main cycle on the square root") {
  const auto run = main_cycle(FunctionExpr::power(0.5), {1.0, 0.0}, 3, light(true));
  REQUIRE(run.status == RunStatus::completed);
  REQUIRE(run.stages.size() == 4);
  CHECK(run.stages[1].label == ClassLabel::SOC);
  CHECK(run.stages[2].label == ClassLabel::OC);
  CHECK(run.stages[3].label == ClassLabel::OM);
  CHECK(eval_real(run.stages[3].f, 4.0) == Approx(-0.5).epsilon(1e-14));
  for (int i = 0; i < 200; ++i) {
    const double x = 0.01 * std::pow(1e4, i / 199.0);
    const double want = (std::pow(x, -0.5) - 1) / (std::pow(x, 0.5) - 1);
    if (x == 1.0) continue;
    CHECK(rel(eval_real(run.stages[3].f, x), want) < 1e-12);
  }
  CHECK(run.inconsistencies.empty());
  for (const auto& s : run.stages) CHECK(s.certificates.at(0).verdict == Verdict::pass);
}

TEST_CASE("main cycle terminations") {
  const auto id = main_cycle(FunctionExpr::identity(Interval::positive()), {1.0, 0.0}, 9, light());
  CHECK(id.status == RunStatus::terminated_zero);
  REQUIRE(id.stages.size() == 5);
  CHECK(eval_real(id.stages[1].f, 3.0) == 1.0);
  CHECK(eval_real(id.stages[2].f, 3.0) == -1.0);
  CHECK(eval_real(id.stages[3].f, 3.0) == 0.0);

  const auto mob = FunctionExpr::quotient({1, 2}, {1, 1}, Interval::positive());
  const auto r = main_cycle(mob, {1.0, 0.0}, 9, light());
  CHECK(r.status == RunStatus::terminated_rational);
  REQUIRE(r.stages.size() == 4);
  CHECK(r.stages[0].degree == 1);
  CHECK(r.stages[3].degree == 0);
  CHECK(eval_real(r.stages[3].f, 2.0) == Approx(-2.0));
  CHECK(rational_degree(r.stages[3].f) == 0);
}

TEST_CASE("rational degree decreases by one per cycle") {
  // Positive combinations of x and -1/(x - r) with poles off (0, inf).
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases = {
      {{1, 2}, {1, 1}},                 // degree 1
      {{2, 4, 1}, {2, 3, 1}},           // 1 + x/(x+1) + x/(x+2) style, degree 2
      {{0, 6, 11, 6}, {6, 11, 6, 1}},   // sum of x/(x+k), k = 1..3, degree 3
  };
  for (const auto& [num, den] : cases) {
    const auto f0 = FunctionExpr::quotient(num, den, Interval::positive());
    const int d0 = rational_degree(f0);
    const auto run = main_cycle(f0, {1.0, 2.0}, 3 * d0, light());
    int expect = d0;
    for (const auto& s : run.stages) {
      if (s.index % 3 != 0 || s.index == 0) continue;
      --expect;
      REQUIRE(s.degree.has_value());
      CHECK(*s.degree == expect);
    }
    CHECK(run.inconsistencies.empty());
  }
}

TEST_CASE("star process") {
  const auto run = star_process(FunctionExpr::power(0.5), {1.0, 0.0}, 2, light(true));
  REQUIRE(run.status == RunStatus::completed);
  CHECK(eval_real(run.stages[2].f, 4.0) == Approx(-1.0 / 6.0).epsilon(1e-14));
  CHECK(run.stages[1].label == ClassLabel::SOC);
  CHECK(run.stages[2].label == ClassLabel::OM);
  CHECK(run.inconsistencies.empty());
  const auto id = star_process(FunctionExpr::identity(), {0.5}, 4, light());
  CHECK(eval_real(id.stages[1].f, 2.0) == 1.0);
  for (std::size_t i = 2; i < id.stages.size(); ++i) CHECK(eval_real(id.stages[i].f, 2.0) == 0.0);
}

TEST_CASE("star process on a representation") {
  OMRep rep;
  rep.a = 0.5;
  rep.mu = DiscreteMeasure({{2.0, 1.0}, {-1.5, 2.0}});
  rep.interval = Interval::open(-1, 1);
  const std::vector<double> pts{0.0, 0.25, -0.5, 0.1, 0.3, -0.2};
  const auto stages = star_measure_run(rep, pts, 6);
  REQUIRE(stages.size() == 7);
  for (std::size_t n = 1; n < stages.size(); ++n) {
    for (const Atom& at : rep.mu.atoms()) {
      double w = at.w;
      for (std::size_t i = 0; i < n; ++i) w /= std::abs(at.r - pts[i]);
      double got = -1;
      if (const auto* s = std::get_if<SOCRep>(&stages[n])) {
        got = (at.r > 1 ? s->mu_plus : s->mu_minus).mass_at(at.r);
      } else {
        got = std::get<OMRep>(stages[n]).mu.mass_at(at.r);
      }
      CHECK(got == Approx(w).epsilon(1e-13));
    }
  }
  // The representation stages agree with the function-level star process.
  const auto run = star_process(FunctionExpr::measure_om(rep), pts, 6, light());
  for (std::size_t n = 1; n < stages.size(); ++n)
    for (double x : {-0.7, 0.05, 0.66}) {
      const double v = std::holds_alternative<OMRep>(stages[n]) ? eval_om(std::get<OMRep>(stages[n]), x)
                                                                : eval_soc(std::get<SOCRep>(stages[n]), x);
      CHECK(eval_real(run.stages[n].f, x) == Approx(v).epsilon(1e-9));
    }
}

TEST_CASE("backward process") {
  const auto f0 = FunctionExpr::power(0.5, Interval::closed(0, 2));
  const auto run = backward_process(f0, {1.0, 0.0}, {-3.0, 0.0}, 3, light(true));
  REQUIRE(run.status == RunStatus::completed);
  REQUIRE(run.stages.size() == 4);
  CHECK(run.stages[3].index == -3);
  CHECK(run.stages[1].label == ClassLabel::OC);
  CHECK(run.stages[2].label == ClassLabel::SOC);
  CHECK(run.stages[3].label == ClassLabel::OM);
  for (int i = 0; i < 200; ++i) {
    const double x = 2.0 * (i + 0.5) / 200.0;
    CHECK(rel(eval_real(run.stages[3].f, x), x / (3 - std::sqrt(x) * (x - 1))) < 1e-12);
  }
  CHECK(run.inconsistencies.empty());

  const auto pd = FunctionExpr::catalog("pow_diff", {{"alpha", 0.5}, {"L", 2.0}});
  const auto r2 = backward_process(pd, {1.0, 0.0}, {-3.0, 0.0}, 3, light());
  REQUIRE(r2.status == RunStatus::completed);
  for (int i = 0; i < 200; ++i) {
    const double x = 2.0 * (i + 0.5) / 200.0;
    const double want = x / (3 - (x - 1) * (std::sqrt(x) - std::sqrt(2 - x)));
    CHECK(rel(eval_real(r2.stages[3].f, x), want) < 1e-12);
  }

  const auto ub = backward_process(FunctionExpr::identity(Interval::positive()), {1.0, 0.0}, {}, 3, light());
  CHECK(ub.status == RunStatus::error);
  CHECK(ub.error_kind == ErrorKind::Unbounded);

  const auto bad = backward_process(f0, {1.0, 0.0}, {0.0}, 3, light());
  CHECK(bad.status == RunStatus::error);
  CHECK(bad.error_kind == ErrorKind::NotNegative);

  const auto auto_shift = backward_process(f0, {1.0, 0.0}, {}, 6, light(true));
  CHECK(auto_shift.status == RunStatus::completed);
  CHECK(auto_shift.inconsistencies.empty());
}

TEST_CASE("backward then forward recovers the stage") {
  const auto g = FunctionExpr::diff_quot(FunctionExpr::power(0.5), 1.0);
  for (double x0 : {0.5, 2.0}) {
    const auto back = FunctionExpr::diff_quot(FunctionExpr::mul_linear(g, x0, -1.7), x0);
    for (double x : {0.1, 0.7, 3.0, 9.0}) CHECK(rel(eval_real(back, x), eval_real(g, x)) < 1e-12);
  }
}

TEST_CASE("point sequence rules") {
  const auto f0 = FunctionExpr::power(0.5);
  const auto run = main_cycle(f0, {0.0, 0.0}, 3, light());
  CHECK(run.status == RunStatus::error);
  CHECK(run.error_kind == ErrorKind::InvalidArgument);
  CHECK(main_cycle(f0, {0.0, 1.0}, 3, light()).status == RunStatus::completed);
  const auto bad = star_process(FunctionExpr::power(0.5), {0.0}, 3, light());
  CHECK(bad.status == RunStatus::error);
}
