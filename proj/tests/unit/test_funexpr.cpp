#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "loewner/error.hpp"
#include "loewner/funexpr.hpp"

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

double central_diff(const FunctionExpr& f, double x) {
  const double h = 1e-4 * (1.0 + std::abs(x));
  return (-eval_real(f, x + 2 * h) + 8 * eval_real(f, x + h) - 8 * eval_real(f, x - h) + eval_real(f, x - 2 * h)) /
         (12 * h);
}

}  // namespace

TEST_CASE("interval construction and queries") {
  CHECK(kind_of([] { Interval(1.0, 1.0, true, true); }) == ErrorKind::EmptyDomain);
  CHECK(kind_of([] { Interval(0.0, kInf, false, true); }) == ErrorKind::InvalidArgument);
  const Interval i = Interval::closed(0, 2);
  CHECK(i.contains(0.0));
  CHECK(i.contains(2.0));
  CHECK_FALSE(i.contains(2.1));
  const Interval o = Interval::open(0, 2);
  CHECK_FALSE(o.contains(0.0));
  CHECK(o.in_closure(0.0));
  CHECK(Interval::positive().clipped(20) == Interval::open(0, 20));
}

TEST_CASE("eval_real basics") {
  CHECK(eval_real(FunctionExpr::identity(), 3.5) == 3.5);
  const auto sq = FunctionExpr::power(0.5);
  CHECK(eval_real(FunctionExpr::diff_quot(sq, 1.0), 1.0) == Approx(0.5).epsilon(1e-14));
  CHECK(kind_of([&] { eval_real(sq, -1.0); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { eval_real(FunctionExpr::reciprocal(), 0.0); }) == ErrorKind::DomainError);
}

TEST_CASE("main-cycle third function at x = 4") {
  const auto f0 = FunctionExpr::power(0.5);
  const auto f1 = FunctionExpr::diff_quot(f0, 1.0);
  const auto f2 = FunctionExpr::neg_recip(f1);
  const auto f3 = FunctionExpr::diff_quot(f2, 0.0);
  const double x = 4.0;
  const double closed = (std::pow(x, -0.5) - 1.0) / (std::pow(x, 0.5) - 1.0);
  CHECK(eval_real(f3, x) == Approx(closed).epsilon(1e-14));
  CHECK(eval_real(f3, x) == Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("eval_complex") {
  const std::complex<double> z(1, 2);
  CHECK(eval_complex(FunctionExpr::identity(), z) == z);
  const auto sq = FunctionExpr::quotient({0, 0, 1}, {1});
  CHECK(eval_complex(sq, {-1, 1}).imag() == Approx(-2.0));
  SOCRep rep;
  rep.mu_plus = DiscreteMeasure({{2.0, 1.0}});
  rep.interval = Interval::open(-1, 1);
  const auto v = eval_complex(FunctionExpr::measure_soc(rep), {0, 1});
  CHECK(v.real() == Approx(0.4));
  CHECK(v.imag() == Approx(0.2));
  CHECK(kind_of([&] { eval_complex(FunctionExpr::identity(), {1, 0}); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { eval_complex(FunctionExpr::catalog("softplus"), {1, 1}); }) == ErrorKind::UnsupportedNode);
}

TEST_CASE("eval_deriv") {
  CHECK(eval_deriv(FunctionExpr::power(2), 3.0) == Approx(6.0));
  CHECK(eval_deriv(FunctionExpr::power(0.5), 4.0) == Approx(0.25));
  const auto negx = FunctionExpr::neg_recip(FunctionExpr::reciprocal());
  CHECK(eval_real(negx, 7.0) == Approx(-7.0));
  CHECK(eval_deriv(negx, 7.0) == Approx(-1.0));
  CHECK(kind_of([] { eval_deriv(FunctionExpr::power(0.5), 0.0); }) == ErrorKind::DomainError);
}

TEST_CASE("domain derivation") {
  const auto sq = FunctionExpr::power(0.5);
  CHECK(domain_of(FunctionExpr::diff_quot(sq, 1.0)) == Interval::nonnegative());
  const auto on02 = FunctionExpr::power(0.5, Interval::closed(0, 2));
  CHECK(domain_of(FunctionExpr::diff_quot(on02, 0.0)) == Interval(0, 2, false, true));
  CHECK(domain_of(FunctionExpr::neg_recip(FunctionExpr::constant(1.0, Interval::open(-1, 1)))) ==
        Interval::open(-1, 1));
  CHECK(kind_of([&] { FunctionExpr::diff_quot(on02, 3.0); }) == ErrorKind::OutsideClosure);
  CHECK(kind_of([] { FunctionExpr::diff_quot(FunctionExpr::reciprocal(), 0.0); }) == ErrorKind::NoFiniteLimit);
}

TEST_CASE("symbolic derivatives agree with central differences") {
  std::mt19937_64 gen(11);
  const std::vector<FunctionExpr> fs = {
      FunctionExpr::power(0.5),
      FunctionExpr::power(3),
      FunctionExpr::reciprocal(),
      FunctionExpr::catalog("log"),
      FunctionExpr::catalog("xlogx"),
      FunctionExpr::catalog("pow_diff"),
      FunctionExpr::diff_quot(FunctionExpr::power(0.5), 1.0),
      FunctionExpr::neg_recip(FunctionExpr::diff_quot(FunctionExpr::power(0.5), 1.0)),
      FunctionExpr::mul_linear(FunctionExpr::power(0.5), 1.0, -3.0),
      FunctionExpr::quotient({1, 2}, {1, 1}, Interval::positive()),
  };
  for (const auto& f : fs) {
    const Interval w = f.domain().clipped(10).shrunk(0.05);
    std::uniform_real_distribution<double> u(w.lo(), w.hi());
    for (int i = 0; i < 100; ++i) {
      const double x = u(gen);
      const double d = eval_deriv(f, x);
      CHECK(std::abs(d - central_diff(f, x)) <= 1e-6 * (1.0 + std::abs(d)));
    }
  }
}

TEST_CASE("complex extension approaches the real axis") {
  const std::vector<FunctionExpr> fs = {FunctionExpr::power(0.5), FunctionExpr::catalog("log"),
                                        FunctionExpr::diff_quot(FunctionExpr::power(0.5), 1.0)};
  for (const auto& f : fs) {
    for (double x : {0.3, 1.0, 2.5, 7.0}) {
      const double fx = eval_real(f, x);
      double prev = kInf;
      for (double eps : {1e-2, 1e-4, 1e-6}) {
        const double gap = std::abs(eval_complex(f, {x, eps}) - fx);
        CHECK(gap < prev);
        prev = gap;
      }
      CHECK(prev < 1e-4 * (1.0 + std::abs(fx)));
    }
  }
}

TEST_CASE("difference quotient is continuous at its center") {
  for (double x0 : {0.5, 1.0, 3.0}) {
    const auto f = FunctionExpr::catalog("log");
    const auto g = FunctionExpr::diff_quot(f, x0);
    const double c = eval_real(g, x0);
    CHECK(c == Approx(1.0 / x0).epsilon(1e-12));
    for (double s : {-1.0, 1.0}) CHECK(std::abs(eval_real(g, x0 + s * 1e-7) - c) < 1e-5 * (1.0 + std::abs(c)));
  }
}

TEST_CASE("nested difference quotients at their centers") {
  // log -> dq at 1 -> dq at 1 equals the second Taylor coefficient -1/2.
  const auto g = FunctionExpr::diff_quot(FunctionExpr::diff_quot(FunctionExpr::catalog("log"), 1.0), 1.0);
  CHECK(eval_real(g, 1.0) == Approx(-0.5).epsilon(1e-12));
  CHECK(eval_real(g, 2.0) == Approx(std::log(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("sign scan and negative reciprocal flag") {
  const auto bad = FunctionExpr::neg_recip(FunctionExpr::identity(Interval::open(-1, 1)));
  const auto& node = std::get<NegRecipNode>(bad.node().data);
  CHECK_FALSE(node.valid);
  const auto good = FunctionExpr::neg_recip(FunctionExpr::reciprocal());
  CHECK(std::get<NegRecipNode>(good.node().data).valid);
  CHECK(sign_scan(FunctionExpr::constant(0.0), Interval::open(0, 1), +1).all_zero);
}

TEST_CASE("catalog forms") {
  const auto pd = FunctionExpr::catalog("pow_diff", {{"alpha", 0.5}, {"L", 2.0}});
  CHECK(pd.domain() == Interval::closed(0, 2));
  CHECK(eval_real(pd, 0.5) == Approx(std::sqrt(0.5) - std::sqrt(1.5)));
  CHECK(eval_real(FunctionExpr::catalog("exp"), 1.0) == Approx(std::exp(1.0)));
  CHECK(kind_of([] { FunctionExpr::catalog("nope"); }) == ErrorKind::InvalidArgument);
}
