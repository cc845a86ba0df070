#include <cmath>

#include "doctest.h"
#include "loewner/error.hpp"
#include "loewner/measures.hpp"
#include "loewner/serialize.hpp"
#include "loewner/transforms.hpp"

using namespace loewner;

TEST_CASE("malformed JSON reports the byte offset") {
  try {
    parse_json_text(R"({"kind": "power",, "alpha": 0.5})");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("byte offset 17") != std::string::npos);
  }
}

TEST_CASE("intervals round trip with infinite sentinels") {
  for (const auto& i : {Interval::real_line(), Interval::positive(), Interval::closed(0, 2), Interval::open(-1, 3)}) {
    const auto j = to_json(i);
    const auto back = interval_from_json(j);
    CHECK(back.describe() == i.describe());
  }
  CHECK(to_json(Interval::positive())["hi"] == "inf");
  CHECK(interval_from_json(Json::parse(R"({"lo": "-inf", "hi": 1})")).describe() == Interval::open(-INFINITY, 1).describe());
}

TEST_CASE("function trees round trip") {
  const auto sqrt = FunctionExpr::power(0.5);
  const std::vector<FunctionExpr> trees = {
      FunctionExpr::affine(2, -1, Interval::open(-1, 1)),
      FunctionExpr::catalog("pow_diff", {{"alpha", 0.5}, {"L", 2.0}}),
      diff_quotient(sqrt, 1.0),
      neg_reciprocal(diff_quotient(sqrt, 1.0)),
      mul_linear(FunctionExpr::reciprocal(Interval::positive()), 2.0, -3.0),
      FunctionExpr::compose(FunctionExpr::quotient({0, 1}, {1, 1}, Interval::open(-1, INFINITY)),
                            FunctionExpr::reciprocal(Interval::positive())),
  };
  for (const auto& f : trees) {
    const auto j = to_json(f);
    const auto g = function_from_json(parse_json_text(j.dump()));
    CHECK(to_json(g) == j);
    for (double x : {0.25, 0.5, 0.75}) {
      if (!f.domain().contains(x)) continue;
      CHECK(eval_real(g, x) == eval_real(f, x));
    }
  }
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind": "nope"})")), Error);
}

TEST_CASE("measure representations round trip") {
  OMRep om;
  om.a = 1;
  om.b = -0.5;
  om.x0 = 0.25;
  om.mu = DiscreteMeasure({{2.0, 1.0}, {-3.0, 0.5}});
  om.interval = Interval::open(0, 1);
  const auto j = to_json(om);
  CHECK(j["type"] == "om");
  CHECK(j["atoms_plus"].size() == 1);
  CHECK(j["atoms_minus"].size() == 1);
  const auto back = om_rep_from_json(j);
  for (double x : {0.1, 0.6}) CHECK(eval_om(back, x) == eval_om(om, x));

  SOCRep soc = om_to_soc(om, 0.5);
  CHECK(to_json(soc_rep_from_json(to_json(soc))) == to_json(soc));
}

TEST_CASE("certificates and configs round trip") {
  CertifyConfig cfg;
  cfg.trials = 17;
  cfg.dims = {2, 5};
  cfg.seed = 99;
  const auto back = config_from_json(to_json(cfg));
  CHECK(back.trials == 17);
  CHECK(back.dims == std::vector<int>{2, 5});
  CHECK(back.seed == 99);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"dims": [0]})")), Error);

  const auto sq = FunctionExpr::quotient({0, 0, 1}, {1}, Interval::real_line());
  CertifyConfig small;
  small.trials = 100;
  small.dims = {2, 3};
  const auto cert = check_monotone(sq, Interval::real_line(), small);
  REQUIRE(cert.witness);
  const auto again = certificate_from_json(parse_json_text(to_json(cert).dump()));
  CHECK(again.verdict == Verdict::fail);
  REQUIRE(again.witness);
  CHECK(replay_witness(sq, *again.witness) == cert.witness->min_eig);
}
