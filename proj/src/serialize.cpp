#include "loewner/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "loewner/error.hpp"

namespace loewner {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::ParseError, what); }

const Json& at(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  bad(std::string("'") + what + "' must be a number");
}

double number_at(const Json& j, const char* key) { return number(at(j, key), key); }

double number_or(const Json& j, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, key);
}

Json endpoint(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string("'") + what + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

Json atoms_json(const DiscreteMeasure& m) {
  Json a = Json::array();
  for (const Atom& at : m.atoms()) a.push_back({at.r, at.w});
  return a;
}

std::vector<Atom> atoms_from(const Json& j, const char* key) {
  std::vector<Atom> out;
  auto it = j.find(key);
  if (it == j.end()) return out;
  if (!it->is_array()) bad(std::string("'") + key + "' must be an array of [r, w] pairs");
  for (const auto& p : *it) {
    if (!p.is_array() || p.size() != 2) bad(std::string("'") + key + "' entries must be [r, w] pairs");
    out.push_back({number(p[0], key), number(p[1], key)});
  }
  return out;
}

std::optional<Interval> optional_interval(const Json& j) {
  auto it = j.find("interval");
  if (it == j.end()) return std::nullopt;
  return interval_from_json(*it);
}

const Json& params_of(const Json& j) {
  static const Json empty = Json::object();
  auto it = j.find("params");
  return it == j.end() ? empty : *it;
}

// Looks a parameter up in "params" first, then at top level.
double param(const Json& j, const char* key) {
  const Json& p = params_of(j);
  if (p.contains(key)) return number(p[key], key);
  if (j.contains(key)) return number(j[key], key);
  bad(std::string("missing parameter '") + key + "'");
}

double param_or(const Json& j, const char* key, double fallback) {
  const Json& p = params_of(j);
  if (p.contains(key)) return number(p[key], key);
  return number_or(j, key, fallback);
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ParseError, "malformed JSON at byte offset " + std::to_string(e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

Json to_json(const Interval& i) {
  return {{"lo", endpoint(i.lo())}, {"hi", endpoint(i.hi())}, {"lo_closed", i.lo_closed()}, {"hi_closed", i.hi_closed()}};
}

Interval interval_from_json(const Json& j) {
  const bool lc = j.value("lo_closed", false);
  const bool hc = j.value("hi_closed", false);
  return Interval(number_at(j, "lo"), number_at(j, "hi"), lc, hc);
}

Json to_json(const FunctionExpr& f) {
  Json j;
  j["kind"] = to_string(f.kind());
  const Json dom = to_json(f.domain());
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          j["params"] = {{"c", n.c}};
          j["interval"] = dom;
        } else if constexpr (std::is_same_v<T, AffineNode>) {
          j["params"] = {{"a", n.a}, {"b", n.b}};
          j["interval"] = dom;
        } else if constexpr (std::is_same_v<T, PowerNode>) {
          j["params"] = {{"alpha", n.alpha}};
          j["interval"] = dom;
        } else if constexpr (std::is_same_v<T, ReciprocalNode>) {
          j["interval"] = dom;
        } else if constexpr (std::is_same_v<T, CatalogNode>) {
          j["name"] = n.name;
          Json p = Json::object();
          for (const auto& [k, v] : n.params) p[k] = v;
          j["params"] = p;
          j["interval"] = dom;
        } else if constexpr (std::is_same_v<T, DiffQuotNode>) {
          j["x0"] = n.x0;
          j["child"] = to_json(n.child);
        } else if constexpr (std::is_same_v<T, NegRecipNode>) {
          if (n.sign != 1) j["sign"] = n.sign;
          j["child"] = to_json(n.child);
        } else if constexpr (std::is_same_v<T, MulLinearNode>) {
          j["x0"] = n.x0;
          j["c"] = n.c;
          j["child"] = to_json(n.child);
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          j["outer"] = to_json(n.outer);
          j["inner"] = to_json(n.inner);
        } else if constexpr (std::is_same_v<T, MeasureOMNode>) {
          j["rep"] = to_json(n.rep);
        } else if constexpr (std::is_same_v<T, MeasureOCNode>) {
          j["rep"] = to_json(n.rep);
        } else if constexpr (std::is_same_v<T, MeasureSOCNode>) {
          j["rep"] = to_json(n.rep);
        } else if constexpr (std::is_same_v<T, QuotientNode>) {
          j["num"] = n.num;
          j["den"] = n.den;
          j["interval"] = dom;
        }
      },
      f.node().data);
  return j;
}

FunctionExpr function_from_json(const Json& j) {
  if (!j.is_object()) bad("a function description must be an object");
  const Json& kj = at(j, "kind");
  if (!kj.is_string()) bad("'kind' must be a string");
  const std::string kind = kj.get<std::string>();
  const auto on = optional_interval(j);
  if (kind == "constant") return FunctionExpr::constant(param(j, "c"), on);
  if (kind == "affine") return FunctionExpr::affine(param(j, "a"), param(j, "b"), on);
  if (kind == "identity") return FunctionExpr::identity(on);
  if (kind == "power") return FunctionExpr::power(param(j, "alpha"), on);
  if (kind == "reciprocal") return FunctionExpr::reciprocal(on);
  if (kind == "catalog") {
    const Json& name = at(j, "name");
    if (!name.is_string()) bad("'name' must be a string");
    FunctionExpr::Params params;
    for (const auto& [k, v] : params_of(j).items()) params[k] = number(v, "params");
    return FunctionExpr::catalog(name.get<std::string>(), params, on);
  }
  if (kind == "diffquot") return FunctionExpr::diff_quot(function_from_json(at(j, "child")), param(j, "x0"));
  if (kind == "negrecip") {
    const int sign = static_cast<int>(param_or(j, "sign", 1.0));
    return FunctionExpr::neg_recip(function_from_json(at(j, "child")), sign);
  }
  if (kind == "mullinear")
    return FunctionExpr::mul_linear(function_from_json(at(j, "child")), param(j, "x0"), param_or(j, "c", 0.0));
  if (kind == "compose")
    return FunctionExpr::compose(function_from_json(at(j, "outer")), function_from_json(at(j, "inner")));
  if (kind == "measure_om") return FunctionExpr::measure_om(om_rep_from_json(at(j, "rep")));
  if (kind == "measure_oc") return FunctionExpr::measure_oc(oc_rep_from_json(at(j, "rep")));
  if (kind == "measure_soc") return FunctionExpr::measure_soc(soc_rep_from_json(at(j, "rep")));
  if (kind == "quotient") {
    const Json& p = params_of(j);
    const Json& num = p.contains("num") ? p["num"] : at(j, "num");
    const Json& den = p.contains("den") ? p["den"] : at(j, "den");
    return FunctionExpr::quotient(numbers(num, "num"), numbers(den, "den"), on);
  }
  bad("unknown function kind '" + kind + "'");
}

Json to_json(const OMRep& rep) {
  std::vector<Atom> plus;
  std::vector<Atom> minus;
  for (const Atom& at : rep.mu.atoms()) (at.r > rep.x0 ? plus : minus).push_back(at);
  return {{"type", "om"},
          {"a", rep.a},
          {"b", rep.b},
          {"x0", rep.x0},
          {"atoms_plus", atoms_json(DiscreteMeasure(plus))},
          {"atoms_minus", atoms_json(DiscreteMeasure(minus))},
          {"interval", to_json(rep.interval)}};
}

Json to_json(const OCRep& rep) {
  return {{"type", "oc"},
          {"a", rep.a},
          {"b", rep.b},
          {"c", rep.c},
          {"x0", rep.x0},
          {"atoms_plus", atoms_json(rep.mu_plus)},
          {"atoms_minus", atoms_json(rep.mu_minus)},
          {"interval", to_json(rep.interval)}};
}

Json to_json(const SOCRep& rep) {
  return {{"type", "soc"},
          {"a", rep.a},
          {"atoms_plus", atoms_json(rep.mu_plus)},
          {"atoms_minus", atoms_json(rep.mu_minus)},
          {"interval", to_json(rep.interval)}};
}

OMRep om_rep_from_json(const Json& j) {
  OMRep rep;
  rep.a = number_or(j, "a", 0.0);
  rep.b = number_or(j, "b", 0.0);
  rep.x0 = number_or(j, "x0", 0.0);
  auto atoms = atoms_from(j, "atoms_plus");
  for (const Atom& a : atoms_from(j, "atoms_minus")) atoms.push_back(a);
  for (const Atom& a : atoms_from(j, "atoms")) atoms.push_back(a);
  rep.mu = DiscreteMeasure(std::move(atoms));
  rep.interval = interval_from_json(at(j, "interval"));
  rep.validate();
  return rep;
}

OCRep oc_rep_from_json(const Json& j) {
  OCRep rep;
  rep.a = number_or(j, "a", 0.0);
  rep.b = number_or(j, "b", 0.0);
  rep.c = number_or(j, "c", 0.0);
  rep.x0 = number_or(j, "x0", 0.0);
  rep.mu_plus = DiscreteMeasure(atoms_from(j, "atoms_plus"));
  rep.mu_minus = DiscreteMeasure(atoms_from(j, "atoms_minus"));
  rep.interval = interval_from_json(at(j, "interval"));
  rep.validate();
  return rep;
}

SOCRep soc_rep_from_json(const Json& j) {
  SOCRep rep;
  rep.a = number_or(j, "a", 0.0);
  rep.mu_plus = DiscreteMeasure(atoms_from(j, "atoms_plus"));
  rep.mu_minus = DiscreteMeasure(atoms_from(j, "atoms_minus"));
  rep.interval = interval_from_json(at(j, "interval"));
  rep.validate();
  return rep;
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

CMatrix cmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("a matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("matrix rows must have equal length");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& e = row[static_cast<std::size_t>(k)];
      if (e.is_array() && e.size() == 2)
        m(i, k) = {number(e[0], "matrix"), number(e[1], "matrix")};
      else
        m(i, k) = number(e, "matrix");
    }
  }
  return m;
}

Json to_json(const HermitianMatrix& h) { return to_json(h.matrix()); }

HermitianMatrix hermitian_from_json(const Json& j) {
  const CMatrix m = cmatrix_from_json(j);
  if (m.rows() != m.cols()) bad("a Hermitian matrix must be square");
  return HermitianMatrix(m);
}

Json to_json(const Witness& w) {
  Json j;
  j["criterion"] = w.criterion;
  if (w.h1) j["h1"] = to_json(*w.h1);
  if (w.h2) j["h2"] = to_json(*w.h2);
  if (w.h) j["h"] = to_json(*w.h);
  if (w.p) j["p"] = to_json(w.p->basis());
  if (w.t) j["t"] = *w.t;
  if (!w.nodes.empty()) j["nodes"] = w.nodes;
  if (w.z) j["z"] = {w.z->real(), w.z->imag()};
  j["min_eig"] = w.min_eig;
  j["threshold"] = w.threshold;
  return j;
}

Witness witness_from_json(const Json& j) {
  Witness w;
  const Json& c = at(j, "criterion");
  if (!c.is_string()) bad("'criterion' must be a string");
  w.criterion = c.get<std::string>();
  if (j.contains("h1")) w.h1 = hermitian_from_json(j["h1"]);
  if (j.contains("h2")) w.h2 = hermitian_from_json(j["h2"]);
  if (j.contains("h")) w.h = hermitian_from_json(j["h"]);
  if (j.contains("p")) w.p = Projection(cmatrix_from_json(j["p"]));
  if (j.contains("t")) w.t = number(j["t"], "t");
  if (j.contains("nodes")) w.nodes = numbers(j["nodes"], "nodes");
  if (j.contains("z")) {
    const auto z = numbers(j["z"], "z");
    if (z.size() != 2) bad("'z' must be [re, im]");
    w.z = std::complex<double>(z[0], z[1]);
  }
  w.min_eig = number_at(j, "min_eig");
  w.threshold = number_or(j, "threshold", 0.0);
  return w;
}

Json to_json(const Certificate& c) {
  Json j;
  j["property"] = to_string(c.property);
  j["verdict"] = to_string(c.verdict);
  j["trials"] = c.trials;
  j["tolerance"] = c.tolerance;
  j["seed"] = c.seed;
  if (c.witness) j["witness"] = to_json(*c.witness);
  if (!c.diagnostic.empty()) j["diagnostic"] = c.diagnostic;
  if (!c.sub.empty()) {
    Json sub = Json::array();
    for (const auto& s : c.sub) sub.push_back(to_json(s));
    j["sub"] = sub;
  }
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.property = property_from_string(at(j, "property").get<std::string>());
  c.verdict = verdict_from_string(at(j, "verdict").get<std::string>());
  c.trials = at(j, "trials").get<int>();
  c.tolerance = number_at(j, "tolerance");
  c.seed = at(j, "seed").get<std::uint64_t>();
  if (j.contains("witness")) c.witness = witness_from_json(j["witness"]);
  c.diagnostic = j.value("diagnostic", "");
  if (j.contains("sub"))
    for (const auto& s : j["sub"]) c.sub.push_back(certificate_from_json(s));
  return c;
}

Json to_json(const Classification& c) {
  Json j;
  for (const Certificate* cert : {&c.om, &c.oc, &c.soc, &c.halfplane, &c.loewner})
    j[to_string(cert->property)] = to_json(*cert);
  return j;
}

Json to_json(const CertifyConfig& cfg) {
  Json hp;
  if (cfg.halfplane.re_lo) hp["re_lo"] = *cfg.halfplane.re_lo;
  if (cfg.halfplane.re_hi) hp["re_hi"] = *cfg.halfplane.re_hi;
  hp["n_re"] = cfg.halfplane.n_re;
  hp["im_lo"] = cfg.halfplane.im_lo;
  hp["im_hi"] = cfg.halfplane.im_hi;
  hp["n_im"] = cfg.halfplane.n_im;
  Json extra = Json::array();
  for (const auto& z : cfg.halfplane.extra) extra.push_back({z.real(), z.imag()});
  hp["extra"] = extra;
  hp["threshold"] = cfg.halfplane.threshold;
  return {{"trials", cfg.trials},
          {"dims", cfg.dims},
          {"tolerance", cfg.tolerance},
          {"seed", cfg.seed},
          {"t_samples", cfg.t_samples},
          {"loewner_sets", cfg.loewner_sets},
          {"loewner_min", cfg.loewner_min},
          {"loewner_max", cfg.loewner_max},
          {"window", cfg.sampling.window},
          {"open_margin", cfg.sampling.open_margin},
          {"threads", cfg.threads},
          {"halfplane", hp}};
}

CertifyConfig config_from_json(const Json& j, CertifyConfig base) {
  if (!j.is_object()) bad("'config' must be an object");
  CertifyConfig c = std::move(base);
  auto integer = [&](const char* key, auto& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) bad(std::string("'") + key + "' must be an integer");
    slot = j[key].get<std::decay_t<decltype(slot)>>();
  };
  integer("trials", c.trials);
  integer("seed", c.seed);
  integer("t_samples", c.t_samples);
  integer("loewner_sets", c.loewner_sets);
  integer("loewner_min", c.loewner_min);
  integer("loewner_max", c.loewner_max);
  integer("threads", c.threads);
  if (j.contains("dims")) {
    c.dims.clear();
    for (double d : numbers(j["dims"], "dims")) c.dims.push_back(static_cast<int>(d));
  }
  c.tolerance = number_or(j, "tolerance", c.tolerance);
  c.sampling.window = number_or(j, "window", c.sampling.window);
  c.sampling.open_margin = number_or(j, "open_margin", c.sampling.open_margin);
  if (j.contains("halfplane")) {
    const Json& h = j["halfplane"];
    HalfPlaneGrid& g = c.halfplane;
    if (h.contains("re_lo")) g.re_lo = number(h["re_lo"], "re_lo");
    if (h.contains("re_hi")) g.re_hi = number(h["re_hi"], "re_hi");
    g.n_re = h.value("n_re", g.n_re);
    g.im_lo = number_or(h, "im_lo", g.im_lo);
    g.im_hi = number_or(h, "im_hi", g.im_hi);
    g.n_im = h.value("n_im", g.n_im);
    g.threshold = number_or(h, "threshold", g.threshold);
    if (h.contains("extra")) {
      g.extra.clear();
      for (const auto& z : h["extra"]) {
        const auto v = numbers(z, "extra");
        if (v.size() != 2) bad("half-plane extra points must be [re, im]");
        g.extra.emplace_back(v[0], v[1]);
      }
    }
  }
  c.validate();
  return c;
}

Json to_json(const Stage& s) {
  Json j;
  j["index"] = s.index;
  j["label"] = to_string(s.label);
  j["description"] = s.f.describe();
  j["domain"] = to_json(s.f.domain());
  if (s.point) j["point"] = *s.point;
  if (s.shift) j["shift"] = *s.shift;
  if (s.degree) j["degree"] = *s.degree;
  j["function"] = to_json(s.f);
  Json certs = Json::array();
  for (const auto& c : s.certificates) certs.push_back(to_json(c));
  j["certificates"] = certs;
  return j;
}

Json to_json(const PipelineRun& run) {
  Json j;
  j["process"] = run.process;
  j["status"] = to_string(run.status);
  if (!run.message.empty()) j["message"] = run.message;
  if (run.error_kind) j["error_kind"] = to_string(*run.error_kind);
  j["points"] = run.points;
  Json stages = Json::array();
  for (const auto& s : run.stages) stages.push_back(to_json(s));
  j["stages"] = stages;
  j["inconsistencies"] = run.inconsistencies;
  return j;
}

}  // namespace loewner
