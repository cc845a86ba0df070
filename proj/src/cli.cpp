#include "loewner/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "loewner/error.hpp"
#include "loewner/measures.hpp"
#include "loewner/processes.hpp"

namespace fs = std::filesystem;

namespace loewner {

std::string to_string(Command c) {
  switch (c) {
    case Command::classify: return "classify";
    case Command::pipeline: return "pipeline";
    case Command::measure: return "measure";
    case Command::report: return "report";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  for (Command c : {Command::classify, Command::pipeline, Command::measure, Command::report})
    if (to_string(c) == s) return c;
  fail(ErrorKind::ParseError, "unknown command '" + s + "'");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::EmptyDomain:
    case ErrorKind::OutsideClosure:
    case ErrorKind::DuplicateNodes:
    case ErrorKind::NotEndpoint:
    case ErrorKind::NegativeAtom:
    case ErrorKind::NonzeroMuMinus:
    case ErrorKind::AtomAtX0:
      return kExitInput;
    default:
      return kExitEvaluation;
  }
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad dimension list '" + text + "'");
    }
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (lo > hi) fail(ErrorKind::ParseError, "empty dimension range '" + text + "'");
    for (int d = lo; d <= hi; ++d) out.push_back(d);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  }
  if (out.empty()) fail(ErrorKind::ParseError, "empty dimension list");
  return out;
}

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Interior sample grid of the clipped domain.
std::vector<double> sample_points(const Interval& domain, std::size_t count, double window) {
  const Interval w = domain.clipped(window);
  std::vector<double> xs;
  for (std::size_t k = 0; k < count; ++k) {
    const double u = count == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(count - 1);
    double x = w.lo() + u * w.width();
    if (!domain.contains(x)) x = w.lo() + (static_cast<double>(k) + 0.5) / static_cast<double>(count) * w.width();
    xs.push_back(x);
  }
  return xs;
}

void append_samples(std::string& csv, const FunctionExpr& f, const RunSpec& spec, const std::string& stage) {
  for (double x : sample_points(f.domain(), spec.sample_count, spec.sample_window)) {
    double v;
    try {
      v = eval_real(f, x);
    } catch (const Error&) {
      continue;
    }
    if (!std::isfinite(v)) continue;
    csv += fmt17(x) + "," + fmt17(v);
    if (!stage.empty()) csv += "," + stage;
    csv += "\n";
  }
}

const Json& require(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) fail(ErrorKind::ParseError, std::string("spec is missing '") + key + "'");
  return *it;
}

std::uint64_t env_seed() {
  const char* s = std::getenv("LOEWNER_SEED");
  if (s == nullptr || *s == '\0') return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, std::string("LOEWNER_SEED is not an integer: ") + s);
  }
}

}  // namespace

int run_classify(const RunSpec& spec) {
  const FunctionExpr f = function_from_json(require(spec.body, "function"));
  const Interval interval = spec.body.contains("interval") ? interval_from_json(spec.body["interval"]) : f.domain();
  const Classification c = classify_all(f, interval, spec.cfg);

  Json out;
  out["artifact"] = "certificates";
  out["function"] = to_json(f);
  out["description"] = f.describe();
  out["interval"] = to_json(interval);
  out["config"] = to_json(spec.cfg);
  out["certificates"] = to_json(c);
  out["inconsistencies"] = c.inconsistencies;
  write_atomic(spec.out_dir / "certificates.json", dump(out));

  std::string csv = "x,value\n";
  append_samples(csv, f, spec, "");
  write_atomic(spec.out_dir / "samples.csv", csv);
  return c.inconsistencies.empty() ? kExitOk : kExitInconsistent;
}

int run_pipeline(const RunSpec& spec) {
  const Json& b = spec.body;
  const std::string process = b.value("process", "main");
  const FunctionExpr f0 = function_from_json(require(b, "f0"));
  std::vector<double> points;
  for (const auto& p : require(b, "points")) {
    if (!p.is_number()) fail(ErrorKind::ParseError, "'points' must be numbers");
    points.push_back(p.get<double>());
  }
  const int steps = b.value("steps", 3);
  PipelineOptions opts;
  opts.certify = b.value("certify", true);
  opts.check_f0 = b.value("check_f0", true);
  opts.cfg = spec.cfg;

  PipelineRun run;
  if (process == "main") {
    run = main_cycle(f0, points, steps, opts);
  } else if (process == "star") {
    run = star_process(f0, points, steps, opts);
  } else if (process == "backward") {
    std::vector<std::optional<double>> shifts;
    if (b.contains("shifts"))
      for (const auto& s : b["shifts"]) {
        if (s.is_null()) {
          shifts.emplace_back();
        } else if (s.is_number()) {
          shifts.emplace_back(s.get<double>());
        } else {
          fail(ErrorKind::ParseError, "'shifts' must be numbers or null");
        }
      }
    run = backward_process(f0, points, shifts, steps, opts);
  } else {
    fail(ErrorKind::ParseError, "unknown process '" + process + "'");
  }

  Json out = to_json(run);
  out["artifact"] = "pipeline";
  out["config"] = to_json(spec.cfg);
  write_atomic(spec.out_dir / "pipeline.json", dump(out));

  std::string csv = "x,value,stage\n";
  for (const Stage& s : run.stages) append_samples(csv, s.f, spec, std::to_string(s.index));
  write_atomic(spec.out_dir / "samples.csv", csv);

  if (run.status == RunStatus::error) {
    std::cerr << "pipeline stopped: " << run.message << "\n";
    return run.error_kind ? exit_code_for(*run.error_kind) : kExitEvaluation;
  }
  return run.inconsistencies.empty() ? kExitOk : kExitInconsistent;
}

int run_measure(const RunSpec& spec) {
  const Json& b = spec.body;
  const Json& rj = require(b, "rep");
  const std::string type = rj.value("type", "om");
  const bool certify = b.value("certify", true);
  Json out;
  out["artifact"] = "measure";
  std::string csv = "x,center,value,residual\n";
  std::vector<std::string> inconsistencies;

  FunctionExpr f = FunctionExpr::constant(0.0);
  Interval interval = Interval::real_line();
  if (type == "om") {
    const OMRep rep = om_rep_from_json(rj);
    f = FunctionExpr::measure_om(rep);
    interval = rep.interval;
    out["rep"] = to_json(rep);
    std::vector<double> centers{rep.x0};
    if (b.contains("centers")) {
      centers.clear();
      for (const auto& c : b["centers"]) centers.push_back(c.get<double>());
    }
    Json rt = Json::array();
    for (double x0 : centers) {
      const SOCRep soc = om_to_soc(rep, x0);
      const double f0 = eval_om(rep, x0);
      double worst = 0.0;
      for (double x : sample_points(rep.interval, spec.sample_count, spec.sample_window)) {
        if (x == x0) continue;
        const double want = (eval_om(rep, x) - f0) / (x - x0);
        const double got = eval_soc(soc, x);
        const double res = std::abs(got - want) / (1.0 + std::abs(want));
        worst = std::max(worst, res);
        csv += fmt17(x) + "," + fmt17(x0) + "," + fmt17(got) + "," + fmt17(res) + "\n";
      }
      rt.push_back({{"center", x0}, {"soc", to_json(soc)}, {"max_residual", worst}});
      if (worst > 1e-10) inconsistencies.push_back("difference-quotient residual " + fmt17(worst) + " at center " + fmt17(x0));
    }
    out["round_trip"] = rt;
  } else if (type == "soc") {
    const SOCRep rep = soc_rep_from_json(rj);
    f = FunctionExpr::measure_soc(rep);
    interval = rep.interval;
    out["rep"] = to_json(rep);
    if (b.contains("endpoint")) {
      const double e = b["endpoint"].get<double>();
      const EndpointExtension ext = extend_at_endpoint(rep, e);
      for (double x : sample_points(rep.interval, spec.sample_count, spec.sample_window))
        csv += fmt17(x) + "," + fmt17(e) + "," + fmt17(om_formula(ext.rep, x)) + "," +
               fmt17(endpoint_identity_residual(rep, ext, x)) + "\n";
      out["endpoint"] = {{"b", e},
                         {"side", ext.side > 0 ? "right" : "left"},
                         {"delta", ext.delta},
                         {"value_at_b", ext.value_at_b},
                         {"extension", to_json(ext.rep)},
                         {"max_residual", ext.max_residual}};
    }
  } else if (type == "oc") {
    const OCRep rep = oc_rep_from_json(rj);
    f = FunctionExpr::measure_oc(rep);
    interval = rep.interval;
    out["rep"] = to_json(rep);
    if (b.value("square", false)) {
      const OCRep g = substitute_square(rep);
      double worst = 0.0;
      for (double x : sample_points(g.interval, spec.sample_count, spec.sample_window)) {
        const double want = oc_formula(rep, x * x);
        const double got = eval_oc(g, x);
        const double res = std::abs(got - want) / (1.0 + std::abs(want));
        worst = std::max(worst, res);
        csv += fmt17(x) + ",0," + fmt17(got) + "," + fmt17(res) + "\n";
      }
      out["square"] = {{"rep", to_json(g)}, {"max_residual", worst}};
    }
  } else {
    fail(ErrorKind::ParseError, "unknown representation type '" + type + "'");
  }

  if (b.contains("poisson")) {
    Json rec = Json::array();
    for (const auto& p : b["poisson"]) {
      const double r = p.at("r").get<double>();
      const auto win = p.at("window").get<std::vector<double>>();
      if (win.size() != 2) fail(ErrorKind::ParseError, "'window' must be [lo, hi]");
      std::vector<double> eps{1e-2, 1e-3, 1e-4};
      if (p.contains("eps")) eps = p["eps"].get<std::vector<double>>();
      const std::string side = p.value("side", "plus");
      if (side != "plus" && side != "minus") fail(ErrorKind::ParseError, "'side' must be plus or minus");
      const PoissonRecovery pr = recover_atom_weight(f, r, win[0], win[1], eps, side == "plus" ? 1 : -1);
      rec.push_back({{"r", r}, {"window", win}, {"side", side}, {"eps", pr.eps}, {"raw", pr.raw}, {"weight", pr.weight}});
    }
    out["poisson"] = rec;
  }

  if (certify) {
    Certificate c = type == "om"    ? check_monotone(f, interval, spec.cfg)
                    : type == "soc" ? check_strong(f, interval, spec.cfg)
                                    : check_convex(f, interval, spec.cfg);
    if (c.verdict == Verdict::fail)
      inconsistencies.push_back("representation failed its " + to_string(c.property) + " certificate");
    out["function"] = to_json(f);
    out["certificate"] = to_json(c);
  }
  out["inconsistencies"] = inconsistencies;
  out["config"] = to_json(spec.cfg);
  write_atomic(spec.out_dir / "measure.json", dump(out));
  write_atomic(spec.out_dir / "residuals.csv", csv);
  return inconsistencies.empty() ? kExitOk : kExitInconsistent;
}

namespace {

void replay_all(const FunctionExpr& f, const Certificate& c, const std::string& source, const std::string& where,
                Json& rows, bool& all_ok) {
  if (c.witness) {
    Json row{{"source", source}, {"where", where}, {"property", to_string(c.property)},
             {"recorded", c.witness->min_eig}};
    try {
      const double again = replay_witness(f, *c.witness);
      const bool ok = std::abs(again - c.witness->min_eig) <= 1e-10;
      row["recomputed"] = again;
      row["ok"] = ok;
      all_ok = all_ok && ok;
    } catch (const Error& e) {
      row["error"] = e.what();
      row["ok"] = false;
      all_ok = false;
    }
    rows.push_back(row);
  }
  for (const Certificate& s : c.sub) {
    // The only sub-report is the convexity check of -1/f.
    replay_all(FunctionExpr::neg_recip(f), s, source, where + "/neg_recip", rows, all_ok);
  }
}

Json verdict_table(const Json& certs) {
  Json v = Json::object();
  if (certs.is_object()) {
    for (const auto& [k, c] : certs.items()) v[k] = c.at("verdict");
  } else if (certs.is_array()) {
    for (const auto& c : certs) v[c.at("property").get<std::string>()] = c.at("verdict");
  }
  return v;
}

}  // namespace

int run_report(const RunSpec& spec) {
  std::vector<fs::path> roots;
  if (spec.body.contains("inputs")) {
    for (const auto& p : spec.body["inputs"]) {
      fs::path root = p.get<std::string>();
      if (root.is_relative() && !spec.spec_path.empty()) root = spec.spec_path.parent_path() / root;
      roots.push_back(root);
    }
  } else if (!spec.spec_path.empty() && fs::is_directory(spec.spec_path)) {
    roots.push_back(spec.spec_path);
  } else {
    roots.push_back(spec.out_dir);
  }

  std::vector<fs::path> files;
  for (const auto& root : roots) {
    if (!fs::exists(root)) fail(ErrorKind::InvalidArgument, "report input '" + root.string() + "' does not exist");
    if (fs::is_regular_file(root)) {
      files.push_back(root);
      continue;
    }
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  Json sources = Json::array();
  Json functions = Json::array();
  Json pipelines = Json::array();
  Json measures = Json::array();
  Json replays = Json::array();
  Json inconsistencies = Json::array();
  bool replay_ok = true;
  for (const auto& file : files) {
    Json j;
    try {
      j = read_json_file(file.string());
    } catch (const Error&) {
      continue;
    }
    if (!j.is_object() || !j.contains("artifact")) continue;
    const std::string kind = j["artifact"].get<std::string>();
    const std::string src = file.lexically_relative(roots.front()).generic_string();
    if (kind == "summary") continue;
    sources.push_back(src);
    for (const auto& msg : j.value("inconsistencies", Json::array())) inconsistencies.push_back(src + ": " + msg.get<std::string>());
    if (kind == "certificates") {
      functions.push_back({{"source", src}, {"description", j.at("description")}, {"verdicts", verdict_table(j.at("certificates"))}});
      if (spec.replay) {
        const FunctionExpr f = function_from_json(j.at("function"));
        for (const auto& [name, cj] : j.at("certificates").items())
          replay_all(f, certificate_from_json(cj), src, name, replays, replay_ok);
      }
    } else if (kind == "pipeline") {
      Json stages = Json::array();
      for (const auto& s : j.at("stages")) {
        stages.push_back({{"index", s.at("index")},
                          {"label", s.at("label")},
                          {"description", s.at("description")},
                          {"verdicts", verdict_table(s.at("certificates"))}});
        if (spec.replay) {
          const FunctionExpr f = function_from_json(s.at("function"));
          for (const auto& cj : s.at("certificates"))
            replay_all(f, certificate_from_json(cj), src, "stage " + s.at("index").dump(), replays, replay_ok);
        }
      }
      pipelines.push_back({{"source", src}, {"process", j.at("process")}, {"status", j.at("status")}, {"stages", stages}});
    } else if (kind == "measure") {
      Json row{{"source", src}, {"type", j.at("rep").at("type")}};
      if (j.contains("certificate")) {
        row["verdicts"] = verdict_table(Json::array({j["certificate"]}));
        if (spec.replay)
          replay_all(function_from_json(j.at("function")), certificate_from_json(j["certificate"]), src, "rep",
                     replays, replay_ok);
      }
      measures.push_back(row);
    }
  }
  if (!replay_ok) inconsistencies.push_back("witness replay mismatch");

  Json out;
  out["artifact"] = "summary";
  out["sources"] = sources;
  out["functions"] = functions;
  out["pipelines"] = pipelines;
  out["measures"] = measures;
  if (spec.replay) out["replay"] = replays;
  out["inconsistencies"] = inconsistencies;
  write_atomic(spec.out_dir / "summary.json", dump(out));
  return inconsistencies.empty() ? kExitOk : kExitInconsistent;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Operator monotone / convex function toolkit"};
  std::string command;
  std::string spec_file;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<unsigned> threads;
  std::string dims;
  bool replay = false;
  app.add_option("command", command, "classify | pipeline | measure | report")
      ->required()
      ->check(CLI::IsMember({"classify", "pipeline", "measure", "report"}));
  app.add_option("--spec", spec_file, "run specification (JSON); a directory for report");
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--seed", seed, "master seed (default: LOEWNER_SEED or 0)");
  app.add_option("--trials", trials, "trials per certificate");
  app.add_option("--dims", dims, "matrix dimensions, e.g. 2..8 or 2,3,4");
  app.add_option("--threads", threads, "worker threads for certificate trials");
  app.add_flag("--replay", replay, "report: recompute every recorded witness");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    RunSpec spec;
    spec.command = command_from_string(command);
    spec.out_dir = out_dir;
    spec.replay = replay;
    if (!spec_file.empty()) {
      spec.spec_path = spec_file;
      if (!fs::is_directory(spec.spec_path)) spec.body = read_json_file(spec_file);
    } else if (spec.command != Command::report) {
      fail(ErrorKind::ParseError, "--spec is required for " + command);
    }
    if (!spec.body.is_object()) fail(ErrorKind::ParseError, "the spec must be a JSON object");
    if (spec.body.contains("command") && spec.body["command"] != command)
      fail(ErrorKind::ParseError, "spec is for '" + spec.body["command"].get<std::string>() + "', not '" + command + "'");

    CertifyConfig cfg;
    cfg.seed = env_seed();
    if (spec.body.contains("config")) cfg = config_from_json(spec.body["config"], cfg);
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (threads) cfg.threads = *threads;
    if (!dims.empty()) cfg.dims = parse_dims(dims);
    cfg.validate();
    spec.cfg = cfg;
    if (spec.body.contains("samples")) {
      const Json& s = spec.body["samples"];
      spec.sample_count = s.value("count", spec.sample_count);
      spec.sample_window = s.value("window", spec.sample_window);
    }
    spec.replay = spec.replay || spec.body.value("replay", false);

    switch (spec.command) {
      case Command::classify: return run_classify(spec);
      case Command::pipeline: return run_pipeline(spec);
      case Command::measure: return run_measure(spec);
      case Command::report: return run_report(spec);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEvaluation;
  }
  return kExitEvaluation;
}

}  // namespace loewner
