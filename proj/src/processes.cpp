#include "loewner/processes.hpp"

#include <cmath>
#include <sstream>

#include "loewner/measures.hpp"
#include "loewner/rational.hpp"
#include "loewner/transforms.hpp"

namespace loewner {

std::string to_string(ClassLabel c) {
  switch (c) {
    case ClassLabel::OM: return "OM";
    case ClassLabel::SOC: return "SOC";
    case ClassLabel::OC: return "OC";
  }
  return "?";
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::running: return "running";
    case RunStatus::terminated_zero: return "terminated_zero";
    case RunStatus::terminated_rational: return "terminated_rational";
    case RunStatus::completed: return "completed";
    case RunStatus::error: return "error";
  }
  return "?";
}

ClassLabel class_label_from_string(const std::string& s) {
  for (ClassLabel c : {ClassLabel::OM, ClassLabel::SOC, ClassLabel::OC})
    if (to_string(c) == s) return c;
  fail(ErrorKind::ParseError, "unknown class label '" + s + "'");
}

RunStatus run_status_from_string(const std::string& s) {
  for (RunStatus r : {RunStatus::running, RunStatus::terminated_zero, RunStatus::terminated_rational,
                      RunStatus::completed, RunStatus::error})
    if (to_string(r) == s) return r;
  fail(ErrorKind::ParseError, "unknown run status '" + s + "'");
}

int rational_degree(const FunctionExpr& f) { return to_rational(f).degree(); }

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

class Runner {
 public:
  Runner(std::string process, const PipelineOptions& opts) : opts_(opts) { run_.process = std::move(process); }

  PipelineRun& run() { return run_; }

  Stage& add(int index, ClassLabel label, FunctionExpr f, std::optional<double> point = {},
             std::optional<double> shift = {}) {
    Stage s{index, label, std::move(f), point, shift, std::nullopt, {}};
    if (auto r = try_rational(s.f)) s.degree = r->degree();
    if (opts_.certify) certify(s);
    run_.stages.push_back(std::move(s));
    return run_.stages.back();
  }

  bool check_f0(const FunctionExpr& f0) {
    if (!opts_.check_f0) return true;
    const Certificate c = check_monotone(f0, f0.domain(), opts_.cfg);
    if (c.verdict == Verdict::pass) return true;
    stop(RunStatus::error, "f0 is not operator monotone: " + to_string(c.verdict) +
                               (c.diagnostic.empty() ? "" : " (" + c.diagnostic + ")"),
         ErrorKind::HypothesisViolated);
    return false;
  }

  void stop(RunStatus status, std::string message, std::optional<ErrorKind> kind = {}) {
    run_.status = status;
    run_.message = std::move(message);
    run_.error_kind = kind;
  }

  void fail_with(const Error& e) { stop(RunStatus::error, e.what(), e.kind()); }

  /// Point for the k-th transition; rejects the same excluded endpoint at
  /// two consecutive transitions.
  double point(const std::vector<double>& points, std::size_t k, const Interval& domain) {
    if (points.empty()) fail(ErrorKind::InvalidArgument, "the point sequence is empty");
    const double x = points[k % points.size()];
    if (k > 0 && x == last_point_ && domain.is_endpoint(x) && last_was_endpoint_)
      fail(ErrorKind::InvalidArgument,
           "endpoint " + num(x) + " used at two consecutive transitions; choose a different point");
    last_point_ = x;
    last_was_endpoint_ = domain.is_endpoint(x);
    run_.points.push_back(x);
    return x;
  }

 private:
  void certify(Stage& s) {
    const Interval& d = s.f.domain();
    Certificate c;
    switch (s.label) {
      case ClassLabel::OM: c = check_monotone(s.f, d, opts_.cfg); break;
      case ClassLabel::SOC: c = check_strong(s.f, d, opts_.cfg); break;
      case ClassLabel::OC: c = check_convex(s.f, d, opts_.cfg); break;
    }
    if (c.verdict == Verdict::fail)
      run_.inconsistencies.push_back("stage " + std::to_string(s.index) + " failed its " + to_string(s.label) +
                                     " certificate");
    s.certificates.push_back(std::move(c));
  }

  const PipelineOptions& opts_;
  PipelineRun run_;
  double last_point_ = std::nan("");
  bool last_was_endpoint_ = false;
};

bool vanishes(const FunctionExpr& f) {
  if (auto r = try_rational(f)) return r->is_zero();
  for (double x : scan_grid(f.domain().clipped(), 1001))
    if (std::abs(eval_real(f, x)) > 1e-13) return false;
  return true;
}

std::optional<double> nonzero_constant(const FunctionExpr& f) {
  auto r = try_rational(f);
  if (!r || r->is_zero() || r->degree() != 0) return std::nullopt;
  return eval_real(f, f.domain().clipped().lo() + 0.5 * f.domain().clipped().width());
}

}  // namespace

PipelineRun main_cycle(const FunctionExpr& f0, const std::vector<double>& points, int steps,
                       const PipelineOptions& opts) {
  Runner runner("main", opts);
  try {
    if (steps < 0) fail(ErrorKind::InvalidArgument, "steps must be >= 0");
    runner.add(0, ClassLabel::OM, f0);
    if (!runner.check_f0(f0)) return runner.run();
    std::size_t transition = 0;
    std::optional<int> last_om_degree = runner.run().stages.back().degree;
    for (int n = 1; n <= steps; ++n) {
      const FunctionExpr& prev = runner.run().stages.back().f;
      switch (n % 3) {
        case 1: {
          const double x = runner.point(points, transition++, prev.domain());
          const Stage& s = runner.add(n, ClassLabel::SOC, diff_quotient(prev, x), x);
          if (vanishes(s.f)) {
            runner.stop(RunStatus::terminated_zero, "stage " + std::to_string(n) + " vanishes identically");
            return runner.run();
          }
          break;
        }
        case 2: runner.add(n, ClassLabel::OC, neg_reciprocal(prev)); break;
        case 0: {
          const double x = runner.point(points, transition++, prev.domain());
          const Stage& s = runner.add(n, ClassLabel::OM, diff_quotient(prev, x), x);
          if (last_om_degree && s.degree && *s.degree != std::max(*last_om_degree - 1, 0))
            runner.run().inconsistencies.push_back("rational degree went from " + std::to_string(*last_om_degree) +
                                                   " to " + std::to_string(*s.degree) + " at stage " +
                                                   std::to_string(n));
          last_om_degree = s.degree;
          if (auto c = nonzero_constant(s.f)) {
            runner.stop(RunStatus::terminated_rational,
                        "stage " + std::to_string(n) + " is the nonzero constant " + num(*c));
            return runner.run();
          }
          break;
        }
      }
    }
    runner.stop(RunStatus::completed, "");
  } catch (const Error& e) {
    runner.fail_with(e);
  }
  return runner.run();
}

PipelineRun star_process(const FunctionExpr& f0, const std::vector<double>& points, int steps,
                         const PipelineOptions& opts) {
  Runner runner("star", opts);
  try {
    if (steps < 0) fail(ErrorKind::InvalidArgument, "steps must be >= 0");
    runner.add(0, ClassLabel::OM, f0);
    if (!runner.check_f0(f0)) return runner.run();
    for (int n = 1; n <= steps; ++n) {
      const FunctionExpr& prev = runner.run().stages.back().f;
      const double x = runner.point(points, static_cast<std::size_t>(n - 1), prev.domain());
      runner.add(n, n % 2 == 1 ? ClassLabel::SOC : ClassLabel::OM, diff_quotient(prev, x), x);
    }
    runner.stop(RunStatus::completed, "");
  } catch (const Error& e) {
    runner.fail_with(e);
  }
  return runner.run();
}

PipelineRun backward_process(const FunctionExpr& f0, const std::vector<double>& points,
                             const std::vector<std::optional<double>>& shifts, int steps,
                             const PipelineOptions& opts) {
  Runner runner("backward", opts);
  try {
    if (steps < 0) fail(ErrorKind::InvalidArgument, "steps must be >= 0");
    runner.add(0, ClassLabel::OM, f0);
    if (!runner.check_f0(f0)) return runner.run();
    std::size_t transition = 0;
    for (int n = 1; n <= steps; ++n) {
      const FunctionExpr& prev = runner.run().stages.back().f;
      switch (n % 3) {
        case 1: {
          const std::size_t k = transition;
          const double x = runner.point(points, transition++, prev.domain());
          double c = 0.0;
          if (k < shifts.size() && shifts[k]) {
            c = *shifts[k];
          } else {
            try {
              c = choose_shift(prev, x, prev.domain());
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::Unbounded) throw;
              const std::string what = e.what();
              fail(ErrorKind::Unbounded, what.substr(what.find(": ") + 2) + "; restrict f to a smaller bounded interval");
            }
          }
          FunctionExpr g = mul_linear(prev, x, c);
          const SignScan scan = sign_scan(g, g.domain(), -1);
          if (!scan.ok)
            fail(ErrorKind::NotNegative, "shift " + num(c) + " leaves value " + num(scan.offending_value) +
                                             " at x = " + num(scan.offending_x));
          runner.add(-n, ClassLabel::OC, std::move(g), x, c);
          break;
        }
        case 2: runner.add(-n, ClassLabel::SOC, neg_reciprocal_of_negative(prev)); break;
        case 0: {
          const std::size_t k = transition;
          const double x = runner.point(points, transition++, prev.domain());
          const double c = k < shifts.size() && shifts[k] ? *shifts[k] : 0.0;
          runner.add(-n, ClassLabel::OM, mul_linear(prev, x, c), x, c);
          break;
        }
      }
    }
    runner.stop(RunStatus::completed, "");
  } catch (const Error& e) {
    runner.fail_with(e);
  }
  return runner.run();
}

std::vector<RepStage> star_measure_run(const OMRep& f0, const std::vector<double>& points, int steps) {
  if (points.empty()) fail(ErrorKind::InvalidArgument, "the point sequence is empty");
  std::vector<RepStage> out{f0};
  for (int n = 1; n <= steps; ++n) {
    const double x = points[static_cast<std::size_t>(n - 1) % points.size()];
    if (const auto* om = std::get_if<OMRep>(&out.back()))
      out.emplace_back(om_to_soc(*om, x));
    else
      out.emplace_back(soc_to_om(std::get<SOCRep>(out.back()), x));
  }
  return out;
}

}  // namespace loewner
