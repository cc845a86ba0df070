#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "loewner/classify.hpp"
#include "loewner/error.hpp"
#include "loewner/funexpr.hpp"
#include "loewner/measure_types.hpp"

namespace loewner {

enum class ClassLabel { OM, SOC, OC };
enum class RunStatus { running, terminated_zero, terminated_rational, completed, error };

std::string to_string(ClassLabel c);
std::string to_string(RunStatus s);
ClassLabel class_label_from_string(const std::string& s);
RunStatus run_status_from_string(const std::string& s);

struct Stage {
  int index = 0;  // signed: backward stages are negative
  ClassLabel label = ClassLabel::OM;
  FunctionExpr f;
  std::optional<double> point;  // center used to build this stage
  std::optional<double> shift;  // additive constant (backward process)
  std::optional<int> degree;    // rational degree when f is rational
  std::vector<Certificate> certificates;
};

struct PipelineOptions {
  bool certify = true;
  bool check_f0 = true;
  CertifyConfig cfg;
};

struct PipelineRun {
  std::string process;  // main, star, backward
  std::vector<Stage> stages;
  std::vector<double> points;
  RunStatus status = RunStatus::running;
  std::string message;
  std::optional<ErrorKind> error_kind;
  std::vector<std::string> inconsistencies;
};

/// f0 -> f1 = dq(f0, x0) -> f2 = -1/f1 -> f3 = dq(f2, x1) -> ...
/// Points are reused cyclically.
PipelineRun main_cycle(const FunctionExpr& f0, const std::vector<double>& points, int steps,
                       const PipelineOptions& opts = {});

/// f*_{n+1} = dq(f*_n, x_n), alternating OM and SOC.
PipelineRun star_process(const FunctionExpr& f0, const std::vector<double>& points, int steps,
                         const PipelineOptions& opts = {});

/// f_{-1} = f0 (x - x0) + c0, f_{-2} = -1/f_{-1}, f_{-3} = f_{-2} (x - x1) + c1, ...
/// Missing shifts default to choose_shift for convex stages and 0 for
/// monotone stages.
PipelineRun backward_process(const FunctionExpr& f0, const std::vector<double>& points,
                             const std::vector<std::optional<double>>& shifts, int steps,
                             const PipelineOptions& opts = {});

/// max(deg numerator, deg denominator) in lowest terms. Throws NotRational.
int rational_degree(const FunctionExpr& f);

/// Star process on an OM representation, stage by stage.
using RepStage = std::variant<OMRep, SOCRep>;
std::vector<RepStage> star_measure_run(const OMRep& f0, const std::vector<double>& points, int steps);

}  // namespace loewner
