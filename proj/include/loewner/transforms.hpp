#pragma once

#include <optional>
#include <vector>

#include "loewner/classify.hpp"
#include "loewner/funexpr.hpp"

namespace loewner {

/// (f(x) - f(x0)) / (x - x0). Throws OutsideClosure or NoFiniteLimit.
FunctionExpr diff_quotient(const FunctionExpr& f, double x0);

/// -1/f for a strictly positive f. Throws ZeroFunction when f vanishes on
/// the scan grid and NotPositive otherwise.
FunctionExpr neg_reciprocal(const FunctionExpr& f);

/// -1/f for a strictly negative f (the result is positive). Throws
/// ZeroFunction or NotNegative.
FunctionExpr neg_reciprocal_of_negative(const FunctionExpr& f);

/// f(x) (x - x0) + c.
FunctionExpr mul_linear(const FunctionExpr& f, double x0, double c);

/// Shift c making f(x)(x - x0) + c negative on `interval`. Throws Unbounded
/// for unbounded intervals, infinite endpoint limits, or a grid supremum that
/// moves by more than 10% under refinement.
double choose_shift(const FunctionExpr& f, double x0, const Interval& interval);

enum class ComposeMode { strong, convex, unchecked };

std::string to_string(ComposeMode m);
ComposeMode compose_mode_from_string(const std::string& s);

struct ComposeResult {
  FunctionExpr expr;
  ComposeMode mode;
  /// Hypothesis certificates: phi monotone, phi Loewner sets, f strong.
  std::vector<Certificate> hypotheses;
  /// Certificate of the promised class (absent in unchecked mode or when
  /// certification is switched off).
  std::optional<Certificate> promised;
  std::vector<std::string> notes;
};

/// phi o f with the hypotheses of the composition rule verified first.
/// Throws HypothesisViolated naming the failed clause.
ComposeResult compose_checked(const FunctionExpr& phi, const FunctionExpr& f, ComposeMode mode,
                              const CertifyConfig& cfg = {}, bool certify_result = true);

}  // namespace loewner
