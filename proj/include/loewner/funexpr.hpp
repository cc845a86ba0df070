#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "loewner/interval.hpp"
#include "loewner/measure_types.hpp"

namespace loewner {

enum class NodeKind {
  Constant,
  Affine,
  Power,
  Reciprocal,
  Catalog,
  DiffQuot,
  NegRecip,
  MulLinear,
  Compose,
  MeasureOM,
  MeasureOC,
  MeasureSOC,
  Quotient,
};

std::string to_string(NodeKind kind);

struct Node;

/// Immutable expression tree for a scalar function on an interval. Copies
/// share structure.
class FunctionExpr {
 public:
  using Params = std::map<std::string, double>;

  static FunctionExpr constant(double c, std::optional<Interval> on = {});
  static FunctionExpr affine(double a, double b, std::optional<Interval> on = {});
  static FunctionExpr identity(std::optional<Interval> on = {}) { return affine(1.0, 0.0, on); }
  /// x^alpha. Integer exponents >= 0 live on the whole line; other exponents
  /// on [0, inf) (alpha > 0) or (0, inf).
  static FunctionExpr power(double alpha, std::optional<Interval> on = {});
  static FunctionExpr reciprocal(std::optional<Interval> on = {});
  /// Fixed closed forms: pow_diff (x^alpha - (L-x)^alpha), log, xlogx, exp,
  /// softplus (real-only, numerical derivative).
  static FunctionExpr catalog(const std::string& name, Params params = {}, std::optional<Interval> on = {});
  /// (f(x) - f(x0)) / (x - x0). x0 must lie in the closure of the child
  /// domain; at an excluded endpoint the child needs a finite limit.
  static FunctionExpr diff_quot(FunctionExpr child, double x0);
  /// -1/f. `sign` is the sign the child is expected to have (+1 normally);
  /// the node records whether a grid scan confirmed it.
  static FunctionExpr neg_recip(FunctionExpr child, int sign = +1);
  /// f(x) (x - x0) + c.
  static FunctionExpr mul_linear(FunctionExpr child, double x0, double c);
  static FunctionExpr compose(FunctionExpr outer, FunctionExpr inner);
  static FunctionExpr measure_om(OMRep rep);
  static FunctionExpr measure_oc(OCRep rep);
  static FunctionExpr measure_soc(SOCRep rep);
  /// Ratio of polynomials with ascending coefficients.
  static FunctionExpr quotient(std::vector<double> num, std::vector<double> den, std::optional<Interval> on = {});

  NodeKind kind() const;
  const Interval& domain() const;
  const Node& node() const { return *node_; }
  /// Longest chain of nested difference quotients; each one may consume a
  /// Taylor order when evaluated at its center.
  std::size_t jet_depth() const;
  std::string describe() const;

 private:
  explicit FunctionExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ConstantNode {
  double c;
};
struct AffineNode {
  double a;
  double b;
};
struct PowerNode {
  double alpha;
};
struct ReciprocalNode {};

enum class CatalogId { PowDiff, Log, XLogX, Exp, Softplus };

struct CatalogNode {
  std::string name;
  CatalogId id;
  FunctionExpr::Params params;
};
struct DiffQuotNode {
  FunctionExpr child;
  double x0;
  double child_at_x0;  // value or finite one-sided limit
  double deriv_at_x0;  // NaN unless x0 is interior to the child domain
};
struct NegRecipNode {
  FunctionExpr child;
  int sign;
  bool valid;
  std::string scan_note;
};
struct MulLinearNode {
  FunctionExpr child;
  double x0;
  double c;
};
struct ComposeNode {
  FunctionExpr outer;
  FunctionExpr inner;
};
struct MeasureOMNode {
  OMRep rep;
};
struct MeasureOCNode {
  OCRep rep;
};
struct MeasureSOCNode {
  SOCRep rep;
};
struct QuotientNode {
  std::vector<double> num;
  std::vector<double> den;
};

struct Node {
  using Data = std::variant<ConstantNode, AffineNode, PowerNode, ReciprocalNode, CatalogNode, DiffQuotNode,
                            NegRecipNode, MulLinearNode, ComposeNode, MeasureOMNode, MeasureOCNode, MeasureSOCNode,
                            QuotientNode>;
  Data data;
  Interval domain;
  std::size_t depth = 0;
};

/// Value at x in the domain. DomainError outside it, BranchError for a
/// non-integer power of a negative number.
double eval_real(const FunctionExpr& f, double x);
/// Formula value at a point of the closure (endpoint limits). May be
/// infinite or NaN at singular endpoints.
double eval_closure(const FunctionExpr& f, double x);
/// Holomorphic extension at z with Im z > 0 (principal branches).
std::complex<double> eval_complex(const FunctionExpr& f, std::complex<double> z);
/// f'(x) at an interior point.
double eval_deriv(const FunctionExpr& f, double x);
/// Taylor coefficients f(x), f'(x), f''(x)/2, ... up to `order`.
std::vector<double> taylor(const FunctionExpr& f, double x, std::size_t order);
Interval domain_of(const FunctionExpr& f);

/// Finite one-sided limit of f at a point of the closure, checked along five
/// approach points. Throws NoFiniteLimit.
double finite_limit(const FunctionExpr& f, double x0);

struct SignScan {
  bool ok = true;
  bool all_zero = true;
  double offending_x = 0.0;
  double offending_value = 0.0;
};

/// Checks f has strict sign `sign` on a 1001-point grid of `on` (clipped to
/// the domain) plus endpoint values; open endpoint limits may vanish.
SignScan sign_scan(const FunctionExpr& f, const Interval& on, int sign, std::size_t points = 1001);

struct RangeEstimate {
  double lo;
  double hi;
};
/// Grid range of f over `on`, including closure limits at finite endpoints.
RangeEstimate sample_range(const FunctionExpr& f, const Interval& on, std::size_t points = 1001);

}  // namespace loewner
