#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "loewner/funexpr.hpp"
#include "loewner/matcalc.hpp"

namespace loewner {

enum class Property { OM, OC, SOC, HalfPlane, LoewnerOrderN };
enum class Verdict { pass, fail, inconclusive };

std::string to_string(Property p);
std::string to_string(Verdict v);
Property property_from_string(const std::string& s);
Verdict verdict_from_string(const std::string& s);

/// Sample grid for the upper half-plane test. Re z spans the clipped domain
/// unless re_lo/re_hi are given; Im z is log-spaced.
struct HalfPlaneGrid {
  std::optional<double> re_lo;
  std::optional<double> re_hi;
  int n_re = 50;
  double im_lo = 1e-3;
  double im_hi = 10.0;
  int n_im = 50;
  std::vector<std::complex<double>> extra;
  double threshold = -1e-10;
};

struct CertifyConfig {
  int trials = 300;
  std::vector<int> dims = {2, 3, 4, 5, 6, 7, 8};
  double tolerance = kPsdTolerance;
  std::uint64_t seed = 0;
  int t_samples = 8;  // random t per Jensen trial, in addition to t = 1/2
  int loewner_sets = 64;
  int loewner_min = 2;
  int loewner_max = 8;
  SamplingOptions sampling;
  HalfPlaneGrid halfplane;
  unsigned threads = 1;

  void validate() const;
};

/// Re-checkable counterexample. `criterion` names the violated inequality:
/// monotone, jensen, davis, compression, loewner or halfplane.
struct Witness {
  std::string criterion;
  std::optional<HermitianMatrix> h1;
  std::optional<HermitianMatrix> h2;
  std::optional<HermitianMatrix> h;
  std::optional<Projection> p;
  std::optional<double> t;
  std::vector<double> nodes;
  std::optional<std::complex<double>> z;
  double min_eig = 0.0;    // minimum Im f(z) for the half-plane test
  double threshold = 0.0;  // absolute rejection level used
};

struct Certificate {
  Property property = Property::OM;
  Verdict verdict = Verdict::inconclusive;
  int trials = 0;
  double tolerance = kPsdTolerance;
  std::uint64_t seed = 0;
  std::optional<Witness> witness;
  std::string diagnostic;
  std::vector<Certificate> sub;
};

/// Smallest eigenvalue of the matrix an inequality asserts to be PSD, and
/// the operand norm its tolerance scales with.
struct Gap {
  double min_eig;
  double scale;
};

/// f(h2) - f(h1).
Gap monotone_gap(const FunctionExpr& f, const HermitianMatrix& h1, const HermitianMatrix& h2);
/// t f(h1) + (1-t) f(h2) - f(t h1 + (1-t) h2).
Gap jensen_gap(const FunctionExpr& f, const HermitianMatrix& h1, const HermitianMatrix& h2, double t);
/// Corner of f(h) minus f(corner of h).
Gap davis_gap(const FunctionExpr& f, const HermitianMatrix& h, const Projection& p);
/// f(h) minus the re-embedded f(corner of h).
Gap strong_gap(const FunctionExpr& f, const HermitianMatrix& h, const Projection& p);

Certificate check_monotone(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg);
Certificate check_convex(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg);
Certificate check_strong(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg);

struct LoewnerMatrix {
  Eigen::MatrixXd matrix;
  double min_eig;
};

/// Divided-difference matrix with derivatives on the diagonal.
LoewnerMatrix check_loewner_order_n(const FunctionExpr& f, const std::vector<double>& nodes);
/// Random node sets of sizes loewner_min..loewner_max inside the interval
/// shrunk by 1% at each end.
Certificate check_loewner_sets(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg);
Certificate check_halfplane(const FunctionExpr& f, const HalfPlaneGrid& grid = {}, double window = 20.0);

struct Classification {
  Certificate om;
  Certificate oc;
  Certificate soc;
  Certificate halfplane;
  Certificate loewner;
  std::vector<std::string> inconsistencies;
};

Classification classify_all(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg);

/// Recomputes the violated quantity recorded in a witness.
double replay_witness(const FunctionExpr& f, const Witness& w);

}  // namespace loewner
