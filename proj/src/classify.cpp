#include "loewner/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "loewner/error.hpp"

namespace loewner {

std::string to_string(Property p) {
  switch (p) {
    case Property::OM: return "OM";
    case Property::OC: return "OC";
    case Property::SOC: return "SOC";
    case Property::HalfPlane: return "HalfPlane";
    case Property::LoewnerOrderN: return "LoewnerOrderN";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Property property_from_string(const std::string& s) {
  for (Property p : {Property::OM, Property::OC, Property::SOC, Property::HalfPlane, Property::LoewnerOrderN})
    if (to_string(p) == s) return p;
  fail(ErrorKind::ParseError, "unknown property '" + s + "'");
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::inconclusive})
    if (to_string(v) == s) return v;
  fail(ErrorKind::ParseError, "unknown verdict '" + s + "'");
}

void CertifyConfig::validate() const {
  if (trials < 1) fail(ErrorKind::InvalidArgument, "trials must be >= 1");
  if (dims.empty()) fail(ErrorKind::InvalidArgument, "dims must be nonempty");
  for (int d : dims)
    if (d < 1 || d > 16) fail(ErrorKind::InvalidArgument, "dimensions must lie in [1, 16]");
  if (!(tolerance > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (loewner_min < 1 || loewner_max < loewner_min) fail(ErrorKind::InvalidArgument, "bad Loewner node-set sizes");
}

// ---- inequality gaps ----

Gap monotone_gap(const FunctionExpr& f, const HermitianMatrix& h1, const HermitianMatrix& h2) {
  const HermitianMatrix f1 = apply_fn(f, h1);
  const HermitianMatrix f2 = apply_fn(f, h2);
  return {psd_min_eig(f2 - f1), std::max(f1.norm(), f2.norm())};
}

Gap jensen_gap(const FunctionExpr& f, const HermitianMatrix& h1, const HermitianMatrix& h2, double t) {
  const HermitianMatrix f1 = apply_fn(f, h1);
  const HermitianMatrix f2 = apply_fn(f, h2);
  const HermitianMatrix fm = apply_fn(f, t * h1 + (1.0 - t) * h2);
  return {psd_min_eig(t * f1 + (1.0 - t) * f2 - fm), std::max({f1.norm(), f2.norm(), fm.norm()})};
}

Gap davis_gap(const FunctionExpr& f, const HermitianMatrix& h, const Projection& p) {
  const HermitianMatrix fh = apply_fn(f, h);
  const HermitianMatrix fc = apply_fn(f, compress(h, p));
  return {psd_min_eig(compress(fh, p) - fc), std::max(fh.norm(), fc.norm())};
}

Gap strong_gap(const FunctionExpr& f, const HermitianMatrix& h, const Projection& p) {
  const HermitianMatrix fh = apply_fn(f, h);
  const HermitianMatrix fc = apply_fn(f, compress(h, p));
  return {psd_min_eig(fh - embed(fc, p)), std::max(fh.norm(), fc.norm())};
}

namespace {

struct TrialOutcome {
  enum class Kind { ok, fail, error } kind = Kind::ok;
  std::optional<Witness> witness;
  std::string message;
};

using TrialFn = std::function<TrialOutcome(int)>;

TrialOutcome guarded(const TrialFn& fn, int index) {
  try {
    return fn(index);
  } catch (const Error& e) {
    return {TrialOutcome::Kind::error, std::nullopt, e.what()};
  }
}

/// Runs trials in index order (or in parallel); the lowest-index non-ok
/// outcome wins regardless of scheduling.
std::pair<int, TrialOutcome> first_event(int trials, unsigned threads, const TrialFn& fn) {
  if (threads <= 1) {
    for (int i = 0; i < trials; ++i) {
      TrialOutcome r = guarded(fn, i);
      if (r.kind != TrialOutcome::Kind::ok) return {i, std::move(r)};
    }
    return {trials, {}};
  }
  std::atomic<int> next{0};
  std::atomic<int> stop_at{trials};
  std::mutex mu;
  std::map<int, TrialOutcome> events;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= stop_at.load()) return;
      TrialOutcome r = guarded(fn, i);
      if (r.kind == TrialOutcome::Kind::ok) continue;
      std::lock_guard<std::mutex> lock(mu);
      events.emplace(i, std::move(r));
      int cur = stop_at.load();
      while (i < cur && !stop_at.compare_exchange_weak(cur, i)) {
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (events.empty()) return {trials, {}};
  return {events.begin()->first, std::move(events.begin()->second)};
}

Certificate run_property(Property prop, const CertifyConfig& cfg, const TrialFn& fn) {
  cfg.validate();
  auto [index, outcome] = first_event(cfg.trials, cfg.threads, fn);
  Certificate cert;
  cert.property = prop;
  cert.tolerance = cfg.tolerance;
  cert.seed = cfg.seed;
  switch (outcome.kind) {
    case TrialOutcome::Kind::ok:
      cert.verdict = Verdict::pass;
      cert.trials = cfg.trials;
      break;
    case TrialOutcome::Kind::fail:
      cert.verdict = Verdict::fail;
      cert.trials = index + 1;
      cert.witness = std::move(outcome.witness);
      cert.diagnostic = "violation at trial " + std::to_string(index);
      break;
    case TrialOutcome::Kind::error:
      cert.verdict = Verdict::inconclusive;
      cert.trials = index + 1;
      cert.diagnostic = "evaluation error at trial " + std::to_string(index) + ": " + outcome.message;
      break;
  }
  return cert;
}

void require_inside(const FunctionExpr& f, const Interval& interval) {
  if (!f.domain().contains(interval))
    fail(ErrorKind::InvalidArgument,
         "test interval " + interval.describe() + " is not inside the domain " + f.domain().describe());
}

int trial_dim(const CertifyConfig& cfg, int index) {
  return cfg.dims[static_cast<std::size_t>(index) % cfg.dims.size()];
}

TrialOutcome failed(Witness w) { return {TrialOutcome::Kind::fail, std::move(w), {}}; }

}  // namespace

Certificate check_monotone(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg) {
  require_inside(f, interval);
  const Rng master(cfg.seed);
  return run_property(Property::OM, cfg, [&](int i) -> TrialOutcome {
    Rng rng = master.child(static_cast<std::uint64_t>(i));
    auto [h1, h2] = rand_ordered_pair(interval, trial_dim(cfg, i), rng, cfg.sampling);
    const Gap g = monotone_gap(f, h1, h2);
    const double thr = cfg.tolerance * (1.0 + g.scale);
    if (g.min_eig >= -thr) return {};
    Witness w;
    w.criterion = "monotone";
    w.h1 = h1;
    w.h2 = h2;
    w.min_eig = g.min_eig;
    w.threshold = thr;
    return failed(std::move(w));
  });
}

Certificate check_convex(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg) {
  require_inside(f, interval);
  const Rng master(cfg.seed);
  return run_property(Property::OC, cfg, [&](int i) -> TrialOutcome {
    Rng rng = master.child(static_cast<std::uint64_t>(i));
    const int n = trial_dim(cfg, i);
    const HermitianMatrix h1 = rand_hermitian(interval, n, rng, cfg.sampling);
    const HermitianMatrix h2 = rand_hermitian(interval, n, rng, cfg.sampling);
    std::vector<double> ts{0.5};
    for (int k = 0; k < cfg.t_samples; ++k) ts.push_back(rng.uniform(0.0, 1.0));
    for (double t : ts) {
      const Gap g = jensen_gap(f, h1, h2, t);
      const double thr = cfg.tolerance * (1.0 + g.scale);
      if (g.min_eig < -thr) {
        Witness w;
        w.criterion = "jensen";
        w.h1 = h1;
        w.h2 = h2;
        w.t = t;
        w.min_eig = g.min_eig;
        w.threshold = thr;
        return failed(std::move(w));
      }
    }
    if (n >= 2) {
      const HermitianMatrix h = rand_hermitian(interval, n, rng, cfg.sampling);
      const Projection p = rand_projection(n, 1 + static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n - 1))), rng);
      const Gap g = davis_gap(f, h, p);
      const double thr = cfg.tolerance * (1.0 + g.scale);
      if (g.min_eig < -thr) {
        Witness w;
        w.criterion = "davis";
        w.h = h;
        w.p = p;
        w.min_eig = g.min_eig;
        w.threshold = thr;
        return failed(std::move(w));
      }
    }
    return {};
  });
}

Certificate check_strong(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg) {
  require_inside(f, interval);
  const Rng master(cfg.seed);
  Certificate cert = run_property(Property::SOC, cfg, [&](int i) -> TrialOutcome {
    Rng rng = master.child(static_cast<std::uint64_t>(i));
    const int n = trial_dim(cfg, i);
    if (n < 2) return {};
    const HermitianMatrix h = rand_hermitian(interval, n, rng, cfg.sampling);
    const Projection p = rand_projection(n, 1 + static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n - 1))), rng);
    const Gap g = strong_gap(f, h, p);
    const double thr = cfg.tolerance * (1.0 + g.scale);
    if (g.min_eig >= -thr) return {};
    Witness w;
    w.criterion = "compression";
    w.h = h;
    w.p = p;
    w.min_eig = g.min_eig;
    w.threshold = thr;
    return failed(std::move(w));
  });
  if (cert.verdict == Verdict::inconclusive) return cert;

  // Cross-check through the negative reciprocal when f is strictly positive.
  if (!sign_scan(f, interval, +1).ok) return cert;
  Certificate cross = check_convex(FunctionExpr::neg_recip(f), interval, cfg);
  const bool disagree = cross.verdict != Verdict::inconclusive && cross.verdict != cert.verdict;
  cert.sub.push_back(std::move(cross));
  if (disagree) {
    cert.diagnostic = "compression test gave " + to_string(cert.verdict) +
                      " but convexity of -1/f gave " + to_string(cert.sub.back().verdict);
    cert.verdict = Verdict::inconclusive;
  }
  return cert;
}

LoewnerMatrix check_loewner_order_n(const FunctionExpr& f, const std::vector<double>& nodes) {
  std::vector<double> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorKind::DuplicateNodes, "Loewner nodes must be distinct");
  const auto n = static_cast<Eigen::Index>(nodes.size());
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!f.domain().interior(nodes[i]))
      fail(ErrorKind::DomainError, "Loewner node " + std::to_string(nodes[i]) + " is not interior");
    values[i] = eval_real(f, nodes[i]);
  }
  Eigen::MatrixXd l(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    l(i, i) = eval_deriv(f, nodes[si]);
    for (Eigen::Index j = 0; j < i; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      l(i, j) = l(j, i) = (values[si] - values[sj]) / (nodes[si] - nodes[sj]);
    }
  }
  const double min_eig = n == 0 ? 0.0 : Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(l, Eigen::EigenvaluesOnly).eigenvalues()(0);
  return {l, min_eig};
}

Certificate check_loewner_sets(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg) {
  require_inside(f, interval);
  const Interval window = interval.clipped(cfg.sampling.window).shrunk(0.01);
  const Rng master(splitmix64(cfg.seed) ^ 0x4C4F45574E4552ULL);
  CertifyConfig local = cfg;
  local.trials = cfg.loewner_sets;
  const int span = cfg.loewner_max - cfg.loewner_min + 1;
  return run_property(Property::LoewnerOrderN, local, [&](int i) -> TrialOutcome {
    Rng rng = master.child(static_cast<std::uint64_t>(i));
    const int size = cfg.loewner_min + i % span;
    std::vector<double> nodes(static_cast<std::size_t>(size));
    for (double& x : nodes) x = rng.uniform(window.lo(), window.hi());
    const LoewnerMatrix lm = check_loewner_order_n(f, nodes);
    const double scale = lm.matrix.cwiseAbs().maxCoeff();
    const double thr = cfg.tolerance * (1.0 + scale * static_cast<double>(size));
    if (lm.min_eig >= -thr) return {};
    Witness w;
    w.criterion = "loewner";
    w.nodes = nodes;
    w.min_eig = lm.min_eig;
    w.threshold = thr;
    return failed(std::move(w));
  });
}

Certificate check_halfplane(const FunctionExpr& f, const HalfPlaneGrid& grid, double window) {
  Certificate cert;
  cert.property = Property::HalfPlane;
  cert.tolerance = -grid.threshold;
  const Interval w = f.domain().clipped(window);
  const double re_lo = grid.re_lo.value_or(w.lo());
  const double re_hi = grid.re_hi.value_or(w.hi());
  std::vector<std::complex<double>> points;
  for (int i = 0; i < grid.n_re; ++i) {
    const double re = grid.n_re == 1 ? re_lo : re_lo + (re_hi - re_lo) * i / (grid.n_re - 1);
    for (int j = 0; j < grid.n_im; ++j) {
      const double u = grid.n_im == 1 ? 0.0 : static_cast<double>(j) / (grid.n_im - 1);
      const double im = grid.im_lo * std::pow(grid.im_hi / grid.im_lo, u);
      points.emplace_back(re, im);
    }
  }
  points.insert(points.end(), grid.extra.begin(), grid.extra.end());
  double worst = kInf;
  std::complex<double> worst_z;
  try {
    for (const auto& z : points) {
      const double im = eval_complex(f, z).imag();
      if (std::isnan(im)) {
        cert.verdict = Verdict::inconclusive;
        cert.diagnostic = "NaN value in the half-plane";
        cert.trials = static_cast<int>(points.size());
        return cert;
      }
      if (im < worst) {
        worst = im;
        worst_z = z;
      }
    }
  } catch (const Error& e) {
    cert.verdict = Verdict::inconclusive;
    cert.diagnostic = e.what();
    return cert;
  }
  cert.trials = static_cast<int>(points.size());
  if (worst >= grid.threshold) {
    cert.verdict = Verdict::pass;
    cert.diagnostic = "minimum sampled Im f = " + std::to_string(worst);
    return cert;
  }
  cert.verdict = Verdict::fail;
  Witness wit;
  wit.criterion = "halfplane";
  wit.z = worst_z;
  wit.min_eig = worst;
  wit.threshold = -grid.threshold;
  cert.witness = wit;
  return cert;
}

Classification classify_all(const FunctionExpr& f, const Interval& interval, const CertifyConfig& cfg) {
  Classification c;
  c.om = check_monotone(f, interval, cfg);
  c.oc = check_convex(f, interval, cfg);
  c.soc = check_strong(f, interval, cfg);
  c.halfplane = check_halfplane(f, cfg.halfplane, cfg.sampling.window);
  c.loewner = check_loewner_sets(f, interval, cfg);
  if (c.soc.verdict == Verdict::pass && c.oc.verdict == Verdict::fail)
    c.inconsistencies.push_back("strong operator convexity passed but operator convexity failed");
  if (c.om.verdict == Verdict::pass && c.loewner.verdict == Verdict::fail)
    c.inconsistencies.push_back("operator monotonicity passed but a Loewner matrix is not PSD");
  if (c.om.verdict == Verdict::pass && c.halfplane.verdict == Verdict::fail)
    c.inconsistencies.push_back("operator monotonicity passed but the half-plane test failed");
  return c;
}

double replay_witness(const FunctionExpr& f, const Witness& w) {
  auto need = [&](bool ok) {
    if (!ok) fail(ErrorKind::InvalidArgument, "witness for '" + w.criterion + "' is missing fields");
  };
  if (w.criterion == "monotone") {
    need(w.h1 && w.h2);
    return monotone_gap(f, *w.h1, *w.h2).min_eig;
  }
  if (w.criterion == "jensen") {
    need(w.h1 && w.h2 && w.t);
    return jensen_gap(f, *w.h1, *w.h2, *w.t).min_eig;
  }
  if (w.criterion == "davis") {
    need(w.h && w.p);
    return davis_gap(f, *w.h, *w.p).min_eig;
  }
  if (w.criterion == "compression") {
    need(w.h && w.p);
    return strong_gap(f, *w.h, *w.p).min_eig;
  }
  if (w.criterion == "loewner") {
    need(!w.nodes.empty());
    return check_loewner_order_n(f, w.nodes).min_eig;
  }
  if (w.criterion == "halfplane") {
    need(w.z.has_value());
    return eval_complex(f, *w.z).imag();
  }
  fail(ErrorKind::InvalidArgument, "unknown witness criterion '" + w.criterion + "'");
}

}  // namespace loewner
