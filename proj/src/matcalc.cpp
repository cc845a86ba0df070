#include "loewner/matcalc.hpp"

#include <cmath>
#include <sstream>

#include "loewner/error.hpp"

namespace loewner {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidArgument, "Hermitian matrix must be square");
  const Eigen::Index n = m.rows();
  m_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m_(i, i) = std::complex<double>(m(i, i).real(), 0.0);
    for (Eigen::Index j = 0; j < i; ++j) {
      const std::complex<double> v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

HermitianMatrix HermitianMatrix::from_real(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) fail(ErrorKind::InvalidArgument, "matrix rows must be square");
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return HermitianMatrix(m);
}

HermitianMatrix::Spectrum HermitianMatrix::spectrum() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_);
  return {es.eigenvalues(), es.eigenvectors()};
}

double HermitianMatrix::norm() const {
  if (m_.size() == 0) return 0.0;
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<CMatrix>(m_, Eigen::EigenvaluesOnly).eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) { return HermitianMatrix(a.m_ + b.m_); }
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) { return HermitianMatrix(a.m_ - b.m_); }
HermitianMatrix operator*(double s, const HermitianMatrix& a) { return HermitianMatrix(s * a.m_); }

Projection::Projection(CMatrix basis) : basis_(std::move(basis)) {
  const Eigen::Index k = basis_.cols();
  if (k < 1 || k > basis_.rows()) fail(ErrorKind::InvalidArgument, "projection rank must be in [1, n]");
  const double err = (basis_.adjoint() * basis_ - CMatrix::Identity(k, k)).norm();
  if (err > 1e-12 * static_cast<double>(k) * 10.0)
    fail(ErrorKind::InvalidArgument, "projection basis columns are not orthonormal");
}

Projection Projection::coordinate(Eigen::Index n, const std::vector<Eigen::Index>& indices) {
  CMatrix v = CMatrix::Zero(n, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t c = 0; c < indices.size(); ++c) v(indices[c], static_cast<Eigen::Index>(c)) = 1.0;
  return Projection(v);
}

HermitianMatrix Projection::matrix() const { return HermitianMatrix(basis_ * basis_.adjoint()); }

CMatrix Projection::complement_basis() const {
  const Eigen::Index n = dim();
  const Eigen::Index k = rank();
  if (k == n) return CMatrix(n, 0);
  Eigen::HouseholderQR<CMatrix> qr(basis_);
  const CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  return q.rightCols(n - k);
}

HermitianMatrix apply_fn(const FunctionExpr& f, const HermitianMatrix& h) {
  const auto spec = h.spectrum();
  const Interval& d = f.domain();
  const double slack = 1e-12 * (1.0 + std::max(std::abs(spec.values(0)), std::abs(spec.values(spec.values.size() - 1))));
  Eigen::VectorXd fv(spec.values.size());
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    double lam = spec.values(i);
    if (!d.contains(lam)) {
      if (d.lo_closed() && lam < d.lo() && d.lo() - lam <= slack) {
        lam = d.lo();
      } else if (d.hi_closed() && lam > d.hi() && lam - d.hi() <= slack) {
        lam = d.hi();
      } else {
        std::ostringstream os;
        os.precision(17);
        os << "eigenvalue " << lam << " outside " << d.describe();
        fail(ErrorKind::SpectrumOutsideDomain, os.str());
      }
    }
    fv(i) = eval_real(f, lam);
  }
  return HermitianMatrix(spec.vectors * fv.cast<std::complex<double>>().asDiagonal() * spec.vectors.adjoint());
}

double psd_min_eig(const HermitianMatrix& m) {
  if (m.dim() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<CMatrix>(m.matrix(), Eigen::EigenvaluesOnly).eigenvalues()(0);
}

HermitianMatrix compress(const HermitianMatrix& h, const Projection& p) {
  return HermitianMatrix(p.basis().adjoint() * h.matrix() * p.basis());
}

HermitianMatrix embed(const HermitianMatrix& m, const Projection& p) {
  return HermitianMatrix(p.basis() * m.matrix() * p.basis().adjoint());
}

HermitianMatrix schur_complement(const HermitianMatrix& k, const Projection& p) {
  const CMatrix& v = p.basis();
  const CMatrix w = p.complement_basis();
  const CMatrix a = v.adjoint() * k.matrix() * v;
  if (w.cols() == 0) return HermitianMatrix(a);
  const CMatrix b = w.adjoint() * k.matrix() * v;
  const HermitianMatrix c(w.adjoint() * k.matrix() * w);
  if (!(psd_min_eig(c) > 1e-10 * (1.0 + k.norm())))
    fail(ErrorKind::SingularBlock, "complementary block is not positive definite");
  Eigen::LLT<CMatrix> llt(c.matrix());
  return HermitianMatrix(a - b.adjoint() * llt.solve(b));
}

CMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  CMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = std::complex<double>(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Interval sampling_range(const Interval& interval, const SamplingOptions& opts) {
  const Interval b = interval.clipped(opts.window);
  const double margin = opts.open_margin * b.width();
  const bool lo_open = !b.lo_closed();
  const bool hi_open = !b.hi_closed();
  return Interval::closed(lo_open ? b.lo() + margin : b.lo(), hi_open ? b.hi() - margin : b.hi());
}

HermitianMatrix rand_hermitian(const Interval& interval, Eigen::Index n, Rng& rng, const SamplingOptions& opts) {
  const Interval s = sampling_range(interval, opts);
  Eigen::VectorXd lam(n);
  for (Eigen::Index i = 0; i < n; ++i) lam(i) = rng.uniform(s.lo(), s.hi());
  const CMatrix u = haar_unitary(n, rng);
  return HermitianMatrix(u * lam.cast<std::complex<double>>().asDiagonal() * u.adjoint());
}

std::pair<HermitianMatrix, HermitianMatrix> rand_ordered_pair(const Interval& interval, Eigen::Index n, Rng& rng,
                                                              const SamplingOptions& opts) {
  const Interval s = sampling_range(interval, opts);
  const HermitianMatrix h2 = rand_hermitian(interval, n, rng, opts);
  Eigen::VectorXcd g(n);
  for (Eigen::Index i = 0; i < n; ++i) g(i) = std::complex<double>(rng.normal(), rng.normal());
  g.normalize();
  const HermitianMatrix bump(g * g.adjoint());
  double cap = s.width();
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double scale = rng.uniform(0.0, cap);
    const HermitianMatrix h1 = h2 - scale * bump;
    if (psd_min_eig(h1) >= s.lo()) return {h1, h2};
    cap *= 0.5;
  }
  fail(ErrorKind::RetryExhausted, "could not place an ordered pair inside " + interval.describe());
}

Projection rand_projection(Eigen::Index n, Eigen::Index rank, Rng& rng) {
  if (rank < 1 || rank > n) fail(ErrorKind::InvalidArgument, "projection rank must be in [1, n]");
  if (rank == n) return Projection(CMatrix::Identity(n, n));
  return Projection(haar_unitary(n, rng).leftCols(rank));
}

}  // namespace loewner
