#pragma once

#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "loewner/funexpr.hpp"
#include "loewner/interval.hpp"
#include "loewner/random.hpp"

namespace loewner {

using CMatrix = Eigen::MatrixXcd;

/// Finite complex Hermitian matrix. Construction symmetrizes so that stored
/// entries satisfy m(i,j) == conj(m(j,i)) exactly.
class HermitianMatrix {
 public:
  struct Spectrum {
    Eigen::VectorXd values;  // ascending
    CMatrix vectors;
  };

  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix from_real(std::initializer_list<std::initializer_list<double>> rows);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  static HermitianMatrix identity(Eigen::Index n) { return HermitianMatrix(CMatrix::Identity(n, n)); }
  static HermitianMatrix zero(Eigen::Index n) { return HermitianMatrix(CMatrix::Zero(n, n)); }

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  Spectrum spectrum() const;
  /// Spectral norm.
  double norm() const;

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  CMatrix m_;
};

/// Orthogonal projection given by an orthonormal basis of its range.
class Projection {
 public:
  Projection() = default;
  /// Throws InvalidArgument unless the columns are orthonormal to 1e-12.
  explicit Projection(CMatrix basis);
  /// Span of the listed coordinate vectors.
  static Projection coordinate(Eigen::Index n, const std::vector<Eigen::Index>& indices);

  Eigen::Index dim() const { return basis_.rows(); }
  Eigen::Index rank() const { return basis_.cols(); }
  const CMatrix& basis() const { return basis_; }
  HermitianMatrix matrix() const;
  /// Orthonormal basis of the orthogonal complement of the range.
  CMatrix complement_basis() const;

 private:
  CMatrix basis_;
};

/// U diag(f(lambda)) U*. Eigenvalues within rounding of a closed endpoint
/// are clamped onto it; anything else outside the domain throws
/// SpectrumOutsideDomain.
HermitianMatrix apply_fn(const FunctionExpr& f, const HermitianMatrix& h);

double psd_min_eig(const HermitianMatrix& m);

inline constexpr double kPsdTolerance = 1e-9;

/// Relative PSD acceptance: min_eig >= -tol (1 + scale).
inline bool psd_accept(double min_eig, double scale, double tol = kPsdTolerance) {
  return min_eig >= -tol * (1.0 + scale);
}

/// Corner V* h V of h on the range of p.
HermitianMatrix compress(const HermitianMatrix& h, const Projection& p);
/// Re-inflates a rank(p) x rank(p) matrix to V m V*.
HermitianMatrix embed(const HermitianMatrix& m, const Projection& p);

/// a - b* c^{-1} b on the range of p, with a, b, c the blocks of k relative to
/// p. Throws SingularBlock unless c is positive definite with margin
/// 1e-10 (1 + |k|).
HermitianMatrix schur_complement(const HermitianMatrix& k, const Projection& p);

/// Haar-distributed unitary from a QR of complex Gaussians with phase fix.
CMatrix haar_unitary(Eigen::Index n, Rng& rng);

struct SamplingOptions {
  double window = 20.0;        // length used to clip unbounded intervals
  double open_margin = 1e-6;   // relative shrink at open endpoints
};

/// Sampling range on the interval actually used by the generators.
Interval sampling_range(const Interval& interval, const SamplingOptions& opts = {});

HermitianMatrix rand_hermitian(const Interval& interval, Eigen::Index n, Rng& rng, const SamplingOptions& opts = {});

/// (h1, h2) with h2 - h1 = s g g* >= 0 and both spectra inside the interval.
std::pair<HermitianMatrix, HermitianMatrix> rand_ordered_pair(const Interval& interval, Eigen::Index n, Rng& rng,
                                                              const SamplingOptions& opts = {});

Projection rand_projection(Eigen::Index n, Eigen::Index rank, Rng& rng);

}  // namespace loewner
