#include <cmath>

#include "doctest.h"
#include "loewner/error.hpp"
#include "loewner/matcalc.hpp"

using namespace loewner;
using doctest::Approx;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix random_unitary(Rng& rng, Eigen::Index n) { return haar_unitary(n, rng); }

}  // namespace

TEST_CASE("Hermitian storage is exactly symmetric") {
  CMatrix m(2, 2);
  m << std::complex<double>(1, 0.1), std::complex<double>(2, 1), std::complex<double>(2, -1.0000001), 3;
  const HermitianMatrix h(m);
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK(h(0, 0).imag() == 0.0);
}

TEST_CASE("spectral decomposition reconstructs the matrix") {
  Rng rng(5);
  for (int n = 1; n <= 16; ++n) {
    const HermitianMatrix h = rand_hermitian(Interval::open(-3, 3), n, rng);
    const auto s = h.spectrum();
    const CMatrix back = s.vectors * s.values.cast<std::complex<double>>().asDiagonal() * s.vectors.adjoint();
    CHECK(max_abs(back - h.matrix()) <= 1e-12 * (1.0 + h.norm()) * n);
  }
}

TEST_CASE("apply_fn examples") {
  const HermitianMatrix h = HermitianMatrix::from_real({{2, 1}, {1, 2}});
  CHECK(max_abs(apply_fn(FunctionExpr::identity(), h).matrix() - h.matrix()) < 1e-14);
  const auto r = apply_fn(FunctionExpr::reciprocal(), HermitianMatrix::diagonal({1, 2}));
  CHECK(r(1, 1).real() == Approx(0.5));
  const auto s = apply_fn(FunctionExpr::power(0.5), h);
  const double d = (std::sqrt(3.0) + 1) / 2;
  const double o = (std::sqrt(3.0) - 1) / 2;
  CHECK(s(0, 0).real() == Approx(d).epsilon(1e-13));
  CHECK(s(0, 1).real() == Approx(o).epsilon(1e-13));
  CHECK_THROWS_AS(apply_fn(FunctionExpr::reciprocal(), HermitianMatrix::diagonal({-1, 2})), Error);
}

TEST_CASE("psd_min_eig examples") {
  CHECK(psd_min_eig(HermitianMatrix::identity(3)) == Approx(1.0));
  CHECK(psd_min_eig(HermitianMatrix::from_real({{2, 3}, {3, 4}})) == Approx(3 - std::sqrt(10.0)).epsilon(1e-13));
  CHECK(psd_min_eig(HermitianMatrix::zero(2)) == 0.0);
}

TEST_CASE("compress and embed") {
  const auto p = Projection::coordinate(2, {0});
  CHECK(compress(HermitianMatrix::diagonal({1, 2}), p)(0, 0).real() == 1.0);
  CHECK(compress(HermitianMatrix::from_real({{1, 0.9}, {0.9, 1}}), p)(0, 0).real() == 1.0);
  const auto e = embed(HermitianMatrix::diagonal({5}), p);
  CHECK(e(0, 0).real() == 5.0);
  CHECK(e(1, 1).real() == 0.0);
  Rng rng(9);
  const auto h = rand_hermitian(Interval::open(0, 1), 6, rng);
  const auto q = rand_projection(6, 3, rng);
  const auto ev = compress(h, q).spectrum().values;
  const auto hv = h.spectrum().values;
  CHECK(ev(0) >= hv(0) - 1e-12);
  CHECK(ev(2) <= hv(5) + 1e-12);
}

TEST_CASE("schur complement examples") {
  const auto p = Projection::coordinate(2, {0});
  CHECK(schur_complement(HermitianMatrix::from_real({{5, 2}, {2, 1}}), p)(0, 0).real() == Approx(1.0));
  CHECK(schur_complement(HermitianMatrix::from_real({{2, 3}, {3, 4}}), p)(0, 0).real() == Approx(-0.25));
  CHECK(schur_complement(HermitianMatrix::diagonal({7, 3}), p)(0, 0).real() == Approx(7.0));
  try {
    schur_complement(HermitianMatrix::from_real({{1, 0}, {0, 0}}), p);
    FAIL("expected SingularBlock");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularBlock);
  }
}

TEST_CASE("random generation") {
  Rng a(42);
  Rng b(42);
  CHECK(rand_hermitian(Interval::open(0, 1), 2, a).matrix() == rand_hermitian(Interval::open(0, 1), 2, b).matrix());
  Rng r7(7);
  const auto ev = rand_hermitian(Interval::open(0, 1), 4, r7).spectrum().values;
  CHECK(ev.minCoeff() > 0.0);
  CHECK(ev.maxCoeff() < 1.0);
  Rng narrow(1);
  const double eps = 1e-9;
  const auto one = rand_hermitian(Interval::closed(2, 2 + eps), 1, narrow);
  CHECK(one(0, 0).real() >= 2.0);
  CHECK(one(0, 0).real() <= 2.0 + eps);

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    auto [h1, h2] = rand_ordered_pair(Interval::open(0, 3), 2 + seed % 5, rng);
    CHECK(psd_min_eig(h2 - h1) >= -1e-14 * (1.0 + h2.norm()));
    const auto v1 = h1.spectrum().values;
    const auto v2 = h2.spectrum().values;
    CHECK(v1.minCoeff() > 0.0);
    CHECK(v2.maxCoeff() < 3.0);
  }

  Rng rp(3);
  const auto p = rand_projection(2, 1, rp).matrix().matrix();
  CHECK(max_abs(p * p - p) < 1e-12);
  const auto p5 = rand_projection(5, 2, rp).matrix().matrix();
  CHECK(std::abs(p5.trace() - 2.0) < 1e-12);
  CHECK(max_abs(rand_projection(3, 3, rp).matrix().matrix() - CMatrix::Identity(3, 3)) < 1e-15);
}

TEST_CASE("apply_fn is unitarily equivariant") {
  Rng rng(17);
  const auto f = FunctionExpr::catalog("log");
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 2 + t % 6;
    const auto h = rand_hermitian(Interval::open(0.5, 4), n, rng);
    const CMatrix u = random_unitary(rng, n);
    const HermitianMatrix rotated(u * h.matrix() * u.adjoint());
    const CMatrix lhs = apply_fn(f, rotated).matrix();
    const CMatrix rhs = u * apply_fn(f, h).matrix() * u.adjoint();
    CHECK(max_abs(lhs - rhs) < 1e-11);
  }
}

TEST_CASE("apply_fn on diagonal inputs is entrywise") {
  const auto f = FunctionExpr::power(0.5);
  const std::vector<double> d{0.25, 1.0, 2.0, 9.0};
  const auto out = apply_fn(f, HermitianMatrix::diagonal(d));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    CHECK(out(k, k).real() == eval_real(f, d[i]));
  }
}

TEST_CASE("Schur complement decides block positivity") {
  Rng rng(2024);
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    const Eigen::Index n = 2 + t % 7;
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n - 1)));
    const auto p = rand_projection(n, k, rng);
    // Shift a random Hermitian matrix so the complementary block is positive.
    auto m = rand_hermitian(Interval::open(-1, 1), n, rng);
    const HermitianMatrix c(p.complement_basis().adjoint() * m.matrix() * p.complement_basis());
    const double shift = std::max(0.0, -psd_min_eig(c)) + 0.05 + rng.uniform(0, 0.5);
    const HermitianMatrix qk(p.complement_basis() * p.complement_basis().adjoint());
    m = m + shift * qk + rng.uniform(-0.5, 0.5) * p.matrix();
    const double lk = psd_min_eig(m);
    const auto s = schur_complement(m, p);
    const double ls = psd_min_eig(s);
    if (std::abs(lk) < 1e-7 || std::abs(ls) < 1e-7) continue;
    ++checked;
    CHECK((lk >= -1e-9 * (1 + m.norm())) == (ls >= -1e-9 * (1 + s.norm())));
    if (std::abs(lk) > 1e-6) {
      const CMatrix inv = m.matrix().inverse();
      const CMatrix corner = p.basis().adjoint() * inv * p.basis();
      const CMatrix sinv = s.matrix().inverse();
      CHECK(max_abs(corner - sinv) <= 1e-9 * (1.0 + max_abs(sinv)));
    }
  }
  CHECK(checked > 400);
}
