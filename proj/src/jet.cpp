#include "loewner/jet.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/error.hpp"

namespace loewner {

Jet Jet::constant(double value, std::size_t size) {
  std::vector<double> c(size, 0.0);
  if (size > 0) c[0] = value;
  return Jet(std::move(c));
}

Jet Jet::variable(double x, std::size_t size) {
  std::vector<double> c(size, 0.0);
  if (size > 0) c[0] = x;
  if (size > 1) c[1] = 1.0;
  return Jet(std::move(c));
}

Jet Jet::divided_by_t() const {
  if (c_.empty()) return {};
  return Jet(std::vector<double>(c_.begin() + 1, c_.end()));
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator+=(double v) {
  if (!c_.empty()) c_[0] += v;
  return *this;
}

Jet& Jet::operator*=(double v) {
  for (double& x : c_) x *= v;
  return *this;
}

namespace {

std::size_t common(const Jet& a, const Jet& b) { return std::min(a.size(), b.size()); }

}  // namespace

Jet operator+(const Jet& a, const Jet& b) {
  std::vector<double> c(common(a, b));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return Jet(std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) {
  std::vector<double> c(common(a, b));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return Jet(std::move(c));
}

Jet operator*(const Jet& a, const Jet& b) {
  std::vector<double> c(common(a, b), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t j = 0; j <= k; ++j) c[k] += a[j] * b[k - j];
  return Jet(std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) {
  const std::size_t n = common(a, b);
  std::vector<double> q(n, 0.0);
  if (n == 0) return Jet(q);
  if (b[0] == 0.0) {
    q[0] = a[0] / b[0];
    return Jet(std::vector<double>(1, q[0]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    double s = a[k];
    for (std::size_t j = 1; j <= k; ++j) s -= b[j] * q[k - j];
    q[k] = s / b[0];
  }
  return Jet(std::move(q));
}

Jet operator+(const Jet& a, double b) {
  Jet r = a;
  r += b;
  return r;
}
Jet operator+(double a, const Jet& b) { return b + a; }
Jet operator-(const Jet& a, double b) { return a + (-b); }
Jet operator-(double a, const Jet& b) { return (-b) + a; }
Jet operator*(const Jet& a, double b) {
  Jet r = a;
  r *= b;
  return r;
}
Jet operator*(double a, const Jet& b) { return b * a; }
Jet operator/(const Jet& a, double b) { return a * (1.0 / b); }
Jet operator/(double a, const Jet& b) { return Jet::constant(a, b.size()) / b; }

Jet log(const Jet& a) {
  const std::size_t n = a.size();
  if (n == 0) return a;
  if (!(a[0] > 0.0)) fail(ErrorKind::BranchError, "log of non-positive jet");
  std::vector<double> l(n, 0.0);
  l[0] = std::log(a[0]);
  // a * l' = a'
  for (std::size_t k = 1; k < n; ++k) {
    double s = static_cast<double>(k) * a[k];
    for (std::size_t j = 1; j < k; ++j) s -= static_cast<double>(j) * l[j] * a[k - j];
    l[k] = s / (static_cast<double>(k) * a[0]);
  }
  return Jet(std::move(l));
}

Jet exp(const Jet& a) {
  const std::size_t n = a.size();
  if (n == 0) return a;
  std::vector<double> e(n, 0.0);
  e[0] = std::exp(a[0]);
  // e' = a' e
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = s / static_cast<double>(k);
  }
  return Jet(std::move(e));
}

Jet pow(const Jet& a, double alpha) {
  const std::size_t n = a.size();
  if (n == 0) return a;
  if (!(a[0] > 0.0)) fail(ErrorKind::BranchError, "non-integer power of non-positive base");
  std::vector<double> p(n, 0.0);
  p[0] = std::pow(a[0], alpha);
  // a p' = alpha a' p
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
      s += (alpha * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * p[k - j];
    p[k] = s / (static_cast<double>(k) * a[0]);
  }
  return Jet(std::move(p));
}

Jet ipow(const Jet& a, int n) {
  if (n < 0) return 1.0 / ipow(a, -n);
  Jet result = Jet::constant(1.0, a.size());
  Jet base = a;
  unsigned e = static_cast<unsigned>(n);
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

}  // namespace loewner
