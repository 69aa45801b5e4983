#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace diraclab {

// Truncated Taylor expansion f(x0 + e) = sum_j c[j] e^j, j <= kOrder.
// Arithmetic propagates exact derivatives through closed-form expressions,
// which is how profiles, cutoffs and metric components are differentiated.
class Jet {
 public:
  static constexpr int kOrder = 7;
  using Coeffs = std::array<double, kOrder + 1>;

  constexpr Jet() : c_{} {}
  constexpr Jet(double value) : c_{} { c_[0] = value; }  // NOLINT: implicit constant

  static constexpr Jet variable(double x0) {
    Jet j(x0);
    j.c_[1] = 1.0;
    return j;
  }

  constexpr double value() const { return c_[0]; }
  constexpr double coeff(int j) const { return c_[static_cast<std::size_t>(j)]; }
  constexpr double& coeff(int j) { return c_[static_cast<std::size_t>(j)]; }

  // j-th derivative at the expansion point.
  double derivative(int j) const {
    double f = 1.0;
    for (int i = 2; i <= j; ++i) f *= i;
    return c_[static_cast<std::size_t>(j)] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i <= kOrder; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i <= kOrder; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int n = 0; n <= kOrder; ++n) {
      double s = 0.0;
      for (int k = 0; k <= n; ++k) s += a.c_[k] * b.c_[n - k];
      r.c_[n] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int n = 0; n <= kOrder; ++n) {
      double s = a.c_[n];
      for (int k = 1; k <= n; ++k) s -= b.c_[k] * r.c_[n - k];
      r.c_[n] = s / b.c_[0];
    }
    return r;
  }
  friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
  friend Jet operator/(double s, const Jet& b) { return Jet(s) / b; }

  friend Jet exp(const Jet& a) {
    Jet r;
    r.c_[0] = std::exp(a.c_[0]);
    for (int n = 1; n <= kOrder; ++n) {
      double s = 0.0;
      for (int k = 1; k <= n; ++k) s += k * a.c_[k] * r.c_[n - k];
      r.c_[n] = s / n;
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    Jet r;
    r.c_[0] = std::log(a.c_[0]);
    for (int n = 1; n <= kOrder; ++n) {
      double s = a.c_[n];
      for (int k = 1; k < n; ++k) s -= (static_cast<double>(k) / n) * r.c_[k] * a.c_[n - k];
      r.c_[n] = s / a.c_[0];
    }
    return r;
  }

  // a^p for a.value() > 0.
  friend Jet pow(const Jet& a, double p) {
    Jet r;
    r.c_[0] = std::pow(a.c_[0], p);
    for (int n = 1; n <= kOrder; ++n) {
      double s = 0.0;
      for (int k = 1; k <= n; ++k) s += ((p + 1.0) * k - n) * a.c_[k] * r.c_[n - k];
      r.c_[n] = s / (n * a.c_[0]);
    }
    return r;
  }

  friend Jet sqrt(const Jet& a) { return pow(a, 0.5); }

 private:
  Coeffs c_;
};

}  // namespace diraclab
