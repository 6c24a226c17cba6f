#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace homckn {

using Complex = std::complex<double>;

/// Truncated Taylor series a(t) = sum_k c[k] t^k in one variable.
///
/// Fields and quasi-norms are written once against this type; seeding a
/// coordinate direction or a dilation orbit with t gives exact derivatives of
/// every order up to kMaxOrder. Coefficients above order() are always zero.
class Jet {
 public:
  static constexpr int kMaxOrder = 8;

  Jet() = default;
  Jet(double value) : order_(0) { c_[0] = value; }  // NOLINT: implicit on purpose
  Jet(Complex value) : order_(0) { c_[0] = value; }  // NOLINT

  /// value + t, truncated at `order`.
  static Jet variable(double value, int order) {
    Jet j(value);
    j.order_ = std::clamp(order, 0, kMaxOrder);
    if (j.order_ >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return order_; }
  const Complex& operator[](int k) const { return c_[k]; }
  Complex& operator[](int k) { return c_[k]; }
  Complex value() const { return c_[0]; }
  double real_value() const { return c_[0].real(); }

  /// k-th derivative at t = 0.
  Complex derivative(int k) const {
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return c_[k] * factorial;
  }

  Jet with_order(int order) const {
    Jet j;
    j.order_ = std::clamp(order, 0, kMaxOrder);
    for (int k = 0; k <= j.order_; ++k) j.c_[k] = c_[k];
    return j;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::max(order_, o.order_);
    for (int k = 0; k <= o.order_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::max(order_, o.order_);
    for (int k = 0; k <= o.order_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator-(const Jet& a) {
    Jet r = a;
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = -r.c_[k];
    return r;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.order_ = std::max(a.order_, b.order_);
    if (a.order_ == 0) {
      for (int k = 0; k <= b.order_; ++k) r.c_[k] = a.c_[0] * b.c_[k];
      return r;
    }
    if (b.order_ == 0) {
      for (int k = 0; k <= a.order_; ++k) r.c_[k] = a.c_[k] * b.c_[0];
      return r;
    }
    for (int k = 0; k <= r.order_; ++k) {
      Complex s = 0.0;
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    r.order_ = std::max(a.order_, b.order_);
    const Complex inv = 1.0 / b.c_[0];
    for (int k = 0; k <= r.order_; ++k) {
      Complex s = a.c_[k];
      for (int j = 1; j <= std::min(k, b.order_); ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s * inv;
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    Jet r;
    r.order_ = a.order_;
    r.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
      Complex s = 0.0;
      for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * a.c_[j] * r.c_[k - j];
      r.c_[k] = s / static_cast<double>(k);
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    Jet r;
    r.order_ = a.order_;
    r.c_[0] = std::log(a.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
      Complex s = a.c_[k];
      for (int j = 1; j < k; ++j) s -= static_cast<double>(j) / k * r.c_[j] * a.c_[k - j];
      r.c_[k] = s / a.c_[0];
    }
    return r;
  }

  /// a^s for a(0) != 0 (principal branch).
  friend Jet pow(const Jet& a, double s) {
    Jet r;
    r.order_ = a.order_;
    r.c_[0] = std::pow(a.c_[0], s);
    for (int k = 1; k <= r.order_; ++k) {
      Complex acc = 0.0;
      for (int j = 1; j <= k; ++j) acc += ((s + 1.0) * j - k) * a.c_[j] * r.c_[k - j];
      r.c_[k] = acc / (static_cast<double>(k) * a.c_[0]);
    }
    return r;
  }

  friend Jet sqrt(const Jet& a) { return pow(a, 0.5); }

  friend Jet ipow(const Jet& a, int n) {
    Jet r(1.0);
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
  }

  friend void sincos(const Jet& a, Jet& s, Jet& c) {
    s = Jet();
    c = Jet();
    s.order_ = c.order_ = a.order_;
    s.c_[0] = std::sin(a.c_[0]);
    c.c_[0] = std::cos(a.c_[0]);
    for (int k = 1; k <= a.order_; ++k) {
      Complex ss = 0.0, cc = 0.0;
      for (int j = 1; j <= k; ++j) {
        ss += static_cast<double>(j) * a.c_[j] * c.c_[k - j];
        cc -= static_cast<double>(j) * a.c_[j] * s.c_[k - j];
      }
      s.c_[k] = ss / static_cast<double>(k);
      c.c_[k] = cc / static_cast<double>(k);
    }
  }
  friend Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
  }
  friend Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
  }

  /// |a| for a real-valued series with a(0) != 0.
  friend Jet abs_real(const Jet& a) { return a.c_[0].real() < 0.0 ? -a : a; }

 private:
  int order_ = 0;
  std::array<Complex, kMaxOrder + 1> c_{};
};

// Scalar overloads with the same names so templated code can be written once.
inline double abs_real(double x) { return std::abs(x); }
inline double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}
inline double real_value(double x) { return x; }
inline double real_value(const Jet& x) { return x.real_value(); }

}  // namespace homckn
