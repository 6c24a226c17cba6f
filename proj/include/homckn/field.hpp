#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homckn/jet.hpp"
#include "homckn/quasi_norm.hpp"

namespace homckn {

/// Closed radial interval [inner, outer] in the active quasi-norm, 0 < inner < outer.
struct Annulus {
  double inner = 0.0;
  double outer = 0.0;

  bool contains(double r) const { return r >= inner && r <= outer; }
};

using ValueFn = std::function<Complex(std::span<const double>)>;
using JetFn = std::function<Jet(std::span<const Jet>)>;
using ProfileFn = std::function<Jet(const Jet&)>;

/// g(r) for a quasi-radial field f(x) = g(|x|).
///
/// `knots` are sorted radii where g changes character (support edges, ends of
/// cutoff transitions); radial quadrature puts panel breaks there.
struct RadialProfile {
  ProfileFn eval;
  std::vector<double> knots;

  Complex operator()(double r) const { return eval(Jet(r)).value(); }
  /// Taylor jet of g at r; derivative(k) is g^(k)(r).
  Jet jet(double r, int order) const { return eval(Jet::variable(r, order)); }
};

/// Complex test function compactly supported in an annulus away from 0.
///
/// A field built from a JetFn carries exact partial derivatives of every order
/// (seed a direction or a dilation orbit with the jet variable). A field built
/// from a ValueFn has values only, and analytic-mode operations on it raise
/// missing-derivative.
class ScalarField {
 public:
  ScalarField(std::string id, ValueFn value, Annulus support);
  ScalarField(std::string id, JetFn jet, Annulus support);

  /// f(x) = g(|x|) on the given norm; support taken from the profile knots.
  static ScalarField quasi_radial(std::string id, const QuasiNormSpec& norm, RadialProfile profile);

  const std::string& id() const { return id_; }
  const Annulus& support() const { return support_; }
  bool has_analytic_derivatives() const { return static_cast<bool>(jet_); }
  bool is_quasi_radial() const { return profile_.has_value(); }
  const RadialProfile* profile() const { return profile_ ? &*profile_ : nullptr; }

  Complex operator()(std::span<const double> x) const;
  /// Throws missing-derivative when the field carries no jet evaluator.
  Jet jet(std::span<const Jet> x) const;
  /// d_i f(x) for every i.
  std::vector<Complex> gradient(std::span<const double> x) const;

  /// Same function with values scaled by `factor`.
  ScalarField scaled(Complex factor, std::string id) const;

  friend ScalarField compose_dilation(const ScalarField& f, const GroupSpec& group, double lambda);

 private:
  std::string id_;
  ValueFn value_;
  JetFn jet_;
  Annulus support_;
  std::optional<RadialProfile> profile_;
};

/// f o D_l, with support and profile rescaled accordingly.
ScalarField compose_dilation(const ScalarField& f, const GroupSpec& group, double lambda);

/// The zero field on the given annulus.
ScalarField zero_field(const Annulus& support);

// Smooth building blocks. All of them are C-infinity.

/// 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
template <class T>
T smooth_step(const T& t);

/// exp(-(ln r - mu)^2 / (2 s^2)) * window, evaluated on a jet.
Jet log_gaussian(const Jet& r, double mu, double s);

/// Window that rises from 0 at `zero_in` to 1 at `one_in` and falls from 1 at
/// `one_out` to 0 at `zero_out`, with transitions linear in ln r.
struct LogWindow {
  double zero_in, one_in, one_out, zero_out;

  Jet operator()(const Jet& r) const;
  std::vector<double> knots() const { return {zero_in, one_in, one_out, zero_out}; }
};

/// e^(-r^2/2) on [inner, outer] with smooth cutoffs spanning a factor of 2 on
/// each side; the cutoff contributions are below 1e-6 relative for
/// inner <= 1e-8 and outer >= 8 in three dimensions.
RadialProfile truncated_gaussian_profile(double inner = 1e-8, double outer = 10.0);

}  // namespace homckn

namespace homckn {

namespace detail {
inline double exp_fn(double x) { return std::exp(x); }
inline Jet exp_fn(const Jet& x) { return exp(x); }
}  // namespace detail

template <class T>
T smooth_step(const T& t) {
  const double t0 = real_value(t);
  if (t0 <= 0.0) return T(0.0);
  if (t0 >= 1.0) return T(1.0);
  const T a = detail::exp_fn(T(-1.0) / t);
  const T b = detail::exp_fn(T(-1.0) / (T(1.0) - t));
  return a / (a + b);
}

}  // namespace homckn
