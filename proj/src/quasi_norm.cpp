#include "homckn/quasi_norm.hpp"

#include <algorithm>
#include <cmath>

#include "homckn/error.hpp"
#include "homckn/random.hpp"

namespace homckn {

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

namespace {

bool is_even_integer(double e) {
  const double r = std::round(e);
  return std::abs(e - r) < 1e-12 && static_cast<long>(r) % 2 == 0;
}

// |x|^e for real x, smooth when e is an even integer.
template <class T>
T power_abs(const T& x, double e) {
  if (is_even_integer(e)) return ipow(x, static_cast<int>(std::lround(e)));
  if (real_value(x) == 0.0) return T(0.0);
  return pow(abs_real(x), e);
}

using std::pow;

}  // namespace

QuasiNormSpec::QuasiNormSpec(NormKind kind, GroupSpec group) : kind_(kind), group_(std::move(group)) {
  switch (kind_) {
    case NormKind::euclidean:
      if (group_.kind() != GroupKind::abelian_isotropic) {
        throw Error(ErrorCode::incompatible_norm, "euclidean norm requires an isotropic abelian group");
      }
      break;
    case NormKind::koranyi:
      if (group_.kind() != GroupKind::heisenberg) {
        throw Error(ErrorCode::incompatible_norm, "koranyi gauge requires the heisenberg group");
      }
      break;
    case NormKind::aniso_power: {
      const auto w = group_.weights();
      const double m = *std::max_element(w.begin(), w.end());
      for (double v : w) exponents_.push_back(2.0 * m / v);
      outer_exponent_ = 1.0 / (2.0 * m);
      break;
    }
    case NormKind::max_scaled:
      break;
  }
}

std::string QuasiNormSpec::name() const {
  switch (kind_) {
    case NormKind::euclidean: return "euclid";
    case NormKind::max_scaled: return "max";
    case NormKind::aniso_power: return "aniso";
    case NormKind::koranyi: return "koranyi";
  }
  return "unknown";
}

template <class T>
T QuasiNormSpec::evaluate(std::span<const T> x) const {
  switch (kind_) {
    case NormKind::euclidean: {
      T s(0.0);
      for (const auto& xi : x) s += xi * xi;
      if (real_value(s) == 0.0) return T(0.0);
      return pow(s, 0.5);
    }
    case NormKind::aniso_power: {
      T s(0.0);
      for (std::size_t i = 0; i < x.size(); ++i) s += power_abs(x[i], exponents_[i]);
      if (real_value(s) == 0.0) return T(0.0);
      return pow(s, outer_exponent_);
    }
    case NormKind::max_scaled: {
      std::size_t best = 0;
      double best_value = -1.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = std::pow(std::abs(real_value(x[i])), 1.0 / group_.weights()[i]);
        if (v > best_value) {
          best_value = v;
          best = i;
        }
      }
      if (best_value == 0.0) return T(0.0);
      return pow(abs_real(x[best]), 1.0 / group_.weights()[best]);
    }
    case NormKind::koranyi: {
      const T rho2 = x[0] * x[0] + x[1] * x[1];
      const T s = rho2 * rho2 + T(16.0) * x[2] * x[2];
      if (real_value(s) == 0.0) return T(0.0);
      return pow(s, 0.25);
    }
  }
  return T(0.0);
}

double QuasiNormSpec::operator()(std::span<const double> x) const {
  // Rescale extreme inputs onto the unit max-scaled shell first so that the
  // power sums neither underflow nor overflow; homogeneity makes this exact.
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s = std::max(s, std::pow(std::abs(x[i]), 1.0 / group_.weights()[i]));
  if (s == 0.0) return 0.0;
  if (s > 1e-30 && s < 1e30) return evaluate<double>(x);
  std::vector<double> y(x.begin(), x.end());
  const double log_s = std::log(s);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) continue;
    y[i] = std::copysign(std::exp(std::log(std::abs(y[i])) - group_.weights()[i] * log_s), y[i]);
  }
  return s * evaluate<double>(std::span<const double>(y));
}
Jet QuasiNormSpec::operator()(std::span<const Jet> x) const { return evaluate<Jet>(x); }

std::vector<double> QuasiNormSpec::unit_sphere_bounds() const {
  std::vector<double> b(static_cast<std::size_t>(group_.dimension()), 1.0);
  if (kind_ == NormKind::koranyi) b[2] = 0.25;
  return b;
}

QuasiNormSpec make_norm(NormKind kind, const GroupSpec& group) { return QuasiNormSpec(kind, group); }

QuasiNormSpec parse_norm(const std::string& id, const GroupSpec& group) {
  if (id == "euclid") return make_norm(NormKind::euclidean, group);
  if (id == "aniso") return make_norm(NormKind::aniso_power, group);
  if (id == "max") return make_norm(NormKind::max_scaled, group);
  if (id == "koranyi") return make_norm(NormKind::koranyi, group);
  throw Error(ErrorCode::incompatible_norm, "unknown norm id '" + id + "'");
}

double evaluate_norm(const QuasiNormSpec& norm, std::span<const double> x) { return norm(x); }

double homogeneity_deviation(const QuasiNormSpec& norm, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::invalid_parameter, "samples must be >= 1");
  Rng rng(seed);
  const auto& g = norm.group();
  Point x(static_cast<std::size_t>(g.dimension()));
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double lambda = rng.log_uniform(1e-3, 1e3);
    double base = 0.0;
    do {
      for (auto& xi : x) xi = rng.uniform(-2.0, 2.0);
      base = norm(x);
    } while (base == 0.0);
    const double scaled = norm(dilate(g, lambda, x));
    worst = std::max(worst, std::abs(scaled - lambda * base) / (lambda * base));
  }
  return worst;
}

Point project_to_sphere(const QuasiNormSpec& norm, std::span<const double> x) {
  const double r = norm(x);
  if (r == 0.0) throw Error(ErrorCode::singular_point, "the origin has no projection to the pseudo-sphere");
  return dilate(norm.group(), 1.0 / r, x);
}

}  // namespace homckn
