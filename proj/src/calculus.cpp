#include "homckn/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "homckn/error.hpp"

namespace homckn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMaxCartesianNodes = 2.0e8;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// f along the dilation orbit through x, parametrized by the radius rho.
Complex orbit_value(const GroupSpec& g, const ScalarField& f, std::span<const double> x, double r, double rho) {
  Point y(x.begin(), x.end());
  const double t = rho / r;
  for (int i = 0; i < g.dimension(); ++i) y[static_cast<std::size_t>(i)] *= std::pow(t, g.weight(i));
  return f(y);
}

// Symmetric k-th difference, second order in h.
Complex orbit_difference(const GroupSpec& g, const ScalarField& f, std::span<const double> x, double r, int k,
                         double h) {
  Complex acc = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binomial(k, i) * orbit_value(g, f, x, r, r + (0.5 * k - i) * h);
  }
  return acc / std::pow(h, k);
}

// Central differences at h = 1e-3 r and h/2, one Richardson step: fourth order in h.
Complex richardson_difference(const GroupSpec& g, const ScalarField& f, std::span<const double> x, double r, int k) {
  const double h = 1e-3 * r;
  const Complex coarse = orbit_difference(g, f, x, r, k, h);
  const Complex fine = orbit_difference(g, f, x, r, k, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

void check_point(const QuasiNormSpec& norm, std::span<const double> x, double& r) {
  if (static_cast<int>(x.size()) != norm.group().dimension()) {
    throw Error(ErrorCode::invalid_parameter, "point dimension does not match the group");
  }
  r = norm(x);
  if (r == 0.0) throw Error(ErrorCode::singular_point, "radial derivative is undefined at the origin");
}

}  // namespace

Complex radial_derivative(const QuasiNormSpec& norm, const ScalarField& f, std::span<const double> x,
                          RadialMode mode) {
  double r = 0.0;
  check_point(norm, x, r);
  const auto& g = norm.group();
  if (mode == RadialMode::analytic) {
    Complex acc = 0.0;
    for (int j = 0; j < g.dimension(); ++j) {
      const double xj = x[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      acc += g.weight(j) * (xj / r) * apply_vector_field(g, j, f, x, DerivativeMode::analytic);
    }
    return acc;
  }
  return richardson_difference(g, f, x, r, 1);
}

std::vector<Complex> radial_derivatives(const QuasiNormSpec& norm, const ScalarField& f, std::span<const double> x,
                                        int order, RadialMode mode) {
  if (order < 0 || order > Jet::kMaxOrder) {
    throw Error(ErrorCode::invalid_parameter, "derivative order must be in [0, " + std::to_string(Jet::kMaxOrder) + "]");
  }
  double r = 0.0;
  check_point(norm, x, r);
  const auto& g = norm.group();
  std::vector<Complex> out(static_cast<std::size_t>(order + 1));
  if (mode == RadialMode::analytic) {
    // x_i (1 + t/r)^(v_i) traces D_{r+t} xhat.
    const Jet ratio = Jet(1.0) + Jet::variable(0.0, order) * Jet(1.0 / r);
    std::vector<Jet> coords(x.size());
    for (int i = 0; i < g.dimension(); ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const double w = g.weight(i);
      const Jet scale = (w == 1.0) ? ratio : (w == 2.0 ? ratio * ratio : pow(ratio, w));
      coords[ui] = scale * Jet(x[ui]);
    }
    const Jet v = f.jet(coords);
    for (int k = 0; k <= order; ++k) out[static_cast<std::size_t>(k)] = v.derivative(k);
    return out;
  }
  out[0] = f(x);
  for (int k = 1; k <= order; ++k) out[static_cast<std::size_t>(k)] = richardson_difference(g, f, x, r, k);
  return out;
}

Box bounding_box(const QuasiNormSpec& norm, double outer) {
  if (!std::isfinite(outer) || !(outer > 0.0)) {
    throw Error(ErrorCode::unsupported_domain, "integration needs a bounded support");
  }
  const auto bounds = norm.unit_sphere_bounds();
  Box box;
  for (int i = 0; i < norm.group().dimension(); ++i) {
    const double h = bounds[static_cast<std::size_t>(i)] * std::pow(outer, norm.group().weight(i));
    box.lo.push_back(-h);
    box.hi.push_back(h);
  }
  return box;
}

namespace {

struct TensorGrid {
  std::vector<std::vector<double>> nodes;
  std::vector<std::vector<double>> weights;

  TensorGrid(const Box& box, int points) {
    const std::size_t n = box.lo.size();
    nodes.resize(n);
    weights.resize(n);
    double total = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      cartesian_axis_rule(box.lo[i], box.hi[i], points, nodes[i], weights[i]);
      total *= static_cast<double>(nodes[i].size());
    }
    if (total > kMaxCartesianNodes) {
      throw Error(ErrorCode::unsupported_domain, "Cartesian grid too large; use a quasi-radial field or lower resolution");
    }
  }

  template <class Visit>
  void for_each(Visit&& visit) const {
    const std::size_t n = nodes.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> x(n);
    while (true) {
      double w = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = nodes[i][idx[i]];
        w *= weights[i][idx[i]];
      }
      visit(std::span<const double>(x), w);
      std::size_t axis = 0;
      while (axis < n && ++idx[axis] == nodes[axis].size()) {
        idx[axis] = 0;
        ++axis;
      }
      if (axis == n) break;
    }
  }
};

// Composite panels of two nearby resolutions can agree by accident; a third
// level at 3/4 resolution guards the error estimate against that.
int three_quarter_points(int points) { return std::max(8, (3 * points / 4 + 7) / 8 * 8); }

}  // namespace

Estimate haar_integral(const Box& box, const std::function<double(std::span<const double>)>& integrand,
                       const QuadratureConfig& config) {
  config.validate();
  auto run = [&](int points) {
    double sum = 0.0;
    TensorGrid(box, points).for_each([&](std::span<const double> x, double w) { sum += w * integrand(x); });
    return sum;
  };
  const double fine = run(config.box_points_per_axis);
  const double coarse = run(config.coarsened().box_points_per_axis);
  const double mid = run(three_quarter_points(config.box_points_per_axis));
  return {fine, std::max(std::abs(fine - coarse), std::abs(fine - mid))};
}

Estimate haar_integral(const QuasiNormSpec& norm, const Annulus& support,
                       const std::function<double(std::span<const double>)>& integrand,
                       const QuadratureConfig& config) {
  return haar_integral(bounding_box(norm, support.outer), integrand, config);
}

namespace {

double bump(double u) { return (u <= 0.0 || u >= 1.0) ? 0.0 : std::exp(-1.0 / (u * (1.0 - u))); }

}  // namespace

namespace {

std::mutex memo_mutex;
std::map<std::string, SphereMeasure> memo;

std::string memo_key(const QuasiNormSpec& norm, const QuadratureConfig& config, double a, double b) {
  return norm.group().name() + "|" + norm.name() + "|" + config.hash() + "|" + std::to_string(a) + "|" +
         std::to_string(b);
}

}  // namespace

void seed_sphere_measure(const QuasiNormSpec& norm, const QuadratureConfig& config, const SphereMeasure& value) {
  std::lock_guard lock(memo_mutex);
  memo[memo_key(norm, config, 1.0, 2.0)] = value;
}

SphereMeasure sphere_measure(const QuasiNormSpec& norm, const QuadratureConfig& config, double a, double b) {
  if (!(a > 0.0) || !(b > a)) throw Error(ErrorCode::invalid_parameter, "sphere measure annulus needs 0 < a < b");
  config.validate();
  const std::string key = memo_key(norm, config, a, b);
  auto& mutex = memo_mutex;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }

  const double width = b - a;
  const double q = homogeneous_dimension(norm.group());
  const auto numerator = haar_integral(
      bounding_box(norm, b),
      [&](std::span<const double> x) {
        const double r = norm(x);
        return bump((r - a) / width);
      },
      config);

  std::vector<double> nodes, weights;
  append_composite_rule(a, b, 16, 32, nodes, weights);
  double denominator = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    denominator += weights[i] * bump((nodes[i] - a) / width) * std::pow(nodes[i], q - 1.0);
  }

  SphereMeasure result{numerator.value / denominator, numerator.error / denominator, norm.group().name(), norm.name(),
                       config.hash()};
  std::lock_guard lock(mutex);
  memo.emplace(key, result);
  return result;
}

Estimate root(const Estimate& integral, double p) {
  const double v = std::max(integral.value, 0.0);
  if (v == 0.0) return {0.0, std::pow(integral.error, 1.0 / p)};
  const double value = std::pow(v, 1.0 / p);
  return {value, value * integral.error / (p * v)};
}

FieldSamples::FieldSamples(const QuasiNormSpec& norm, const ScalarField& f, int order, const QuadratureConfig& config,
                           IntegrationPath path)
    : order_(order) {
  config.validate();
  if (order < 0 || order > Jet::kMaxOrder) throw Error(ErrorCode::invalid_parameter, "derivative order out of range");
  mode_ = f.has_analytic_derivatives() ? RadialMode::analytic : RadialMode::orbit_fd;
  polar_ = path == IntegrationPath::automatic && f.is_quasi_radial() && f.has_analytic_derivatives();
  if (polar_) {
    const auto sigma = sphere_measure(norm, config);
    sigma_ = sigma.value;
    sigma_relative_error_ = sigma.error_estimate / sigma.value;
    sample_polar(norm, f, config, fine_);
    sample_polar(norm, f, config.coarsened(), coarse_);
  } else {
    sample_cartesian(norm, f, config, fine_);
    sample_cartesian(norm, f, config.coarsened(), coarse_);
    QuadratureConfig mid = config;
    mid.box_points_per_axis = three_quarter_points(config.box_points_per_axis);
    sample_cartesian(norm, f, mid, mid_);
  }
}

void FieldSamples::push_node(NodeSet& set, double log_weight, double log_radius, std::span<const Complex> d) const {
  bool any = false;
  for (const auto& v : d) any = any || v != 0.0;
  if (!any) return;
  set.log_weight.push_back(log_weight);
  set.log_radius.push_back(log_radius);
  for (const auto& v : d) {
    set.d.push_back(v);
    const double m = std::abs(v);
    set.log_abs.push_back(m > 0.0 ? std::log(m) : kNegInf);
  }
}

void FieldSamples::sample_polar(const QuasiNormSpec& norm, const ScalarField& f, const QuadratureConfig& config,
                                NodeSet& out) const {
  const auto& profile = *f.profile();
  const double q = homogeneous_dimension(norm.group());
  const double log_sigma = std::log(sigma_);
  std::vector<double> s_nodes, s_weights;
  for (std::size_t seg = 0; seg + 1 < profile.knots.size(); ++seg) {
    const double a = profile.knots[seg], b = profile.knots[seg + 1];
    if (!(b > a)) continue;
    append_composite_rule(std::log(a), std::log(b), config.panels, config.radial_order, s_nodes, s_weights);
  }
  std::vector<Complex> d(static_cast<std::size_t>(order_ + 1));
  for (std::size_t i = 0; i < s_nodes.size(); ++i) {
    const double s = s_nodes[i];
    const Jet v = profile.jet(std::exp(s), order_);
    for (int k = 0; k <= order_; ++k) d[static_cast<std::size_t>(k)] = v.derivative(k);
    // dx = |sigma| r^(Q-1) dr = |sigma| r^Q ds
    push_node(out, std::log(s_weights[i]) + log_sigma + q * s, s, d);
  }
}

void FieldSamples::sample_cartesian(const QuasiNormSpec& norm, const ScalarField& f, const QuadratureConfig& config,
                                    NodeSet& out) const {
  const auto& support = f.support();
  TensorGrid grid(bounding_box(norm, support.outer), config.box_points_per_axis);
  grid.for_each([&](std::span<const double> x, double w) {
    const double r = norm(x);
    if (!(r >= support.inner && r <= support.outer)) return;
    const auto d = radial_derivatives(norm, f, x, order_, mode_);
    push_node(out, std::log(w), std::log(r), d);
  });
}

double FieldSamples::sum_lp(const NodeSet& nodes, int k, double a, double p) const {
  const auto stride = static_cast<std::size_t>(order_ + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double la = nodes.log_abs[i * stride + static_cast<std::size_t>(k)];
    if (la == kNegInf) continue;
    sum += std::exp(nodes.log_weight[i] + p * la - a * p * nodes.log_radius[i]);
  }
  return sum;
}

double FieldSamples::sum_functional(const NodeSet& nodes, const LocalFunctional& functional) const {
  const auto stride = static_cast<std::size_t>(order_ + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::span<const Complex> d(nodes.d.data() + i * stride, stride);
    const double v = functional(std::exp(nodes.log_radius[i]), d);
    if (v != 0.0) sum += std::exp(nodes.log_weight[i]) * v;
  }
  return sum;
}

Estimate FieldSamples::lp_integral(int k, double a, double p) const {
  if (k < 0 || k > order_) throw Error(ErrorCode::invalid_parameter, "derivative order not sampled");
  if (!(p > 0.0)) throw Error(ErrorCode::invalid_parameter, "exponent must be positive");
  const double fine = sum_lp(fine_, k, a, p);
  double diff = std::abs(fine - sum_lp(coarse_, k, a, p));
  if (!polar_) diff = std::max(diff, std::abs(fine - sum_lp(mid_, k, a, p)));
  const double error = diff + (sigma_relative_error_ + 1e-14) * std::abs(fine);
  return {fine, error};
}

Estimate FieldSamples::lp_norm(int k, double a, double p) const {
  if (!(p > 1.0)) throw Error(ErrorCode::invalid_parameter, "Lp norm needs p > 1");
  return root(lp_integral(k, a, p), p);
}

Estimate FieldSamples::integrate(const LocalFunctional& functional) const {
  const double fine = sum_functional(fine_, functional);
  double diff = std::abs(fine - sum_functional(coarse_, functional));
  if (!polar_) diff = std::max(diff, std::abs(fine - sum_functional(mid_, functional)));
  const double error = diff + (sigma_relative_error_ + 1e-14) * std::abs(fine);
  return {fine, error};
}

Estimate weighted_lp_norm(const QuasiNormSpec& norm, const ScalarField& f, double a, double p,
                          const QuadratureConfig& config, int derivative_order) {
  if (!(p > 1.0)) throw Error(ErrorCode::invalid_parameter, "weighted Lp norm needs p > 1");
  if (!(f.support().inner > 0.0) && a > 0.0) {
    throw Error(ErrorCode::singular_support, "support reaches the origin where |x|^(-a) is unbounded");
  }
  return FieldSamples(norm, f, derivative_order, config).lp_norm(derivative_order, a, p);
}

}  // namespace homckn
