#include "homckn/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "homckn/error.hpp"

namespace homckn {

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1) throw Error(ErrorCode::invalid_parameter, "Gauss-Legendre order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(order));
  return *slot;
}

void QuadratureConfig::validate() const {
  if (radial_order < 2 || panels < 2 || box_points_per_axis < 2) {
    throw Error(ErrorCode::invalid_parameter, "quadrature counts must all be >= 2");
  }
  if (mc_samples != 0 && mc_samples < 2) throw Error(ErrorCode::invalid_parameter, "mc_samples must be 0 or >= 2");
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string QuadratureConfig::hash() const {
  const std::string canon = "radial_order=" + std::to_string(radial_order) + ";panels=" + std::to_string(panels) +
                            ";box=" + std::to_string(box_points_per_axis) + ";mc=" + std::to_string(mc_samples);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canon)));
  return buf;
}

QuadratureConfig QuadratureConfig::coarsened() const {
  QuadratureConfig c = *this;
  c.panels = std::max(1, panels / 2);
  c.box_points_per_axis = std::max(1, box_points_per_axis / 2);
  return c;
}

QuadratureConfig QuadratureConfig::refined() const {
  QuadratureConfig c = *this;
  c.panels = panels * 2;
  c.box_points_per_axis = box_points_per_axis * 2;
  return c;
}

void append_composite_rule(double a, double b, int panels, int order, std::vector<double>& nodes,
                           std::vector<double>& weights) {
  const auto& rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      nodes.push_back(mid + 0.5 * width * rule.nodes[i]);
      weights.push_back(0.5 * width * rule.weights[i]);
    }
  }
}

void cartesian_axis_rule(double a, double b, int points, std::vector<double>& nodes, std::vector<double>& weights) {
  constexpr int kPanelOrder = 8;
  if (points <= kPanelOrder) {
    append_composite_rule(a, b, 1, points, nodes, weights);
    return;
  }
  const int panels = (points + kPanelOrder - 1) / kPanelOrder;
  append_composite_rule(a, b, panels, kPanelOrder, nodes, weights);
}

}  // namespace homckn
