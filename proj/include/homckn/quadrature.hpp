#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace homckn {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached, thread-safe. Nodes and weights come from Newton iteration on P_n.
const GaussLegendreRule& gauss_legendre(int order);

struct QuadratureConfig {
  int radial_order = 32;          ///< Gauss-Legendre points per radial panel
  int panels = 8;                 ///< radial panels per profile segment
  int box_points_per_axis = 64;   ///< Cartesian points per axis (8-point panels)
  int mc_samples = 0;             ///< optional Monte-Carlo cross-check size

  void validate() const;
  /// Stable hex digest of the fields, used to key caches and reports.
  std::string hash() const;
  /// Same rule at half resolution; the difference to the full rule is the
  /// reported error estimate.
  QuadratureConfig coarsened() const;
  QuadratureConfig refined() const;
};

/// A quadrature result with an error estimate from resolution doubling.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Composite rule on [a, b]: `panels` equal panels of `order` points each.
/// Appends (node, weight) pairs.
void append_composite_rule(double a, double b, int panels, int order, std::vector<double>& nodes,
                           std::vector<double>& weights);

/// Points and weights for one Cartesian axis at the given resolution.
void cartesian_axis_rule(double a, double b, int points, std::vector<double>& nodes, std::vector<double>& weights);

std::uint64_t fnv1a(const std::string& text);

}  // namespace homckn
