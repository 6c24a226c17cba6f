#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "homckn/group.hpp"
#include "homckn/jet.hpp"

namespace homckn {

enum class NormKind { euclidean, max_scaled, aniso_power, koranyi };

/// Homogeneous quasi-norm |D_l x| = l |x| on a fixed group.
///
///   euclidean    (sum x_i^2)^(1/2)                   isotropic abelian only
///   aniso_power  (sum |x_i|^(2M/v_i))^(1/(2M))       M = max_i v_i
///   max_scaled   max_i |x_i|^(1/v_i)
///   koranyi      ((x_1^2 + x_2^2)^2 + 16 x_3^2)^(1/4) Heisenberg only
class QuasiNormSpec {
 public:
  QuasiNormSpec(NormKind kind, GroupSpec group);

  NormKind kind() const { return kind_; }
  const GroupSpec& group() const { return group_; }
  /// CLI id: "euclid", "aniso", "max" or "koranyi".
  std::string name() const;

  double operator()(std::span<const double> x) const;
  Jet operator()(std::span<const Jet> x) const;

  /// max |x_i| over the unit pseudo-sphere; |x_i| <= bound_i * |x|^(v_i).
  std::vector<double> unit_sphere_bounds() const;

 private:
  template <class T>
  T evaluate(std::span<const T> x) const;

  NormKind kind_;
  GroupSpec group_;
  std::vector<double> exponents_;  // aniso_power: 2M / v_i
  double outer_exponent_ = 0.5;
};

QuasiNormSpec make_norm(NormKind kind, const GroupSpec& group);
QuasiNormSpec parse_norm(const std::string& id, const GroupSpec& group);

double evaluate_norm(const QuasiNormSpec& norm, std::span<const double> x);

/// max over seeded (l, x) of ||D_l x| - l|x|| / (l|x|), with l log-uniform in
/// [1e-3, 1e3] and x uniform in [-2, 2]^n.
double homogeneity_deviation(const QuasiNormSpec& norm, int samples, std::uint64_t seed);

/// x / |x| in the dilation sense: D_{1/|x|} x.
Point project_to_sphere(const QuasiNormSpec& norm, std::span<const double> x);

}  // namespace homckn
