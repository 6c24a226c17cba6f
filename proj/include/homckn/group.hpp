#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace homckn {

class ScalarField;

enum class GroupKind { abelian_isotropic, abelian_anisotropic, heisenberg };

/// A point in exponential coordinates, e(x) = x.
using Point = std::vector<double>;

enum class DerivativeMode { analytic, finite_difference };

/// Homogeneous group in exponential coordinates.
///
/// The left-invariant basis field X_j acts as X_j f = sum_i c_{j,i}(x) d_i f.
/// Abelian kinds use c_{j,i} = delta_{j,i}; the Heisenberg group uses
/// X_1 = d_1 - (x_2/2) d_3, X_2 = d_2 + (x_1/2) d_3, X_3 = d_3.
class GroupSpec {
 public:
  GroupSpec(std::string name, GroupKind kind, std::vector<double> weights);

  const std::string& name() const { return name_; }
  GroupKind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(weights_.size()); }
  std::span<const double> weights() const { return weights_; }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  bool is_abelian() const { return kind_ != GroupKind::heisenberg; }

  /// c_{j,i}(x).
  double field_coefficient(int j, int i, std::span<const double> x) const;

  /// Row j of the coefficient table at x.
  std::vector<double> field_coefficients(int j, std::span<const double> x) const;

  bool operator==(const GroupSpec& o) const { return name_ == o.name_; }

 private:
  std::string name_;
  GroupKind kind_;
  std::vector<double> weights_;
};

/// Catalog constructor. `params` is the weight list for abelian_anisotropic,
/// a single entry {n} for abelian_isotropic, and empty (or {3}) for heisenberg.
GroupSpec make_group(GroupKind kind, std::span<const double> params);

/// Parses "r:<n>", "aniso:<v1,...,vn>" or "heis1".
GroupSpec parse_group(const std::string& id);

/// Q = sum of the dilation weights.
double homogeneous_dimension(const GroupSpec& spec);

Point dilate(const GroupSpec& spec, double lambda, std::span<const double> x);

/// sum_i c_{j,i}(x) d_i f(x). Finite-difference mode uses central differences
/// with h_i = 1e-5 * max(1, |x_i|).
std::complex<double> apply_vector_field(const GroupSpec& spec, int j, const ScalarField& f,
                                        std::span<const double> x, DerivativeMode mode);

}  // namespace homckn
