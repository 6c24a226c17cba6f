#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "homckn/field.hpp"
#include "homckn/quadrature.hpp"
#include "homckn/quasi_norm.hpp"

namespace homckn {

enum class RadialMode { analytic, orbit_fd };

/// Radial derivative Rf(x) = sum_j v_j (x_j / |x|) X_j f(x).
///
/// analytic: the vector-field formula with exact partials.
/// orbit_fd: central differences of r -> f(D_r xhat) at r = |x| with
///           h = 1e-3 |x| and h/2, one Richardson step; xhat = D_{1/|x|} x.
/// The group is the one the norm was built on.
Complex radial_derivative(const QuasiNormSpec& norm, const ScalarField& f, std::span<const double> x,
                          RadialMode mode);

/// R^0 f(x), ..., R^order f(x).
///
/// R^k f(D_r xhat) is the k-th derivative of r -> f(D_r xhat), so analytic mode
/// reads exact Taylor coefficients of f along the dilation orbit. orbit_fd
/// uses symmetric k-th differences with step 1e-3 |x| and one Richardson step.
std::vector<Complex> radial_derivatives(const QuasiNormSpec& norm, const ScalarField& f, std::span<const double> x,
                                        int order, RadialMode mode);

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Smallest coordinate box containing {|x| <= outer}.
Box bounding_box(const QuasiNormSpec& norm, double outer);

/// Tensor-product Gauss-Legendre integral over `box` (Lebesgue = Haar
/// measure in exponential coordinates). The error estimate is the larger
/// change from half and from 3/4 of the resolution.
Estimate haar_integral(const Box& box, const std::function<double(std::span<const double>)>& integrand,
                       const QuadratureConfig& config);

/// Integral of a function supported in {|x| <= support.outer}.
Estimate haar_integral(const QuasiNormSpec& norm, const Annulus& support,
                       const std::function<double(std::span<const double>)>& integrand,
                       const QuadratureConfig& config);

struct SphereMeasure {
  double value = 0.0;
  double error_estimate = 0.0;
  std::string group;
  std::string norm;
  std::string config_hash;
};

/// sigma(unit pseudo-sphere) from the polar decomposition:
///   |sigma| = int F(|x|) dx / int_a^b F(r) r^(Q-1) dr
/// with F a smooth bump on [a, b]. With F = 1 on [a, b] this is the annulus
/// volume identity |sigma| = Q vol(a < |x| < b) / (b^Q - a^Q); the bump keeps
/// the Cartesian integrand smooth. Results are memoized per process.
SphereMeasure sphere_measure(const QuasiNormSpec& norm, const QuadratureConfig& config, double a = 1.0,
                             double b = 2.0);

/// Preloads the memo for the default annulus, e.g. from an on-disk cache.
void seed_sphere_measure(const QuasiNormSpec& norm, const QuadratureConfig& config, const SphereMeasure& value);

/// Integrand that only sees |x| and the radial derivatives R^k f(x).
using LocalFunctional = std::function<double(double radius, std::span<const Complex> derivatives)>;

enum class IntegrationPath { automatic, cartesian };

/// A field sampled once on quadrature nodes (full and half resolution), with
/// R^0..R^order f stored per node, so that many weighted norms of the same
/// field cost one pass each.
///
/// Quasi-radial fields use the polar fast path: |sigma| times 1-D panels in
/// ln r between the profile knots. Other fields use the Cartesian grid.
class FieldSamples {
 public:
  FieldSamples(const QuasiNormSpec& norm, const ScalarField& f, int order, const QuadratureConfig& config,
               IntegrationPath path = IntegrationPath::automatic);

  int order() const { return order_; }
  bool polar() const { return polar_; }
  std::size_t node_count() const { return fine_.size(); }

  /// (int |R^k f|^p |x|^(-a p) dx)^(1/p).
  Estimate lp_norm(int k, double a, double p) const;
  /// int |R^k f|^p |x|^(-a p) dx.
  Estimate lp_integral(int k, double a, double p) const;
  /// int functional(|x|, R^. f(x)) dx.
  Estimate integrate(const LocalFunctional& functional) const;

 private:
  // Struct-of-arrays node storage; derivative k of node i sits at i * (order + 1) + k.
  struct NodeSet {
    std::vector<double> log_weight;
    std::vector<double> log_radius;
    std::vector<Complex> d;
    std::vector<double> log_abs;
    std::size_t size() const { return log_weight.size(); }
  };
  void push_node(NodeSet& set, double log_weight, double log_radius, std::span<const Complex> d) const;
  void sample_polar(const QuasiNormSpec& norm, const ScalarField& f, const QuadratureConfig& config,
                    NodeSet& out) const;
  void sample_cartesian(const QuasiNormSpec& norm, const ScalarField& f, const QuadratureConfig& config,
                        NodeSet& out) const;
  double sum_lp(const NodeSet& nodes, int k, double a, double p) const;
  double sum_functional(const NodeSet& nodes, const LocalFunctional& functional) const;

  int order_;
  bool polar_ = false;
  RadialMode mode_ = RadialMode::analytic;
  double sigma_relative_error_ = 0.0;
  double sigma_ = 0.0;
  NodeSet fine_;
  NodeSet coarse_;
  NodeSet mid_;  // Cartesian path only
};

/// ||R^k f / |x|^a||_p. Chooses the polar path for quasi-radial fields.
Estimate weighted_lp_norm(const QuasiNormSpec& norm, const ScalarField& f, double a, double p,
                          const QuadratureConfig& config, int derivative_order = 0);

/// Propagates integral errors to I^(1/p).
Estimate root(const Estimate& integral, double p);

}  // namespace homckn
