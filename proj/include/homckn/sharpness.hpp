#pragma once

#include <string>
#include <vector>

#include "homckn/calculus.hpp"
#include "json.hpp"

namespace homckn {

enum class ExtremizerBranch { exponential, power };

/// How the cutoffs around [epsilon, r_out] are laid out.
///
/// balanced: transitions linear in ln r, each of log-length ln(r_out/epsilon)/2,
///           so the field lives on [epsilon e^-w, r_out e^w]. A cutoff of fixed
///           log-length costs a fixed amount of the Hoelder defect, which for
///           the power branch shrinks only like (ln(r_out/epsilon))^-2 when the
///           cutoff grows with the pure region.
/// factor_two: the cutoffs span [epsilon/2, epsilon] and [r_out, 2 r_out].
enum class TransitionStyle { balanced, factor_two };

TransitionStyle parse_transition_style(const std::string& id);
std::string to_string(TransitionStyle s);
std::string to_string(ExtremizerBranch b);

/// g = exp(-(C/lambda)(|x|^lambda - 1)) for lambda != 0, |x|^(-C) for lambda = 0,
/// with C = |Q - gamma|/p and lambda = alpha - beta/(p-1) + 1, times a smooth
/// cutoff. The constant factor e^(C/lambda) against the textbook form leaves
/// every ratio unchanged and keeps the lambda -> 0 limit finite.
struct ExtremizerFamily {
  double q = 0.0;
  double p = 2.0;
  double alpha = 0.0;
  double beta = 1.0;
  double epsilon = 1e-2;
  double r_out = 1e2;
  TransitionStyle style = TransitionStyle::balanced;

  double gamma() const { return alpha + beta + 1.0; }
  double c() const;
  double lambda() const;
  ExtremizerBranch branch() const;
  /// Support [inner, outer] of the truncated field.
  double inner() const;
  double outer() const;
  /// The uncut formula at radius r (a Taylor jet in r).
  Jet pure(const Jet& r) const;
};

ExtremizerFamily make_family(const QuasiNormSpec& norm, double p, double alpha, double beta, double epsilon,
                             double r_out, TransitionStyle style = TransitionStyle::balanced);

/// Quasi-radial truncated extremizer. gamma = Q raises degenerate-constant.
ScalarField extremizer_field(const QuasiNormSpec& norm, const ExtremizerFamily& family);

/// | |p/(Q-gamma)|^p |R g|^p / |x|^(alpha p) / (|g|^p / |x|^(beta p/(p-1))) - 1 |
/// for the truncated field g at x, with R g from the vector-field formula.
/// Zero on [epsilon, r_out] up to roundoff, positive in the cutoff zones.
/// Points where the truncated field vanishes raise outside-pure-region.
double hoelder_residual(const QuasiNormSpec& norm, const ExtremizerFamily& family, std::span<const double> x);

/// c(f) = ||R f/|x|^alpha||_p ||f/|x|^(beta/(p-1))||_p^(p-1) / ||f/|x|^(gamma/p)||_p^p.
Estimate attained_constant(const QuasiNormSpec& norm, const ScalarField& f, double p, double alpha, double beta,
                           const QuadratureConfig& config);

struct ScanEntry {
  double epsilon = 0.0;
  double r_out = 0.0;
  double attained = 0.0;
  double error = 0.0;
};

struct ScanResult {
  std::string group;
  std::string norm;
  double p = 0.0, alpha = 0.0, beta = 0.0, gamma = 0.0, lambda = 0.0;
  std::string branch;
  std::string transitions;
  double theoretical = 0.0;
  double best = 0.0;
  double best_error = 0.0;
  double relative_gap = 0.0;  ///< (best - theoretical) / theoretical
  bool monotone = true;        ///< non-increasing within the combined errors
  bool lower_bound_ok = true;  ///< no entry below theoretical - error
  std::string config_hash;
  std::vector<ScanEntry> entries;
};

using Schedule = std::vector<std::pair<double, double>>;

/// (1e-1, 1e1), (1e-2, 1e2), (1e-3, 1e3), (1e-4, 1e4).
Schedule default_schedule();
/// "1e-1:1e1,1e-2:1e2" -> schedule.
Schedule parse_schedule(const std::string& text);

/// Attained constants of the truncated extremizer along the schedule.
/// The schedule must be nonempty with epsilon decreasing and r_out increasing.
ScanResult sharpness_scan(const QuasiNormSpec& norm, double p, double alpha, double beta, const Schedule& schedule,
                          const QuadratureConfig& config, TransitionStyle style = TransitionStyle::balanced);

nlohmann::ordered_json to_json(const ScanResult& result);

}  // namespace homckn
