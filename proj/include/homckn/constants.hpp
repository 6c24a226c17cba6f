#pragma once

#include <optional>
#include <string>
#include <vector>

namespace homckn {

// Constants of the inequality family. Every product formula checks its
// factors; a vanishing factor raises degenerate-constant carrying the index j.
// A factor counts as vanishing when |factor| <= 1e-12 max(1, Q).

/// |Q - gamma| / p. Zero when gamma = Q (nothing to prove).
double ckn_constant(double q, double p, double gamma);

/// p / |Q - p (alpha + 1)|.
double hardy_constant(double q, double p, double alpha);

/// A_{theta,k} = p^k / prod_{j<k} |Q - p (theta + 1 - j)|.
double iterated_hardy_constant(double q, double p, double theta, int k);

/// ~A_{alpha,m} = p^m / prod_{j<m} |Q - p (alpha - j)|.
double pair_alpha_constant(double q, double p, double alpha, int m);

/// ~A_{beta,k} = p^(k (p-1)) / [prod_{j<k} |Q - p (beta/(p-1) - j)|]^(p-1).
double pair_beta_constant(double q, double p, double beta, int k);

/// [prod_{j<k} |(Q-2)/2 - (alpha + j)|]^(-1), the L^2 higher-order constant.
double l2_higher_constant(double q, double alpha, int k);

/// C_j(beta,k) = [prod_{j<k} |(Q-2)/2 - (beta - k + j)|]^(-1).
double combined_beta_constant(double q, double beta, int k);

/// C_j(alpha,k) = [prod_{j<k} |(Q-2)/2 - (alpha - k + j)|]^(-1): the constant
/// of k L^2 higher-order steps from R^(k+1) f / |x|^(alpha-k) down to R f / |x|^alpha.
double combined_alpha_constant(double q, double alpha, int k);

/// p / (Q - p), requires 1 < p < Q.
double uncertainty_constant(double q, double p);

/// c_l = (Q-2)/2 - (alpha + l), the coefficients of the L^2 remainder identity.
double identity_coefficient(double q, double alpha, int l);

struct ConstantInputs {
  double q = 0.0;
  double p = 2.0;
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  int k = 1;
  int m = 1;
};

struct NamedConstant {
  std::string name;
  std::optional<double> value;
  std::string note;  ///< why the value is missing, e.g. "degenerate at j=1"
};

/// Every constant that makes sense for the inputs. Degenerate entries carry
/// no value and a note instead of throwing.
std::vector<NamedConstant> constant_table(const ConstantInputs& in);

}  // namespace homckn
