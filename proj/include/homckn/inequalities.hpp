#pragma once

#include <memory>
#include <string>

#include "homckn/calculus.hpp"
#include "homckn/report.hpp"

namespace homckn {

/// (p, alpha, beta) with gamma = alpha + beta + 1 derived, never stored.
class CKNParams {
 public:
  CKNParams(double p, double alpha, double beta);

  double p() const { return p_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return alpha_ + beta_ + 1.0; }

 private:
  double p_, alpha_, beta_;
};

enum class UncertaintyVariant { up1p, hpw1, hpw2 };
enum class CombinedVariant { a1, a2 };

UncertaintyVariant parse_uncertainty_variant(const std::string& id);
std::string to_string(UncertaintyVariant v);
std::string to_string(CombinedVariant v);

/// Evaluates report after report on one field, sampling R^0..R^max_order f
/// once. Every norm in a report comes from the same nodes.
///
/// Margins: each side's error is propagated as an interval bound from the
/// quadrature estimates of its factors; margin = 2 (err_lhs + err_rhs) plus
/// a 1e-12 relative roundoff floor.
class FieldEvaluator {
 public:
  FieldEvaluator(const QuasiNormSpec& norm, const ScalarField& f, int max_order, const QuadratureConfig& config,
                 IntegrationPath path = IntegrationPath::automatic);

  double q() const { return q_; }
  const FieldSamples& samples() const { return *samples_; }

  /// (|Q-gamma|/p) ||f/|x|^(gamma/p)||_p^p <= ||R f/|x|^alpha||_p ||f/|x|^(beta/(p-1))||_p^(p-1).
  InequalityReport ckn(const CKNParams& params) const;
  /// ||f/|x|^(alpha+1)||_p <= p/|Q-p(alpha+1)| ||R f/|x|^alpha||_p.
  InequalityReport hardy(double p, double alpha) const;
  /// up1p: ||f||_2^2 <= p/(Q-p) ||R f||_p || |x| f ||_(p/(p-1)), 1 < p < Q.
  /// hpw1: the main inequality with gamma = alpha p.  hpw2: alpha = -p, beta = p-1.
  InequalityReport uncertainty(double p, UncertaintyVariant variant, double alpha = 0.0) const;
  /// ||f/|x|^(theta+1)||_p <= A_{theta,k} ||R^k f/|x|^(theta+1-k)||_p.
  InequalityReport higher_order(double p, double theta, int k) const;
  /// Main-inequality LHS against ~A_{alpha,m} ~A_{beta,k} ||R^(m+1) f/|x|^(alpha-m)||_p
  /// ||R^k f/|x|^(beta/(p-1)-k)||_p^(p-1).
  InequalityReport higher_order_pair(const CKNParams& params, int k, int m) const;
  /// Both sides of the exact L^2 remainder identity for ||R^k f/|x|^alpha||_2^2.
  InequalityReport l2_identity(double alpha, int k) const;
  /// ||f/|x|^(k+alpha)||_2 <= [prod_j |(Q-2)/2 - (alpha+j)|]^(-1) ||R^k f/|x|^alpha||_2, Q >= 3.
  InequalityReport l2_sharp_higher(double alpha, int k) const;
  InequalityReport l2_combined(double alpha, double beta, int k, CombinedVariant variant) const;

 private:
  Estimate integral(int k, double a, double p) const;
  Estimate lp(int k, double a, double p) const;
  InequalityReport base(std::string id) const;
  void require_order(int k) const;

  std::string group_, norm_, field_, hash_;
  double q_ = 0.0;
  std::shared_ptr<const FieldSamples> samples_;
};

// One-shot forms. Each builds a FieldEvaluator of the order it needs.
InequalityReport ckn_report(const QuasiNormSpec& norm, const ScalarField& f, const CKNParams& params,
                            const QuadratureConfig& config);
InequalityReport hardy_report(const QuasiNormSpec& norm, const ScalarField& f, double p, double alpha,
                              const QuadratureConfig& config);
InequalityReport uncertainty_report(const QuasiNormSpec& norm, const ScalarField& f, double p,
                                    UncertaintyVariant variant, const QuadratureConfig& config, double alpha = 0.0);
InequalityReport higher_order_report(const QuasiNormSpec& norm, const ScalarField& f, double p, double theta, int k,
                                     const QuadratureConfig& config);
InequalityReport higher_order_pair_report(const QuasiNormSpec& norm, const ScalarField& f, const CKNParams& params,
                                          int k, int m, const QuadratureConfig& config);
InequalityReport l2_identity_residual(const QuasiNormSpec& norm, const ScalarField& f, double alpha, int k,
                                      const QuadratureConfig& config);
InequalityReport l2_sharp_higher_report(const QuasiNormSpec& norm, const ScalarField& f, double alpha, int k,
                                        const QuadratureConfig& config);
InequalityReport l2_combined_report(const QuasiNormSpec& norm, const ScalarField& f, double alpha, double beta, int k,
                                    CombinedVariant variant, const QuadratureConfig& config);

}  // namespace homckn
