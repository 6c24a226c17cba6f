#include "homckn/inequalities.hpp"

#include <cmath>

#include "homckn/constants.hpp"
#include "homckn/error.hpp"

namespace homckn {

namespace {

// Upper interval bound on |B D^e - b d^e| given |B - b| <= eb, |D - d| <= ed.
double product_error(const Estimate& b, const Estimate& d, double e) {
  const double hi = (b.value + b.error) * std::pow(d.value + d.error, e);
  return std::max(0.0, hi - b.value * std::pow(d.value, e));
}

double margin_of(double err_lhs, double err_rhs, double lhs, double rhs) {
  return 2.0 * (err_lhs + err_rhs) + 1e-12 * std::max(std::abs(lhs), std::abs(rhs));
}

bool is_trivial(double q, double gamma) { return std::abs(q - gamma) <= 1e-12 * std::max(1.0, std::abs(q)); }

}  // namespace

CKNParams::CKNParams(double p, double alpha, double beta) : p_(p), alpha_(alpha), beta_(beta) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::invalid_parameter, "p must lie in (1, inf)");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw Error(ErrorCode::invalid_parameter, "alpha, beta must be finite");
}

UncertaintyVariant parse_uncertainty_variant(const std::string& id) {
  if (id == "up1p") return UncertaintyVariant::up1p;
  if (id == "hpw1") return UncertaintyVariant::hpw1;
  if (id == "hpw2") return UncertaintyVariant::hpw2;
  throw Error(ErrorCode::invalid_parameter, "unknown uncertainty variant '" + id + "'");
}

std::string to_string(UncertaintyVariant v) {
  switch (v) {
    case UncertaintyVariant::up1p: return "up1p";
    case UncertaintyVariant::hpw1: return "hpw1";
    case UncertaintyVariant::hpw2: return "hpw2";
  }
  return "?";
}

std::string to_string(CombinedVariant v) { return v == CombinedVariant::a1 ? "a1" : "a2"; }

FieldEvaluator::FieldEvaluator(const QuasiNormSpec& norm, const ScalarField& f, int max_order,
                               const QuadratureConfig& config, IntegrationPath path)
    : group_(norm.group().name()),
      norm_(norm.name()),
      field_(f.id()),
      hash_(config.hash()),
      q_(homogeneous_dimension(norm.group())),
      samples_(std::make_shared<FieldSamples>(norm, f, max_order, config, path)) {}

Estimate FieldEvaluator::integral(int k, double a, double p) const { return samples_->lp_integral(k, a, p); }
Estimate FieldEvaluator::lp(int k, double a, double p) const { return samples_->lp_norm(k, a, p); }

void FieldEvaluator::require_order(int k) const {
  if (k > samples_->order()) {
    throw Error(ErrorCode::invalid_parameter,
                "derivative order " + std::to_string(k) + " exceeds the sampled order " + std::to_string(samples_->order()));
  }
}

InequalityReport FieldEvaluator::base(std::string id) const {
  InequalityReport r;
  r.id = std::move(id);
  r.group = group_;
  r.norm = norm_;
  r.field = field_;
  r.config_hash = hash_;
  return r;
}

InequalityReport FieldEvaluator::ckn(const CKNParams& params) const {
  const double p = params.p(), gamma = params.gamma();
  auto r = base("ckn");
  r.params = {p, params.alpha(), params.beta(), gamma, std::nullopt, std::nullopt, std::nullopt};
  r.constant = ckn_constant(q_, p, gamma);
  r.trivial = is_trivial(q_, gamma);
  if (r.trivial) r.constant = 0.0;

  const auto weighted = integral(0, gamma / p, p);
  const auto rf = lp(1, params.alpha(), p);
  const auto f_beta = lp(0, params.beta() / (p - 1.0), p);
  r.lhs = r.constant * weighted.value;
  r.rhs = rf.value * std::pow(f_beta.value, p - 1.0);
  r.margin = margin_of(r.constant * weighted.error, product_error(rf, f_beta, p - 1.0), r.lhs, r.rhs);
  r.extras = {{"f_gamma_integral", weighted.value}, {"rf_alpha_norm", rf.value}, {"f_beta_norm", f_beta.value}};
  finalize(r);
  return r;
}

InequalityReport FieldEvaluator::hardy(double p, double alpha) const {
  auto r = base("hardy");
  r.params = {p, alpha, (alpha + 1.0) * (p - 1.0), p * (alpha + 1.0), std::nullopt, std::nullopt, std::nullopt};
  r.constant = hardy_constant(q_, p, alpha);
  const auto f_w = lp(0, alpha + 1.0, p);
  const auto rf = lp(1, alpha, p);
  r.lhs = f_w.value;
  r.rhs = r.constant * rf.value;
  r.margin = margin_of(f_w.error, r.constant * rf.error, r.lhs, r.rhs);
  r.extras = {{"f_weighted_norm", f_w.value}, {"rf_alpha_norm", rf.value}};
  finalize(r);
  return r;
}

InequalityReport FieldEvaluator::uncertainty(double p, UncertaintyVariant variant, double alpha) const {
  if (variant == UncertaintyVariant::hpw1) {
    auto r = ckn(CKNParams(p, alpha, alpha * (p - 1.0) - 1.0));
    r.id = "hpw1";
    return r;
  }
  if (variant == UncertaintyVariant::hpw2) {
    auto r = ckn(CKNParams(p, -p, p - 1.0));
    r.id = "hpw2";
    return r;
  }
  auto r = base("up1p");
  r.params.p = p;
  r.constant = uncertainty_constant(q_, p);
  const double dual = p / (p - 1.0);
  const auto f2 = integral(0, 0.0, 2.0);
  const auto f_over = lp(0, 1.0, p);
  const auto rf = lp(1, 0.0, p);
  const auto xf = lp(0, -1.0, dual);
  const double middle = f_over.value * xf.value;
  r.lhs = f2.value;
  r.rhs = r.constant * rf.value * xf.value;
  r.margin = margin_of(f2.error, r.constant * product_error(rf, xf, 1.0), r.lhs, r.rhs);
  r.extras = {{"f_l2_squared", f2.value}, {"hoelder_middle", middle}, {"rf_norm", rf.value}, {"xf_dual_norm", xf.value}};
  finalize(r);
  // The Hoelder split ||f||^2 <= ||f/|x|||_p |||x| f||_p' is part of the claim.
  const double split_margin = margin_of(f2.error, product_error(f_over, xf, 1.0), r.lhs, middle);
  r.satisfied = r.satisfied && r.lhs <= middle + split_margin;
  return r;
}

InequalityReport FieldEvaluator::higher_order(double p, double theta, int k) const {
  require_order(k);
  auto r = base("higher_order");
  r.params = {p, std::nullopt, std::nullopt, std::nullopt, theta, k, std::nullopt};
  r.constant = iterated_hardy_constant(q_, p, theta, k);
  const auto f_w = lp(0, theta + 1.0, p);
  const auto rk = lp(k, theta + 1.0 - k, p);
  r.lhs = f_w.value;
  r.rhs = r.constant * rk.value;
  r.margin = margin_of(f_w.error, r.constant * rk.error, r.lhs, r.rhs);
  r.extras = {{"f_weighted_norm", f_w.value}, {"rk_norm", rk.value}};
  finalize(r);
  return r;
}

InequalityReport FieldEvaluator::higher_order_pair(const CKNParams& params, int k, int m) const {
  require_order(std::max(k, m + 1));
  const double p = params.p(), gamma = params.gamma();
  auto r = base("higher_order_pair");
  r.params = {p, params.alpha(), params.beta(), gamma, std::nullopt, k, m};
  const double c = is_trivial(q_, gamma) ? 0.0 : ckn_constant(q_, p, gamma);
  const double a_alpha = pair_alpha_constant(q_, p, params.alpha(), m);
  const double a_beta = pair_beta_constant(q_, p, params.beta(), k);
  r.trivial = c == 0.0;
  r.constant = c;
  const auto weighted = integral(0, gamma / p, p);
  const auto rm = lp(m + 1, params.alpha() - m, p);
  const auto rk = lp(k, params.beta() / (p - 1.0) - k, p);
  const double ab = a_alpha * a_beta;
  r.lhs = c * weighted.value;
  r.rhs = ab * rm.value * std::pow(rk.value, p - 1.0);
  r.margin = margin_of(c * weighted.error, ab * product_error(rm, rk, p - 1.0), r.lhs, r.rhs);
  r.extras = {{"pair_alpha_constant", a_alpha}, {"pair_beta_constant", a_beta}, {"rm_norm", rm.value}, {"rk_norm", rk.value}};
  finalize(r);
  return r;
}

InequalityReport FieldEvaluator::l2_identity(double alpha, int k) const {
  if (k < 1) throw Error(ErrorCode::invalid_parameter, "identity needs k >= 1");
  require_order(k);
  auto r = base("l2_identity");
  r.kind = ReportKind::identity;
  r.params = {2.0, alpha, std::nullopt, std::nullopt, std::nullopt, k, std::nullopt};

  const auto lhs = integral(k, alpha, 2.0);
  double prod = 1.0;  // prod_{j<l} c_j^2
  double rhs = 0.0, err = lhs.error;
  for (int l = 0; l < k; ++l) {
    const double c = identity_coefficient(q_, alpha, l);
    const auto term = samples_->integrate([=](double radius, std::span<const Complex> d) {
      const Complex v = d[static_cast<std::size_t>(k - l)] * std::pow(radius, -(l + alpha)) +
                        c * std::pow(radius, -(l + 1 + alpha)) * d[static_cast<std::size_t>(k - l - 1)];
      return std::norm(v);
    });
    rhs += prod * term.value;
    err += prod * term.error;
    r.extras.emplace_back("remainder_" + std::to_string(l), prod * term.value);
    prod *= c * c;
  }
  const auto main = integral(0, k + alpha, 2.0);
  rhs += prod * main.value;
  err += prod * main.error;
  r.extras.emplace_back("main_term", prod * main.value);

  r.constant = prod;
  r.lhs = lhs.value;
  r.rhs = rhs;
  r.margin = 2.0 * err + 1e-12 * std::abs(lhs.value);
  finalize(r);
  return r;
}

InequalityReport FieldEvaluator::l2_sharp_higher(double alpha, int k) const {
  if (q_ < 3.0) throw Error(ErrorCode::invalid_parameter, "the L2 higher-order inequality needs Q >= 3");
  require_order(k);
  auto r = base("l2_sharp_higher");
  r.params = {2.0, alpha, std::nullopt, std::nullopt, std::nullopt, k, std::nullopt};
  r.constant = l2_higher_constant(q_, alpha, k);
  const auto f_w = lp(0, k + alpha, 2.0);
  const auto rk = lp(k, alpha, 2.0);
  r.lhs = f_w.value;
  r.rhs = r.constant * rk.value;
  r.margin = margin_of(f_w.error, r.constant * rk.error, r.lhs, r.rhs);
  r.extras = {{"f_weighted_norm", f_w.value}, {"rk_norm", rk.value}};
  finalize(r);
  return r;
}

InequalityReport FieldEvaluator::l2_combined(double alpha, double beta, int k, CombinedVariant variant) const {
  require_order(variant == CombinedVariant::a1 ? k : k + 1);
  const double gamma = alpha + beta + 1.0;
  auto r = base("l2_combined_" + to_string(variant));
  r.params = {2.0, alpha, beta, gamma, std::nullopt, k, std::nullopt};
  const double c =
      variant == CombinedVariant::a1 ? combined_beta_constant(q_, beta, k) : combined_alpha_constant(q_, alpha, k);
  r.constant = c;
  const double lead = is_trivial(q_, gamma) ? 0.0 : std::abs(q_ - gamma) / 2.0;
  r.trivial = lead == 0.0;
  const auto weighted = integral(0, gamma / 2.0, 2.0);
  Estimate a, b;
  if (variant == CombinedVariant::a1) {
    a = lp(1, alpha, 2.0);
    b = lp(k, beta - k, 2.0);
  } else {
    a = lp(k + 1, alpha - k, 2.0);
    b = lp(0, beta, 2.0);
  }
  r.lhs = lead * weighted.value;
  r.rhs = c * a.value * b.value;
  r.margin = margin_of(lead * weighted.error, c * product_error(a, b, 1.0), r.lhs, r.rhs);
  r.extras = {{"lead_constant", lead}, {"first_norm", a.value}, {"second_norm", b.value}};
  finalize(r);
  return r;
}

InequalityReport ckn_report(const QuasiNormSpec& norm, const ScalarField& f, const CKNParams& params,
                            const QuadratureConfig& config) {
  return FieldEvaluator(norm, f, 1, config).ckn(params);
}

InequalityReport hardy_report(const QuasiNormSpec& norm, const ScalarField& f, double p, double alpha,
                              const QuadratureConfig& config) {
  hardy_constant(homogeneous_dimension(norm.group()), p, alpha);
  return FieldEvaluator(norm, f, 1, config).hardy(p, alpha);
}

InequalityReport uncertainty_report(const QuasiNormSpec& norm, const ScalarField& f, double p,
                                    UncertaintyVariant variant, const QuadratureConfig& config, double alpha) {
  if (variant == UncertaintyVariant::up1p) uncertainty_constant(homogeneous_dimension(norm.group()), p);
  return FieldEvaluator(norm, f, 1, config).uncertainty(p, variant, alpha);
}

InequalityReport higher_order_report(const QuasiNormSpec& norm, const ScalarField& f, double p, double theta, int k,
                                     const QuadratureConfig& config) {
  iterated_hardy_constant(homogeneous_dimension(norm.group()), p, theta, k);
  return FieldEvaluator(norm, f, k, config).higher_order(p, theta, k);
}

InequalityReport higher_order_pair_report(const QuasiNormSpec& norm, const ScalarField& f, const CKNParams& params,
                                          int k, int m, const QuadratureConfig& config) {
  const double q = homogeneous_dimension(norm.group());
  pair_alpha_constant(q, params.p(), params.alpha(), m);
  pair_beta_constant(q, params.p(), params.beta(), k);
  return FieldEvaluator(norm, f, std::max(k, m + 1), config).higher_order_pair(params, k, m);
}

InequalityReport l2_identity_residual(const QuasiNormSpec& norm, const ScalarField& f, double alpha, int k,
                                      const QuadratureConfig& config) {
  if (k < 1) throw Error(ErrorCode::invalid_parameter, "identity needs k >= 1");
  return FieldEvaluator(norm, f, k, config).l2_identity(alpha, k);
}

InequalityReport l2_sharp_higher_report(const QuasiNormSpec& norm, const ScalarField& f, double alpha, int k,
                                        const QuadratureConfig& config) {
  const double q = homogeneous_dimension(norm.group());
  if (q < 3.0) throw Error(ErrorCode::invalid_parameter, "the L2 higher-order inequality needs Q >= 3");
  l2_higher_constant(q, alpha, k);
  return FieldEvaluator(norm, f, k, config).l2_sharp_higher(alpha, k);
}

InequalityReport l2_combined_report(const QuasiNormSpec& norm, const ScalarField& f, double alpha, double beta, int k,
                                    CombinedVariant variant, const QuadratureConfig& config) {
  const double q = homogeneous_dimension(norm.group());
  if (variant == CombinedVariant::a1) {
    combined_beta_constant(q, beta, k);
  } else {
    combined_alpha_constant(q, alpha, k);
  }
  return FieldEvaluator(norm, f, variant == CombinedVariant::a1 ? k : k + 1, config).l2_combined(alpha, beta, k, variant);
}

}  // namespace homckn
