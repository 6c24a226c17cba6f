#include "homckn/constants.hpp"

#include <cmath>
#include <functional>

#include "homckn/error.hpp"

namespace homckn {

namespace {

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::invalid_parameter, "p must lie in (1, inf)");
}

void check_order(int k, const char* what) {
  if (k < 0) throw Error(ErrorCode::invalid_parameter, std::string(what) + " must be nonnegative");
}

double checked_factor(double v, double q, int j, const char* name) {
  if (std::abs(v) <= 1e-12 * std::max(1.0, std::abs(q))) {
    throw Error(ErrorCode::degenerate_constant, std::string(name) + ": factor vanishes at j=" + std::to_string(j), j);
  }
  return std::abs(v);
}

// prod_{j<count} |factor(j)|, raising degenerate-constant at the first zero.
double abs_product(int count, double q, const std::function<double(int)>& factor, const char* name) {
  double prod = 1.0;
  for (int j = 0; j < count; ++j) prod *= checked_factor(factor(j), q, j, name);
  return prod;
}

// prod_{j<count} p / |factor(j)|, the order in which single Hardy steps compose.
double step_product(int count, double q, double p, const std::function<double(int)>& factor, const char* name) {
  double acc = 1.0;
  for (int j = 0; j < count; ++j) acc *= p / checked_factor(factor(j), q, j, name);
  return acc;
}

}  // namespace

double ckn_constant(double q, double p, double gamma) {
  check_p(p);
  return std::abs(q - gamma) / p;
}

double hardy_constant(double q, double p, double alpha) {
  check_p(p);
  return p / checked_factor(q - p * (alpha + 1.0), q, 0, "hardy constant");
}

double iterated_hardy_constant(double q, double p, double theta, int k) {
  check_p(p);
  check_order(k, "k");
  // step j is the weighted Hardy step at alpha = theta - j
  return step_product(k, q, p, [&](int j) { return q - p * ((theta - j) + 1.0); }, "A(theta,k)");
}

double pair_alpha_constant(double q, double p, double alpha, int m) {
  check_p(p);
  check_order(m, "m");
  return step_product(m, q, p, [&](int j) { return q - p * (alpha - j); }, "A~(alpha,m)");
}

double pair_beta_constant(double q, double p, double beta, int k) {
  check_p(p);
  check_order(k, "k");
  const double b = beta / (p - 1.0);
  const double prod = abs_product(k, q, [&](int j) { return q - p * (b - j); }, "A~(beta,k)");
  return std::pow(p, k * (p - 1.0)) / std::pow(prod, p - 1.0);
}

double l2_higher_constant(double q, double alpha, int k) {
  check_order(k, "k");
  return 1.0 / abs_product(k, q, [&](int j) { return identity_coefficient(q, alpha, j); }, "L2 higher-order constant");
}

double combined_beta_constant(double q, double beta, int k) {
  check_order(k, "k");
  return 1.0 / abs_product(k, q, [&](int j) { return (q - 2.0) / 2.0 - (beta - k + j); }, "C(beta,k)");
}

double combined_alpha_constant(double q, double alpha, int k) {
  check_order(k, "k");
  return 1.0 / abs_product(k, q, [&](int j) { return (q - 2.0) / 2.0 - (alpha - k + j); }, "C(alpha,k)");
}

double uncertainty_constant(double q, double p) {
  check_p(p);
  if (!(p < q)) throw Error(ErrorCode::invalid_parameter, "uncertainty principle needs 1 < p < Q");
  return p / (q - p);
}

double identity_coefficient(double q, double alpha, int l) { return (q - 2.0) / 2.0 - (alpha + l); }

std::vector<NamedConstant> constant_table(const ConstantInputs& in) {
  std::vector<NamedConstant> out;
  auto add = [&](std::string name, const std::function<double()>& fn) {
    try {
      const double v = fn();
      out.push_back({std::move(name), v, ""});
    } catch (const Error& e) {
      out.push_back({std::move(name), std::nullopt, e.what()});
    }
  };
  const double gamma = in.alpha + in.beta + 1.0;
  add("ckn", [&] { return ckn_constant(in.q, in.p, gamma); });
  add("hardy", [&] { return hardy_constant(in.q, in.p, in.alpha); });
  add("iterated_hardy", [&] { return iterated_hardy_constant(in.q, in.p, in.theta, in.k); });
  add("pair_alpha", [&] { return pair_alpha_constant(in.q, in.p, in.alpha, in.m); });
  add("pair_beta", [&] { return pair_beta_constant(in.q, in.p, in.beta, in.k); });
  add("uncertainty", [&] { return uncertainty_constant(in.q, in.p); });
  add("hpw1", [&] { return ckn_constant(in.q, in.p, in.alpha * in.p); });
  add("hpw2", [&] { return ckn_constant(in.q, in.p, 0.0); });
  add("l2_higher", [&] { return l2_higher_constant(in.q, in.alpha, in.k); });
  add("combined_beta", [&] { return combined_beta_constant(in.q, in.beta, in.k); });
  add("combined_alpha", [&] { return combined_alpha_constant(in.q, in.alpha, in.k); });
  return out;
}

}  // namespace homckn
