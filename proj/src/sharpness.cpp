#include "homckn/sharpness.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "homckn/error.hpp"
#include "homckn/report.hpp"

namespace homckn {

namespace {

bool degenerate_gamma(double q, double gamma) { return std::abs(q - gamma) <= 1e-12 * std::max(1.0, std::abs(q)); }

}  // namespace

TransitionStyle parse_transition_style(const std::string& id) {
  if (id == "balanced") return TransitionStyle::balanced;
  if (id == "factor-two" || id == "factor_two") return TransitionStyle::factor_two;
  throw Error(ErrorCode::invalid_parameter, "unknown transition style '" + id + "'");
}

std::string to_string(TransitionStyle s) { return s == TransitionStyle::balanced ? "balanced" : "factor-two"; }
std::string to_string(ExtremizerBranch b) { return b == ExtremizerBranch::power ? "power" : "exponential"; }

double ExtremizerFamily::c() const { return std::abs(q - gamma()) / p; }
double ExtremizerFamily::lambda() const { return alpha - beta / (p - 1.0) + 1.0; }

ExtremizerBranch ExtremizerFamily::branch() const {
  return std::abs(lambda()) <= 1e-14 ? ExtremizerBranch::power : ExtremizerBranch::exponential;
}

double ExtremizerFamily::inner() const {
  if (style == TransitionStyle::factor_two) return 0.5 * epsilon;
  return epsilon / std::sqrt(r_out / epsilon);
}

double ExtremizerFamily::outer() const {
  if (style == TransitionStyle::factor_two) return 2.0 * r_out;
  return r_out * std::sqrt(r_out / epsilon);
}

Jet ExtremizerFamily::pure(const Jet& r) const {
  const Jet s = log(r);
  if (branch() == ExtremizerBranch::power) return exp(Jet(-c()) * s);
  const double l = lambda();
  return exp(Jet(-c() / l) * (exp(Jet(l) * s) - Jet(1.0)));
}

ExtremizerFamily make_family(const QuasiNormSpec& norm, double p, double alpha, double beta, double epsilon,
                             double r_out, TransitionStyle style) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::invalid_parameter, "p must lie in (1, inf)");
  if (!(epsilon > 0.0) || !(r_out > epsilon)) throw Error(ErrorCode::invalid_parameter, "truncation needs 0 < epsilon < r_out");
  ExtremizerFamily fam{homogeneous_dimension(norm.group()), p, alpha, beta, epsilon, r_out, style};
  if (degenerate_gamma(fam.q, fam.gamma())) {
    throw Error(ErrorCode::degenerate_constant, "gamma = Q: the constant |Q-gamma|/p vanishes, nothing to scan");
  }
  return fam;
}

ScalarField extremizer_field(const QuasiNormSpec& norm, const ExtremizerFamily& family) {
  if (degenerate_gamma(family.q, family.gamma())) {
    throw Error(ErrorCode::degenerate_constant, "gamma = Q: the constant |Q-gamma|/p vanishes, nothing to scan");
  }
  const LogWindow window{family.inner(), family.epsilon, family.r_out, family.outer()};
  RadialProfile profile;
  profile.eval = [family, window](const Jet& r) { return window(r) * family.pure(r); };
  profile.knots = window.knots();
  char id[128];
  std::snprintf(id, sizeof id, "extremizer(p=%g,alpha=%g,beta=%g,eps=%g,R=%g,%s)", family.p, family.alpha, family.beta,
                family.epsilon, family.r_out, to_string(family.style).c_str());
  return ScalarField::quasi_radial(id, norm, std::move(profile));
}

double hoelder_residual(const QuasiNormSpec& norm, const ExtremizerFamily& family, std::span<const double> x) {
  const auto f = extremizer_field(norm, family);
  const double r = norm(x);
  const Complex g = f(x);
  if (g == 0.0) {
    throw Error(ErrorCode::outside_pure_region, "the truncated extremizer vanishes at |x| = " + std::to_string(r));
  }
  const Complex rg = radial_derivative(norm, f, x, RadialMode::analytic);
  if (rg == 0.0) return 1.0;
  const double p = family.p;
  const double log_lhs = p * (std::log(p / std::abs(family.q - family.gamma())) + std::log(std::abs(rg))) -
                         family.alpha * p * std::log(r);
  const double log_rhs = p * std::log(std::abs(g)) - family.beta * p / (p - 1.0) * std::log(r);
  return std::abs(std::expm1(log_lhs - log_rhs));
}

Estimate attained_constant(const QuasiNormSpec& norm, const ScalarField& f, double p, double alpha, double beta,
                           const QuadratureConfig& config) {
  const FieldSamples s(norm, f, 1, config);
  const double gamma = alpha + beta + 1.0;
  const auto a = s.lp_integral(0, gamma / p, p);
  const auto b = s.lp_norm(1, alpha, p);
  const auto d = s.lp_norm(0, beta / (p - 1.0), p);
  if (!(a.value > 0.0)) throw Error(ErrorCode::invalid_parameter, "attained constant of a zero field");
  const double c = b.value * std::pow(d.value, p - 1.0) / a.value;
  const double rel = b.error / b.value + (p - 1.0) * d.error / d.value + a.error / a.value;
  return {c, c * rel};
}

Schedule default_schedule() { return {{1e-1, 1e1}, {1e-2, 1e2}, {1e-3, 1e3}, {1e-4, 1e4}}; }

Schedule parse_schedule(const std::string& text) {
  Schedule out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::config_error, "schedule entries look like eps:R, got '" + item + "'");
    try {
      out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::config_error, "bad schedule entry '" + item + "'");
    }
  }
  return out;
}

ScanResult sharpness_scan(const QuasiNormSpec& norm, double p, double alpha, double beta, const Schedule& schedule,
                          const QuadratureConfig& config, TransitionStyle style) {
  if (schedule.empty()) throw Error(ErrorCode::invalid_parameter, "empty sharpness schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i].first < schedule[i - 1].first) || !(schedule[i].second > schedule[i - 1].second)) {
      throw Error(ErrorCode::invalid_parameter, "schedule must have epsilon decreasing and r_out increasing");
    }
  }
  ScanResult res;
  res.group = norm.group().name();
  res.norm = norm.name();
  res.p = p;
  res.alpha = alpha;
  res.beta = beta;
  res.gamma = alpha + beta + 1.0;
  res.transitions = to_string(style);
  res.config_hash = config.hash();
  for (const auto& [eps, r_out] : schedule) {
    const auto fam = make_family(norm, p, alpha, beta, eps, r_out, style);
    res.lambda = fam.lambda();
    res.branch = to_string(fam.branch());
    res.theoretical = fam.c();
    const auto c = attained_constant(norm, extremizer_field(norm, fam), p, alpha, beta, config);
    res.entries.push_back({eps, r_out, c.value, c.error});
  }
  const double tiny = 1e-12 * res.theoretical;
  res.best = res.entries.front().attained;
  res.best_error = res.entries.front().error;
  for (std::size_t i = 0; i < res.entries.size(); ++i) {
    const auto& e = res.entries[i];
    if (e.attained < res.best) {
      res.best = e.attained;
      res.best_error = e.error;
    }
    if (e.attained < res.theoretical - e.error - tiny) res.lower_bound_ok = false;
    if (i > 0) {
      const auto& prev = res.entries[i - 1];
      if (e.attained > prev.attained + e.error + prev.error + tiny) res.monotone = false;
    }
  }
  res.relative_gap = (res.best - res.theoretical) / res.theoretical;
  return res;
}

nlohmann::ordered_json to_json(const ScanResult& r) {
  nlohmann::ordered_json j;
  j["group"] = r.group;
  j["norm"] = r.norm;
  j["params"] = {{"p", r.p}, {"alpha", r.alpha}, {"beta", r.beta}, {"gamma", r.gamma}, {"lambda", r.lambda}};
  j["branch"] = r.branch;
  j["transitions"] = r.transitions;
  j["theoretical"] = json_number(r.theoretical);
  j["best"] = json_number(r.best);
  j["best_error"] = json_number(r.best_error);
  j["relative_gap"] = json_number(r.relative_gap);
  j["monotone"] = r.monotone;
  j["lower_bound_ok"] = r.lower_bound_ok;
  j["config_hash"] = r.config_hash;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"epsilon", e.epsilon}, {"r_out", e.r_out}, {"attained", json_number(e.attained)},
                       {"error", json_number(e.error)}});
  }
  j["schedule"] = entries;
  return j;
}

}  // namespace homckn
