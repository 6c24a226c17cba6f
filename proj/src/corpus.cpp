#include "homckn/corpus.hpp"

#include <cmath>
#include <numbers>

#include "homckn/error.hpp"

namespace homckn {

CorpusKind parse_corpus_kind(const std::string& id) {
  if (id == "mixed") return CorpusKind::mixed;
  if (id == "radial") return CorpusKind::radial;
  if (id == "gaussian") return CorpusKind::gaussian;
  throw Error(ErrorCode::config_error, "unknown corpus kind '" + id + "'");
}

std::string to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::mixed: return "mixed";
    case CorpusKind::radial: return "radial";
    case CorpusKind::gaussian: return "gaussian";
  }
  return "mixed";
}

RadialProfile random_bump_profile(Rng& rng, const Annulus& support) {
  struct Term {
    Complex amplitude;
    double mu, s;
  };
  const double lo = std::log(support.inner), hi = std::log(support.outer);
  const double span = hi - lo;
  const int terms = rng.integer(1, 3);
  const bool complex_valued = rng.unit() < 0.5;
  std::vector<Term> mix;
  for (int m = 0; m < terms; ++m) {
    const double magnitude = rng.uniform(0.2, 1.0) * (rng.unit() < 0.25 ? -1.0 : 1.0);
    const double phase = complex_valued ? rng.uniform(0.0, 2.0 * std::numbers::pi) : 0.0;
    mix.push_back({std::polar(magnitude, phase), rng.uniform(lo + 0.2 * span, hi - 0.2 * span),
                   rng.uniform(0.12, 0.35) * span});
  }
  const double rho = std::pow(support.outer / support.inner, 0.25);
  const LogWindow window{support.inner, support.inner * rho, support.outer / rho, support.outer};
  RadialProfile p;
  p.eval = [mix, window](const Jet& r) {
    const Jet w = window(r);
    if (w.value() == 0.0) return w;
    Jet sum = Jet(0.0);
    for (const auto& t : mix) sum += Jet(t.amplitude) * log_gaussian(r, t.mu, t.s);
    return w * sum;
  };
  p.knots = window.knots();
  return p;
}

ScalarField random_radial_bump(const QuasiNormSpec& norm, Rng& rng, const Annulus& support, std::string id) {
  return ScalarField::quasi_radial(std::move(id), norm, random_bump_profile(rng, support));
}

ScalarField random_nonradial_bump(const QuasiNormSpec& norm, Rng& rng, const Annulus& support, std::string id) {
  const auto profile = random_bump_profile(rng, support);
  const int n = norm.group().dimension();
  std::vector<Complex> linear(static_cast<std::size_t>(n));
  for (auto& c : linear) c = Complex(rng.uniform(-0.4, 0.4), rng.unit() < 0.3 ? rng.uniform(-0.3, 0.3) : 0.0);
  std::vector<Complex> quadratic(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) quadratic[static_cast<std::size_t>(i * n + j)] = rng.uniform(-0.25, 0.25);
  }
  std::vector<double> weights(norm.group().weights().begin(), norm.group().weights().end());
  auto g = profile.eval;
  JetFn jet = [norm, g, linear, quadratic, weights, support, n](std::span<const Jet> x) {
    const Jet r = norm(x);
    if (!support.contains(r.real_value())) return Jet(0.0).with_order(r.order());
    std::vector<Jet> hat(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      hat[i] = x[i] / (weights[i] == 1.0 ? r : pow(r, weights[i]));
    }
    Jet angular = Jet(1.0);
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      angular += Jet(linear[ui]) * hat[ui];
      for (int j = i; j < n; ++j) {
        angular += Jet(quadratic[static_cast<std::size_t>(i * n + j)]) * hat[ui] * hat[static_cast<std::size_t>(j)];
      }
    }
    return g(r) * angular;
  };
  return ScalarField(std::move(id), std::move(jet), support);
}

ScalarField gaussian_field(const QuasiNormSpec& norm, double inner, double outer) {
  return ScalarField::quasi_radial("gaussian", norm, truncated_gaussian_profile(inner, outer));
}

std::vector<ScalarField> make_corpus(const QuasiNormSpec& norm, const CorpusSpec& spec) {
  if (spec.count < 1) throw Error(ErrorCode::config_error, "corpus count must be >= 1");
  if (!(spec.r_min > 0.0) || !(spec.r_max > spec.r_min)) {
    throw Error(ErrorCode::config_error, "corpus annulus must satisfy 0 < r_min < r_max");
  }
  std::vector<ScalarField> out;
  if (spec.kind == CorpusKind::gaussian) {
    out.push_back(gaussian_field(norm));
    return out;
  }
  Rng rng(spec.seed);
  const Annulus support{spec.r_min, spec.r_max};
  for (int i = 0; i < spec.count; ++i) {
    const bool nonradial = spec.kind == CorpusKind::mixed && i % 3 == 2;
    const std::string id = (nonradial ? "bump-nr-" : "bump-r-") + std::to_string(i);
    out.push_back(nonradial ? random_nonradial_bump(norm, rng, support, id)
                            : random_radial_bump(norm, rng, support, id));
  }
  return out;
}

}  // namespace homckn
