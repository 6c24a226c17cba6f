#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homckn/field.hpp"
#include "homckn/random.hpp"

namespace homckn {

enum class CorpusKind {
  mixed,     ///< quasi-radial bumps, every third field non-radial
  radial,    ///< quasi-radial bumps only
  gaussian,  ///< the single truncated Gaussian e^(-r^2/2)
};

struct CorpusSpec {
  int count = 10;
  std::uint64_t seed = 1;
  double r_min = 0.25;
  double r_max = 2.0;
  CorpusKind kind = CorpusKind::mixed;
};

CorpusKind parse_corpus_kind(const std::string& id);
std::string to_string(CorpusKind kind);

/// Profile sum_m a_m exp(-(ln r - mu_m)^2 / (2 s_m^2)) times a smooth window
/// vanishing outside [support.inner, support.outer]. Amplitudes may be complex.
RadialProfile random_bump_profile(Rng& rng, const Annulus& support);

ScalarField random_radial_bump(const QuasiNormSpec& norm, Rng& rng, const Annulus& support, std::string id);

/// Radial bump times 1 + sum_i c_i xhat_i + sum_{i<=j} c_ij xhat_i xhat_j, where
/// xhat = D_{1/|x|} x lies on the unit pseudo-sphere.
ScalarField random_nonradial_bump(const QuasiNormSpec& norm, Rng& rng, const Annulus& support, std::string id);

ScalarField gaussian_field(const QuasiNormSpec& norm, double inner = 1e-8, double outer = 10.0);

/// Deterministic in (seed, count): the same spec always regenerates the same fields.
std::vector<ScalarField> make_corpus(const QuasiNormSpec& norm, const CorpusSpec& spec);

}  // namespace homckn
