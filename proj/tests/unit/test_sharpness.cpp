#include <cmath>

#include "doctest.h"
#include "homckn/corpus.hpp"
#include "homckn/error.hpp"
#include "homckn/sharpness.hpp"
#include "test_support.hpp"

using namespace homckn;
using testing::rel_diff;

namespace {

const QuadratureConfig kDefault{};

QuasiNormSpec norm_of(const std::string& group, const std::string& norm) { return parse_norm(norm, parse_group(group)); }

Point on_axis(const QuasiNormSpec& norm, double r) {
  Point x(static_cast<std::size_t>(norm.group().dimension()), 0.0);
  x[0] = 1.0;
  return dilate(norm.group(), r / norm(x), x);
}

}  // namespace

TEST_CASE("extremizer profiles") {
  const auto norm = norm_of("r:3", "euclid");
  SUBCASE("lambda = 1: e^(-r) up to the constant e") {
    const auto fam = make_family(norm, 2.0, 0.0, 0.0, 1e-2, 1e2);
    CHECK(fam.c() == 1.0);
    CHECK(fam.lambda() == 1.0);
    CHECK(fam.branch() == ExtremizerBranch::exponential);
    const auto f = extremizer_field(norm, fam);
    CHECK(f.is_quasi_radial());
    for (const double r : {0.01, 0.5, 1.0, 3.0, 20.0, 100.0}) {
      CHECK(rel_diff(f(on_axis(norm, r)).real(), std::exp(1.0 - r)) < 1e-13);
    }
  }
  SUBCASE("lambda = 0: r^(-1/2)") {
    const auto fam = make_family(norm, 2.0, 0.0, 1.0, 1e-2, 1e2);
    CHECK(fam.c() == 0.5);
    CHECK(fam.branch() == ExtremizerBranch::power);
    const auto f = extremizer_field(norm, fam);
    for (const double r : {0.01, 0.5, 1.0, 3.0, 100.0}) {
      CHECK(rel_diff(f(on_axis(norm, r)).real(), 1.0 / std::sqrt(r)) < 1e-13);
    }
  }
}

TEST_CASE("truncated extremizer vanishes outside its cutoffs") {
  const auto norm = norm_of("heis1", "koranyi");
  for (const auto style : {TransitionStyle::factor_two, TransitionStyle::balanced}) {
    const auto fam = make_family(norm, 2.0, 0.0, 1.0, 1e-2, 1e2, style);
    const auto f = extremizer_field(norm, fam);
    CHECK(fam.inner() <= 0.5 * fam.epsilon);
    CHECK(fam.outer() >= 2.0 * fam.r_out);
    CHECK(f(on_axis(norm, 0.99 * fam.inner())) == Complex(0.0));
    CHECK(f(on_axis(norm, 1.01 * fam.outer())) == Complex(0.0));
    if (style == TransitionStyle::factor_two) {
      CHECK(f(on_axis(norm, fam.epsilon / 4)) == Complex(0.0));
      CHECK(f(on_axis(norm, 4 * fam.r_out)) == Complex(0.0));
    }
  }
  CHECK(parse_transition_style("factor-two") == TransitionStyle::factor_two);
  CHECK_THROWS_AS(parse_transition_style("wide"), Error);
}

TEST_CASE("Hoelder equality condition") {
  Rng rng(8);
  for (const auto& [g, n] : std::vector<std::pair<std::string, std::string>>{
           {"r:3", "euclid"}, {"heis1", "koranyi"}, {"aniso:1,2", "aniso"}}) {
    const auto norm = norm_of(g, n);
    for (const auto& [p, alpha, beta] : std::vector<std::tuple<double, double, double>>{
             {2.0, 0.0, 1.0}, {2.0, 0.0, 0.0}, {3.0, 0.5, -0.4}, {1.5, -0.3, 0.2}}) {
      const auto fam = make_family(norm, p, alpha, beta, 1e-1, 1e1);
      for (int s = 0; s < 10; ++s) {
        const auto x = testing::random_point_in_shell(rng, norm, fam.epsilon, fam.r_out);
        CHECK(hoelder_residual(norm, fam, x) <= 1e-10);
      }
      CHECK(hoelder_residual(norm, fam, on_axis(norm, 1.0)) <= 1e-10);
      // inside a transition the equality breaks but the residual is still reported
      CHECK(hoelder_residual(norm, fam, on_axis(norm, 0.6 * fam.epsilon)) > 0.0);
      CHECK(hoelder_residual(norm, fam, on_axis(norm, 1.5 * fam.r_out)) > 0.0);
      try {
        hoelder_residual(norm, fam, on_axis(norm, 0.5 * fam.inner()));
        FAIL("expected outside-pure-region");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::outside_pure_region);
      }
    }
  }
}

TEST_CASE("gamma = Q cannot be scanned") {
  const auto norm = norm_of("r:3", "euclid");
  try {
    make_family(norm, 2.0, 0.0, 2.0, 1e-2, 1e2);
    FAIL("expected degenerate-constant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_constant);
  }
  CHECK_THROWS_AS(sharpness_scan(norm, 2.0, 1.0, 1.0, default_schedule(), kDefault), Error);
}

TEST_CASE("schedule validation and parsing") {
  const auto norm = norm_of("r:3", "euclid");
  const auto s = parse_schedule("1e-1:1e1,1e-2:1e2");
  REQUIRE(s.size() == 2);
  CHECK(s[1].first == 1e-2);
  CHECK(s[1].second == 1e2);
  CHECK_THROWS_AS(parse_schedule("1e-1"), Error);
  CHECK_THROWS_AS(sharpness_scan(norm, 2.0, 0.0, 1.0, {}, kDefault), Error);
  CHECK_THROWS_AS(sharpness_scan(norm, 2.0, 0.0, 1.0, {{1e-2, 1e2}, {1e-1, 1e3}}, kDefault), Error);
  const auto one = sharpness_scan(norm, 2.0, 0.0, 1.0, {{1e-1, 1e1}}, kDefault);
  CHECK(one.entries.size() == 1);
  CHECK(one.best == one.entries[0].attained);
}

TEST_CASE("scan on R^3, p = 2, alpha = 0, beta = 1 reaches the sharp constant 1/2") {
  const auto norm = norm_of("r:3", "euclid");
  const auto r = sharpness_scan(norm, 2.0, 0.0, 1.0, default_schedule(), kDefault);
  CHECK(r.theoretical == 0.5);
  CHECK(r.branch == "power");
  CHECK(r.best <= 0.525);
  CHECK(r.relative_gap <= 0.05);
  CHECK(r.monotone);
  CHECK(r.lower_bound_ok);
  for (std::size_t i = 1; i < r.entries.size(); ++i) CHECK(r.entries[i].attained < r.entries[i - 1].attained);
  const auto j = to_json(r);
  CHECK(j["schedule"].size() == 4);
  CHECK(j["theoretical"] == 0.5);
}

TEST_CASE("scan on heisenberg reaches the sharp constant 1") {
  const auto norm = norm_of("heis1", "koranyi");
  const auto r = sharpness_scan(norm, 2.0, 0.0, 1.0, default_schedule(), kDefault);
  CHECK(r.theoretical == 1.0);
  CHECK(r.best <= 1.05);
  CHECK(r.monotone);
  CHECK(r.lower_bound_ok);
}

TEST_CASE("exponential branch approaches the power branch continuously") {
  const auto norm = norm_of("r:3", "euclid");
  auto attained = [&](double beta) {
    const auto fam = make_family(norm, 2.0, 0.0, beta, 1e-2, 1e2);
    return attained_constant(norm, extremizer_field(norm, fam), 2.0, 0.0, beta, kDefault).value;
  };
  const double power = attained(1.0);
  double previous = INFINITY;
  for (const double delta : {1e-1, 1e-2, 1e-3}) {
    const double d = std::max(std::abs(attained(1.0 + delta) - power), std::abs(attained(1.0 - delta) - power));
    CHECK(d < previous);
    previous = d;
  }
  CHECK(previous < 1e-3 * power);
}

TEST_CASE("attained constants never undercut the sharp constant on the corpus") {
  const auto norm = norm_of("aniso:1,2", "aniso");
  CorpusSpec spec;
  spec.count = 6;
  for (const auto& f : make_corpus(norm, spec)) {
    for (const auto& [p, alpha, beta] :
         std::vector<std::tuple<double, double, double>>{{2.0, 0.0, 1.0}, {3.0, 0.5, -0.4}}) {
      const double sharp = std::abs(homogeneous_dimension(norm.group()) - (alpha + beta + 1.0)) / p;
      const auto c = attained_constant(norm, f, p, alpha, beta, kDefault);
      CHECK(c.value >= sharp - 2.0 * c.error - 1e-12);
    }
  }
}
