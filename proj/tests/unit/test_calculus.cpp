#include <cmath>

#include "doctest.h"
#include "homckn/calculus.hpp"
#include "homckn/corpus.hpp"
#include "homckn/error.hpp"
#include "test_support.hpp"

using namespace homckn;
using testing::pi;
using testing::rel_diff;

namespace {

const QuadratureConfig kDefault{};

}  // namespace

TEST_CASE("radial derivative of x3 on the heisenberg group with the koranyi gauge") {
  const auto norm = parse_norm("koranyi", parse_group("heis1"));
  const ScalarField x3("x3", JetFn([](std::span<const Jet> x) { return x[2]; }), Annulus{0.1, 10});
  const Point x{0.0, 0.0, 1.0};
  // |x| = 2, R x3 = 2 (x3/|x|) = 1; along the orbit f(D_r xhat) = r^2/4.
  CHECK(radial_derivative(norm, x3, x, RadialMode::analytic).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(radial_derivative(norm, x3, x, RadialMode::orbit_fd).real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(radial_derivatives(norm, x3, x, 2, RadialMode::analytic)[2].real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("radial derivative of a quasi-radial field is the profile derivative") {
  const auto norm = parse_norm("euclid", parse_group("r:3"));
  const auto f = gaussian_field(norm);
  const Point x{0.6, 0.0, 0.8};
  CHECK(radial_derivative(norm, f, x, RadialMode::analytic).real() ==
        doctest::Approx(-std::exp(-0.5)).epsilon(1e-14));
  const auto d = radial_derivatives(norm, f, x, 3, RadialMode::analytic);
  // g = e^{-r^2/2}: g'' = (r^2 - 1) g, g''' = (3r - r^3) g
  CHECK(std::abs(d[2]) < 1e-14);
  CHECK(d[3].real() == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-13));
}

TEST_CASE("radial derivative errors") {
  const auto norm = parse_norm("euclid", parse_group("r:2"));
  const auto f = gaussian_field(norm);
  try {
    radial_derivative(norm, f, Point{0.0, 0.0}, RadialMode::analytic);
    FAIL("expected singular-point");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_point);
  }
  const ScalarField plain("plain", ValueFn([](std::span<const double> x) { return Complex(x[0] * x[1]); }),
                          Annulus{0.1, 10});
  CHECK_THROWS_AS(radial_derivative(norm, plain, Point{1.0, 1.0}, RadialMode::analytic), Error);
  // orbit mode works on value-only fields: R(x1 x2) = 2 x1 x2 / |x|
  CHECK(radial_derivative(norm, plain, Point{1.0, 1.0}, RadialMode::orbit_fd).real() ==
        doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("analytic and orbit finite-difference radial derivatives agree on random bumps") {
  for (const auto& [g, n] : std::vector<std::pair<std::string, std::string>>{
           {"heis1", "koranyi"}, {"r:3", "euclid"}, {"aniso:1,2", "aniso"}}) {
    const auto norm = parse_norm(n, parse_group(g));
    Rng rng(100);
    for (int i = 0; i < 10; ++i) {
      const auto f = i % 2 ? random_nonradial_bump(norm, rng, Annulus{0.25, 2.5}, "b")
                           : random_radial_bump(norm, rng, Annulus{0.25, 2.5}, "b");
      for (int s = 0; s < 5; ++s) {
        const auto x = testing::random_point_in_shell(rng, norm, 0.5, 2.0);
        const auto a = radial_derivative(norm, f, x, RadialMode::analytic);
        const auto d = radial_derivative(norm, f, x, RadialMode::orbit_fd);
        CHECK(std::abs(a - d) <= 1e-6 * std::max(1.0, std::abs(a)));
        // the orbit jet route gives the same first derivative
        const auto jets = radial_derivatives(norm, f, x, 1, RadialMode::analytic);
        CHECK(std::abs(jets[1] - a) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("higher radial derivatives: exact orbit jets vs Richardson differences") {
  const auto norm = parse_norm("koranyi", parse_group("heis1"));
  Rng rng(31);
  const auto f = random_nonradial_bump(norm, rng, Annulus{0.25, 2.5}, "b");
  const ScalarField values_only("v", ValueFn([&f](std::span<const double> x) { return f(x); }), f.support());
  for (int s = 0; s < 10; ++s) {
    const auto x = testing::random_point_in_shell(rng, norm, 0.6, 1.8);
    const auto exact = radial_derivatives(norm, f, x, 3, RadialMode::analytic);
    const auto fd = radial_derivatives(norm, values_only, x, 3, RadialMode::orbit_fd);
    for (int k = 1; k <= 3; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      CHECK(std::abs(exact[uk] - fd[uk]) <= 1e-5 * std::max(1.0, std::abs(exact[uk])));
    }
  }
}

TEST_CASE("R is homogeneous of order -1") {
  for (const auto& [g, n] : std::vector<std::pair<std::string, std::string>>{
           {"heis1", "koranyi"}, {"r:3", "euclid"}, {"aniso:1,2", "aniso"}}) {
    const auto norm = parse_norm(n, parse_group(g));
    Rng rng(55);
    for (int i = 0; i < 6; ++i) {
      const auto f = random_nonradial_bump(norm, rng, Annulus{0.2, 3.0}, "b");
      const double l = rng.uniform(0.5, 2.0);
      const auto fl = compose_dilation(f, norm.group(), l);
      const auto x = testing::random_point_in_shell(rng, norm, 0.6, 1.4);
      const auto lhs = radial_derivative(norm, fl, x, RadialMode::analytic);
      const auto rhs = l * radial_derivative(norm, f, dilate(norm.group(), l, x), RadialMode::analytic);
      CHECK(std::abs(lhs - rhs) <= 1e-6);
    }
  }
}

TEST_CASE("haar integral basics") {
  const Box unit{{0.0, 0.0}, {1.0, 1.0}};
  const auto one = haar_integral(unit, [](std::span<const double>) { return 1.0; }, kDefault);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));

  // int_{R^2} e^{-|x|^2} dx = pi; the box [-6,6]^2 loses ~e^{-36}.
  const Box wide{{-6.0, -6.0}, {6.0, 6.0}};
  const auto gauss =
      haar_integral(wide, [](std::span<const double> x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); }, kDefault);
  CHECK(rel_diff(gauss.value, pi) <= 1e-6);

  const auto norm = parse_norm("euclid", parse_group("r:2"));
  CHECK_THROWS_AS(haar_integral(norm, Annulus{1.0, INFINITY}, [](std::span<const double>) { return 1.0; }, kDefault),
                  Error);
}

TEST_CASE("doubling the resolution stays within the declared error estimate") {
  const auto norm = parse_norm("koranyi", parse_group("heis1"));
  auto smoothed_annulus = [&](std::span<const double> x) {
    const double r = norm(x);
    return smooth_step((r - 0.6) / 0.4) * smooth_step((1.8 - r) / 0.4);
  };
  QuadratureConfig c;
  c.box_points_per_axis = 32;
  const auto base = haar_integral(norm, Annulus{0.6, 1.8}, smoothed_annulus, c);
  const auto fine = haar_integral(norm, Annulus{0.6, 1.8}, smoothed_annulus, c.refined());
  CHECK(std::abs(fine.value - base.value) < base.error);
  CHECK(fine.error < base.error);
}

TEST_CASE("sphere measures against closed forms") {
  const auto r2 = sphere_measure(parse_norm("euclid", parse_group("r:2")), kDefault);
  CHECK(rel_diff(r2.value, 2 * pi) <= 1e-3);
  const auto r3 = sphere_measure(parse_norm("euclid", parse_group("r:3")), kDefault);
  CHECK(rel_diff(r3.value, 4 * pi) <= 1e-3);

  // vol{|x|_K < 1} = pi * int_0^1 rho sqrt(1 - rho^4) drho = pi^2 / 8, so |sigma| = Q pi^2 / 8.
  const auto heis = sphere_measure(parse_norm("koranyi", parse_group("heis1")), kDefault);
  CHECK(rel_diff(heis.value, pi * pi / 2) <= 1e-5);

  // (x1^4 + x2^2)^{1/4} < 1: area = Gamma(1/4) Gamma(3/2) / Gamma(7/4)
  const double area = std::tgamma(0.25) * std::tgamma(1.5) / std::tgamma(1.75);
  const auto an = sphere_measure(parse_norm("aniso", parse_group("aniso:1,2")), kDefault);
  CHECK(rel_diff(an.value, 3 * area) <= 1e-5);

  // the max-scaled unit ball is the box [-1,1]^n; the integrand has creases
  const auto mx = sphere_measure(parse_norm("max", parse_group("aniso:1,2")), kDefault);
  CHECK(rel_diff(mx.value, 3 * 4.0) <= 1e-2);
  CHECK(std::abs(mx.value - 12.0) <= 2.0 * mx.error_estimate + 1e-3);
}

TEST_CASE("heisenberg sphere measure against a Monte-Carlo annulus-volume oracle") {
  const auto norm = parse_norm("koranyi", parse_group("heis1"));
  const auto box = bounding_box(norm, 2.0);
  Rng rng(2718);
  const int n = 2'000'000;
  int hits = 0;
  Point x(3);
  for (int s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < 3; ++i) x[i] = rng.uniform(box.lo[i], box.hi[i]);
    const double r = norm(x);
    hits += (r > 1.0 && r < 2.0);
  }
  const double box_volume = (box.hi[0] - box.lo[0]) * (box.hi[1] - box.lo[1]) * (box.hi[2] - box.lo[2]);
  const double frac = static_cast<double>(hits) / n;
  const double volume = frac * box_volume;
  const double mc_sigma = 4.0 * volume / (std::pow(2.0, 4) - 1.0);
  const double mc_rel_sd = std::sqrt((1 - frac) / (frac * n));
  const auto quad = sphere_measure(norm, kDefault);
  CHECK(rel_diff(quad.value, mc_sigma) <= 4.0 * mc_rel_sd);
}

TEST_CASE("sphere measure does not depend on the annulus used") {
  for (const auto& [g, n] : std::vector<std::pair<std::string, std::string>>{
           {"r:3", "euclid"}, {"heis1", "koranyi"}, {"aniso:1,2", "aniso"}, {"aniso:1,2", "max"}}) {
    const auto norm = parse_norm(n, parse_group(g));
    const auto a = sphere_measure(norm, kDefault, 1.0, 2.0);
    const auto b = sphere_measure(norm, kDefault, 1.0, 3.0);
    CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-12 * a.value);
  }
}

TEST_CASE("weighted Lp norms of the truncated Gaussian") {
  const auto norm = parse_norm("euclid", parse_group("r:3"));
  const auto f = gaussian_field(norm);
  const double c = std::pow(pi, 1.5);
  // int e^{-r^2} r^{-2} 4 pi r^2 dr = 2 pi^{3/2};  int r^2 e^{-r^2} 4 pi r^2 dr = (3/2) pi^{3/2}
  CHECK(rel_diff(weighted_lp_norm(norm, f, 1.0, 2.0, kDefault).value, std::sqrt(2 * c)) <= 1e-6);
  CHECK(rel_diff(weighted_lp_norm(norm, f, 0.0, 2.0, kDefault, 1).value, std::sqrt(1.5 * c)) <= 1e-6);
  CHECK(rel_diff(weighted_lp_norm(norm, f, -1.0, 2.0, kDefault).value, std::sqrt(1.5 * c)) <= 1e-6);
  CHECK(weighted_lp_norm(norm, zero_field(Annulus{0.5, 1.0}), 1.0, 2.0, kDefault).value == 0.0);
  CHECK_THROWS_AS(weighted_lp_norm(norm, f, 1.0, 1.0, kDefault), Error);
}

TEST_CASE("polar fast path and Cartesian path agree for quasi-radial fields") {
  for (const auto& [g, n] : std::vector<std::pair<std::string, std::string>>{
           {"r:3", "euclid"}, {"heis1", "koranyi"}, {"aniso:1,2", "aniso"}}) {
    const auto norm = parse_norm(n, parse_group(g));
    Rng rng(8);
    const auto f = random_radial_bump(norm, rng, Annulus{0.5, 2.0}, "b");
    QuadratureConfig fine;
    fine.box_points_per_axis = norm.group().dimension() == 2 ? 512 : 128;
    const FieldSamples polar(norm, f, 1, kDefault);
    const FieldSamples cart(norm, f, 1, fine, IntegrationPath::cartesian);
    CHECK(polar.polar());
    CHECK_FALSE(cart.polar());
    for (const auto& [k, a, p] : std::vector<std::tuple<int, double, double>>{{0, 1.0, 2.0}, {1, 0.0, 2.0}, {0, 0.5, 3.0}}) {
      const auto x = polar.lp_integral(k, a, p);
      const auto y = cart.lp_integral(k, a, p);
      CAPTURE(g);
      CHECK(std::abs(x.value - y.value) <= x.error + y.error);
      CHECK(rel_diff(x.value, y.value) <= 1e-2);
    }
  }
}

TEST_CASE("refining the quadrature shrinks the self-consistency error") {
  const auto norm = parse_norm("euclid", parse_group("r:3"));
  Rng rng(77);
  const auto f = random_radial_bump(norm, rng, Annulus{0.25, 2.0}, "b");
  QuadratureConfig coarse;
  coarse.panels = 2;
  coarse.radial_order = 6;
  const auto e1 = FieldSamples(norm, f, 1, coarse).lp_integral(1, 0.0, 2.0).error;
  const auto e2 = FieldSamples(norm, f, 1, coarse.refined()).lp_integral(1, 0.0, 2.0).error;
  CHECK(e2 < e1);
}
