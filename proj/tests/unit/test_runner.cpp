#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "homckn/error.hpp"
#include "homckn/runner.hpp"

using namespace homckn;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io_error;
}

RunConfig gaussian_config(const std::string& check) {
  RunConfig c;
  c.checks = {check};
  c.corpus.kind = CorpusKind::gaussian;
  return c;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("homckn_test_runner_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config errors") {
  RunConfig c;
  c.grid.p.clear();
  CHECK(code_of([&] { run_verify(c); }) == ErrorCode::config_error);
  c = RunConfig{};
  c.grid.alpha.clear();
  CHECK(code_of([&] { run_verify(c); }) == ErrorCode::config_error);
  c = RunConfig{};
  c.checks = {"bogus"};
  CHECK(code_of([&] { run_verify(c); }) == ErrorCode::config_error);
  c = RunConfig{};
  c.grid.p = {1.0};
  CHECK(code_of([&] { run_verify(c); }) == ErrorCode::config_error);
  c = RunConfig{};
  c.norm = "koranyi";
  CHECK(code_of([&] { run_verify(c); }) == ErrorCode::incompatible_norm);
  CHECK(code_of([] { RunConfig::from_json(nlohmann::ordered_json::parse(R"({"grid": {"p": 2}})")); }) ==
        ErrorCode::config_error);
  CHECK(code_of([] { load_run_config("/nonexistent/config.json"); }) == ErrorCode::io_error);
}

TEST_CASE("single hardy check on the gaussian") {
  const auto r = run_verify(gaussian_config("hardy"));
  REQUIRE(r.reports.size() == 1);
  CHECK(r.reports[0].id == "hardy");
  CHECK(r.reports[0].satisfied);
  CHECK(r.exit_code() == 0);
  CHECK(r.summary()["reports"] == 1);
}

TEST_CASE("a gamma = Q grid entry is a flagged trivial pass") {
  auto c = gaussian_config("ckn");
  c.grid.beta = {1.0, 2.0};
  const auto r = run_verify(c);
  REQUIRE(r.reports.size() == 2);
  CHECK_FALSE(r.reports[0].trivial);
  CHECK(r.reports[1].trivial);
  CHECK(r.exit_code() == 0);
  CHECK(r.summary()["trivial"] == 1);
}

TEST_CASE("degenerate grid entries are skipped with a warning") {
  auto c = gaussian_config("hardy");
  c.grid.alpha = {0.0, 0.5};
  const auto r = run_verify(c);
  CHECK(r.reports.size() == 1);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("alpha=0.5") != std::string::npos);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("check aliases") {
  const auto a = expand_checks({"uncertainty", "combined", "ckn", "up1p"});
  CHECK(a == std::vector<std::string>{"up1p", "hpw1", "hpw2", "l2_combined_a1", "l2_combined_a2", "ckn"});
  CHECK(expand_checks({"all"}).size() == 11);
}

TEST_CASE("overrides") {
  RunConfig c;
  c.grid.pairs = {{0.0, 1.0}};
  ConfigOverrides o;
  o.group = "heis1";
  o.norm = "koranyi";
  o.alpha = std::vector<double>{0.1, 0.2};
  o.resolution = 96;
  o.seed = 5;
  o.count = 3;
  o.out = "x/out.csv";
  o.checks = std::vector<std::string>{"hardy"};
  apply_overrides(c, o);
  CHECK(c.group == "heis1");
  CHECK(c.grid.pairs.empty());
  CHECK(c.grid.alpha.size() == 2);
  CHECK(c.quadrature.box_points_per_axis == 96);
  CHECK(c.quadrature.panels == 12);
  CHECK(c.corpus.seed == 5);
  CHECK(c.corpus.count == 3);
  CHECK(c.output.csv == "x/out.csv");
  CHECK(c.output.json.empty());
  CHECK(c.checks == std::vector<std::string>{"hardy"});
}

TEST_CASE("config JSON round trip") {
  RunConfig c;
  c.group = "aniso:1,2";
  c.norm = "aniso";
  c.checks = {"ckn", "hardy"};
  c.grid.pairs = {{0.0, 1.0}, {0.5, -0.2}};
  c.corpus.count = 4;
  c.corpus.kind = CorpusKind::radial;
  c.quadrature.panels = 10;
  c.schedule = {{1e-1, 1e1}};
  c.transitions = TransitionStyle::factor_two;
  c.output.json = "a.json";
  const auto j = c.to_json();
  const auto back = RunConfig::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.grid.pairs.size() == 2);
  CHECK(back.transitions == TransitionStyle::factor_two);
}

TEST_CASE("verify outputs") {
  const auto dir = scratch("outputs");
  auto c = gaussian_config("ckn");
  c.output.json = (dir / "out.json").string();
  c.output.csv = (dir / "out.csv").string();
  const auto r = run_verify(c);
  write_verify_outputs(c, r);
  const auto doc = nlohmann::ordered_json::parse(read_text_file(c.output.json));
  CHECK(doc["schema"] == 1);
  CHECK(doc["summary"]["exit_code"] == 0);
  CHECK(parse_reports(read_text_file(c.output.json)) == r.reports);
  CHECK(read_text_file(c.output.csv).rfind(kCsvHeader, 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("sharpness run") {
  const auto dir = scratch("sharpness");
  RunConfig c;
  c.schedule = {{1e-1, 1e1}};
  c.output.json = (dir / "scan.json").string();
  const auto run = run_sharpness(c);
  CHECK(run.exit_code() == 0);
  CHECK(run.scan.entries.size() == 1);
  const auto doc = nlohmann::ordered_json::parse(read_text_file(c.output.json));
  CHECK(doc["scan"]["schedule"].size() == 1);
  c.grid.beta = {2.0};
  CHECK(code_of([&] { run_sharpness(c); }) == ErrorCode::degenerate_constant);
  fs::remove_all(dir);
}

TEST_CASE("sphere-measure cache") {
  const auto dir = scratch("cache");
  const auto norm = parse_norm("koranyi", parse_group("heis1"));
  const QuadratureConfig q;
  ::setenv("HOMCKN_CACHE_DIR", dir.c_str(), 1);
  const auto a = cached_sphere_measure(norm, q);
  CHECK(fs::exists(dir / "sphere_measures.json"));
  const auto b = cached_sphere_measure(norm, q);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  const auto cache = nlohmann::ordered_json::parse(read_text_file((dir / "sphere_measures.json").string()));
  CHECK(cache.size() == 1);
  CHECK(cache.begin().key() == "heis1|koranyi|" + q.hash());
  ::unsetenv("HOMCKN_CACHE_DIR");
  const auto c = cached_sphere_measure(norm, q);
  CHECK(c.value == doctest::Approx(a.value).epsilon(1e-14));
  fs::remove_all(dir);
}
