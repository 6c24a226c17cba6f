#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "homckn/error.hpp"
#include "homckn/report.hpp"

using namespace homckn;

namespace {

InequalityReport sample(const std::string& id, double lhs, double rhs) {
  InequalityReport r;
  r.id = id;
  r.params = {2.0, 0.0, 1.0, 2.0, std::nullopt, std::nullopt, std::nullopt};
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = 0.5;
  r.margin = 1e-9;
  r.group = "r:3";
  r.norm = "euclid";
  r.field = "bump-r-0";
  r.config_hash = "abc";
  r.extras = {{"f_gamma_integral", 0.1 + 0.2}, {"rf_alpha_norm", 1.0 / 3.0}};
  finalize(r);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("homckn_test_report_" + name)).string();
}

}  // namespace

TEST_CASE("finalize") {
  auto r = sample("ckn", 1.0, 2.0);
  CHECK(r.ratio == 0.5);
  CHECK(r.satisfied);
  r = sample("ckn", 2.0 + 1e-10, 2.0);
  CHECK(r.satisfied);
  r = sample("ckn", 2.1, 2.0);
  CHECK_FALSE(r.satisfied);
  r = sample("ckn", 0.0, 0.0);
  CHECK(r.ratio == 0.0);
  CHECK(r.satisfied);
  r = sample("ckn", 1.0, 0.0);
  CHECK(std::isinf(r.ratio));
  CHECK_FALSE(r.satisfied);
  r.trivial = true;
  finalize(r);
  CHECK(r.satisfied);

  InequalityReport id;
  id.kind = ReportKind::identity;
  id.lhs = 1.0;
  id.rhs = 1.0 + 1e-8;
  id.margin = 1e-7;
  finalize(id);
  CHECK(id.satisfied);
  CHECK(id.ratio == doctest::Approx(1e-8));
  id.margin = 1e-9;
  finalize(id);
  CHECK_FALSE(id.satisfied);
}

TEST_CASE("one report renders as two CSV lines") {
  const auto lines = lines_of(render_csv({sample("ckn", 1.0, 2.0)}));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kCsvHeader);
  CHECK(lines[1].rfind("ckn,r:3,euclid,2,0,1,,,1,2,0.5,", 0) == 0);
  CHECK(lines[1].substr(lines[1].size() - 4) == "true");
}

TEST_CASE("JSON round trip") {
  std::vector<InequalityReport> reports{sample("ckn", 1.0, 2.0), sample("hardy", 0.3, 0.7), sample("x", 1.0, 0.0)};
  reports[1].kind = ReportKind::identity;
  reports[1].params.k = 3;
  reports[1].params.theta = -0.25;
  finalize(reports[1]);
  reports[2].trivial = true;
  const auto text = render_json(reports, nlohmann::ordered_json{{"note", "x"}}, "2026-01-01T00:00:00Z");
  const auto doc = nlohmann::ordered_json::parse(text);
  CHECK(doc["schema"] == kReportSchema);
  CHECK(doc["generated_at"] == "2026-01-01T00:00:00Z");
  CHECK(doc["note"] == "x");
  const auto back = parse_reports(text);
  REQUIRE(back.size() == reports.size());
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == reports[i]);
  CHECK(std::isinf(back[2].ratio));
  // stable ordering: same input renders the same bytes
  CHECK(render_json(reports, {}, "t") == render_json(back, {}, "t"));
}

TEST_CASE("non-finite numbers") {
  CHECK(json_number(INFINITY) == "inf");
  CHECK(json_number(-INFINITY) == "-inf");
  CHECK(json_number(NAN) == "nan");
  CHECK(std::isnan(number_from_json(json_number(NAN))));
  CHECK(number_from_json(json_number(2.5)) == 2.5);
}

TEST_CASE("emit_report") {
  const auto path = temp_path("out.csv");
  emit_report({sample("ckn", 1.0, 2.0)}, format_for_path(path), path);
  CHECK(lines_of(read_text_file(path)).size() == 2);
  std::filesystem::remove(path);

  try {
    emit_report({}, ReportFormat::json, temp_path("empty.json"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_parameter);
  }
  const auto empty = temp_path("empty.json");
  emit_report({}, ReportFormat::json, empty, true);
  CHECK(parse_reports(read_text_file(empty)).empty());
  std::filesystem::remove(empty);

  try {
    emit_report({sample("ckn", 1.0, 2.0)}, ReportFormat::json, "/nonexistent-dir/sub/out.json");
    FAIL("expected io-error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_error);
  }
}

TEST_CASE("format selection") {
  CHECK(format_for_path("a/b.csv") == ReportFormat::csv);
  CHECK(format_for_path("a/b.json") == ReportFormat::json);
  CHECK(format_for_path("b") == ReportFormat::json);
  CHECK(parse_report_format("csv") == ReportFormat::csv);
  CHECK_THROWS_AS(parse_report_format("xml"), Error);
  const auto ts = utc_timestamp();
  CHECK(ts.size() == 20);
  CHECK(ts.back() == 'Z');
}
