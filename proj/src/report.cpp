#include "homckn/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "homckn/error.hpp"

namespace homckn {

using nlohmann::ordered_json;

void finalize(InequalityReport& r) {
  if (r.kind == ReportKind::identity) {
    const double diff = std::abs(r.lhs - r.rhs);
    r.ratio = r.lhs != 0.0 ? diff / std::abs(r.lhs) : diff;
    r.satisfied = diff <= r.margin;
    return;
  }
  if (r.rhs != 0.0) {
    r.ratio = r.lhs / r.rhs;
  } else {
    r.ratio = r.lhs == 0.0 ? 0.0 : INFINITY;
  }
  r.satisfied = r.trivial || r.lhs <= r.rhs + r.margin;
}

ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from_json(const ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw Error(ErrorCode::config_error, "expected a number, got " + j.dump());
}

namespace {

template <class T>
ordered_json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, double>) {
    return json_number(*v);
  } else {
    return *v;
  }
}

std::optional<double> opt_double(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return number_from_json(j[key]);
}

std::optional<int> opt_int(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<int>();
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string csv_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, double>) {
    return csv_number(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ordered_json to_json(const InequalityReport& r) {
  ordered_json params;
  params["p"] = opt(r.params.p);
  params["alpha"] = opt(r.params.alpha);
  params["beta"] = opt(r.params.beta);
  params["gamma"] = opt(r.params.gamma);
  params["theta"] = opt(r.params.theta);
  params["k"] = opt(r.params.k);
  params["m"] = opt(r.params.m);

  ordered_json extras = ordered_json::array();
  for (const auto& [name, value] : r.extras) extras.push_back({{"name", name}, {"value", json_number(value)}});

  ordered_json j;
  j["id"] = r.id;
  j["kind"] = r.kind == ReportKind::identity ? "identity" : "inequality";
  j["params"] = params;
  j["lhs"] = json_number(r.lhs);
  j["rhs"] = json_number(r.rhs);
  j["constant"] = json_number(r.constant);
  j["ratio"] = json_number(r.ratio);
  j["margin"] = json_number(r.margin);
  j["satisfied"] = r.satisfied;
  j["trivial"] = r.trivial;
  j["group"] = r.group;
  j["norm"] = r.norm;
  j["field"] = r.field;
  j["config_hash"] = r.config_hash;
  j["extras"] = extras;
  return j;
}

InequalityReport report_from_json(const ordered_json& j) {
  try {
    InequalityReport r;
    r.id = j.at("id").get<std::string>();
    r.kind = j.at("kind").get<std::string>() == "identity" ? ReportKind::identity : ReportKind::inequality;
    const auto& p = j.at("params");
    r.params.p = opt_double(p, "p");
    r.params.alpha = opt_double(p, "alpha");
    r.params.beta = opt_double(p, "beta");
    r.params.gamma = opt_double(p, "gamma");
    r.params.theta = opt_double(p, "theta");
    r.params.k = opt_int(p, "k");
    r.params.m = opt_int(p, "m");
    r.lhs = number_from_json(j.at("lhs"));
    r.rhs = number_from_json(j.at("rhs"));
    r.constant = number_from_json(j.at("constant"));
    r.ratio = number_from_json(j.at("ratio"));
    r.margin = number_from_json(j.at("margin"));
    r.satisfied = j.at("satisfied").get<bool>();
    r.trivial = j.at("trivial").get<bool>();
    r.group = j.at("group").get<std::string>();
    r.norm = j.at("norm").get<std::string>();
    r.field = j.at("field").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    for (const auto& e : j.at("extras")) {
      r.extras.emplace_back(e.at("name").get<std::string>(), number_from_json(e.at("value")));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config_error, std::string("malformed report: ") + e.what());
  }
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw Error(ErrorCode::config_error, "unknown report format '" + name + "'");
}

ReportFormat format_for_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0 ? ReportFormat::csv : ReportFormat::json;
}

std::string render_json(const std::vector<InequalityReport>& reports, const ordered_json& extra,
                        std::optional<std::string> timestamp) {
  ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["generated_at"] = timestamp ? *timestamp : utc_timestamp();
  if (extra.is_object()) {
    for (const auto& [key, value] : extra.items()) doc[key] = value;
  }
  ordered_json list = ordered_json::array();
  for (const auto& r : reports) list.push_back(to_json(r));
  doc["reports"] = list;
  return doc.dump(2) + "\n";
}

std::string render_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : reports) {
    out << csv_text(r.id) << ',' << csv_text(r.group) << ',' << csv_text(r.norm) << ',' << csv_opt(r.params.p) << ','
        << csv_opt(r.params.alpha) << ',' << csv_opt(r.params.beta) << ',' << csv_opt(r.params.k) << ','
        << csv_opt(r.params.m) << ',' << csv_number(r.lhs) << ',' << csv_number(r.rhs) << ',' << csv_number(r.ratio)
        << ',' << csv_number(r.margin) << ',' << (r.satisfied ? "true" : "false") << "\n";
  }
  return out.str();
}

std::vector<InequalityReport> parse_reports(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config_error, std::string("invalid report JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", 0) != kReportSchema || !doc.contains("reports")) {
    throw Error(ErrorCode::config_error, "not a schema-1 report document");
  }
  std::vector<InequalityReport> out;
  for (const auto& j : doc["reports"]) out.push_back(report_from_json(j));
  return out;
}

void emit_report(const std::vector<InequalityReport>& reports, ReportFormat format, const std::string& path,
                 bool allow_empty, const ordered_json& extra) {
  if (reports.empty() && !allow_empty) throw Error(ErrorCode::invalid_parameter, "no reports to emit");
  write_text_file(path, format == ReportFormat::csv ? render_csv(reports) : render_json(reports, extra));
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace homckn
