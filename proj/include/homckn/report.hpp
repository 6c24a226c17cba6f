#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace homckn {

enum class ReportKind { inequality, identity };

struct ReportParams {
  std::optional<double> p;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> theta;
  std::optional<int> k;
  std::optional<int> m;

  bool operator==(const ReportParams&) const = default;
};

/// One evaluated inequality or identity instance.
///
/// Inequalities: satisfied = lhs <= rhs + margin, ratio = lhs / rhs.
/// Identities: satisfied = |lhs - rhs| <= margin, ratio = |lhs - rhs| / lhs
/// (the relative residual).
struct InequalityReport {
  std::string id;
  ReportKind kind = ReportKind::inequality;
  ReportParams params;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double ratio = 0.0;
  double margin = 0.0;
  bool satisfied = false;
  bool trivial = false;
  std::string group;
  std::string norm;
  std::string field;
  std::string config_hash;
  /// Raw intermediate values (individual norms, split terms), in insertion order.
  std::vector<std::pair<std::string, double>> extras;

  bool operator==(const InequalityReport&) const = default;
};

/// Fills ratio and satisfied from lhs, rhs and margin.
void finalize(InequalityReport& report);

nlohmann::ordered_json to_json(const InequalityReport& report);
InequalityReport report_from_json(const nlohmann::ordered_json& j);

/// Non-finite doubles are written as the strings "inf", "-inf", "nan" so the
/// document stays valid JSON and round-trips.
nlohmann::ordered_json json_number(double v);
double number_from_json(const nlohmann::ordered_json& j);

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(const std::string& name);
/// json unless the path ends in ".csv".
ReportFormat format_for_path(const std::string& path);

inline constexpr int kReportSchema = 1;
inline constexpr const char* kCsvHeader = "id,group,norm,p,alpha,beta,k,m,lhs,rhs,ratio,margin,satisfied";

/// {"schema": 1, "generated_at": ..., "reports": [...]} plus any extra
/// top-level members. The timestamp line is the only nondeterministic part.
std::string render_json(const std::vector<InequalityReport>& reports, const nlohmann::ordered_json& extra = {},
                        std::optional<std::string> timestamp = std::nullopt);
std::string render_csv(const std::vector<InequalityReport>& reports);

std::vector<InequalityReport> parse_reports(const std::string& json_text);

/// Writes the batch. Empty batches need allow_empty; unwritable paths raise io-error.
void emit_report(const std::vector<InequalityReport>& reports, ReportFormat format, const std::string& path,
                 bool allow_empty = false, const nlohmann::ordered_json& extra = {});

/// UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

/// Writes text to path, raising io-error on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace homckn
