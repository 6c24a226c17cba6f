#include "homckn/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>

#include "homckn/error.hpp"
#include "homckn/inequalities.hpp"

namespace homckn {

using nlohmann::ordered_json;

namespace {

const std::vector<std::string> kAtomicChecks{"ckn",          "hardy",          "up1p",           "hpw1",
                                             "hpw2",         "higher_order",   "higher_order_pair", "l2_identity",
                                             "l2_sharp_higher", "l2_combined_a1", "l2_combined_a2"};

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

template <class T>
std::vector<T> list_of(const ordered_json& j, const char* key) {
  if (!j.is_array()) throw Error(ErrorCode::config_error, std::string("'") + key + "' must be a list");
  std::vector<T> out;
  for (const auto& v : j) out.push_back(v.get<T>());
  return out;
}

bool uses(const std::vector<std::string>& checks, std::initializer_list<const char*> names) {
  for (const auto& c : checks) {
    for (const char* n : names) {
      if (c == n) return true;
    }
  }
  return false;
}

int max_order_for(const std::vector<std::string>& checks, const ParameterGrid& g) {
  const int kmax = g.k.empty() ? 0 : *std::max_element(g.k.begin(), g.k.end());
  const int mmax = g.m.empty() ? 0 : *std::max_element(g.m.begin(), g.m.end());
  int order = 1;
  if (uses(checks, {"higher_order", "l2_identity", "l2_sharp_higher", "l2_combined_a1"})) order = std::max(order, kmax);
  if (uses(checks, {"l2_combined_a2"})) order = std::max(order, kmax + 1);
  if (uses(checks, {"higher_order_pair"})) order = std::max({order, kmax, mmax + 1});
  return order;
}

}  // namespace

std::vector<std::pair<double, double>> ParameterGrid::alpha_beta() const {
  if (!pairs.empty()) return pairs;
  std::vector<std::pair<double, double>> out;
  for (double a : alpha) {
    for (double b : beta) out.emplace_back(a, b);
  }
  return out;
}

std::vector<std::string> expand_checks(const std::vector<std::string>& checks) {
  std::vector<std::string> out;
  auto add = [&](const std::string& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  for (const auto& c : checks) {
    if (c == "all") {
      for (const auto& a : kAtomicChecks) add(a);
    } else if (c == "uncertainty") {
      add("up1p");
      add("hpw1");
      add("hpw2");
    } else if (c == "l2_combined" || c == "combined") {
      add("l2_combined_a1");
      add("l2_combined_a2");
    } else if (c == "identities" || c == "identity") {
      add("l2_identity");
    } else if (std::find(kAtomicChecks.begin(), kAtomicChecks.end(), c) != kAtomicChecks.end()) {
      add(c);
    } else {
      throw Error(ErrorCode::config_error, "unknown check '" + c + "'");
    }
  }
  return out;
}

void RunConfig::validate() const {
  parse_norm(norm, parse_group(group));
  if (checks.empty()) throw Error(ErrorCode::config_error, "no checks selected");
  const auto atomic = expand_checks(checks);
  if (grid.p.empty()) throw Error(ErrorCode::config_error, "empty parameter grid: p");
  for (double p : grid.p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::config_error, "grid p values must lie in (1, inf)");
  }
  if (grid.alpha.empty()) throw Error(ErrorCode::config_error, "empty parameter grid: alpha");
  if (grid.pairs.empty() && grid.beta.empty()) throw Error(ErrorCode::config_error, "empty parameter grid: beta");
  if (grid.k.empty() && uses(atomic, {"higher_order", "higher_order_pair", "l2_identity", "l2_sharp_higher",
                                      "l2_combined_a1", "l2_combined_a2"})) {
    throw Error(ErrorCode::config_error, "empty parameter grid: k");
  }
  if (grid.m.empty() && uses(atomic, {"higher_order_pair"})) throw Error(ErrorCode::config_error, "empty parameter grid: m");
  for (int k : grid.k) {
    if (k < 0 || k > Jet::kMaxOrder - 1) throw Error(ErrorCode::config_error, "grid k values must lie in [0, 7]");
  }
  for (int m : grid.m) {
    if (m < 0 || m > Jet::kMaxOrder - 1) throw Error(ErrorCode::config_error, "grid m values must lie in [0, 7]");
  }
  if (corpus.count < 1) throw Error(ErrorCode::config_error, "corpus count must be at least 1");
  if (!(corpus.r_min > 0.0) || !(corpus.r_max > corpus.r_min)) {
    throw Error(ErrorCode::config_error, "corpus support needs 0 < r_min < r_max");
  }
  try {
    quadrature.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::config_error, e.what());
  }
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["group"] = group;
  j["norm"] = norm;
  j["checks"] = checks;
  ordered_json g;
  g["p"] = grid.p;
  g["alpha"] = grid.alpha;
  g["beta"] = grid.beta;
  g["k"] = grid.k;
  g["m"] = grid.m;
  ordered_json pairs = ordered_json::array();
  for (const auto& [a, b] : grid.pairs) pairs.push_back({a, b});
  g["pairs"] = pairs;
  j["grid"] = g;
  j["corpus"] = {{"kind", to_string(corpus.kind)}, {"count", corpus.count}, {"seed", corpus.seed},
                 {"r_min", corpus.r_min},           {"r_max", corpus.r_max}};
  j["quadrature"] = {{"radial_order", quadrature.radial_order},
                     {"panels", quadrature.panels},
                     {"box_points_per_axis", quadrature.box_points_per_axis},
                     {"mc_samples", quadrature.mc_samples}};
  ordered_json sched = ordered_json::array();
  for (const auto& [e, r] : schedule) sched.push_back({e, r});
  j["sharpness"] = {{"schedule", sched}, {"transitions", to_string(transitions)}};
  j["output"] = {{"json", output.json}, {"csv", output.csv}};
  return j;
}

RunConfig RunConfig::from_json(const ordered_json& j) {
  if (!j.is_object()) throw Error(ErrorCode::config_error, "config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("group")) c.group = j["group"].get<std::string>();
    if (j.contains("norm")) c.norm = j["norm"].get<std::string>();
    if (j.contains("checks")) c.checks = list_of<std::string>(j["checks"], "checks");
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      if (g.contains("p")) c.grid.p = list_of<double>(g["p"], "p");
      if (g.contains("alpha")) c.grid.alpha = list_of<double>(g["alpha"], "alpha");
      if (g.contains("beta")) c.grid.beta = list_of<double>(g["beta"], "beta");
      if (g.contains("k")) c.grid.k = list_of<int>(g["k"], "k");
      if (g.contains("m")) c.grid.m = list_of<int>(g["m"], "m");
      if (g.contains("pairs")) {
        for (const auto& pr : g["pairs"]) {
          if (!pr.is_array() || pr.size() != 2) throw Error(ErrorCode::config_error, "pairs entries are [alpha, beta]");
          c.grid.pairs.emplace_back(pr[0].get<double>(), pr[1].get<double>());
        }
      }
    }
    if (j.contains("corpus")) {
      const auto& cp = j["corpus"];
      if (cp.contains("kind")) c.corpus.kind = parse_corpus_kind(cp["kind"].get<std::string>());
      if (cp.contains("count")) c.corpus.count = cp["count"].get<int>();
      if (cp.contains("seed")) c.corpus.seed = cp["seed"].get<std::uint64_t>();
      if (cp.contains("r_min")) c.corpus.r_min = cp["r_min"].get<double>();
      if (cp.contains("r_max")) c.corpus.r_max = cp["r_max"].get<double>();
    }
    if (j.contains("quadrature")) {
      const auto& q = j["quadrature"];
      if (q.contains("radial_order")) c.quadrature.radial_order = q["radial_order"].get<int>();
      if (q.contains("panels")) c.quadrature.panels = q["panels"].get<int>();
      if (q.contains("box_points_per_axis")) c.quadrature.box_points_per_axis = q["box_points_per_axis"].get<int>();
      if (q.contains("mc_samples")) c.quadrature.mc_samples = q["mc_samples"].get<int>();
    }
    if (j.contains("sharpness")) {
      const auto& s = j["sharpness"];
      if (s.contains("schedule")) {
        c.schedule.clear();
        for (const auto& e : s["schedule"]) {
          if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::config_error, "schedule entries are [epsilon, r_out]");
          c.schedule.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
      }
      if (s.contains("transitions")) c.transitions = parse_transition_style(s["transitions"].get<std::string>());
    }
    if (j.contains("output")) {
      const auto& o = j["output"];
      if (o.contains("json")) c.output.json = o["json"].get<std::string>();
      if (o.contains("csv")) c.output.csv = o["csv"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config_error, std::string("bad config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config_error) throw;
    throw Error(ErrorCode::config_error, e.what());
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config_error, "cannot parse '" + path + "': " + e.what());
  }
  return RunConfig::from_json(j);
}

void apply_overrides(RunConfig& c, const ConfigOverrides& o) {
  if (o.group) c.group = *o.group;
  if (o.norm) c.norm = *o.norm;
  if (o.p) c.grid.p = *o.p;
  if (o.alpha) {
    c.grid.alpha = *o.alpha;
    c.grid.pairs.clear();
  }
  if (o.beta) {
    c.grid.beta = *o.beta;
    c.grid.pairs.clear();
  }
  if (o.k) c.grid.k = *o.k;
  if (o.m) c.grid.m = *o.m;
  if (o.resolution) {
    c.quadrature.box_points_per_axis = *o.resolution;
    c.quadrature.panels = std::max(2, *o.resolution / 8);
  }
  if (o.seed) c.corpus.seed = *o.seed;
  if (o.count) c.corpus.count = *o.count;
  if (o.out) {
    if (format_for_path(*o.out) == ReportFormat::csv) {
      c.output.csv = *o.out;
    } else {
      c.output.json = *o.out;
    }
  }
  if (o.checks) c.checks = *o.checks;
}

ordered_json VerifyResult::summary() const {
  return {{"reports", reports.size()},
          {"unsatisfied", unsatisfied},
          {"trivial", std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.trivial; })},
          {"skipped", warnings.size()},
          {"errors", errors.size()},
          {"exit_code", exit_code()}};
}

namespace {

void add_unique(std::vector<std::string>& list, const std::string& msg) {
  if (std::find(list.begin(), list.end(), msg) == list.end()) list.push_back(msg);
}

}  // namespace

VerifyResult run_verify(const RunConfig& config) {
  config.validate();
  const auto checks = expand_checks(config.checks);
  const auto norm = parse_norm(config.norm, parse_group(config.group));
  cached_sphere_measure(norm, config.quadrature);
  const auto fields = make_corpus(norm, config.corpus);
  const auto pairs = config.grid.alpha_beta();
  const int order = max_order_for(checks, config.grid);

  VerifyResult result;
  for (const auto& f : fields) {
    std::optional<FieldEvaluator> ev;
    try {
      ev.emplace(norm, f, order, config.quadrature);
    } catch (const Error& e) {
      result.errors.push_back(f.id() + ": " + e.what());
      continue;
    }
    auto attempt = [&](const std::string& label, const std::function<InequalityReport()>& fn) {
      try {
        auto r = fn();
        if (!r.satisfied) ++result.unsatisfied;
        result.reports.push_back(std::move(r));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::degenerate_constant || e.code() == ErrorCode::invalid_parameter) {
          add_unique(result.warnings, "skipped " + label + ": " + e.what());
        } else {
          result.errors.push_back(f.id() + " " + label + ": " + e.what());
        }
      }
    };
    auto pk = [](double p, double a) { return fmt("p=%g", p) + fmt(" alpha=%g", a); };

    for (const auto& check : checks) {
      if (check == "ckn") {
        for (double p : config.grid.p) {
          for (const auto& [a, b] : pairs) {
            attempt("ckn " + pk(p, a) + fmt(" beta=%g", b), [&] { return ev->ckn(CKNParams(p, a, b)); });
          }
        }
      } else if (check == "hardy") {
        for (double p : config.grid.p) {
          for (double a : config.grid.alpha) attempt("hardy " + pk(p, a), [&] { return ev->hardy(p, a); });
        }
      } else if (check == "up1p") {
        for (double p : config.grid.p) {
          attempt("up1p " + fmt("p=%g", p), [&] { return ev->uncertainty(p, UncertaintyVariant::up1p); });
        }
      } else if (check == "hpw1") {
        for (double p : config.grid.p) {
          for (double a : config.grid.alpha) {
            attempt("hpw1 " + pk(p, a), [&] { return ev->uncertainty(p, UncertaintyVariant::hpw1, a); });
          }
        }
      } else if (check == "hpw2") {
        for (double p : config.grid.p) {
          attempt("hpw2 " + fmt("p=%g", p), [&] { return ev->uncertainty(p, UncertaintyVariant::hpw2); });
        }
      } else if (check == "higher_order") {
        for (double p : config.grid.p) {
          for (double a : config.grid.alpha) {
            for (int k : config.grid.k) {
              attempt("higher_order " + fmt("p=%g", p) + fmt(" theta=%g", a) + " k=" + std::to_string(k),
                      [&] { return ev->higher_order(p, a, k); });
            }
          }
        }
      } else if (check == "higher_order_pair") {
        for (double p : config.grid.p) {
          for (const auto& [a, b] : pairs) {
            for (int k : config.grid.k) {
              for (int m : config.grid.m) {
                attempt("higher_order_pair " + pk(p, a) + fmt(" beta=%g", b) + " k=" + std::to_string(k) +
                            " m=" + std::to_string(m),
                        [&] { return ev->higher_order_pair(CKNParams(p, a, b), k, m); });
              }
            }
          }
        }
      } else if (check == "l2_identity" || check == "l2_sharp_higher") {
        for (double a : config.grid.alpha) {
          for (int k : config.grid.k) {
            attempt(check + fmt(" alpha=%g", a) + " k=" + std::to_string(k), [&] {
              return check == "l2_identity" ? ev->l2_identity(a, k) : ev->l2_sharp_higher(a, k);
            });
          }
        }
      } else if (check == "l2_combined_a1" || check == "l2_combined_a2") {
        const auto variant = check == "l2_combined_a1" ? CombinedVariant::a1 : CombinedVariant::a2;
        for (const auto& [a, b] : pairs) {
          for (int k : config.grid.k) {
            attempt(check + fmt(" alpha=%g", a) + fmt(" beta=%g", b) + " k=" + std::to_string(k),
                    [&] { return ev->l2_combined(a, b, k, variant); });
          }
        }
      }
    }
  }
  return result;
}

void write_verify_outputs(const RunConfig& config, const VerifyResult& result) {
  ordered_json extra;
  extra["config"] = config.to_json();
  extra["summary"] = result.summary();
  extra["warnings"] = result.warnings;
  extra["errors"] = result.errors;
  if (!config.output.json.empty()) {
    write_text_file(config.output.json, render_json(result.reports, extra));
  }
  if (!config.output.csv.empty()) write_text_file(config.output.csv, render_csv(result.reports));
}

SharpnessRun run_sharpness(const RunConfig& config) {
  const auto norm = parse_norm(config.norm, parse_group(config.group));
  if (config.grid.p.empty() || config.grid.alpha.empty() || (config.grid.beta.empty() && config.grid.pairs.empty())) {
    throw Error(ErrorCode::config_error, "sharpness needs p, alpha and beta");
  }
  const auto [alpha, beta] = config.grid.alpha_beta().front();
  SharpnessRun run{sharpness_scan(norm, config.grid.p.front(), alpha, beta, config.schedule, config.quadrature,
                                  config.transitions)};
  if (!config.output.json.empty()) {
    ordered_json doc;
    doc["schema"] = kReportSchema;
    doc["generated_at"] = utc_timestamp();
    doc["scan"] = to_json(run.scan);
    write_text_file(config.output.json, doc.dump(2) + "\n");
  }
  return run;
}

SphereMeasure cached_sphere_measure(const QuasiNormSpec& norm, const QuadratureConfig& config) {
  const char* dir = std::getenv("HOMCKN_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return sphere_measure(norm, config);
  namespace fs = std::filesystem;
  const fs::path path = fs::path(dir) / "sphere_measures.json";
  const std::string key = norm.group().name() + "|" + norm.name() + "|" + config.hash();
  ordered_json cache = ordered_json::object();
  if (fs::exists(path)) {
    try {
      cache = ordered_json::parse(read_text_file(path.string()));
    } catch (const nlohmann::json::exception&) {
      cache = ordered_json::object();  // unreadable cache: recompute and overwrite
    }
  }
  if (cache.is_object() && cache.contains(key)) {
    const auto& e = cache[key];
    SphereMeasure m{e.at("value").get<double>(), e.at("error").get<double>(), norm.group().name(), norm.name(),
                    config.hash()};
    seed_sphere_measure(norm, config, m);
    return m;
  }
  const auto m = sphere_measure(norm, config);
  if (!cache.is_object()) cache = ordered_json::object();
  cache[key] = {{"group", m.group}, {"norm", m.norm}, {"config_hash", m.config_hash}, {"value", m.value},
                {"error", m.error_estimate}};
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path tmp = path.string() + ".tmp";
  write_text_file(tmp.string(), cache.dump(2) + "\n");
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot update sphere-measure cache: " + ec.message());
  return m;
}

}  // namespace homckn
