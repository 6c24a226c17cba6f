// homckn command-line front end.
#include <cstdio>

#include "CLI11.hpp"
#include "homckn/calculus.hpp"
#include "homckn/constants.hpp"
#include "homckn/error.hpp"
#include "homckn/runner.hpp"

using namespace homckn;
using nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 2;

struct Flags {
  std::string config;
  std::string group, norm, out, schedule, transitions;
  std::vector<double> p, alpha, beta;
  std::vector<int> k, m;
  std::vector<std::string> checks;
  int resolution = 0;
  std::uint64_t seed = 0;
  int count = 0;
};

void add_run_flags(CLI::App* cmd, Flags& f, bool with_checks) {
  cmd->add_option("--config", f.config, "JSON run configuration");
  cmd->add_option("--group", f.group, "group id: r:<n>, aniso:<w1,...>, heis1");
  cmd->add_option("--norm", f.norm, "quasi-norm: euclid, aniso, max, koranyi");
  cmd->add_option("--p", f.p, "exponents p")->delimiter(',');
  cmd->add_option("--alpha", f.alpha, "alpha values")->delimiter(',');
  cmd->add_option("--beta", f.beta, "beta values")->delimiter(',');
  cmd->add_option("--k", f.k, "derivative orders k")->delimiter(',');
  cmd->add_option("--m", f.m, "derivative orders m")->delimiter(',');
  cmd->add_option("--resolution", f.resolution, "Cartesian points per axis (radial panels = n/8)");
  cmd->add_option("--seed", f.seed, "corpus seed");
  cmd->add_option("--count", f.count, "corpus size");
  cmd->add_option("--out", f.out, "output path (.json or .csv)");
  if (with_checks) cmd->add_option("--check", f.checks, "checks to run")->delimiter(',');
}

RunConfig build_config(const Flags& f, CLI::App* cmd) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_run_config(f.config);
  ConfigOverrides o;
  if (!f.group.empty()) o.group = f.group;
  if (!f.norm.empty()) o.norm = f.norm;
  if (!f.p.empty()) o.p = f.p;
  if (!f.alpha.empty()) o.alpha = f.alpha;
  if (!f.beta.empty()) o.beta = f.beta;
  if (!f.k.empty()) o.k = f.k;
  if (!f.m.empty()) o.m = f.m;
  if (cmd->count("--resolution") > 0) o.resolution = f.resolution;
  if (cmd->count("--seed") > 0) o.seed = f.seed;
  if (cmd->count("--count") > 0) o.count = f.count;
  if (!f.out.empty()) o.out = f.out;
  if (!f.checks.empty()) o.checks = f.checks;
  apply_overrides(c, o);
  return c;
}

void print_summary(const VerifyResult& r) {
  for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const auto& e : r.errors) std::fprintf(stderr, "error: %s\n", e.c_str());
  for (const auto& rep : r.reports) {
    if (!rep.satisfied) {
      std::fprintf(stderr, "UNSATISFIED %s field=%s lhs=%.6g rhs=%.6g margin=%.3g\n", rep.id.c_str(), rep.field.c_str(),
                   rep.lhs, rep.rhs, rep.margin);
    }
  }
  std::printf("%s\n", r.summary().dump().c_str());
}

int cmd_verify(const Flags& f, CLI::App* cmd) {
  const auto config = build_config(f, cmd);
  const auto result = run_verify(config);
  write_verify_outputs(config, result);
  print_summary(result);
  return result.exit_code();
}

int cmd_identity(const Flags& f, CLI::App* cmd) {
  auto config = build_config(f, cmd);
  config.checks = {"l2_identity"};
  if (f.config.empty()) config.corpus.kind = CorpusKind::radial;
  const auto result = run_verify(config);
  write_verify_outputs(config, result);
  for (const auto& r : result.reports) {
    std::printf("%s alpha=%g k=%d lhs=%.15g rhs=%.15g relative_residual=%.3e %s\n", r.field.c_str(), *r.params.alpha,
                *r.params.k, r.lhs, r.rhs, r.ratio, r.satisfied ? "ok" : "FAIL");
  }
  print_summary(result);
  return result.exit_code();
}

int cmd_sharpness(const Flags& f, CLI::App* cmd) {
  auto config = build_config(f, cmd);
  if (!f.schedule.empty()) config.schedule = parse_schedule(f.schedule);
  if (!f.transitions.empty()) config.transitions = parse_transition_style(f.transitions);
  const auto run = run_sharpness(config);
  std::printf("%s\n", to_json(run.scan).dump(2).c_str());
  if (!run.scan.lower_bound_ok) std::fprintf(stderr, "error: an attained constant undercuts |Q-gamma|/p\n");
  return run.exit_code();
}

int cmd_sphere(const Flags& f, CLI::App* cmd) {
  const auto config = build_config(f, cmd);
  const auto norm = parse_norm(config.norm, parse_group(config.group));
  const auto m = cached_sphere_measure(norm, config.quadrature);
  ordered_json j{{"group", m.group},
                 {"norm", m.norm},
                 {"homogeneous_dimension", homogeneous_dimension(norm.group())},
                 {"value", m.value},
                 {"error_estimate", m.error_estimate},
                 {"config_hash", m.config_hash}};
  std::printf("%s\n", j.dump(2).c_str());
  if (!f.out.empty()) write_text_file(f.out, j.dump(2) + "\n");
  return 0;
}

int cmd_constants(const Flags& f, CLI::App* cmd, double q_flag, double theta) {
  const auto config = build_config(f, cmd);
  ConstantInputs in;
  in.q = q_flag > 0.0 ? q_flag : homogeneous_dimension(parse_group(config.group));
  in.p = config.grid.p.front();
  in.alpha = config.grid.alpha.front();
  in.beta = config.grid.beta.empty() ? 0.0 : config.grid.beta.front();
  in.theta = cmd->count("--theta") > 0 ? theta : in.alpha;
  in.k = config.grid.k.empty() ? 1 : config.grid.k.front();
  in.m = config.grid.m.empty() ? 1 : config.grid.m.front();
  ordered_json table = ordered_json::array();
  for (const auto& c : constant_table(in)) {
    ordered_json e{{"name", c.name}};
    e["value"] = c.value ? ordered_json(*c.value) : ordered_json(nullptr);
    if (!c.note.empty()) e["note"] = c.note;
    table.push_back(e);
  }
  ordered_json j{{"Q", in.q}, {"p", in.p}, {"alpha", in.alpha}, {"beta", in.beta}, {"theta", in.theta},
                 {"k", in.k}, {"m", in.m}, {"constants", table}};
  std::printf("%s\n", j.dump(2).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of Hardy and Caffarelli-Kohn-Nirenberg type inequalities on homogeneous groups"};
  app.require_subcommand(1);

  Flags verify_flags, identity_flags, sharp_flags, sphere_flags, const_flags;
  double q_flag = 0.0, theta = 0.0;

  auto* verify = app.add_subcommand("verify", "evaluate inequality reports over a corpus and parameter grid");
  add_run_flags(verify, verify_flags, true);

  auto* identity = app.add_subcommand("identity-check", "residuals of the exact L2 remainder identity");
  add_run_flags(identity, identity_flags, false);

  auto* sharp = app.add_subcommand("scan-sharpness", "attained constants of truncated extremizers");
  add_run_flags(sharp, sharp_flags, false);
  sharp->add_option("--schedule", sharp_flags.schedule, "eps:R pairs, e.g. 1e-1:1e1,1e-2:1e2");
  sharp->add_option("--transitions", sharp_flags.transitions, "balanced or factor-two");

  auto* sphere = app.add_subcommand("sphere-measure", "total measure of the unit pseudo-sphere");
  add_run_flags(sphere, sphere_flags, false);

  auto* constants = app.add_subcommand("constants", "constant table for given Q, p, alpha, beta, k, m");
  add_run_flags(constants, const_flags, false);
  constants->add_option("--q", q_flag, "homogeneous dimension (default: from --group)");
  constants->add_option("--theta", theta, "theta for A(theta,k) (default: alpha)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(verify_flags, verify);
    if (identity->parsed()) return cmd_identity(identity_flags, identity);
    if (sharp->parsed()) return cmd_sharpness(sharp_flags, sharp);
    if (sphere->parsed()) return cmd_sphere(sphere_flags, sphere);
    if (constants->parsed()) return cmd_constants(const_flags, constants, q_flag, theta);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    const bool config = e.code() == ErrorCode::config_error || e.code() == ErrorCode::incompatible_norm ||
                        e.code() == ErrorCode::unsupported_group;
    return config ? kExitConfig : 1;
  }
  return 0;
}
