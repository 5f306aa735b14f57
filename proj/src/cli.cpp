#include "lambdach/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "lambdach/lhv_models.hpp"
#include "lambdach/spacelike.hpp"

#ifndef LAMBDACH_VERSION
#define LAMBDACH_VERSION "0.0.0"
#endif

namespace lambdach::cli {

using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json to_json(const UnitVector3& n) { return json::array({n.x(), n.y(), n.z()}); }

json to_json(const CHSettings& s) {
  return {{"n1", to_json(s.n1)}, {"n1p", to_json(s.n1p)}, {"n2", to_json(s.n2)}, {"n2p", to_json(s.n2p)}};
}

json to_json(const ProbabilityTable& t) {
  return {{"p_12", t.p_12}, {"p_12p", t.p_12p}, {"p_1p2", t.p_1p2},
          {"p_1p2p", t.p_1p2p}, {"p_1p", t.p_1p}, {"p_2", t.p_2}};
}

json to_json(const ConeCounts& c) {
  return {{"n", c.n},         {"j_12", c.j_12}, {"j_12p", c.j_12p}, {"j_1p2", c.j_1p2},
          {"j_1p2p", c.j_1p2p}, {"m_1p", c.m_1p}, {"m_2", c.m_2}};
}

json generator_config_json(const GeneratorConfig& c) {
  return {{"alpha", c.alpha},
          {"beta", c.beta},
          {"events", c.n_events},
          {"cone_deg", c.cone_half_angle / kDeg},
          {"efficiency", c.efficiency},
          {"spacelike_only", c.spacelike_only}};
}

json estimate_json(const CHEstimate& est, double alpha, double beta) {
  const double bound_mixed = mixed_bound(alpha, beta);
  return {{"table", to_json(est.table)},
          {"value", est.value},
          {"std_error", est.std_error},
          {"z_score", est.z_score},
          {"n_used", est.n_used},
          {"counts", to_json(est.counts)},
          {"bound_zero", 0.0},
          {"bound_mixed", bound_mixed},
          {"z_over_mixed_bound", (est.value - bound_mixed) / est.std_error},
          {"prediction", coplanar_max(alpha)}};
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

std::string version() { return LAMBDACH_VERSION; }

json RunSummary::to_json() const {
  return {{"command", command}, {"version", version()}, {"seed", seed},
          {"config", config},   {"result", result},     {"wall_time_s", wall_time_s}};
}

std::vector<CurveRow> curve_rows(const CurveOptions& opt) {
  if (opt.steps < 2) throw ParameterError("curve needs at least 2 steps");
  if (!(opt.theta_max_deg >= opt.theta_min_deg)) throw ParameterError("theta_max must be >= theta_min");
  const double bound = mixed_bound(opt.alpha, opt.beta);
  std::vector<CurveRow> rows;
  rows.reserve(static_cast<std::size_t>(opt.steps));
  const double span = opt.theta_max_deg - opt.theta_min_deg;
  for (int i = 0; i < opt.steps; ++i) {
    const double deg = opt.theta_min_deg + span * static_cast<double>(i) / static_cast<double>(opt.steps - 1);
    rows.push_back({deg, coplanar_lhs(deg * kDeg, opt.alpha), 0.0, bound});
  }
  return rows;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "theta_deg,lhs,bound_zero,bound_mixed\n";
  const auto old_precision = out.precision(17);
  for (const auto& r : rows) out << r.theta_deg << ',' << r.lhs << ',' << r.bound_zero << ',' << r.bound_mixed << '\n';
  out.precision(old_precision);
}

RunSummary cmd_curve(const CurveOptions& opt, std::uint64_t seed) {
  Stopwatch clock;
  RunSummary s{"curve", seed};
  s.config = {{"alpha", opt.alpha},
              {"beta", opt.beta},
              {"theta_min_deg", opt.theta_min_deg},
              {"theta_max_deg", opt.theta_max_deg},
              {"steps", opt.steps}};
  json rows = json::array();
  for (const auto& r : curve_rows(opt)) {
    rows.push_back({{"theta_deg", r.theta_deg}, {"lhs", r.lhs}, {"bound_zero", r.bound_zero}, {"bound_mixed", r.bound_mixed}});
  }
  s.result = {{"rows", rows}, {"max_value", coplanar_max(opt.alpha)}, {"max_theta_deg", 45.0}};
  s.wall_time_s = clock.seconds();
  return s;
}

RunSummary cmd_region(const RegionOptions& opt, std::uint64_t seed) {
  Stopwatch clock;
  const double bound = opt.bound ? *opt.bound : (opt.beta ? mixed_bound(opt.alpha, *opt.beta) : 0.0);
  RunSummary s{"region", seed};
  s.config = {{"alpha", opt.alpha}, {"bound", bound}};
  if (opt.beta) s.config["beta"] = *opt.beta;
  const auto region = violation_region(opt.alpha, bound);
  s.result = {{"violated", region.has_value()}};
  if (region) {
    s.result["theta_lo_deg"] = region->lo / kDeg;
    s.result["theta_hi_deg"] = region->hi / kDeg;
  }
  s.wall_time_s = clock.seconds();
  return s;
}

RunSummary cmd_mc(const GeneratorConfig& config, const CHSettings& settings) {
  Stopwatch clock;
  RunSummary s{"mc", config.seed};
  s.config = generator_config_json(config);
  s.config["settings"] = to_json(settings);
  s.result = estimate_json(run_experiment(config, settings), config.alpha, config.beta);
  s.wall_time_s = clock.seconds();
  return s;
}

RunSummary cmd_mc_events(const std::vector<EventRecord>& events, const GeneratorConfig& config,
                         const CHSettings& settings) {
  Stopwatch clock;
  config.validate();
  RunSummary s{"mc", config.seed};
  s.config = generator_config_json(config);
  s.config["events"] = events.size();
  s.config["source"] = "file";
  s.config["settings"] = to_json(settings);
  s.result = estimate_json(analyze_events(events, settings, config.alpha, config.cone_half_angle, config.spacelike_only),
                           config.alpha, config.beta);
  s.wall_time_s = clock.seconds();
  return s;
}

RunSummary cmd_lhv(const LhvOptions& opt, const CHSettings& settings, std::uint64_t seed) {
  Stopwatch clock;
  const auto model = make_lhv_model(opt.model, opt.params);
  const auto check = verify_ch(*model, settings, {opt.samples, seed, opt.threads});
  RunSummary s{"lhv", seed};
  s.config = {{"model", opt.model}, {"params", opt.params}, {"samples", opt.samples}, {"settings", to_json(settings)}};
  const Bounds b = model->bounds();
  s.result = {{"table", to_json(check.table)},
              {"value", check.value},
              {"std_error", check.std_error},
              {"bounds", {{"a1", b.a1}, {"b1", b.b1}, {"a2", b.a2}, {"b2", b.b2}}},
              {"satisfies_bound", check.value <= 3.0 * check.std_error}};
  s.wall_time_s = clock.seconds();
  return s;
}

RunSummary cmd_optimize(const OptimizeOptions& opt, std::uint64_t seed) {
  Stopwatch clock;
  const auto best = maximize_violation(opt.alpha, opt.grid_deg * kDeg, opt.tol, opt.threads);
  RunSummary s{"optimize", seed};
  s.config = {{"alpha", opt.alpha}, {"grid_deg", opt.grid_deg}, {"tol", opt.tol}};
  s.result = {{"value", best.value},
              {"settings", to_json(best.settings)},
              {"evaluations", best.evaluations},
              {"coplanar_max", coplanar_max(opt.alpha)}};
  s.wall_time_s = clock.seconds();
  return s;
}

RunSummary cmd_spacelike(const SpacelikeOptions& opt, std::uint64_t seed) {
  Stopwatch clock;
  opt.kinematics.validate();
  const double beta = opt.kinematics.beta;
  const Estimate mc = spacelike_fraction_mc(beta, opt.samples, seed, opt.threads);
  RunSummary s{"spacelike", seed};
  s.config = {{"alpha", opt.alpha}, {"beta", beta}, {"samples", opt.samples}};
  if (opt.kinematics.m_parent) s.config["m_parent"] = *opt.kinematics.m_parent;
  if (opt.kinematics.m_daughter) s.config["m_daughter"] = *opt.kinematics.m_daughter;
  s.result = {{"k", light_cone_ratio(beta)},
              {"fraction_analytic", spacelike_fraction_analytic(beta)},
              {"fraction_mc", mc.value},
              {"std_error", mc.std_error},
              {"timelike_max", timelike_max(opt.alpha)},
              {"mixed_bound", mixed_bound(opt.alpha, beta)},
              {"critical_beta", critical_beta()},
              {"violation_observable", mixed_bound(opt.alpha, beta) < coplanar_max(opt.alpha)}};
  s.wall_time_s = clock.seconds();
  return s;
}

double expected_yield(const YieldOptions& opt) {
  if (!(opt.n_parent >= 0.0)) throw ParameterError("parent count must be non-negative");
  for (double r : {opt.br_pair, opt.br_decay, opt.efficiency}) {
    if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("branching ratios and efficiency must lie in [0, 1]");
  }
  return opt.n_parent * opt.br_pair * opt.br_decay * opt.br_decay * opt.efficiency;
}

RunSummary cmd_yield(const YieldOptions& opt, std::uint64_t seed) {
  Stopwatch clock;
  RunSummary s{"yield", seed};
  s.config = {{"n_parent", opt.n_parent},
              {"br_pair", opt.br_pair},
              {"br_decay", opt.br_decay},
              {"efficiency", opt.efficiency}};
  s.result = {{"expected_pairs", expected_yield(opt)}};
  s.wall_time_s = clock.seconds();
  return s;
}

void write_summary_csv(std::ostream& out, const RunSummary& summary) {
  out << "key,value\n";
  flatten(summary.result, "", out);
}

//---------------------------------------------------------------------------//
// Command line
//---------------------------------------------------------------------------//

namespace {

struct SettingsFlags {
  double theta_deg = 45.0;
  std::vector<double> n1, n1p, n2, n2p;

  void attach(CLI::App& app) {
    app.add_option("--theta", theta_deg, "Coplanar setting angle in degrees")->capture_default_str();
    for (auto [name, target] : {std::pair{"--n1", &n1}, {"--n1p", &n1p}, {"--n2", &n2}, {"--n2p", &n2p}}) {
      app.add_option(name, *target, "Explicit direction x,y,z (overrides --theta)")->expected(3)->delimiter(',');
    }
  }

  [[nodiscard]] CHSettings resolve() const {
    const bool any = !n1.empty() || !n1p.empty() || !n2.empty() || !n2p.empty();
    if (!any) return CHSettings::coplanar(theta_deg * kDeg);
    if (n1.empty() || n1p.empty() || n2.empty() || n2p.empty()) {
      throw ParameterError("explicit settings need all of --n1 --n1p --n2 --n2p");
    }
    auto dir = [](const std::vector<double>& v) { return UnitVector3::normalized({v[0], v[1], v[2]}); };
    return {dir(n1), dir(n1p), dir(n2), dir(n2p)};
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Clauser-Horne inequality tools for eta_c -> Lambda anti-Lambda"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string format;
  std::string out_path = "-";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out_path, "Output path, '-' for stdout")->capture_default_str();
  };

  CurveOptions curve;
  auto* curve_cmd = app.add_subcommand("curve", "Coplanar CH curve and both bounds");
  curve_cmd->add_option("--alpha", curve.alpha)->capture_default_str();
  curve_cmd->add_option("--beta", curve.beta)->capture_default_str();
  curve_cmd->add_option("--theta-min", curve.theta_min_deg, "degrees")->capture_default_str();
  curve_cmd->add_option("--theta-max", curve.theta_max_deg, "degrees")->capture_default_str();
  curve_cmd->add_option("--steps", curve.steps)->capture_default_str();
  add_common(curve_cmd);

  RegionOptions region;
  double region_beta = 0.0;
  double region_bound = 0.0;
  auto* region_cmd = app.add_subcommand("region", "Theta interval where the coplanar curve exceeds a bound");
  region_cmd->add_option("--alpha", region.alpha)->capture_default_str();
  auto* region_beta_opt = region_cmd->add_option("--beta", region_beta, "Use the mixed bound for this beta");
  auto* region_bound_opt = region_cmd->add_option("--bound", region_bound, "Explicit bound");
  add_common(region_cmd);

  GeneratorConfig gen;
  SettingsFlags mc_settings;
  double cone_deg = 10.0;
  std::string events_in;
  std::string events_out;
  auto* mc_cmd = app.add_subcommand("mc", "Simulate events and estimate the CH value");
  mc_cmd->add_option("--alpha", gen.alpha)->capture_default_str();
  mc_cmd->add_option("--beta", gen.beta)->capture_default_str();
  mc_cmd->add_option("--events", gen.n_events, "Generated events")->capture_default_str();
  mc_cmd->add_option("--cone", cone_deg, "Cone half-angle in degrees")->capture_default_str();
  mc_cmd->add_option("--efficiency", gen.efficiency)->capture_default_str();
  mc_cmd->add_flag("--spacelike-only", gen.spacelike_only, "Keep only space-like separated pairs");
  mc_cmd->add_option("--events-in", events_in, "Analyze events from CSV instead of generating");
  mc_cmd->add_option("--events-out", events_out, "Also write generated events to CSV");
  mc_settings.attach(*mc_cmd);
  add_common(mc_cmd);

  LhvOptions lhv;
  SettingsFlags lhv_settings;
  std::vector<std::string> lhv_params;
  auto* lhv_cmd = app.add_subcommand("lhv", "Evaluate the CH combination for a local hidden-variable model");
  lhv_cmd->add_option("--model", lhv.model)->check(CLI::IsMember(bundled_lhv_models()))->capture_default_str();
  lhv_cmd->add_option("--param", lhv_params, "Model parameter key=value (repeatable)");
  lhv_cmd->add_option("--samples", lhv.samples)->capture_default_str();
  lhv_settings.attach(*lhv_cmd);
  add_common(lhv_cmd);

  OptimizeOptions optimize;
  auto* opt_cmd = app.add_subcommand("optimize", "Grid + golden-section search for the maximal violation");
  opt_cmd->add_option("--alpha", optimize.alpha)->capture_default_str();
  opt_cmd->add_option("--grid", optimize.grid_deg, "Coarse grid step in degrees")->capture_default_str();
  opt_cmd->add_option("--tol", optimize.tol, "Refinement tolerance")->capture_default_str();
  add_common(opt_cmd);

  SpacelikeOptions spacelike;
  double m_parent = 0.0;
  double m_daughter = 0.0;
  auto* sl_cmd = app.add_subcommand("spacelike", "Space-like fraction and the weakened bound");
  sl_cmd->add_option("--alpha", spacelike.alpha)->capture_default_str();
  sl_cmd->add_option("--beta", spacelike.kinematics.beta)->capture_default_str();
  auto* m_parent_opt = sl_cmd->add_option("--m-parent", m_parent, "Parent mass (MeV); derives beta");
  auto* m_daughter_opt = sl_cmd->add_option("--m-daughter", m_daughter, "Daughter mass (MeV)");
  m_parent_opt->needs(m_daughter_opt);
  m_daughter_opt->needs(m_parent_opt);
  sl_cmd->add_option("--samples", spacelike.samples)->capture_default_str();
  add_common(sl_cmd);

  YieldOptions yield;
  auto* yield_cmd = app.add_subcommand("yield", "Expected usable pair count from branching ratios");
  yield_cmd->add_option("--n-parent", yield.n_parent)->capture_default_str();
  yield_cmd->add_option("--br-pair", yield.br_pair)->capture_default_str();
  yield_cmd->add_option("--br-decay", yield.br_decay)->capture_default_str();
  yield_cmd->add_option("--efficiency", yield.efficiency)->capture_default_str();
  add_common(yield_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    const int code = app.exit(e, msg, msg);
    (code == 0 ? out : err) << msg.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunSummary summary;
    std::vector<CurveRow> rows;
    if (curve_cmd->parsed()) {
      summary = cmd_curve(curve, seed);
      rows = curve_rows(curve);
    } else if (region_cmd->parsed()) {
      if (*region_beta_opt) region.beta = region_beta;
      if (*region_bound_opt) region.bound = region_bound;
      summary = cmd_region(region, seed);
    } else if (mc_cmd->parsed()) {
      gen.seed = seed;
      gen.threads = threads;
      gen.cone_half_angle = cone_deg * kDeg;
      const CHSettings settings = mc_settings.resolve();
      if (!events_in.empty()) {
        std::ifstream in(events_in);
        if (!in) throw ParameterError("cannot open event file '" + events_in + "'");
        summary = cmd_mc_events(read_events_csv(in), gen, settings);
      } else {
        if (!events_out.empty()) {
          std::ofstream evout(events_out);
          if (!evout) throw ParameterError("cannot write event file '" + events_out + "'");
          write_events_csv(evout, generate_events(gen));
        }
        summary = cmd_mc(gen, settings);
      }
    } else if (lhv_cmd->parsed()) {
      for (const auto& kv : lhv_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParameterError("--param expects key=value, got '" + kv + "'");
        try {
          lhv.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::logic_error&) {
          throw ParameterError("--param value is not a number: '" + kv + "'");
        }
      }
      lhv.threads = threads;
      summary = cmd_lhv(lhv, lhv_settings.resolve(), seed);
    } else if (opt_cmd->parsed()) {
      optimize.threads = threads;
      summary = cmd_optimize(optimize, seed);
    } else if (sl_cmd->parsed()) {
      if (*m_parent_opt) spacelike.kinematics = KinematicConfig::from_masses(m_parent, m_daughter);
      spacelike.threads = threads;
      summary = cmd_spacelike(spacelike, seed);
    } else if (yield_cmd->parsed()) {
      summary = cmd_yield(yield, seed);
    }

    const std::string fmt = format.empty() ? (curve_cmd->parsed() ? "csv" : "json") : format;
    std::ofstream file;
    if (out_path != "-") {
      file.open(out_path);
      if (!file) throw ParameterError("cannot write output file '" + out_path + "'");
    }
    std::ostream& sink = out_path == "-" ? out : file;
    if (fmt == "json") {
      sink << summary.to_json().dump(2) << '\n';
    } else if (curve_cmd->parsed()) {
      write_curve_csv(sink, rows);
    } else {
      write_summary_csv(sink, summary);
    }
    return kExitOk;
  } catch (const UnderpoweredError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnderpowered;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NormalizationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace lambdach::cli
