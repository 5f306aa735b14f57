#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lambdach/ch_inequality.hpp"
#include "lambdach/event_generator.hpp"

namespace lambdach::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnderpowered = 3;

/// Result record every subcommand produces. Everything except wall_time_s
/// is a pure function of the command and its resolved configuration.
struct RunSummary {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  double wall_time_s = 0.0;

  [[nodiscard]] nlohmann::json to_json() const;
};

std::string version();

struct CurveOptions {
  double alpha = kDefaultAlpha;
  double beta = kDefaultBeta;
  double theta_min_deg = 0.0;
  double theta_max_deg = 90.0;
  int steps = 91;
};

struct CurveRow {
  double theta_deg = 0.0;
  double lhs = 0.0;
  double bound_zero = 0.0;
  double bound_mixed = 0.0;
};

/// Evenly spaced rows from theta_min to theta_max inclusive.
std::vector<CurveRow> curve_rows(const CurveOptions& opt);
/// CSV with header theta_deg,lhs,bound_zero,bound_mixed.
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);
RunSummary cmd_curve(const CurveOptions& opt, std::uint64_t seed);

struct RegionOptions {
  double alpha = kDefaultAlpha;
  std::optional<double> beta;   // bound = mixed_bound(alpha, beta)
  std::optional<double> bound;  // explicit bound, overrides beta
};
RunSummary cmd_region(const RegionOptions& opt, std::uint64_t seed);

RunSummary cmd_mc(const GeneratorConfig& config, const CHSettings& settings);
/// Re-analysis of an event file instead of fresh generation.
RunSummary cmd_mc_events(const std::vector<EventRecord>& events, const GeneratorConfig& config,
                         const CHSettings& settings);

struct LhvOptions {
  std::string model = "linear_spin";
  std::map<std::string, double> params;
  std::uint64_t samples = 100'000;
  unsigned threads = 0;
};
RunSummary cmd_lhv(const LhvOptions& opt, const CHSettings& settings, std::uint64_t seed);

struct OptimizeOptions {
  double alpha = kDefaultAlpha;
  double grid_deg = 2.0;
  double tol = 1e-9;
  unsigned threads = 0;
};
RunSummary cmd_optimize(const OptimizeOptions& opt, std::uint64_t seed);

struct SpacelikeOptions {
  double alpha = kDefaultAlpha;
  KinematicConfig kinematics;
  std::uint64_t samples = 1'000'000;
  unsigned threads = 0;
};
RunSummary cmd_spacelike(const SpacelikeOptions& opt, std::uint64_t seed);

struct YieldOptions {
  double n_parent = 1e8;
  double br_pair = 1.09e-3;
  double br_decay = 0.639;
  double efficiency = 0.10;
};
/// Usable pairs n_parent * br_pair * br_decay^2 * efficiency.
double expected_yield(const YieldOptions& opt);
RunSummary cmd_yield(const YieldOptions& opt, std::uint64_t seed);

/// Flattened "key,value" CSV of a summary's result object.
void write_summary_csv(std::ostream& out, const RunSummary& summary);

/// Full command-line entry point. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lambdach::cli
