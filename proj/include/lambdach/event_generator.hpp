#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "lambdach/ch_inequality.hpp"
#include "lambdach/lhv_models.hpp"
#include "lambdach/rng.hpp"
#include "lambdach/spacelike.hpp"

namespace lambdach {

/// Minimum number of selected events run_experiment accepts.
inline constexpr std::uint64_t kMinUsableEvents = 10'000;

struct GeneratorConfig {
  double alpha = kDefaultAlpha;
  double beta = kDefaultBeta;
  std::uint64_t n_events = 1'000'000;
  std::uint64_t seed = 42;
  double cone_half_angle = 10.0 * 0.017453292519943295;  // 10 degrees
  /// Probability that a generated event is kept (detector efficiency).
  double efficiency = 1.0;
  /// Analyze only pairs whose decays are space-like separated.
  bool spacelike_only = false;
  unsigned threads = 0;

  void validate() const;
};

/// One simulated eta_c -> (p pi-)(pbar pi+) event.
struct EventRecord {
  UnitVector3 n_p;
  UnitVector3 n_pbar;
  double x1 = 0.0;  // Lambda decay length / mean decay length
  double x2 = 0.0;  // anti-Lambda decay length / mean decay length
  bool spacelike = false;
};

/// Inverse CDF of the opening-angle cosine c, whose density is
/// (1 + alpha^2 c)/2 on [-1, 1].
double inverse_cdf_cosine(double u, double alpha);

/// Draw (n_p, n_pbar) from the joint law proportional to 1 + alpha^2 n_p.n_pbar.
std::pair<UnitVector3, UnitVector3> sample_pair(StreamRng& rng, double alpha);

/// Draw a full event. Always consumes the same number of variates, so the
/// i-th event of a stream does not depend on any selection applied later.
EventRecord sample_event(StreamRng& rng, double alpha, double beta);

/// Generate config.n_events events and keep each with probability
/// config.efficiency. Output order follows the generation order.
std::vector<EventRecord> generate_events(const GeneratorConfig& config);

/// Solid angle of a cone with the given half-angle.
double cone_solid_angle(double half_angle);
/// Attenuation ((1 + cos delta)/2)^2 of a bilinear correlation term n1.n2
/// when both directions are averaged over cones of half-angle delta.
double dilution_factor(double half_angle);

/// Raw cone estimate 4 pi^2 N_in / (N dOmega^2) of P(n1, n2) with binomial
/// standard error. No dilution correction.
Estimate estimate_joint(std::span<const EventRecord> events, const UnitVector3& n1, const UnitVector3& n2,
                        double cone_half_angle);

/// Raw cone estimate 2 pi N_in / (N dOmega) of the proton-side (Side::lambda)
/// or antiproton-side marginal.
Estimate estimate_marginal(std::span<const EventRecord> events, const UnitVector3& n, double cone_half_angle,
                           Side side = Side::lambda);

/// Undo cone dilution on a raw joint estimate: the deviation from the
/// isotropic value 1/4 is divided by dilution_factor.
Estimate correct_joint(const Estimate& raw, double cone_half_angle);

/// Cone-hit counts for the six table entries.
struct ConeCounts {
  std::uint64_t n = 0;
  std::uint64_t j_12 = 0;
  std::uint64_t j_12p = 0;
  std::uint64_t j_1p2 = 0;
  std::uint64_t j_1p2p = 0;
  std::uint64_t m_1p = 0;
  std::uint64_t m_2 = 0;

  void merge(const ConeCounts& o);
};

struct CHEstimate {
  ProbabilityTable table;  // dilution-corrected
  double value = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  std::uint64_t n_used = 0;
  ConeCounts counts;
};

/// Turn cone counts into a CH estimate with symmetric alpha bounds. The six
/// counts are treated as independent binomials and their errors added in
/// quadrature. Throws UnderpoweredError below kMinUsableEvents.
CHEstimate estimate_from_counts(const ConeCounts& counts, double alpha, double cone_half_angle);

/// CH estimate from an existing event sample (e.g. one read from CSV).
CHEstimate analyze_events(std::span<const EventRecord> events, const CHSettings& settings, double alpha,
                          double cone_half_angle, bool spacelike_only = false);

/// Generate, select and analyze in one streaming pass. Deterministic for a
/// fixed config regardless of config.threads.
CHEstimate run_experiment(const GeneratorConfig& config, const CHSettings& settings);

/// CSV with header npx,npy,npz,nbx,nby,nbz,x1,x2,spacelike. Doubles are
/// written in shortest round-trip form.
void write_events_csv(std::ostream& out, std::span<const EventRecord> events);
/// Reads the same format. Directions within 1e-6 of unit length are
/// renormalized; anything else throws ParameterError with the line number.
std::vector<EventRecord> read_events_csv(std::istream& in);

}  // namespace lambdach
