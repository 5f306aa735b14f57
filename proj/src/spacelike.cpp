#include "lambdach/spacelike.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lambdach/parallel.hpp"

namespace lambdach {

namespace {

void check_beta(double beta, bool allow_one) {
  if (!(beta >= 0.0 && (beta < 1.0 || (allow_one && beta == 1.0)))) {
    throw ParameterError("beta = " + std::to_string(beta) + " is outside [0, 1)");
  }
}

void check_alpha(double alpha) {
  if (!(std::abs(alpha) <= 1.0)) throw ParameterError("|alpha| must be <= 1");
}

}  // namespace

KinematicConfig KinematicConfig::from_masses(double m_parent, double m_daughter) {
  return {beta_from_masses(m_parent, m_daughter), m_parent, m_daughter};
}

void KinematicConfig::validate() const {
  check_beta(beta, false);
  if (m_parent && m_daughter && !(*m_parent > 2.0 * *m_daughter)) {
    throw ParameterError("parent mass must exceed twice the daughter mass");
  }
}

double light_cone_ratio(double beta) {
  check_beta(beta, true);
  if (beta == 1.0) return std::numeric_limits<double>::infinity();
  return (1.0 + beta) / (1.0 - beta);
}

bool is_spacelike(double x1, double x2, double beta) {
  if (!(x1 > 0.0 && x2 > 0.0)) throw ParameterError("decay lengths must be positive");
  const double k = light_cone_ratio(beta);
  if (std::isinf(k)) return true;
  return x1 <= k * x2 && x2 <= k * x1;
}

double spacelike_fraction_analytic(double beta) {
  check_beta(beta, false);
  return beta;
}

Estimate spacelike_fraction_mc(double beta, std::uint64_t n, std::uint64_t seed, unsigned threads) {
  check_beta(beta, false);
  if (n == 0) throw ParameterError("spacelike_fraction_mc: need at least one sample");
  constexpr std::uint64_t kChunk = 1 << 16;
  const std::uint64_t n_chunks = (n + kChunk - 1) / kChunk;
  const auto counts = map_chunks<std::uint64_t>(n_chunks, threads, [&](std::size_t c) {
    StreamRng rng(seed, c);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double x1 = rng.exponential();
      const double x2 = rng.exponential();
      hits += is_spacelike(x1, x2, beta) ? 1 : 0;
    }
    return hits;
  });
  std::uint64_t hits = 0;
  for (auto h : counts) hits += h;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

double timelike_max(double alpha) {
  check_alpha(alpha);
  return alpha * alpha / 2.0;
}

double mixed_bound(double alpha, double beta) {
  check_alpha(alpha);
  check_beta(beta, true);
  return beta * 0.0 + (1.0 - beta) * timelike_max(alpha);
}

double critical_beta() { return 2.0 - std::numbers::sqrt2; }

double beta_from_masses(double m_parent, double m_daughter) {
  if (!(m_parent > 0.0 && m_daughter > 0.0)) throw ParameterError("masses must be positive");
  if (!(m_parent > 2.0 * m_daughter)) throw ParameterError("parent mass is below the two-body threshold");
  const double r = m_daughter / m_parent;
  return std::sqrt(1.0 - 4.0 * r * r);
}

}  // namespace lambdach
