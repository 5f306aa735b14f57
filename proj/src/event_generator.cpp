#include "lambdach/event_generator.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>

#include "lambdach/parallel.hpp"

namespace lambdach {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kEventChunk = 1 << 16;

void check_cone(double half_angle) {
  if (!(half_angle > 0.0 && half_angle < kPi / 4.0)) {
    throw ParameterError("cone half-angle must lie in (0, pi/4) rad");
  }
}

// Membership tests for the four analyzer cones of one CH setting.
class ConeCounter {
 public:
  ConeCounter(const CHSettings& s, double half_angle) : s_(s), cos_cone_(std::cos(half_angle)) {}

  void add(const EventRecord& e, ConeCounts& c) const {
    const bool p1 = e.n_p.dot(s_.n1) >= cos_cone_;
    const bool p1p = e.n_p.dot(s_.n1p) >= cos_cone_;
    const bool b2 = e.n_pbar.dot(s_.n2) >= cos_cone_;
    const bool b2p = e.n_pbar.dot(s_.n2p) >= cos_cone_;
    ++c.n;
    c.j_12 += p1 && b2;
    c.j_12p += p1 && b2p;
    c.j_1p2 += p1p && b2;
    c.j_1p2p += p1p && b2p;
    c.m_1p += p1p;
    c.m_2 += b2;
  }

 private:
  CHSettings s_;
  double cos_cone_;
};

// Binomial estimate scale * k / n. A zero count is given the variance of a
// single count so that the error never vanishes.
Estimate scaled_fraction(std::uint64_t k, std::uint64_t n, double scale) {
  const double nn = static_cast<double>(n);
  const double f = static_cast<double>(k) / nn;
  const double f_var = std::max<double>(static_cast<double>(k), 1.0) / nn;
  return {scale * f, scale * std::sqrt(f_var * std::max(0.0, 1.0 - f_var) / nn)};
}

Vec3 any_perpendicular(const Vec3& n) {
  const Vec3 helper = std::abs(n.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  const Vec3 e = helper.cross(n);
  return (1.0 / e.norm()) * e;
}

}  // namespace

void GeneratorConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in [0, 1]");
  if (!(beta >= 0.0 && beta < 1.0)) throw ParameterError("beta must lie in [0, 1)");
  if (n_events < 1) throw ParameterError("n_events must be at least 1");
  check_cone(cone_half_angle);
  if (!(efficiency > 0.0 && efficiency <= 1.0)) throw ParameterError("efficiency must lie in (0, 1]");
}

double inverse_cdf_cosine(double u, double alpha) {
  // Root of alpha^2 c^2 + 2c + (2 - alpha^2 - 4u) = 0 in [-1, 1], written as
  // (4u - 2 + alpha^2) / (1 + sqrt(1 - alpha^2 (2 - alpha^2 - 4u))) so that
  // it stays accurate as alpha -> 0, where it reduces to 2u - 1.
  const double a2 = alpha * alpha;
  const double disc = std::max(0.0, 1.0 - a2 * (2.0 - a2 - 4.0 * u));
  return std::clamp((4.0 * u - 2.0 + a2) / (1.0 + std::sqrt(disc)), -1.0, 1.0);
}

std::pair<UnitVector3, UnitVector3> sample_pair(StreamRng& rng, double alpha) {
  const UnitVector3 n1 = rng.direction();
  const double c = inverse_cdf_cosine(rng.uniform(), alpha);
  const double psi = 2.0 * kPi * rng.uniform();
  const Vec3 e1 = any_perpendicular(n1.vec());
  const Vec3 e2 = n1.vec().cross(e1);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const Vec3 n2 = c * n1.vec() + (s * std::cos(psi)) * e1 + (s * std::sin(psi)) * e2;
  return {n1, UnitVector3::normalized(n2)};
}

EventRecord sample_event(StreamRng& rng, double alpha, double beta) {
  auto [np, nb] = sample_pair(rng, alpha);
  const double x1 = rng.exponential();
  const double x2 = rng.exponential();
  return {np, nb, x1, x2, is_spacelike(x1, x2, beta)};
}

namespace {

// Walk every generated event of `config` in chunk order, calling
// visit(chunk_state, event) for those surviving efficiency thinning.
template <class State, class Visit>
std::vector<State> for_each_kept_event(const GeneratorConfig& config, Visit visit) {
  const std::uint64_t n_chunks = (config.n_events + kEventChunk - 1) / kEventChunk;
  return map_chunks<State>(n_chunks, config.threads, [&](std::size_t c) {
    State state{};
    StreamRng rng(config.seed, c);
    const std::uint64_t begin = c * kEventChunk;
    const std::uint64_t end = std::min(config.n_events, begin + kEventChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      const EventRecord e = sample_event(rng, config.alpha, config.beta);
      const double keep = rng.uniform();
      if (keep < config.efficiency) visit(state, e);
    }
    return state;
  });
}

}  // namespace

std::vector<EventRecord> generate_events(const GeneratorConfig& config) {
  config.validate();
  auto chunks = for_each_kept_event<std::vector<EventRecord>>(
      config, [](std::vector<EventRecord>& out, const EventRecord& e) { out.push_back(e); });
  std::vector<EventRecord> events;
  for (auto& c : chunks) events.insert(events.end(), c.begin(), c.end());
  return events;
}

double cone_solid_angle(double half_angle) { return 2.0 * kPi * (1.0 - std::cos(half_angle)); }

double dilution_factor(double half_angle) {
  const double s = 0.5 * (1.0 + std::cos(half_angle));
  return s * s;
}

Estimate estimate_joint(std::span<const EventRecord> events, const UnitVector3& n1, const UnitVector3& n2,
                        double cone_half_angle) {
  check_cone(cone_half_angle);
  if (events.empty()) throw ParameterError("estimate_joint: no events");
  const double cos_cone = std::cos(cone_half_angle);
  std::uint64_t k = 0;
  for (const auto& e : events) k += (e.n_p.dot(n1) >= cos_cone && e.n_pbar.dot(n2) >= cos_cone) ? 1 : 0;
  const double d_omega = cone_solid_angle(cone_half_angle);
  return scaled_fraction(k, events.size(), 4.0 * kPi * kPi / (d_omega * d_omega));
}

Estimate estimate_marginal(std::span<const EventRecord> events, const UnitVector3& n, double cone_half_angle,
                           Side side) {
  check_cone(cone_half_angle);
  if (events.empty()) throw ParameterError("estimate_marginal: no events");
  const double cos_cone = std::cos(cone_half_angle);
  std::uint64_t k = 0;
  for (const auto& e : events) k += ((side == Side::lambda ? e.n_p : e.n_pbar).dot(n) >= cos_cone) ? 1 : 0;
  return scaled_fraction(k, events.size(), 2.0 * kPi / cone_solid_angle(cone_half_angle));
}

Estimate correct_joint(const Estimate& raw, double cone_half_angle) {
  const double kappa = dilution_factor(cone_half_angle);
  return {0.25 + (raw.value - 0.25) / kappa, raw.std_error / kappa};
}

void ConeCounts::merge(const ConeCounts& o) {
  n += o.n;
  j_12 += o.j_12;
  j_12p += o.j_12p;
  j_1p2 += o.j_1p2;
  j_1p2p += o.j_1p2p;
  m_1p += o.m_1p;
  m_2 += o.m_2;
}

CHEstimate estimate_from_counts(const ConeCounts& counts, double alpha, double cone_half_angle) {
  check_cone(cone_half_angle);
  if (counts.n < kMinUsableEvents) {
    throw UnderpoweredError("only " + std::to_string(counts.n) + " events selected; need at least " +
                            std::to_string(kMinUsableEvents));
  }
  const double d_omega = cone_solid_angle(cone_half_angle);
  const double joint_scale = 4.0 * kPi * kPi / (d_omega * d_omega);
  const double marginal_scale = 2.0 * kPi / d_omega;
  auto joint = [&](std::uint64_t k) {
    return correct_joint(scaled_fraction(k, counts.n, joint_scale), cone_half_angle);
  };

  const Estimate p12 = joint(counts.j_12);
  const Estimate p12p = joint(counts.j_12p);
  const Estimate p1p2 = joint(counts.j_1p2);
  const Estimate p1p2p = joint(counts.j_1p2p);
  const Estimate p1p = scaled_fraction(counts.m_1p, counts.n, marginal_scale);
  const Estimate p2 = scaled_fraction(counts.m_2, counts.n, marginal_scale);

  for (const Estimate& e : {p12, p12p, p1p2, p1p2p, p1p, p2}) {
    if (!(e.value >= 0.0 && e.value <= 1.0)) {
      throw UnderpoweredError("cone estimate " + std::to_string(e.value) +
                              " is outside [0, 1]; too few events for this cone size");
    }
  }

  CHEstimate out;
  out.counts = counts;
  out.n_used = counts.n;
  out.table = {p12.value, p12p.value, p1p2.value, p1p2p.value, p1p.value, p2.value};
  const Bounds b = Bounds::symmetric(alpha);
  out.value = ch_functional(out.table, b);
  auto sq = [](double v) { return v * v; };
  out.std_error = std::sqrt(sq(p12.std_error) + sq(p12p.std_error) + sq(p1p2.std_error) + sq(p1p2p.std_error) +
                            sq((b.a2 + b.b2) * p1p.std_error) + sq((b.a1 + b.b1) * p2.std_error));
  out.z_score = out.value / out.std_error;
  return out;
}

CHEstimate analyze_events(std::span<const EventRecord> events, const CHSettings& settings, double alpha,
                          double cone_half_angle, bool spacelike_only) {
  check_cone(cone_half_angle);
  const ConeCounter counter(settings, cone_half_angle);
  ConeCounts counts;
  for (const auto& e : events) {
    if (!spacelike_only || e.spacelike) counter.add(e, counts);
  }
  return estimate_from_counts(counts, alpha, cone_half_angle);
}

CHEstimate run_experiment(const GeneratorConfig& config, const CHSettings& settings) {
  config.validate();
  const ConeCounter counter(settings, config.cone_half_angle);
  const auto per_chunk = for_each_kept_event<ConeCounts>(config, [&](ConeCounts& c, const EventRecord& e) {
    if (!config.spacelike_only || e.spacelike) counter.add(e, c);
  });
  ConeCounts total;
  for (const auto& c : per_chunk) total.merge(c);
  return estimate_from_counts(total, config.alpha, config.cone_half_angle);
}

void write_events_csv(std::ostream& out, std::span<const EventRecord> events) {
  out << "npx,npy,npz,nbx,nby,nbz,x1,x2,spacelike\n";
  char buf[32];
  auto put = [&](double v) {
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
  };
  for (const auto& e : events) {
    for (double v : {e.n_p.x(), e.n_p.y(), e.n_p.z(), e.n_pbar.x(), e.n_pbar.y(), e.n_pbar.z(), e.x1, e.x2}) {
      put(v);
      out.put(',');
    }
    out << (e.spacelike ? '1' : '0') << '\n';
  }
}

std::vector<EventRecord> read_events_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("event CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "npx,npy,npz,nbx,nby,nbz,x1,x2,spacelike") throw ParameterError("event CSV has an unexpected header");

  std::vector<EventRecord> events;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      return ParameterError("event CSV line " + std::to_string(line_no) + ": " + why);
    };

    std::array<double, 8> v{};
    std::string_view rest(line);
    for (double& field : v) {
      const auto comma = rest.find(',');
      if (comma == std::string_view::npos) throw fail("expected 9 fields");
      const auto tok = rest.substr(0, comma);
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), field);
      if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) throw fail("bad number '" + std::string(tok) + "'");
      rest.remove_prefix(comma + 1);
    }
    bool spacelike = false;
    if (rest == "1" || rest == "true") {
      spacelike = true;
    } else if (rest != "0" && rest != "false") {
      throw fail("spacelike flag must be 0/1");
    }

    auto direction = [&](double x, double y, double z) {
      const Vec3 d{x, y, z};
      const double n2 = d.dot(d);
      if (std::abs(n2 - 1.0) <= kTolerance) return UnitVector3(d);
      if (!(std::abs(d.norm() - 1.0) <= 1e-6)) throw fail("direction is not a unit vector");
      return UnitVector3::normalized(d);
    };
    if (!(v[6] >= 0.0 && v[7] >= 0.0)) throw fail("decay lengths must be non-negative");
    events.push_back({direction(v[0], v[1], v[2]), direction(v[3], v[4], v[5]), v[6], v[7], spacelike});
  }
  return events;
}

}  // namespace lambdach
