#include "lambdach/lhv_models.hpp"

#include <cmath>
#include <string>

#include "lambdach/parallel.hpp"

namespace lambdach {

namespace {

constexpr std::uint64_t kChunk = 1 << 15;
constexpr std::uint64_t kMinSamples = 1000;

void check_response(double p, double lo, double hi, const LhvModel& model, int side) {
  if (!(p >= lo - kTolerance && p <= hi + kTolerance)) {
    throw ModelContractError("model '" + model.name() + "' side " + std::to_string(side) + " response " +
                             std::to_string(p) + " outside declared [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
  }
}

double response(const LhvModel& m, const Bounds& b, Side side, const UnitVector3& lambda, const UnitVector3& n) {
  if (side == Side::lambda) {
    const double p = m.response_1(lambda, n);
    check_response(p, b.a1, b.b1, m, 1);
    return p;
  }
  const double p = m.response_2(lambda, n);
  check_response(p, b.a2, b.b2, m, 2);
  return p;
}

// Sufficient statistics of a sample: count, sum, sum of squares.
struct Moments {
  std::uint64_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) {
    ++n;
    sum += v;
    sum_sq += v * v;
  }
  void merge(const Moments& o) {
    n += o.n;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  [[nodiscard]] Estimate estimate() const {
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
    return {mean, std::sqrt(var / static_cast<double>(n))};
  }
};

void check_sampling(const LhvSampling& cfg) {
  if (cfg.samples < kMinSamples) {
    throw ParameterError("LHV sampling needs at least " + std::to_string(kMinSamples) + " samples");
  }
}

// Runs body(lambda, accumulators) for every hidden-variable draw, chunked
// over independent streams, and merges the K accumulators in chunk order.
template <std::size_t K, class Body>
std::array<Moments, K> sample_moments(const LhvModel& model, const LhvSampling& cfg, Body body) {
  check_sampling(cfg);
  const std::uint64_t n_chunks = (cfg.samples + kChunk - 1) / kChunk;
  auto per_chunk = map_chunks<std::array<Moments, K>>(n_chunks, cfg.threads, [&](std::size_t c) {
    std::array<Moments, K> acc{};
    StreamRng rng(cfg.seed, c);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(cfg.samples, begin + kChunk);
    for (std::uint64_t i = begin; i < end; ++i) body(model.sample_hidden(rng), acc);
    return acc;
  });
  std::array<Moments, K> total{};
  for (const auto& acc : per_chunk)
    for (std::size_t k = 0; k < K; ++k) total[k].merge(acc[k]);
  return total;
}

}  // namespace

ConstantModel::ConstantModel(double alpha, double p) : bounds_(Bounds::symmetric(alpha)), p_(p) {
  if (!(p >= bounds_.a1 && p <= bounds_.b1)) throw ParameterError("constant model: p outside the alpha bounds");
}

LinearSpinModel::LinearSpinModel(double alpha, int correlation) : alpha_(alpha), correlation_(correlation) {
  if (!(std::abs(alpha) <= 1.0)) throw ParameterError("linear_spin model: |alpha| must be <= 1");
  if (correlation != 1 && correlation != -1) throw ParameterError("linear_spin model: correlation must be +1 or -1");
}

double LinearSpinModel::response_1(const UnitVector3& lambda, const UnitVector3& n) const {
  return 0.5 * (1.0 + std::abs(alpha_) * lambda.dot(n));
}

double LinearSpinModel::response_2(const UnitVector3& lambda, const UnitVector3& n) const {
  return 0.5 * (1.0 + correlation_ * std::abs(alpha_) * lambda.dot(n));
}

ClippedDeterministicModel::ClippedDeterministicModel(double alpha) : bounds_(Bounds::symmetric(alpha)) {}

double ClippedDeterministicModel::response_1(const UnitVector3& lambda, const UnitVector3& n) const {
  return lambda.dot(n) >= 0.0 ? bounds_.b1 : bounds_.a1;
}

double ClippedDeterministicModel::response_2(const UnitVector3& lambda, const UnitVector3& n) const {
  return lambda.dot(n) >= 0.0 ? bounds_.b2 : bounds_.a2;
}

FunctionModel::FunctionModel(std::string name, Bounds bounds, Response r1, Response r2, Weight weight,
                             double weight_max)
    : name_(std::move(name)),
      bounds_(bounds),
      r1_(std::move(r1)),
      r2_(std::move(r2)),
      weight_(std::move(weight)),
      weight_max_(weight_max) {
  bounds_.validate();
  if (!r1_ || !r2_) throw ParameterError("function model: both responses are required");
  if (weight_ && !(weight_max_ > 0.0)) throw ParameterError("function model: weight_max must be positive");
}

UnitVector3 FunctionModel::sample_hidden(StreamRng& rng) const {
  if (!weight_) return rng.direction();
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    const UnitVector3 lambda = rng.direction();
    const double w = weight_(lambda);
    if (w < 0.0 || w > weight_max_ * (1.0 + 1e-12)) {
      throw ModelContractError("function model '" + name_ + "': weight outside [0, weight_max]");
    }
    if (rng.uniform() * weight_max_ < w) return lambda;
  }
  throw ModelContractError("function model '" + name_ + "': rejection sampler made no progress");
}

std::vector<std::string> bundled_lhv_models() { return {"constant", "linear_spin", "clipped"}; }

std::unique_ptr<LhvModel> make_lhv_model(const std::string& name, const std::map<std::string, double>& params) {
  auto take = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) throw ParameterError("model '" + name + "' does not take parameter '" + key + "'");
    }
  };
  auto get = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };

  if (name == "constant") {
    take({"alpha", "p"});
    return std::make_unique<ConstantModel>(get("alpha", kDefaultAlpha), get("p", 0.5));
  }
  if (name == "linear_spin") {
    take({"alpha", "correlation"});
    const double corr = get("correlation", 1.0);
    if (corr != 1.0 && corr != -1.0) throw ParameterError("linear_spin: correlation must be +1 or -1");
    return std::make_unique<LinearSpinModel>(get("alpha", kDefaultAlpha), static_cast<int>(corr));
  }
  if (name == "clipped") {
    take({"alpha"});
    return std::make_unique<ClippedDeterministicModel>(get("alpha", kDefaultAlpha));
  }
  throw ParameterError("unknown LHV model '" + name + "'");
}

Estimate lhv_joint(const LhvModel& model, const UnitVector3& n1, const UnitVector3& n2, const LhvSampling& cfg) {
  const Bounds b = model.bounds();
  const auto m = sample_moments<1>(model, cfg, [&](const UnitVector3& lambda, std::array<Moments, 1>& acc) {
    acc[0].add(response(model, b, Side::lambda, lambda, n1) * response(model, b, Side::antilambda, lambda, n2));
  });
  return m[0].estimate();
}

Estimate lhv_marginal(const LhvModel& model, const UnitVector3& n, const LhvSampling& cfg, Side side) {
  const Bounds b = model.bounds();
  const auto m = sample_moments<1>(model, cfg, [&](const UnitVector3& lambda, std::array<Moments, 1>& acc) {
    acc[0].add(response(model, b, side, lambda, n));
  });
  return m[0].estimate();
}

LhvCheck verify_ch(const LhvModel& model, const CHSettings& s, const LhvSampling& cfg) {
  const Bounds b = model.bounds();
  b.validate();
  // Slots: the six table entries, then the per-draw CH integrand.
  const auto m = sample_moments<7>(model, cfg, [&](const UnitVector3& lambda, std::array<Moments, 7>& acc) {
    const double x1 = response(model, b, Side::lambda, lambda, s.n1);
    const double x2 = response(model, b, Side::lambda, lambda, s.n1p);
    const double y1 = response(model, b, Side::antilambda, lambda, s.n2);
    const double y2 = response(model, b, Side::antilambda, lambda, s.n2p);
    acc[0].add(x1 * y1);
    acc[1].add(x1 * y2);
    acc[2].add(x2 * y1);
    acc[3].add(x2 * y2);
    acc[4].add(x2);
    acc[5].add(y1);
    acc[6].add(x1 * y1 - x1 * y2 + x2 * y1 + x2 * y2 - (b.a2 + b.b2) * x2 - (b.a1 + b.b1) * y1 + b.a1 * b.b2 +
               b.b1 * b.a2);
  });

  LhvCheck out;
  out.table = {m[0].estimate().value, m[1].estimate().value, m[2].estimate().value,
               m[3].estimate().value, m[4].estimate().value, m[5].estimate().value};
  out.value = ch_functional(out.table, b);
  out.std_error = m[6].estimate().std_error;
  return out;
}

}  // namespace lambdach
