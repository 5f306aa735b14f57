#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lambdach/ch_inequality.hpp"
#include "lambdach/rng.hpp"

namespace lambdach {

/// Monte Carlo estimate with its standard error of the mean.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Local hidden-variable model with bounded responses.
///
/// The hidden variable is a direction lambda on S^2. Each particle reacts to
/// its analyzer direction n with a probability response_i(lambda, n) that
/// must stay inside [a_i, b_i] of bounds(). The default sampler draws lambda
/// uniformly; override sample_hidden() for a weighted density.
class LhvModel {
 public:
  virtual ~LhvModel() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual Bounds bounds() const = 0;
  [[nodiscard]] virtual double response_1(const UnitVector3& lambda, const UnitVector3& n) const = 0;
  [[nodiscard]] virtual double response_2(const UnitVector3& lambda, const UnitVector3& n) const = 0;
  virtual UnitVector3 sample_hidden(StreamRng& rng) const { return rng.direction(); }
};

/// Both particles respond with the same constant p regardless of lambda.
class ConstantModel final : public LhvModel {
 public:
  /// Bounds are the symmetric alpha bounds; p must lie inside them.
  explicit ConstantModel(double alpha, double p = 0.5);

  [[nodiscard]] std::string name() const override { return "constant"; }
  [[nodiscard]] Bounds bounds() const override { return bounds_; }
  [[nodiscard]] double response_1(const UnitVector3&, const UnitVector3&) const override { return p_; }
  [[nodiscard]] double response_2(const UnitVector3&, const UnitVector3&) const override { return p_; }

 private:
  Bounds bounds_;
  double p_;
};

/// Classical spin analog: p_1 = (1 + alpha lambda.n)/2 and
/// p_2 = (1 + correlation * alpha lambda.n)/2. With correlation = +1 the
/// joint law is (1 + alpha^2 n1.n2 / 3)/4, the quantum curve at one third of
/// the strength; correlation = -1 flips the sign of the n1.n2 term.
class LinearSpinModel final : public LhvModel {
 public:
  explicit LinearSpinModel(double alpha, int correlation = +1);

  [[nodiscard]] std::string name() const override { return "linear_spin"; }
  [[nodiscard]] Bounds bounds() const override { return Bounds::symmetric(alpha_); }
  [[nodiscard]] double response_1(const UnitVector3& lambda, const UnitVector3& n) const override;
  [[nodiscard]] double response_2(const UnitVector3& lambda, const UnitVector3& n) const override;

 private:
  double alpha_;
  int correlation_;
};

/// Deterministic extreme responses: b when lambda.n >= 0, otherwise a, on
/// both sides.
class ClippedDeterministicModel final : public LhvModel {
 public:
  explicit ClippedDeterministicModel(double alpha);

  [[nodiscard]] std::string name() const override { return "clipped"; }
  [[nodiscard]] Bounds bounds() const override { return bounds_; }
  [[nodiscard]] double response_1(const UnitVector3& lambda, const UnitVector3& n) const override;
  [[nodiscard]] double response_2(const UnitVector3& lambda, const UnitVector3& n) const override;

 private:
  Bounds bounds_;
};

/// Model assembled from callables, with an optional non-uniform hidden
/// variable density sampled by rejection against `weight_max`.
class FunctionModel final : public LhvModel {
 public:
  using Response = std::function<double(const UnitVector3&, const UnitVector3&)>;
  using Weight = std::function<double(const UnitVector3&)>;

  FunctionModel(std::string name, Bounds bounds, Response r1, Response r2, Weight weight = {},
                double weight_max = 1.0);

  [[nodiscard]] std::string name() const override { return name_; }
  [[nodiscard]] Bounds bounds() const override { return bounds_; }
  [[nodiscard]] double response_1(const UnitVector3& lambda, const UnitVector3& n) const override {
    return r1_(lambda, n);
  }
  [[nodiscard]] double response_2(const UnitVector3& lambda, const UnitVector3& n) const override {
    return r2_(lambda, n);
  }
  UnitVector3 sample_hidden(StreamRng& rng) const override;

 private:
  std::string name_;
  Bounds bounds_;
  Response r1_;
  Response r2_;
  Weight weight_;
  double weight_max_;
};

/// Named bundled models: "constant" (params: alpha, p), "linear_spin"
/// (alpha, correlation), "clipped" (alpha). Unknown names or parameters
/// throw ParameterError.
std::unique_ptr<LhvModel> make_lhv_model(const std::string& name, const std::map<std::string, double>& params);
std::vector<std::string> bundled_lhv_models();

struct LhvSampling {
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// Monte Carlo integral of response_1(lambda, n1) response_2(lambda, n2).
Estimate lhv_joint(const LhvModel& model, const UnitVector3& n1, const UnitVector3& n2, const LhvSampling& cfg);

/// Monte Carlo integral of one response; side selects response_1 or _2.
Estimate lhv_marginal(const LhvModel& model, const UnitVector3& n, const LhvSampling& cfg,
                      Side side = Side::lambda);

struct LhvCheck {
  ProbabilityTable table;
  double value = 0.0;
  double std_error = 0.0;
};

/// CH value of the model at `settings`. All six entries come from the same
/// hidden-variable draws, and the standard error is that of the per-draw CH
/// integrand, which is non-positive for every lambda.
LhvCheck verify_ch(const LhvModel& model, const CHSettings& settings, const LhvSampling& cfg);

}  // namespace lambdach
