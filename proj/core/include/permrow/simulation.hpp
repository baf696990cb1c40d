#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "permrow/estimators.hpp"
#include "permrow/matrix_core.hpp"
#include "permrow/random.hpp"

namespace permrow {

/// theta_ij = a_i * eta_j + b_i with eta centered and nondecreasing.
struct LinearGrowthSignal {
  Vector a;
  Vector eta;
  Vector b;

  /// Throws UncenteredEta if sum(eta) exceeds 1e-10 in magnitude or eta
  /// decreases anywhere; DimensionMismatch if a and b differ in length.
  void validate() const;
  Matrix theta() const;
};

/// Signal before permutation, with its extreme columns read off directly.
struct GroundTruth {
  Matrix theta;
  Vector thetaR;
  Vector thetaL;
  Vector range;
  Permutation pi;
};

/// Builds the truth record for an unpermuted theta and the permutation
/// that will be applied to it.
GroundTruth make_ground_truth(Matrix theta, Permutation pi);

enum class ScenarioKind { S1, S2, CustomLinear };
enum class PermutationKind { Identity, UniformRandom, Given };

std::string_view to_string(ScenarioKind kind);
std::string_view to_string(PermutationKind kind);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::S1;
  std::size_t n = 50;
  std::size_t p = 1000;
  double alpha = 3.0;
  double sigma = 1.0;
  PermutationKind permutation = PermutationKind::UniformRandom;
  std::uint64_t seed = 0;
  /// Required when permutation == Given.
  std::optional<Permutation> givenPermutation;
  /// Optional position vector for CustomLinear; defaults to p evenly spaced
  /// points on [-1, 1].
  std::optional<std::vector<double>> eta;

  void validate() const;
};

struct S1Draw {
  LinearGrowthSignal signal;
  GroundTruth truth;
};

struct S2Draw {
  Matrix theta;
  Vector a;
  Vector b;
  GroundTruth truth;
};

/// a_i ~ U(0, alpha) for all i, then b_i ~ U(0, 6) for all i;
/// eta = (-1, 0, ..., 0, 1).
S1Draw generate_s1(std::size_t n, std::size_t p, double alpha, RandomStream& rng);

/// theta_ij = log(1 + a_i * j + b_i) for j = 1..p.
Matrix s2_signal(const Vector& a, const Vector& b, std::size_t p);

/// Same draws as S1, fed through s2_signal.
S2Draw generate_s2(std::size_t n, std::size_t p, double alpha, RandomStream& rng);

/// Linear growth signal with a_i ~ U(0, alpha), b_i ~ U(0, 6) and the given
/// positions.
S1Draw generate_linear(std::size_t n, const Vector& eta, double alpha, RandomStream& rng);

/// Y[:, pi[k]] = theta[:, k] + sigma * Z[:, pi[k]]; the noise is drawn row
/// by row in observed column order.
ObservationMatrix synthesize_observation(const Matrix& theta, double sigma, const Permutation& pi,
                                         RandomStream& rng);

/// ||estimate - truth||_2 / sqrt(n). With align set and a counterpart given,
/// the smaller of the two risks.
double empirical_risk(const Vector& estimate, const Vector& truth, bool align = false,
                      const Vector* counterpart = nullptr);

struct RiskSummary {
  Method estimator = Method::Spectral;
  Target target = Target::Range;
  /// One entry per replicate; NaN marks a failed replicate.
  std::vector<double> risks;
  std::size_t failed = 0;
  double mean = 0.0;
  double sd = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

struct RiskReport {
  ScenarioSpec config;
  std::uint64_t masterSeed = 0;
  std::size_t reps = 0;
  std::vector<RiskSummary> entries;

  const RiskSummary& at(Method estimator, Target target) const;
};

struct MonteCarloOptions {
  unsigned threads = 1;
  /// Score each estimate against the better of its own and the swapped
  /// R/L labeling.
  bool align = false;
  EstimatorOptions estimator;
};

/// Replicate r draws everything from RandomStream(mix_seed(spec.seed, r)):
/// signal first, then the permutation, then the noise. The report depends
/// only on (spec, estimators, reps, options.align, options.estimator).
RiskReport run_monte_carlo(const ScenarioSpec& spec, std::span<const Method> estimators,
                           std::size_t reps, const MonteCarloOptions& options = {});

/// Fills mean, sd (n - 1 denominator) and type-7 quartiles from the
/// non-NaN risks.
void summarize(RiskSummary& summary);

}  // namespace permrow
