#include "permrow/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>

#include "permrow/errors.hpp"

namespace permrow {

namespace {

constexpr double kInterceptUpper = 6.0;
constexpr double kCenterTolerance = 1e-10;

Permutation identity_permutation(std::size_t p) {
  Permutation perm(p);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return perm;
}

void draw_slopes_and_intercepts(std::size_t n, double alpha, RandomStream& rng, Vector& a,
                                Vector& b) {
  a.resize(static_cast<Eigen::Index>(n));
  b.resize(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = rng.uniform(0.0, alpha);
  for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = rng.uniform(0.0, kInterceptUpper);
}

void check_generator_args(std::size_t n, std::size_t p, double alpha) {
  if (n < 1 || p < 3) {
    throw Error(ErrorCode::InvalidArgument, "generators need n >= 1 and p >= 3");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must be finite and nonnegative");
  }
}

// Linear interpolation between order statistics (R's default type 7).
double quantile_sorted(const std::vector<double>& sorted, double prob) {
  if (sorted.size() == 1) return sorted.front();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Vector default_eta(std::size_t p) {
  Vector eta(static_cast<Eigen::Index>(p));
  const double step = 2.0 / static_cast<double>(p - 1);
  for (std::size_t j = 0; j < p; ++j) {
    // Mirror the upper half so the positions are exactly antisymmetric.
    const std::size_t mirror = p - 1 - j;
    eta[static_cast<Eigen::Index>(j)] =
        j < mirror ? -1.0 + step * static_cast<double>(j)
                   : 1.0 - step * static_cast<double>(mirror);
  }
  if (p % 2 == 1) eta[static_cast<Eigen::Index>(p / 2)] = 0.0;
  return eta;
}

constexpr Target kTargets[] = {Target::ThetaR, Target::ThetaL, Target::Range};

}  // namespace

void LinearGrowthSignal::validate() const {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "slope and intercept vectors differ in length");
  }
  if (eta.size() < 2) {
    throw Error(ErrorCode::DimensionMismatch, "need at least two positions");
  }
  if (std::abs(eta.sum()) > kCenterTolerance) {
    throw Error(ErrorCode::UncenteredEta, "positions must sum to zero");
  }
  for (Eigen::Index j = 1; j < eta.size(); ++j) {
    if (eta[j] < eta[j - 1]) throw Error(ErrorCode::UncenteredEta, "positions must be nondecreasing");
  }
}

Matrix LinearGrowthSignal::theta() const {
  return (a * eta.transpose()).colwise() + b;
}

GroundTruth make_ground_truth(Matrix theta, Permutation pi) {
  if (pi.size() != static_cast<std::size_t>(theta.cols()) || !is_permutation(pi)) {
    throw Error(ErrorCode::InvalidArgument, "permutation does not match the column count");
  }
  GroundTruth truth;
  truth.thetaR = theta.col(theta.cols() - 1);
  truth.thetaL = theta.col(0);
  truth.range = truth.thetaR - truth.thetaL;
  truth.theta = std::move(theta);
  truth.pi = std::move(pi);
  return truth;
}

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::S1: return "S1";
    case ScenarioKind::S2: return "S2";
    case ScenarioKind::CustomLinear: return "CustomLinear";
  }
  return "unknown";
}

std::string_view to_string(PermutationKind kind) {
  switch (kind) {
    case PermutationKind::Identity: return "Identity";
    case PermutationKind::UniformRandom: return "UniformRandom";
    case PermutationKind::Given: return "Given";
  }
  return "unknown";
}

void ScenarioSpec::validate() const {
  if (n < 2 || p < 3) throw Error(ErrorCode::InvalidArgument, "scenario needs n >= 2 and p >= 3");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be nonnegative");
  }
  if (permutation == PermutationKind::Given) {
    if (!givenPermutation || givenPermutation->size() != p || !is_permutation(*givenPermutation)) {
      throw Error(ErrorCode::InvalidArgument,
                  "permutation 'Given' requires givenPermutation, a permutation of 0..p-1");
    }
  }
  if (eta) {
    if (kind != ScenarioKind::CustomLinear) {
      throw Error(ErrorCode::InvalidArgument, "eta is only meaningful for CustomLinear");
    }
    if (eta->size() != p) throw Error(ErrorCode::DimensionMismatch, "eta must have length p");
    LinearGrowthSignal probe{Vector::Zero(1), Eigen::Map<const Vector>(eta->data(), eta->size()),
                             Vector::Zero(1)};
    probe.validate();
  }
}

S1Draw generate_s1(std::size_t n, std::size_t p, double alpha, RandomStream& rng) {
  check_generator_args(n, p, alpha);
  Vector eta = Vector::Zero(static_cast<Eigen::Index>(p));
  eta[0] = -1.0;
  eta[eta.size() - 1] = 1.0;
  return generate_linear(n, eta, alpha, rng);
}

S1Draw generate_linear(std::size_t n, const Vector& eta, double alpha, RandomStream& rng) {
  check_generator_args(n, static_cast<std::size_t>(eta.size()), alpha);
  S1Draw draw;
  draw.signal.eta = eta;
  draw_slopes_and_intercepts(n, alpha, rng, draw.signal.a, draw.signal.b);
  draw.signal.validate();
  draw.truth = make_ground_truth(draw.signal.theta(), identity_permutation(eta.size()));
  return draw;
}

Matrix s2_signal(const Vector& a, const Vector& b, std::size_t p) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "slope and intercept vectors differ in length");
  }
  Matrix theta(a.size(), static_cast<Eigen::Index>(p));
  for (Eigen::Index i = 0; i < theta.rows(); ++i) {
    for (Eigen::Index j = 0; j < theta.cols(); ++j) {
      theta(i, j) = std::log1p(a[i] * static_cast<double>(j + 1) + b[i]);
    }
  }
  return theta;
}

S2Draw generate_s2(std::size_t n, std::size_t p, double alpha, RandomStream& rng) {
  check_generator_args(n, p, alpha);
  S2Draw draw;
  draw_slopes_and_intercepts(n, alpha, rng, draw.a, draw.b);
  draw.theta = s2_signal(draw.a, draw.b, p);
  draw.truth = make_ground_truth(draw.theta, identity_permutation(p));
  return draw;
}

ObservationMatrix synthesize_observation(const Matrix& theta, double sigma, const Permutation& pi,
                                         RandomStream& rng) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be nonnegative");
  Matrix y = permute_columns(theta, pi);
  if (sigma > 0.0) {
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      for (Eigen::Index j = 0; j < y.cols(); ++j) y(i, j) += sigma * rng.normal();
    }
  }
  return ObservationMatrix(std::move(y));
}

double empirical_risk(const Vector& estimate, const Vector& truth, bool align,
                      const Vector* counterpart) {
  if (estimate.size() != truth.size() || truth.size() == 0) {
    throw Error(ErrorCode::LengthMismatch, "estimate and truth must have equal, nonzero length");
  }
  const double scale = std::sqrt(static_cast<double>(truth.size()));
  const double direct = (estimate - truth).norm() / scale;
  if (!align || counterpart == nullptr) return direct;
  if (counterpart->size() != truth.size()) {
    throw Error(ErrorCode::LengthMismatch, "counterpart must match the truth length");
  }
  return std::min(direct, (*counterpart - truth).norm() / scale);
}

void summarize(RiskSummary& summary) {
  std::vector<double> ok;
  ok.reserve(summary.risks.size());
  for (double r : summary.risks) {
    if (!std::isnan(r)) ok.push_back(r);
  }
  summary.failed = summary.risks.size() - ok.size();
  if (ok.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    summary.mean = summary.sd = summary.q1 = summary.median = summary.q3 = nan;
    return;
  }
  const double count = static_cast<double>(ok.size());
  summary.mean = std::accumulate(ok.begin(), ok.end(), 0.0) / count;
  double ss = 0.0;
  for (double r : ok) ss += (r - summary.mean) * (r - summary.mean);
  summary.sd = ok.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
  std::sort(ok.begin(), ok.end());
  summary.q1 = quantile_sorted(ok, 0.25);
  summary.median = quantile_sorted(ok, 0.5);
  summary.q3 = quantile_sorted(ok, 0.75);
}

const RiskSummary& RiskReport::at(Method estimator, Target target) const {
  for (const auto& entry : entries) {
    if (entry.estimator == estimator && entry.target == target) return entry;
  }
  throw Error(ErrorCode::InvalidArgument, "no risk entry for " + std::string(to_string(estimator)) +
                                              "/" + std::string(to_string(target)));
}

RiskReport run_monte_carlo(const ScenarioSpec& spec, std::span<const Method> estimators,
                           std::size_t reps, const MonteCarloOptions& options) {
  spec.validate();
  if (reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be at least 1");
  if (estimators.empty()) throw Error(ErrorCode::InvalidArgument, "no estimators requested");

  RiskReport report;
  report.config = spec;
  report.masterSeed = spec.seed;
  report.reps = reps;
  for (Method m : estimators) {
    for (Target t : kTargets) {
      RiskSummary entry;
      entry.estimator = m;
      entry.target = t;
      entry.risks.assign(reps, std::numeric_limits<double>::quiet_NaN());
      report.entries.push_back(std::move(entry));
    }
  }

  const Vector custom_eta = spec.eta ? Vector(Eigen::Map<const Vector>(spec.eta->data(),
                                                                       spec.eta->size()))
                                     : default_eta(spec.p);

  // Each replicate writes only its own slots in report.entries.
  auto run_replicate = [&](std::size_t r) {
    RandomStream rng(mix_seed(spec.seed, r));
    GroundTruth truth;
    switch (spec.kind) {
      case ScenarioKind::S1: truth = generate_s1(spec.n, spec.p, spec.alpha, rng).truth; break;
      case ScenarioKind::S2: truth = generate_s2(spec.n, spec.p, spec.alpha, rng).truth; break;
      case ScenarioKind::CustomLinear:
        truth = generate_linear(spec.n, custom_eta, spec.alpha, rng).truth;
        break;
    }
    switch (spec.permutation) {
      case PermutationKind::Identity: truth.pi = identity_permutation(spec.p); break;
      case PermutationKind::UniformRandom: truth.pi = rng.permutation(spec.p); break;
      case PermutationKind::Given: truth.pi = *spec.givenPermutation; break;
    }
    const ObservationMatrix y = synthesize_observation(truth.theta, spec.sigma, truth.pi, rng);

    std::optional<SpectralFit> fit;
    bool fit_failed = false;
    std::size_t slot = 0;
    for (Method m : estimators) {
      try {
        if (uses_svd(m) && !fit) {
          if (fit_failed) throw Error(ErrorCode::ZeroMatrix, "leading triple unavailable");
          try {
            fit = fit_spectral(y, options.estimator.svd);
          } catch (const Error&) {
            fit_failed = true;
            throw;
          }
        }
        const ExtremeEstimates est = uses_svd(m) ? estimate(y, m, options.estimator, *fit)
                                                 : estimate(y, m, options.estimator);
        const Vector flipped = -est.range;
        report.entries[slot + 0].risks[r] =
            empirical_risk(est.thetaR, truth.thetaR, options.align, &est.thetaL);
        report.entries[slot + 1].risks[r] =
            empirical_risk(est.thetaL, truth.thetaL, options.align, &est.thetaR);
        report.entries[slot + 2].risks[r] =
            empirical_risk(est.range, truth.range, options.align, &flipped);
      } catch (const Error&) {
        // Left as NaN; counted as failed by summarize().
      }
      slot += 3;
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(reps)));
  if (threads == 1) {
    for (std::size_t r = 0; r < reps; ++r) run_replicate(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < reps; r = next++) run_replicate(r);
      });
    }
  }

  for (auto& entry : report.entries) summarize(entry);
  return report;
}

}  // namespace permrow
