#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "permrow/errors.hpp"
#include "permrow/matrix_core.hpp"
#include "permrow/theory.hpp"

namespace {

using permrow::SignalIndices;
using permrow::SnrRegime;
using permrow::Target;
using permrow::Vector;

SignalIndices indices(double t, double beta, double sigma) {
  SignalIndices idx;
  idx.t = t;
  idx.betaR = beta;
  idx.betaL = beta;
  idx.sigma = sigma;
  return idx;
}

TEST(RatePsi, Examples) {
  EXPECT_NEAR(permrow::rate_psi(std::size_t{100}, std::size_t{55}), std::sqrt(std::log(55.0) / 100.0), 1e-15);
  EXPECT_NEAR(permrow::rate_psi(std::size_t{100}, std::size_t{55}), 0.2002, 5e-5);
  EXPECT_DOUBLE_EQ(permrow::rate_psi(1.0, std::numbers::e), 1.0);
}

TEST(RatePsi, QuadruplingNHalvesPsi) {
  for (std::size_t n : {1, 7, 50, 1000})
    for (std::size_t p : {2, 30, 1000, 100000})
      EXPECT_NEAR(permrow::rate_psi(4 * n, p), permrow::rate_psi(n, p) / 2.0, 1e-15);
}

TEST(RatePsi, StrictMonotonicity) {
  for (std::size_t p = 2; p < 200; ++p)
    EXPECT_LT(permrow::rate_psi(std::size_t{10}, p), permrow::rate_psi(std::size_t{10}, p + 1));
  for (std::size_t n = 1; n < 200; ++n)
    EXPECT_GT(permrow::rate_psi(n, std::size_t{500}), permrow::rate_psi(n + 1, std::size_t{500}));
}

TEST(Minimax, StrongBoundaryClosedForm) {
  // sigma = 1, t^2 = p, beta = 1, n = p: the first term reduces to
  // min(sqrt(2 p n) / p, 1) * t / sqrt(n).
  for (std::size_t p : {4, 100, 2500}) {
    const std::size_t n = p;
    const double t = std::sqrt(static_cast<double>(p));
    const double expected = std::min(std::sqrt(2.0 * p * n) / p, 1.0) * t / std::sqrt(double(n));
    EXPECT_NEAR(permrow::minimax_first_term(indices(t, 1.0, 1.0), n, p), expected, 1e-12);
    EXPECT_NEAR(permrow::minimax_rate_extreme(indices(t, 1.0, 1.0), n, p),
                expected + permrow::rate_psi(n, p), 1e-12);
  }
}

TEST(Minimax, LargeSignalApproachesPlateau) {
  const auto idx = indices(1e9, 0.6, 1.3);
  EXPECT_NEAR(permrow::minimax_first_term(idx, 100, 1000), 0.6 * 1.3, 1e-6);
  EXPECT_DOUBLE_EQ(permrow::regime_first_term(idx, 100, 1000), 0.6 * 1.3);
}

TEST(Minimax, ZeroBetaLeavesPsiTerm) {
  for (double t : {0.5, 10.0, 1e4}) {
    const auto idx = indices(t, 0.0, 1.7);
    EXPECT_EQ(permrow::minimax_rate_extreme(idx, 100, 1000), 1.7 * permrow::rate_psi(std::size_t{100}, std::size_t{1000}));
  }
}

TEST(Minimax, TargetBeta) {
  SignalIndices idx = indices(5.0, 0.3, 1.0);
  idx.betaL = 0.5;
  EXPECT_DOUBLE_EQ(permrow::target_beta(idx, Target::ThetaR), 0.3);
  EXPECT_DOUBLE_EQ(permrow::target_beta(idx, Target::ThetaL), 0.5);
  EXPECT_DOUBLE_EQ(permrow::target_beta(idx, Target::Range), 0.8);
  EXPECT_NEAR(permrow::minimax_first_term(idx, 50, 500, Target::Range),
              permrow::minimax_first_term(idx, 50, 500, Target::ThetaR) +
                  permrow::minimax_first_term(idx, 50, 500, Target::ThetaL),
              1e-14);
}

TEST(Minimax, InvalidIndicesRejected) {
  EXPECT_THROW(permrow::minimax_first_term(indices(0.0, 0.5, 1.0), 10, 10), permrow::Error);
  EXPECT_THROW(permrow::minimax_first_term(indices(1.0, 1.5, 1.0), 10, 10), permrow::Error);
  EXPECT_THROW(permrow::minimax_first_term(indices(1.0, 0.5, 0.0), 10, 10), permrow::Error);
}

// Grid of t^2 values that classify_snr labels Intermediate for n=100, p=1e4.
std::vector<double> intermediate_grid() {
  std::vector<double> grid;
  for (double t2 = 1001.0; t2 <= 10000.0; t2 += 10.0) grid.push_back(t2);
  return grid;
}

TEST(Minimax, RateNonincreasingOnIntermediateRegime) {
  const std::size_t n = 100;
  const std::size_t p = 10000;
  double prev = std::numeric_limits<double>::infinity();
  for (double t2 : intermediate_grid()) {
    ASSERT_EQ(permrow::classify_snr(std::sqrt(t2), 1.0, n, p), SnrRegime::Intermediate);
    const double rate = permrow::minimax_rate_extreme(indices(std::sqrt(t2), 0.5, 1.0), n, p);
    EXPECT_LE(rate, prev) << "t^2 = " << t2;
    prev = rate;
  }
}

TEST(Minimax, RegimeFormNonincreasingOnIntermediateRegime) {
  const std::size_t n = 100;
  const std::size_t p = 10000;
  double prev = std::numeric_limits<double>::infinity();
  for (double t2 : intermediate_grid()) {
    const double term = permrow::regime_first_term(indices(std::sqrt(t2), 0.5, 1.0), n, p);
    EXPECT_LE(term, prev);
    prev = term;
  }
}

TEST(Minimax, RegimeFormConstantOnStrongRegime) {
  const std::size_t n = 100;
  const std::size_t p = 10000;
  for (double t2 = 10001.0; t2 <= 1e9; t2 *= 1.7) {
    ASSERT_EQ(permrow::classify_snr(std::sqrt(t2), 1.0, n, p), SnrRegime::Strong);
    EXPECT_EQ(permrow::regime_first_term(indices(std::sqrt(t2), 0.5, 1.0), n, p), 0.5);
  }
}

TEST(ClassifySnr, HandLabels) {
  EXPECT_EQ(permrow::classify_snr(std::sqrt(500.0), 1.0, 100, 10000), SnrRegime::Weak);
  EXPECT_EQ(permrow::classify_snr(std::sqrt(5000.0), 1.0, 100, 10000), SnrRegime::Intermediate);
  EXPECT_EQ(permrow::classify_snr(std::sqrt(20000.0), 1.0, 100, 10000), SnrRegime::Strong);
}

TEST(ClassifySnr, BoundariesBelongToLowerRegime) {
  // n = p: both thresholds equal n.
  EXPECT_EQ(permrow::classify_snr(10.0, 1.0, 100, 100), SnrRegime::Weak);
  EXPECT_EQ(permrow::classify_snr(std::sqrt(1000.0), 1.0, 100, 10000), SnrRegime::Weak);
  EXPECT_EQ(permrow::classify_snr(100.0, 1.0, 100, 10000), SnrRegime::Intermediate);
  EXPECT_EQ(permrow::to_string(SnrRegime::Intermediate), "intermediate");
}

TEST(ClassifySnr, NondecreasingInT) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    int prev = 0;
    for (double t = 0.0; t < 500.0; t += 0.37) {
      const int now = static_cast<int>(permrow::classify_snr(t, sigma, 100, 10000));
      EXPECT_GE(now, prev);
      prev = now;
    }
    EXPECT_EQ(prev, static_cast<int>(SnrRegime::Strong));
  }
}

// The piecewise first term is continuous exactly at the classification
// thresholds, so they are where the regime forms switch.
TEST(ClassifySnr, ThresholdsAreSwitchPointsOfTheFirstTerm) {
  const std::size_t n = 64;
  const std::size_t p = 4096;
  const double sigma = 1.5;
  const double s2 = sigma * sigma;
  const double weak_edge = std::sqrt(s2 * std::sqrt(double(n) * double(p)));
  const double strong_edge = std::sqrt(s2 * double(p));
  const double beta = 0.4;
  const double weak_form = beta * weak_edge / std::sqrt(double(n));
  const double intermediate_at_weak = beta * s2 * std::sqrt(double(p)) / weak_edge;
  EXPECT_NEAR(weak_form, intermediate_at_weak, 1e-12);
  const double intermediate_at_strong = beta * s2 * std::sqrt(double(p)) / strong_edge;
  EXPECT_NEAR(intermediate_at_strong, beta * sigma, 1e-12);
  EXPECT_NEAR(permrow::regime_first_term(indices(weak_edge, beta, sigma), n, p), weak_form, 1e-12);
  EXPECT_NEAR(permrow::regime_first_term(indices(strong_edge, beta, sigma), n, p), beta * sigma, 1e-12);
}

TEST(LinearIndices, SmallExample) {
  Vector a(2), eta(3);
  a << 1, 2;
  eta << -1, 0, 1;
  const auto idx = permrow::linear_signal_indices(a, eta, 1.0);
  EXPECT_NEAR(idx.t, std::sqrt(10.0), 1e-14);
  EXPECT_NEAR(idx.betaR, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(idx.betaL, 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(LinearIndices, S1Design) {
  std::mt19937_64 gen(5);
  const Vector a = permrow::testing::gaussian_matrix(gen, 9, 1).col(0).cwiseAbs();
  Vector eta = Vector::Zero(40);
  eta[0] = -1.0;
  eta[39] = 1.0;
  const auto idx = permrow::linear_signal_indices(a, eta, 1.0);
  EXPECT_NEAR(idx.t, std::sqrt(2.0) * a.norm(), 1e-12);
  EXPECT_NEAR(idx.betaR, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(idx.betaL, 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(LinearIndices, TMatchesLeadingSingularValue) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = permrow::testing::random_linear_instance(gen, 8, 30);
    const auto idx = permrow::linear_signal_indices(inst.a, inst.eta, 1.0);
    const auto triple = permrow::leading_singular_triple(permrow::center_rows(permrow::ObservationMatrix(inst.theta)));
    EXPECT_NEAR(idx.t, triple.lambda, 1e-10 * idx.t);
    const double inv_sqrt_p = 1.0 / std::sqrt(30.0);
    EXPECT_GE(idx.betaR, inv_sqrt_p);
    EXPECT_GE(idx.betaL, inv_sqrt_p);
  }
}

TEST(LinearIndices, Errors) {
  Vector a(2), eta(3);
  a << 1, 2;
  eta << 0, 1, 2;
  EXPECT_THROW(permrow::linear_signal_indices(a, eta, 1.0), permrow::Error);
  try {
    permrow::linear_signal_indices(a, eta, 1.0);
  } catch (const permrow::Error& e) {
    EXPECT_EQ(e.code(), permrow::ErrorCode::UncenteredEta);
  }
  try {
    permrow::linear_signal_indices(Vector::Zero(2), Vector::LinSpaced(3, -1, 1), 1.0);
    ADD_FAILURE();
  } catch (const permrow::Error& e) {
    EXPECT_EQ(e.code(), permrow::ErrorCode::ZeroSignal);
  }
}

TEST(Feasibility, MonotoneInSignalStrength) {
  const auto weak = indices(1.0, 0.5, 1.0);
  const auto strong = indices(1e6, 0.5, 1.0);
  EXPECT_FALSE(permrow::signal_condition_feasible(weak, 100, 1000));
  EXPECT_TRUE(permrow::signal_condition_feasible(strong, 100, 1000));
}

}  // namespace
