#include "permrow/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "permrow/errors.hpp"

namespace permrow {

namespace {

constexpr double kCenterTolerance = 1e-10;

void check_indices(const SignalIndices& idx, std::size_t n, std::size_t p) {
  if (n < 1 || p < 2) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and p >= 2");
  if (!(idx.t > 0.0) || !std::isfinite(idx.t)) {
    throw Error(ErrorCode::InvalidArgument, "t must be positive and finite");
  }
  if (!(idx.sigma > 0.0) || !std::isfinite(idx.sigma)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be positive and finite");
  }
  if (!(idx.betaR >= 0.0 && idx.betaR <= 1.0) || !(idx.betaL >= 0.0 && idx.betaL <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "betaR and betaL must lie in [0, 1]");
  }
}

}  // namespace

std::string_view to_string(SnrRegime regime) {
  switch (regime) {
    case SnrRegime::Weak: return "weak";
    case SnrRegime::Intermediate: return "intermediate";
    case SnrRegime::Strong: return "strong";
  }
  return "unknown";
}

double rate_psi(double n, double p) {
  if (!(n > 0.0) || !(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "need n > 0 and p > 1");
  return std::sqrt(std::log(p) / n);
}

double rate_psi(std::size_t n, std::size_t p) {
  if (n < 1 || p < 2) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and p >= 2");
  return rate_psi(static_cast<double>(n), static_cast<double>(p));
}

double target_beta(const SignalIndices& idx, Target target) {
  switch (target) {
    case Target::ThetaR: return idx.betaR;
    case Target::ThetaL: return idx.betaL;
    case Target::Range: return idx.betaR + idx.betaL;
  }
  return idx.betaR;
}

double minimax_first_term(const SignalIndices& idx, std::size_t n, std::size_t p, Target target) {
  check_indices(idx, n, p);
  const double nn = static_cast<double>(n);
  const double pp = static_cast<double>(p);
  const double t2 = idx.t * idx.t;
  const double s2 = idx.sigma * idx.sigma;
  const double u_error = idx.sigma * std::sqrt((t2 + s2 * pp) * nn) / t2;
  return target_beta(idx, target) * idx.t / std::sqrt(nn) * std::min(u_error, 1.0);
}

double minimax_rate_extreme(const SignalIndices& idx, std::size_t n, std::size_t p,
                            Target target) {
  return minimax_first_term(idx, n, p, target) + idx.sigma * rate_psi(n, p);
}

double regime_first_term(const SignalIndices& idx, std::size_t n, std::size_t p, Target target) {
  check_indices(idx, n, p);
  const double beta = target_beta(idx, target);
  switch (classify_snr(idx.t, idx.sigma, n, p)) {
    case SnrRegime::Weak: return beta * idx.t / std::sqrt(static_cast<double>(n));
    case SnrRegime::Intermediate:
      return beta * idx.sigma * idx.sigma * std::sqrt(static_cast<double>(p)) / idx.t;
    case SnrRegime::Strong: return beta * idx.sigma;
  }
  return 0.0;
}

SnrRegime classify_snr(double t, double sigma, std::size_t n, std::size_t p) {
  if (!(t >= 0.0) || !(sigma > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need t >= 0 and sigma > 0");
  }
  const double t2 = t * t;
  const double s2 = sigma * sigma;
  const double nn = static_cast<double>(n);
  const double pp = static_cast<double>(p);
  if (t2 <= s2 * std::sqrt(nn * pp)) return SnrRegime::Weak;
  if (t2 <= s2 * pp) return SnrRegime::Intermediate;
  return SnrRegime::Strong;
}

bool signal_condition_feasible(const SignalIndices& idx, std::size_t n, std::size_t p) {
  check_indices(idx, n, p);
  const double beta = idx.betaR;
  if (beta <= 0.0 || beta >= 1.0) return false;
  const double nn = static_cast<double>(n);
  const double pp = static_cast<double>(p);
  const double log_p = std::log(pp);
  const double s2 = idx.sigma * idx.sigma;
  const double psi = rate_psi(n, p);
  const double b2 = beta * beta;
  const double bracket =
      std::min(1.0 / b2, 1.0 / (psi * psi) + std::sqrt(pp / (nn * log_p)) / psi);
  const double required =
      s2 * bracket * nn * log_p + ((1.0 - b2) / b2 * s2 * log_p + b2 * s2 * pp / (1.0 - b2));
  return idx.t * idx.t >= required;
}

SignalIndices linear_signal_indices(const Vector& a, const Vector& eta, double sigma) {
  if (eta.size() < 2) throw Error(ErrorCode::DimensionMismatch, "need at least two positions");
  if (std::abs(eta.sum()) > kCenterTolerance) {
    throw Error(ErrorCode::UncenteredEta, "positions must sum to zero");
  }
  for (Eigen::Index j = 1; j < eta.size(); ++j) {
    if (eta[j] < eta[j - 1]) throw Error(ErrorCode::UncenteredEta, "positions must be nondecreasing");
  }
  const double a_norm = a.norm();
  const double eta_norm = eta.norm();
  if (a_norm == 0.0 || eta_norm == 0.0) {
    throw Error(ErrorCode::ZeroSignal, "slopes or positions are identically zero");
  }
  SignalIndices idx;
  idx.t = a_norm * eta_norm;
  idx.betaR = eta[eta.size() - 1] / eta_norm;
  idx.betaL = -eta[0] / eta_norm;
  idx.sigma = sigma;
  return idx;
}

}  // namespace permrow
