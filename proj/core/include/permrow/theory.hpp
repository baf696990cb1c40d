#pragma once

#include <cstddef>
#include <string_view>

#include "permrow/estimators.hpp"
#include "permrow/matrix_core.hpp"

namespace permrow {

/// Global signal strength t (scale of the leading singular value of the
/// row-centered signal), the extreme-component bounds of its right singular
/// vector, and the noise level.
struct SignalIndices {
  double t = 0.0;
  double betaR = 1.0;
  double betaL = 1.0;
  double sigma = 1.0;
};

enum class SnrRegime { Weak, Intermediate, Strong };
std::string_view to_string(SnrRegime regime);

/// sqrt(ln p / n).
double rate_psi(double n, double p);
double rate_psi(std::size_t n, std::size_t p);

/// betaR, betaL or betaR + betaL depending on the target.
double target_beta(const SignalIndices& idx, Target target);

/// (beta t / sqrt n) * min(sigma sqrt((t^2 + sigma^2 p) n) / t^2, 1).
/// Constants are taken as 1; only the order of magnitude is meaningful.
double minimax_first_term(const SignalIndices& idx, std::size_t n, std::size_t p,
                          Target target = Target::ThetaR);

/// First term plus sigma * psi(n, p).
double minimax_rate_extreme(const SignalIndices& idx, std::size_t n, std::size_t p,
                            Target target = Target::ThetaR);

/// The first term in its per-regime asymptotic form: beta t / sqrt n (weak),
/// beta sigma^2 sqrt p / t (intermediate), beta sigma (strong).
double regime_first_term(const SignalIndices& idx, std::size_t n, std::size_t p,
                         Target target = Target::ThetaR);

/// Weak if t^2 <= sigma^2 sqrt(n p), Strong if t^2 > sigma^2 p (a boundary
/// value belongs to the lower regime), Intermediate otherwise.
SnrRegime classify_snr(double t, double sigma, std::size_t n, std::size_t p);

/// Whether t^2 clears the signal-strength condition under which the rate is
/// minimax (constant 1, betaR as the extreme bound). Advisory only.
bool signal_condition_feasible(const SignalIndices& idx, std::size_t n, std::size_t p);

/// t = ||a|| ||eta||, betaR = eta_p / ||eta||, betaL = -eta_1 / ||eta||.
/// Throws UncenteredEta for positions that are not centered and
/// nondecreasing, ZeroSignal when a or eta vanishes.
SignalIndices linear_signal_indices(const Vector& a, const Vector& eta, double sigma);

}  // namespace permrow
