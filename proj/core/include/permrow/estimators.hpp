#pragma once

#include <optional>
#include <string_view>

#include "permrow/matrix_core.hpp"

namespace permrow {

enum class Method { Spectral, Regression, DirectSorting, OrderStatistic, IRep };

/// Estimated quantity: the right extreme column, the left one, or their
/// difference.
enum class Target { ThetaR, ThetaL, Range };
std::string_view to_string(Target target);

std::string_view to_string(Method method);
/// Accepts the CLI spellings: spectral, regression, ds, os, irep.
Method parse_method(std::string_view name);

struct ExtremeEstimates {
  Vector thetaR;
  Vector thetaL;
  /// Always thetaR - thetaL, elementwise.
  Vector range;
  /// Largest and smallest components of v-hat; zero for methods without SVD.
  double vMax = 0.0;
  double vMin = 0.0;
  /// Ranking of v-hat; its inversePermutation is the recovered column order.
  std::optional<Ranking> permutationHat;
  Method method = Method::Spectral;
  std::optional<SingularTriple> triple;
};

/// Row-centered data and its leading triple, shareable between the three
/// SVD-based estimators.
struct SpectralFit {
  CenteredMatrix centered;
  SingularTriple triple;
};

SpectralFit fit_spectral(const ObservationMatrix& y, const SvdOptions& svd = {});

struct EstimatorOptions {
  SvdOptions svd;
  double trimFraction = 0.05;
};

/// Compound estimator: theta_R = v_(p) X v + Y e / p, theta_L = v_(1) X v + Y e / p.
ExtremeEstimates spectral_extremes(const ObservationMatrix& y, const SvdOptions& svd = {});
ExtremeEstimates spectral_extremes(const ObservationMatrix& y, const SpectralFit& fit);

/// Same quantities through the two-step route: sort the columns of Y by the
/// recovered order, then regress every row on the sorted scores.
ExtremeEstimates regression_extremes(const ObservationMatrix& y, const SvdOptions& svd = {});
ExtremeEstimates regression_extremes(const ObservationMatrix& y, const SpectralFit& fit);

/// Reads off the observed columns that the spectral ordering puts first and last.
ExtremeEstimates direct_sorting_extremes(const ObservationMatrix& y, const SvdOptions& svd = {});
ExtremeEstimates direct_sorting_extremes(const ObservationMatrix& y, const SpectralFit& fit);

/// Row-wise max and min; no cross-sample information is used.
ExtremeEstimates order_statistic_extremes(const ObservationMatrix& y);

/// Simplified iRep-style log-PTR proxy. Each row is sorted, trimmed by
/// floor(trimFraction * p) entries at both ends, and regressed on the index
/// positions of the kept window; returns slope * (p - 1).
Vector irep_range(const ObservationMatrix& y, double trimFraction = 0.05);

/// Full record for the iRep proxy: thetaL/thetaR are the fitted line at
/// positions 0 and p - 1.
ExtremeEstimates irep_extremes(const ObservationMatrix& y, double trimFraction = 0.05);

ExtremeEstimates estimate(const ObservationMatrix& y, Method method,
                          const EstimatorOptions& options = {});
/// As above, reusing a precomputed fit of y for the SVD-based methods.
ExtremeEstimates estimate(const ObservationMatrix& y, Method method, const EstimatorOptions& options,
                          const SpectralFit& fit);

bool uses_svd(Method method);

}  // namespace permrow
