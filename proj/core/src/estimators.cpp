#include "permrow/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "permrow/errors.hpp"

namespace permrow {

namespace {

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
};

// Ordinary least squares of y on x through the centered cross products.
template <typename XFn, typename YFn>
LineFit fit_line(std::size_t count, XFn x, YFn y) {
  double xbar = 0.0;
  double ybar = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    xbar += x(k);
    ybar += y(k);
  }
  xbar /= static_cast<double>(count);
  ybar /= static_cast<double>(count);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double dx = x(k) - xbar;
    sxx += dx * dx;
    sxy += dx * (y(k) - ybar);
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::DegenerateRegressor, "regressor has zero variance");
  }
  const double slope = sxy / sxx;
  return {ybar - slope * xbar, slope};
}

void check_trim(double trim_fraction, Eigen::Index p) {
  if (!(trim_fraction >= 0.0 && trim_fraction < 0.25)) {
    throw Error(ErrorCode::InvalidArgument, "trimFraction must lie in [0, 0.25)");
  }
  if (static_cast<double>(p) * (1.0 - 2.0 * trim_fraction) < 3.0) {
    throw Error(ErrorCode::InsufficientColumns,
                "need p * (1 - 2 * trimFraction) >= 3, got p = " + std::to_string(p));
  }
}

LineFit irep_fit(std::vector<double> row, double trim_fraction) {
  const std::size_t p = row.size();
  std::sort(row.begin(), row.end());
  const auto drop = static_cast<std::size_t>(std::floor(trim_fraction * static_cast<double>(p)));
  const std::size_t kept = p - 2 * drop;
  return fit_line(
      kept, [&](std::size_t k) { return static_cast<double>(k + drop); },
      [&](std::size_t k) { return row[k + drop]; });
}

std::vector<double> row_vector(const Matrix& m, Eigen::Index i) {
  std::vector<double> row(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
  return row;
}

ExtremeEstimates with_spectral_context(const SingularTriple& triple, Method method) {
  ExtremeEstimates est;
  est.method = method;
  est.vMax = triple.v.maxCoeff();
  est.vMin = triple.v.minCoeff();
  est.permutationHat = rank_vector(triple.v);
  est.triple = triple;
  return est;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Spectral: return "spectral";
    case Method::Regression: return "regression";
    case Method::DirectSorting: return "ds";
    case Method::OrderStatistic: return "os";
    case Method::IRep: return "irep";
  }
  return "unknown";
}

std::string_view to_string(Target target) {
  switch (target) {
    case Target::ThetaR: return "ThetaR";
    case Target::ThetaL: return "ThetaL";
    case Target::Range: return "Range";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "spectral") return Method::Spectral;
  if (name == "regression") return Method::Regression;
  if (name == "ds") return Method::DirectSorting;
  if (name == "os") return Method::OrderStatistic;
  if (name == "irep") return Method::IRep;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

SpectralFit fit_spectral(const ObservationMatrix& y, const SvdOptions& svd) {
  SpectralFit fit;
  fit.centered = center_rows(y);
  fit.triple = leading_singular_triple(fit.centered, svd);
  return fit;
}

bool uses_svd(Method method) {
  return method == Method::Spectral || method == Method::Regression ||
         method == Method::DirectSorting;
}

ExtremeEstimates spectral_extremes(const ObservationMatrix& y, const SvdOptions& svd) {
  return spectral_extremes(y, fit_spectral(y, svd));
}

ExtremeEstimates spectral_extremes(const ObservationMatrix&, const SpectralFit& fit) {
  const CenteredMatrix& x = fit.centered;
  const SingularTriple& triple = fit.triple;
  ExtremeEstimates est = with_spectral_context(triple, Method::Spectral);

  const Vector projected = x.values * triple.v;
  est.thetaR = est.vMax * projected + x.rowMeans;
  est.thetaL = est.vMin * projected + x.rowMeans;
  est.range = est.thetaR - est.thetaL;
  return est;
}

ExtremeEstimates regression_extremes(const ObservationMatrix& y, const SvdOptions& svd) {
  return regression_extremes(y, fit_spectral(y, svd));
}

ExtremeEstimates regression_extremes(const ObservationMatrix& y, const SpectralFit& fit) {
  const SingularTriple& triple = fit.triple;
  ExtremeEstimates est = with_spectral_context(triple, Method::Regression);

  const Matrix& ym = y.values();
  const auto& order = est.permutationHat->inversePermutation;
  const std::size_t p = order.size();
  std::vector<double> scores(p);
  for (std::size_t k = 0; k < p; ++k) scores[k] = triple.v[static_cast<Eigen::Index>(order[k])];

  const Eigen::Index n = ym.rows();
  est.thetaR.resize(n);
  est.thetaL.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const LineFit fit = fit_line(
        p, [&](std::size_t k) { return scores[k]; },
        [&](std::size_t k) { return ym(i, static_cast<Eigen::Index>(order[k])); });
    est.thetaL[i] = fit.intercept + fit.slope * scores.front();
    est.thetaR[i] = fit.intercept + fit.slope * scores.back();
  }
  est.range = est.thetaR - est.thetaL;
  return est;
}

ExtremeEstimates direct_sorting_extremes(const ObservationMatrix& y, const SvdOptions& svd) {
  return direct_sorting_extremes(y, fit_spectral(y, svd));
}

ExtremeEstimates direct_sorting_extremes(const ObservationMatrix& y, const SpectralFit& fit) {
  ExtremeEstimates est = with_spectral_context(fit.triple, Method::DirectSorting);

  const auto& order = est.permutationHat->inversePermutation;
  est.thetaR = y.values().col(static_cast<Eigen::Index>(order.back()));
  est.thetaL = y.values().col(static_cast<Eigen::Index>(order.front()));
  est.range = est.thetaR - est.thetaL;
  return est;
}

ExtremeEstimates order_statistic_extremes(const ObservationMatrix& y) {
  ExtremeEstimates est;
  est.method = Method::OrderStatistic;
  est.thetaR = y.values().rowwise().maxCoeff();
  est.thetaL = y.values().rowwise().minCoeff();
  est.range = est.thetaR - est.thetaL;
  return est;
}

Vector irep_range(const ObservationMatrix& y, double trimFraction) {
  const Matrix& ym = y.values();
  check_trim(trimFraction, ym.cols());
  const double span = static_cast<double>(ym.cols() - 1);
  Vector out(ym.rows());
  for (Eigen::Index i = 0; i < ym.rows(); ++i) {
    out[i] = irep_fit(row_vector(ym, i), trimFraction).slope * span;
  }
  return out;
}

ExtremeEstimates irep_extremes(const ObservationMatrix& y, double trimFraction) {
  const Matrix& ym = y.values();
  check_trim(trimFraction, ym.cols());
  const double span = static_cast<double>(ym.cols() - 1);
  ExtremeEstimates est;
  est.method = Method::IRep;
  est.thetaR.resize(ym.rows());
  est.thetaL.resize(ym.rows());
  for (Eigen::Index i = 0; i < ym.rows(); ++i) {
    const LineFit fit = irep_fit(row_vector(ym, i), trimFraction);
    est.thetaL[i] = fit.intercept;
    est.thetaR[i] = fit.intercept + fit.slope * span;
  }
  est.range = est.thetaR - est.thetaL;
  return est;
}

ExtremeEstimates estimate(const ObservationMatrix& y, Method method,
                          const EstimatorOptions& options) {
  switch (method) {
    case Method::Spectral: return spectral_extremes(y, options.svd);
    case Method::Regression: return regression_extremes(y, options.svd);
    case Method::DirectSorting: return direct_sorting_extremes(y, options.svd);
    case Method::OrderStatistic: return order_statistic_extremes(y);
    case Method::IRep: return irep_extremes(y, options.trimFraction);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

ExtremeEstimates estimate(const ObservationMatrix& y, Method method, const EstimatorOptions& options,
                          const SpectralFit& fit) {
  switch (method) {
    case Method::Spectral: return spectral_extremes(y, fit);
    case Method::Regression: return regression_extremes(y, fit);
    case Method::DirectSorting: return direct_sorting_extremes(y, fit);
    default: return estimate(y, method, options);
  }
}

}  // namespace permrow
