#include <cmath>
#include <numeric>

#include "permrow/errors.hpp"
#include "permrow/stats.hpp"

namespace permrow {

namespace {

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double ss = 0.0;  // sum of squared deviations
};

Moments moments(std::span<const double> x) {
  Moments m;
  m.n = static_cast<double>(x.size());
  m.mean = std::accumulate(x.begin(), x.end(), 0.0) / m.n;
  for (double v : x) m.ss += (v - m.mean) * (v - m.mean);
  return m;
}

void check_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "sample contains NaN or infinity");
  }
}

}  // namespace

std::string_view to_string(TTestVariant variant) {
  return variant == TTestVariant::Welch ? "welch" : "pooled";
}

FTestResult f_test_oneway(const GroupedValues& grouped) {
  const auto& groups = grouped.groups;
  if (groups.size() < 2) throw Error(ErrorCode::InvalidArgument, "F-test needs at least two groups");

  std::size_t total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.values.empty()) {
      throw Error(ErrorCode::InvalidArgument, "group '" + g.label + "' is empty");
    }
    check_finite(g.values);
    total += g.values.size();
    grand_sum += std::accumulate(g.values.begin(), g.values.end(), 0.0);
  }
  const std::size_t k = groups.size();
  if (total <= k) {
    throw Error(ErrorCode::InvalidArgument, "F-test needs more observations than groups");
  }
  const double grand_mean = grand_sum / static_cast<double>(total);

  double ssb = 0.0;
  double ssw = 0.0;
  for (const auto& g : groups) {
    const Moments m = moments(g.values);
    ssb += m.n * (m.mean - grand_mean) * (m.mean - grand_mean);
    ssw += m.ss;
  }

  FTestResult r;
  r.df1 = k - 1;
  r.df2 = total - k;
  const double msw = ssw / static_cast<double>(r.df2);
  if (msw == 0.0) {
    throw Error(ErrorCode::DegenerateVariance, "within-group variance is zero");
  }
  r.F = (ssb / static_cast<double>(r.df1)) / msw;
  r.pValue = f_distribution_sf(r.F, static_cast<double>(r.df1), static_cast<double>(r.df2));
  return r;
}

TTestResult t_test_two_sample(std::span<const double> x, std::span<const double> y,
                              TTestVariant variant) {
  if (x.size() < 2 || y.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "t-test needs at least two values per sample");
  }
  check_finite(x);
  check_finite(y);
  const Moments mx = moments(x);
  const Moments my = moments(y);
  const double vx = mx.ss / (mx.n - 1.0);
  const double vy = my.ss / (my.n - 1.0);

  TTestResult r;
  double se = 0.0;
  if (variant == TTestVariant::Welch) {
    const double ax = vx / mx.n;
    const double ay = vy / my.n;
    se = std::sqrt(ax + ay);
    if (se == 0.0) throw Error(ErrorCode::DegenerateVariance, "both samples are constant");
    r.df = (ax + ay) * (ax + ay) / (ax * ax / (mx.n - 1.0) + ay * ay / (my.n - 1.0));
  } else {
    r.df = mx.n + my.n - 2.0;
    const double pooled = (mx.ss + my.ss) / r.df;
    se = std::sqrt(pooled * (1.0 / mx.n + 1.0 / my.n));
    if (se == 0.0) throw Error(ErrorCode::DegenerateVariance, "pooled variance is zero");
  }
  r.t = (mx.mean - my.mean) / se;
  r.pValue = t_distribution_two_sided(r.t, r.df);
  return r;
}

}  // namespace permrow
