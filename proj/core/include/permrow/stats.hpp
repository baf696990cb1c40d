#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permrow {

/// Regularized incomplete beta I_x(a, b), evaluated by the modified Lentz
/// continued fraction (relative tolerance 1e-12, at most 300 iterations)
/// on whichever side of the mean converges faster.
double regularized_incomplete_beta(double x, double a, double b);

/// P(F > f) for an F(df1, df2) variable.
double f_distribution_sf(double f, double df1, double df2);

/// P(|T| > |t|) for a Student t variable with df degrees of freedom.
double t_distribution_two_sided(double t, double df);

struct Group {
  std::string label;
  std::vector<double> values;
};

struct GroupedValues {
  std::vector<Group> groups;
};

struct FTestResult {
  double F = 0.0;
  std::size_t df1 = 0;
  std::size_t df2 = 0;
  double pValue = 1.0;
};

/// Classical one-way ANOVA. Throws DegenerateVariance when every group is
/// constant, InvalidArgument for fewer than two groups or N <= k.
FTestResult f_test_oneway(const GroupedValues& groups);

enum class TTestVariant { Welch, Pooled };
std::string_view to_string(TTestVariant variant);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double pValue = 1.0;
};

/// Two-sample t-test with a two-sided p-value. Each sample needs at least
/// two values; DegenerateVariance when the standard error is zero.
TTestResult t_test_two_sample(std::span<const double> x, std::span<const double> y,
                              TTestVariant variant = TTestVariant::Welch);

}  // namespace permrow
