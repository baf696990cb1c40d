// permrow: extreme-column and log-PTR estimation for permuted monotone
// coverage matrices.
//
//   permrow estimate --input cov.csv --output est.csv [--method spectral]
//   permrow simulate --config s1.json --reps 200 --seed 7 --output risks.csv
//   permrow rates --t 40 --beta-r 0.7 --sigma 1 --n 100 --p 1000
//   permrow compare --input ptr.csv [--test f|t] [--variant welch|pooled]
//
// Exit status: 0 success, 2 parse/validation error, 3 numerical degeneracy.

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "permrow/permrow.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct EstimateArgs {
  std::string input;
  std::string output;
  std::string method = "spectral";
  std::string sign = "row-majority";
  bool exp = false;
  double trim = 0.05;
};

struct SimulateArgs {
  std::string config;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::string output;
  unsigned threads = 1;
};

struct RatesArgs {
  double t = 0.0;
  double betaR = 0.0;
  double betaL = -1.0;
  double sigma = 1.0;
  std::size_t n = 0;
  std::size_t p = 0;
};

struct CompareArgs {
  std::string input;
  std::string test = "f";
  std::string variant = "welch";
};

int run_estimate(const EstimateArgs& args) {
  const permrow::CoverageTable table = permrow::load_coverage_csv(args.input);
  permrow::EstimatorOptions options;
  options.trimFraction = args.trim;
  options.svd.convention = args.sign == "first-negative"
                               ? permrow::SignConvention::FirstNonzeroNegative
                               : permrow::SignConvention::RowMajoritySign;
  const auto est = permrow::estimate(table.values, permrow::parse_method(args.method), options);
  permrow::write_estimates_csv(args.output, est, table.sampleIds, args.exp);
  if (est.triple && !est.triple->converged) {
    std::cerr << "warning: power iteration stopped after " << est.triple->iterations
              << " iterations without converging\n";
  }
  if (est.triple && est.triple->multiplicityWarning) {
    std::cerr << "warning: leading singular value appears repeated; ordering is unstable\n";
  }
  return kExitOk;
}

int run_simulate(const SimulateArgs& args) {
  std::ifstream in(args.config);
  if (!in) throw permrow::Error(permrow::ErrorCode::IoError, "cannot open '" + args.config + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  permrow::ScenarioSpec spec = permrow::scenario_from_json(buffer.str());
  spec.seed = args.seed;

  constexpr std::array methods = {permrow::Method::Spectral, permrow::Method::Regression,
                                  permrow::Method::DirectSorting, permrow::Method::OrderStatistic,
                                  permrow::Method::IRep};
  permrow::MonteCarloOptions options;
  options.threads = args.threads;
  const permrow::RiskReport report = permrow::run_monte_carlo(spec, methods, args.reps, options);

  std::ofstream out(args.output, std::ios::binary);
  if (!out) throw permrow::Error(permrow::ErrorCode::IoError, "cannot write '" + args.output + "'");
  permrow::write_report_csv(out, report);
  if (!out) throw permrow::Error(permrow::ErrorCode::IoError, "write to '" + args.output + "' failed");

  json summary = json::array();
  for (const auto& e : report.entries) {
    summary.push_back({{"estimator", std::string(permrow::to_string(e.estimator))},
                       {"target", std::string(permrow::to_string(e.target))},
                       {"mean", finite_or_null(e.mean)},
                       {"median", finite_or_null(e.median)},
                       {"failed", e.failed}});
  }
  std::cout << json{{"masterSeed", report.masterSeed}, {"reps", report.reps}, {"summary", summary}}
                   .dump(2)
            << '\n';
  return kExitOk;
}

int run_rates(const RatesArgs& args) {
  permrow::SignalIndices idx;
  idx.t = args.t;
  idx.betaR = args.betaR;
  idx.betaL = args.betaL < 0.0 ? args.betaR : args.betaL;
  idx.sigma = args.sigma;
  const json out = {
      {"psi", permrow::rate_psi(args.n, args.p)},
      {"rate", permrow::minimax_rate_extreme(idx, args.n, args.p, permrow::Target::ThetaR)},
      {"rateLeft", permrow::minimax_rate_extreme(idx, args.n, args.p, permrow::Target::ThetaL)},
      {"rateRange", permrow::minimax_rate_extreme(idx, args.n, args.p, permrow::Target::Range)},
      {"regime", std::string(permrow::to_string(
                     permrow::classify_snr(idx.t, idx.sigma, args.n, args.p)))},
      {"feasible", permrow::signal_condition_feasible(idx, args.n, args.p)},
  };
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

json group_summary(const permrow::GroupedValues& grouped) {
  json groups = json::array();
  for (const auto& g : grouped.groups) {
    double sum = 0.0;
    for (double v : g.values) sum += v;
    groups.push_back({{"label", g.label},
                      {"n", g.values.size()},
                      {"mean", sum / static_cast<double>(g.values.size())}});
  }
  return groups;
}

int run_compare(const CompareArgs& args) {
  const permrow::GroupedValues grouped = permrow::load_grouped_csv(args.input);
  json out = {{"test", args.test}, {"groups", group_summary(grouped)}};
  if (args.test == "f") {
    const auto r = permrow::f_test_oneway(grouped);
    out["F"] = r.F;
    out["df1"] = r.df1;
    out["df2"] = r.df2;
    out["pValue"] = r.pValue;
  } else {
    if (grouped.groups.size() < 2) {
      throw permrow::Error(permrow::ErrorCode::InvalidArgument, "t-test needs at least two groups");
    }
    const auto variant =
        args.variant == "pooled" ? permrow::TTestVariant::Pooled : permrow::TTestVariant::Welch;
    out["variant"] = std::string(permrow::to_string(variant));
    json pairs = json::array();
    const auto& g = grouped.groups;
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        const auto r = permrow::t_test_two_sample(g[a].values, g[b].values, variant);
        pairs.push_back({{"groupA", g[a].label},
                         {"groupB", g[b].label},
                         {"t", r.t},
                         {"df", r.df},
                         {"pValue", r.pValue}});
      }
    }
    out["comparisons"] = std::move(pairs);
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme-column and log-PTR estimation for permuted monotone matrices"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate extreme columns from a coverage CSV");
  estimate->add_option("--input", est.input, "Coverage CSV (sampleId, positions...)")->required();
  estimate->add_option("--output", est.output, "Output CSV")->required();
  estimate->add_option("--method", est.method, "Estimator")
      ->check(CLI::IsMember({"spectral", "regression", "ds", "os", "irep"}));
  estimate->add_option("--sign", est.sign, "Sign convention for the singular triple")
      ->check(CLI::IsMember({"row-majority", "first-negative"}));
  estimate->add_flag("--exp", est.exp, "Append ePTR = exp(range)");
  estimate->add_option("--trim", est.trim, "Trim fraction for the irep estimator");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo risk simulation");
  simulate->add_option("--config", sim.config, "Scenario JSON")->required();
  simulate->add_option("--reps", sim.reps, "Replicates")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed")->required();
  simulate->add_option("--output", sim.output, "Tidy risk CSV")->required();
  simulate->add_option("--threads", sim.threads, "Worker threads")->check(CLI::PositiveNumber);

  RatesArgs rates_args;
  auto* rates = app.add_subcommand("rates", "Minimax rate calculator");
  rates->add_option("--t", rates_args.t, "Signal strength")->required();
  rates->add_option("--beta-r", rates_args.betaR, "Right extreme bound")->required();
  rates->add_option("--beta-l", rates_args.betaL, "Left extreme bound (defaults to --beta-r)");
  rates->add_option("--sigma", rates_args.sigma, "Noise level")->required();
  rates->add_option("--n", rates_args.n, "Samples")->required();
  rates->add_option("--p", rates_args.p, "Positions")->required();

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Group comparison of estimated log-PTRs");
  compare->add_option("--input", cmp.input, "CSV with columns sampleId,group,value")->required();
  compare->add_option("--test", cmp.test, "f (one-way ANOVA) or t (pairwise t-tests)")
      ->check(CLI::IsMember({"f", "t"}));
  compare->add_option("--variant", cmp.variant, "t-test variant")
      ->check(CLI::IsMember({"welch", "pooled"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*estimate) return run_estimate(est);
    if (*simulate) return run_simulate(sim);
    if (*rates) return run_rates(rates_args);
    if (*compare) return run_compare(cmp);
  } catch (const permrow::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return permrow::is_numerical_degeneracy(e.code()) ? kExitDegenerate : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
