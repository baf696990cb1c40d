#include "permrow/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "permrow/errors.hpp"

namespace permrow {

namespace {

using nlohmann::json;

ScenarioKind parse_kind(const std::string& s) {
  if (s == "S1") return ScenarioKind::S1;
  if (s == "S2") return ScenarioKind::S2;
  if (s == "CustomLinear") return ScenarioKind::CustomLinear;
  throw Error(ErrorCode::ParseError, "unknown scenario kind '" + s + "'");
}

PermutationKind parse_permutation(const std::string& s) {
  if (s == "Identity") return PermutationKind::Identity;
  if (s == "UniformRandom") return PermutationKind::UniformRandom;
  if (s == "Given") return PermutationKind::Given;
  throw Error(ErrorCode::ParseError, "unknown permutation kind '" + s + "'");
}

json scenario_json(const ScenarioSpec& spec) {
  json j = {
      {"kind", std::string(to_string(spec.kind))},
      {"n", spec.n},
      {"p", spec.p},
      {"alpha", spec.alpha},
      {"sigma", spec.sigma},
      {"permutation", std::string(to_string(spec.permutation))},
      {"seed", spec.seed},
  };
  if (spec.givenPermutation) j["givenPermutation"] = *spec.givenPermutation;
  if (spec.eta) j["eta"] = *spec.eta;
  return j;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string format_risk(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string scenario_to_json(const ScenarioSpec& spec) { return scenario_json(spec).dump(2); }

ScenarioSpec scenario_from_json(const std::string& text) {
  ScenarioSpec spec;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "scenario must be a JSON object");
    spec.kind = parse_kind(j.at("kind").get<std::string>());
    spec.n = j.at("n").get<std::size_t>();
    spec.p = j.at("p").get<std::size_t>();
    spec.alpha = j.at("alpha").get<double>();
    spec.sigma = j.value("sigma", 1.0);
    spec.permutation = parse_permutation(j.value("permutation", std::string("UniformRandom")));
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("givenPermutation")) {
      spec.givenPermutation = j.at("givenPermutation").get<Permutation>();
    }
    if (j.contains("eta")) spec.eta = j.at("eta").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("scenario JSON: ") + e.what());
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid scenario: ") + e.what());
  }
  return spec;
}

std::string report_to_json(const RiskReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json risks = json::array();
    for (double r : e.risks) risks.push_back(finite_or_null(r));
    entries.push_back({
        {"estimator", std::string(to_string(e.estimator))},
        {"target", std::string(to_string(e.target))},
        {"risks", std::move(risks)},
        {"failed", e.failed},
        {"mean", finite_or_null(e.mean)},
        {"sd", finite_or_null(e.sd)},
        {"q1", finite_or_null(e.q1)},
        {"median", finite_or_null(e.median)},
        {"q3", finite_or_null(e.q3)},
    });
  }
  const json j = {
      {"config", scenario_json(report.config)},
      {"masterSeed", report.masterSeed},
      {"reps", report.reps},
      {"entries", std::move(entries)},
  };
  return j.dump(2);
}

void write_report_csv(std::ostream& out, const RiskReport& report) {
  out << "estimator,target,replicate,risk\n";
  for (const auto& e : report.entries) {
    for (std::size_t r = 0; r < e.risks.size(); ++r) {
      if (std::isnan(e.risks[r])) continue;
      out << to_string(e.estimator) << ',' << to_string(e.target) << ',' << r << ','
          << format_risk(e.risks[r]) << '\n';
    }
  }
}

}  // namespace permrow
