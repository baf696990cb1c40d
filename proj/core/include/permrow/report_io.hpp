#pragma once

#include <iosfwd>
#include <string>

#include "permrow/simulation.hpp"

namespace permrow {

/// ScenarioSpec as a JSON object with keys kind, n, p, alpha, sigma,
/// permutation, seed, plus givenPermutation / eta when present.
std::string scenario_to_json(const ScenarioSpec& spec);
/// Throws Error{ParseError} on malformed documents and unknown enum names.
ScenarioSpec scenario_from_json(const std::string& text);

std::string report_to_json(const RiskReport& report);

/// Tidy CSV with header "estimator,target,replicate,risk". Failed replicates
/// are omitted. Risks are written with 17 significant digits.
void write_report_csv(std::ostream& out, const RiskReport& report);

}  // namespace permrow
