#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "bdfstab/acceptance.hpp"
#include "bdfstab/parabolic.hpp"
#include "bdfstab/search.hpp"
#include "bdfstab/toeplitz.hpp"

namespace bdfstab {

using Json = nlohmann::ordered_json;

Json to_json(const RationalPolynomial& p);  // ascending coefficients as "p/q" strings
Json to_json(const NonnegativityCertificate& c);
Json to_json(const CertificationReport& r);
Json to_json(const SearchResult& r);
Json to_json(const GPair& gp);
Json to_json(const std::vector<SandwichRow>& rows);
Json to_json(const EnergyReport& r);
Json to_json(const ConvergenceTable& t);
Json to_json(const std::vector<CriterionResult>& results);

std::string search_csv(const SearchResult& r);
std::string sandwich_csv(const std::vector<SandwichRow>& rows);
std::string convergence_csv(const ConvergenceTable& t);
/// n, t, |u|^2, ||u||^2
std::string trajectory_csv(const Trajectory& tr);

/// Heat-run configuration:
///   {q, M, tau, N, T, operator: {kind, kappa}, starting: {kind, seed},
///    perturbations: {kind, seed, scale}, multiplier: [...], outputs: {...}}
/// N defaults to round(T / tau) when absent.
struct RunConfig {
  int q = 6;
  int M = 50;
  double tau = 0.01;
  int N = 100;
  double T = 1.0;
  std::string kappa = "1";   // "1", "1+t/2", "2+sin(t)"
  bool time_dependent = false;
  std::string starting = "random";  // "random" or "sine"
  std::uint64_t seed = 20240601;
  std::string perturbations = "none";  // "none" or "random"
  std::uint64_t perturbation_seed = 1;
  double perturbation_scale = 1.0;
  Multiplier multiplier = six_step_multiplier();
  std::optional<std::string> trajectory_csv;
  std::optional<std::string> energy_json;
};

/// Throws std::invalid_argument on unknown keys or values.
RunConfig parse_run_config(const Json& j);

struct HeatRun {
  Trajectory trajectory;
  StabilityRatio ratio;
  std::optional<EnergyReport> energy;  // q = 6 with a constant operator
};

HeatRun run_heat(const RunConfig& config);
Json to_json(const HeatRun& run, const RunConfig& config);

}  // namespace bdfstab
