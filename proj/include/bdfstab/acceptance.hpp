#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bdfstab/rational.hpp"

namespace bdfstab {

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::vector<std::string> details;
};

struct AcceptanceOptions {
  Rational mu0{-31, 32};  // diagonal constant of the Toeplitz splitting
  std::optional<std::string> only;
  int threads = 1;
  std::uint64_t seed = 20240601;
};

/// Criterion ids in run order.
std::vector<std::string> criterion_ids();

/// Runs every criterion, or only options.only. Throws std::invalid_argument
/// for an unknown id.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS id (1.23 s): title" followed by indented detail lines.
std::string format_result(const CriterionResult& r);

}  // namespace bdfstab
