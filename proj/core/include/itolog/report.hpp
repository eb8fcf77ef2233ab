#pragma once

// Verification reports: one record per checked case, serialized as JSON.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itolog/serialization.hpp"

namespace itolog {

struct VerificationReport {
  std::string test;
  double max_abs_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<std::uint64_t> seed;  // null for deterministic suites
  std::size_t grid_points = 0;
  std::size_t paths = 0;
  std::string detail;  // free-form note, omitted when empty
};

Json to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);

/// {"suite": ..., "pass": all passed, "cases": [...]} plus an ISO-8601 UTC
/// "timestamp" unless `deterministic` is set.
Json suite_json(const std::string& suite, const std::vector<VerificationReport>& cases, bool deterministic);

bool all_pass(const std::vector<VerificationReport>& cases);

}  // namespace itolog
