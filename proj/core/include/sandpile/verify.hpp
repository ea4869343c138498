#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sandpile/explorer.hpp"

namespace sandpile {

/// Outcome of one named check at one grain count. `capped` marks a row that
/// was skipped because n exceeds the check's default ceiling (skipped rows
/// count as passing; lift ceilings explicitly to run them).
struct CheckResult {
  std::string check;
  Height grains = 0;
  bool pass = false;
  bool capped = false;
  std::string witness;  // empty when there is nothing to report
  double elapsed_ms = 0.0;
};

struct VerifyOptions {
  Height n_max = 10;
  std::vector<std::string> checks;  // empty = all known checks
  std::size_t node_cap = 5'000'000;
  std::uint64_t seed = 0x5eedULL;
  bool unsafe_cap = false;  // ignore per-check default n ceilings
};

/// The known check names, in report order.
const std::vector<std::string>& all_check_names();

/// Runs every requested check for n in [0, n_max]; one result row per
/// (check, n), sorted by check name then n. Unknown check names throw
/// ParseError. Failures are recorded, never fatal mid-run.
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace sandpile
