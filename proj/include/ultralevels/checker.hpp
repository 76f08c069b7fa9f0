#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ultralevels/arith.hpp"

namespace ultralevels {

struct SuiteParams {
  std::uint64_t bound = 10'000;
  LevelIndex max_level = 50;
  unsigned chain_len = 8;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  std::string str() const;  // canonical, excludes jobs (results ignore it)
};

/// Outcome of one suite run. failures lists one line per refuted case and is
/// nonempty exactly when refuted > 0. Serialization (markdown or machine
/// format) is byte-deterministic given the parameters; wall_seconds is kept
/// out of both and reported separately.
struct SuiteResult {
  std::string suite;
  std::string params;
  std::uint64_t cases_run = 0;
  std::uint64_t proven = 0;
  std::uint64_t consistent = 0;
  std::uint64_t refuted = 0;
  std::vector<std::string> failures;
  double wall_seconds = 0.0;

  bool ok() const { return refuted == 0; }
  std::string machine_line() const;
  std::string markdown() const;
};

/// Names of all suites, in canonical run order.
std::vector<std::string> suite_names();

/// Run one suite. Throws unknown_suite for names outside the catalog.
/// Runs to completion regardless of failures.
SuiteResult run_suite(const std::string& name, const SuiteParams& params);

/// Run every suite in catalog order. jobs > 1 distributes suites across
/// threads; the returned order and all contents are unaffected.
std::vector<SuiteResult> run_all(const SuiteParams& params);

std::string render_machine(const std::vector<SuiteResult>& results);
std::string render_markdown(const std::vector<SuiteResult>& results);

}  // namespace ultralevels
