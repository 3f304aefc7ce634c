#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "volform/scenarios.hpp"

namespace volform {

enum class Status { Pass, Fail, Error, Unknown };

std::string to_string(Status s);

struct RunOptions {
  std::uint64_t seed = 1;
  int degree_bound = 4;
  int lnd_bound = 32;
  int points = 20;
  int jobs = 1;
  bool timings = false;
};

struct CheckResult {
  std::size_t index = 0;
  std::string name;
  std::string kind;
  Status status = Status::Error;
  std::string outcome;  // status word, verdict, or matched constant
  std::string detail;
  double seconds = 0;
};

struct Report {
  std::string source;
  RunOptions options;
  std::vector<CheckResult> checks;

  std::size_t count(Status s) const;
  /// 1 when any check failed or errored, else 0.
  int exit_code() const;
};

/// Runs one directive. Never throws: errors become Status::Error.
CheckResult run_check(const Scenario& s, const CheckDirective& c, const RunOptions& options, std::size_t index = 0);

/// Runs every directive, in parallel when options.jobs > 1; results keep
/// directive order.
Report run(const Scenario& s, const RunOptions& options, std::string source);

/// Stable JSON; wall times only when options.timings is set.
std::string to_json(const Report& r);
std::string to_text(const Report& r);

/// Scenario by CLI name: torus:N, sl2, surface[:p=..,q=..], xm1:M, quadric,
/// gamma, product:A|B. Throws Error for an unknown name.
Scenario builtin_scenario(std::string_view name);
/// (name pattern, description) pairs.
std::vector<std::pair<std::string, std::string>> builtin_catalog();

}  // namespace volform
