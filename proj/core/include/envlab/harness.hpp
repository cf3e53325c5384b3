#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "envlab/verdict.hpp"

namespace envlab {

enum class CheckStatus : std::uint8_t { pass, fail, inconclusive };

std::string_view to_string(CheckStatus s);

/// One hypothesis or conclusion of a check, with the outcome the theorem
/// predicts for the chosen instance.
struct Clause {
  enum class Role : std::uint8_t { hypothesis, conclusion };

  Role role = Role::hypothesis;
  Verdict verdict;
  Outcome expected = Outcome::holds;

  bool matches() const { return verdict.outcome == expected; }
};

std::string_view to_string(Clause::Role r);

struct CheckReport {
  std::string id;
  std::string title;
  std::string relation;  // implies / iff / counterexample
  std::string instance;
  std::vector<Clause> clauses;
  CheckStatus status = CheckStatus::inconclusive;
  std::string note;
};

struct HarnessConfig {
  /// Every scan horizon is min(nominal, horizon_cap).
  std::int64_t horizon_cap = 100'000;
  int workers = 1;
  std::uint64_t seed = 20'240'601;
  /// Restricts run_all to these ids; empty means all.
  std::vector<std::string> ids;

  bool operator==(const HarnessConfig&) const = default;
};

class HarnessContext;

struct TheoremCheck {
  std::string id;
  std::string title;
  std::string relation;
  std::string instance;
  /// Below this horizon cap a mismatch is reported as inconclusive.
  std::int64_t min_horizon = 1;
  std::function<std::vector<Clause>(HarnessContext&)> body;
};

struct HarnessReport {
  std::vector<CheckReport> checks;  // sorted by id
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
};

/// The built-in checks, one per theorem, corollary or example.
const std::vector<TheoremCheck>& default_registry();

/// Combines clause outcomes into a status, applying the minimum-horizon rule.
CheckStatus decide(const std::vector<Clause>& clauses, std::int64_t horizon_cap,
                   std::int64_t min_horizon, std::string* note = nullptr);

/// Throws ConfigError for an unknown id.
CheckReport run_theorem(std::string_view id, const HarnessConfig& config);

HarnessReport run_all(const HarnessConfig& config);
HarnessReport run_all(const HarnessConfig& config,
                      const std::vector<TheoremCheck>& registry);

}  // namespace envlab
