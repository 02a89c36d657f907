#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pol {

enum class VerifyLevel { kQuick, kFull };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::kFull;
  /// Negative control: cover learners restrict without decaying weights.
  bool mutate_skip_decay = false;
  /// Criterion ids to run; empty runs every one the level includes.
  std::vector<int> only;
  /// Progress lines go here when set.
  std::ostream* log = nullptr;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Measured values against their bounds, or the first failure.
  std::string detail;
  double seconds = 0;
  /// Wall-clock budget; exceeding it fails the criterion.
  double budget_seconds = 0;
};

struct VerifyReport {
  std::vector<CriterionResult> results;
  bool ok() const;
  /// One "criterion N (name): PASS|FAIL ..." line per result.
  std::string text() const;
};

/// Quick runs criteria 1, 2, 8 and 9; full runs all ten.
VerifyReport verify_suite(const VerifyOptions& options = {});

/// Runs a single criterion regardless of level.
CriterionResult verify_criterion(int id, const VerifyOptions& options = {});

}  // namespace pol
