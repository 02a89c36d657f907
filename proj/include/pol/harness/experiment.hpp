#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pol/core.hpp"

namespace pol {

/// A class given either as a file path or as a generator descriptor.
ConceptClass load_class(const std::string& source);

struct ExperimentConfig {
  std::string class_source;
  std::optional<std::string> hypotheses_source;
  /// soa | helly | vote | maj | agnostic
  std::string learner = "helly";
  /// worst | random | replay. The agnostic learner ignores it.
  std::string adversary = "worst";
  /// Example stream for replay and for the agnostic learner.
  std::optional<std::string> stream_path;
  /// Rounds to play. For a stream, 0 means the whole stream.
  std::size_t horizon = 20;
  /// Rational text; the vote learner defaults to 1/4.
  std::optional<std::string> eps;
  std::uint64_t seed = 0;
  std::string base_predictor = "soa";
  /// Per-round trace CSV; empty skips it.
  std::string out_path;
  /// Append-only results ledger CSV; empty skips it.
  std::string ledger_path;

  /// One line naming every field, the input to the config hash.
  std::string canonical() const;
  /// FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;
};

struct RunSummary {
  std::string learner;
  std::size_t rounds = 0;
  /// Mistakes, margin errors or (agnostic) rounded-up regret.
  double measured = 0;
  double bound = 0;
  bool invariants_ok = true;
  bool pass = false;
  std::string detail;
};

struct RunRecord {
  std::string config_hash;
  std::string csv_header;
  std::vector<std::string> rows;
  RunSummary summary;
};

/// Runs the configured experiment, writes the trace and appends a ledger
/// row. Throws InvalidInput on a bad config.
RunRecord run_experiment(const ExperimentConfig& config);

/// Header of the results ledger.
std::string ledger_header();

}  // namespace pol
