#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pol/adversary.hpp"
#include "pol/core.hpp"
#include "pol/cover.hpp"
#include "pol/dims.hpp"

namespace pol {

/// Smallest C-unrealizable subset of `examples` with at most `max_size`
/// elements, searched by increasing size.
std::optional<ExampleSequence> find_unrealizable_witness(const ConceptClass& c,
                                                         std::span<const LabeledExample> examples, int max_size);

struct HellyOptions {
  std::string base_predictor = "soa";
  /// Negative control: mistakes restrict entries without decaying them.
  bool skip_weight_decay = false;
  DualHellyOptions helly;
};

/// Per-round check results. A failure is recorded, never thrown, so a
/// corrupted learner still produces a full trace.
struct InvariantLog {
  bool witness = true;
  bool mistake_decay = true;
  bool branch_decay = true;
  bool final_inequality = true;
  bool witness_size = true;
  /// Every committed vote is within eps of every HighVote label.
  bool proposal_fit = true;
  std::string first_failure;

  bool ok() const {
    return witness && mistake_decay && branch_decay && final_inequality && witness_size && proposal_fit;
  }
  void fail(bool& flag, const std::string& why);
};

struct HellyRound {
  bool branch = false;
  std::size_t t = 0;
  int x = -1;
  int y = -1;
  int prediction = -1;
  std::size_t hypothesis = 0;
  bool mistake = false;
  ExampleSequence witness;
  Rational weight_before;
  Rational weight_after;
  std::size_t entries = 0;
};

struct HellyTrace {
  std::vector<HellyRound> rounds;
  int mistakes = 0;
  int branches = 0;
  int ldim = 0;
  Count dual_helly = 2;
  Rational eta;
  /// ceil(4 L K ln(2K)).
  long bound = 0;
  InvariantLog invariants;
};

/// The weighted-cover learner with hypotheses from H. Call propose() (or
/// predict()) before observe() on every round.
class HellyLearner {
 public:
  HellyLearner(ConceptClass c, ConceptClass h, HellyOptions options = {});

  /// Branches until HighVote is H-realizable, then commits to the lowest
  /// index consistent hypothesis. Idempotent within a round.
  std::size_t propose();
  int predict(int x);
  /// Throws Unrealizable if the stream leaves C.
  void observe(LabeledExample e);
  /// Evaluates the final inequality and returns the trace.
  const HellyTrace& finish();

  const HellyTrace& trace() const { return trace_; }
  const ConceptClass& concept_class() const { return c_; }
  const ConceptClass& hypotheses() const { return h_; }
  WeightedCover& cover() { return cover_; }
  const IndexSet& consistent() const { return consistent_; }

 private:
  void check_witnesses();

  ConceptClass c_;
  ConceptClass h_;
  HellyOptions options_;
  Count k_ = 2;
  int l_ = 0;
  WeightedCover cover_;
  IndexSet consistent_;
  std::optional<std::size_t> committed_;
  std::size_t t_ = 0;
  HellyTrace trace_;
};

/// Plays T rounds against `adversary` (fewer if a replay runs out).
HellyTrace lh_run(const ConceptClass& c, const ConceptClass& h, Adversary& adversary, std::size_t horizon,
                  const HellyOptions& options = {});

}  // namespace pol
