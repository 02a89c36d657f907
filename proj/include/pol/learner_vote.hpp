#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pol/adversary.hpp"
#include "pol/core.hpp"
#include "pol/cover.hpp"
#include "pol/games.hpp"
#include "pol/learner_helly.hpp"
#include "pol/rational.hpp"

namespace pol {

/// A non-empty multiset of concepts evaluated as the fraction voting 1.
class VoteHypothesis {
 public:
  explicit VoteHypothesis(std::vector<Concept> members);
  static VoteHypothesis from_indices(const ConceptClass& c, std::span<const std::size_t> indices);

  const std::vector<Concept>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::size_t ones(int x) const;
  Rational operator()(int x) const;

 private:
  std::vector<Concept> members_;
};

Rational vote_eval(const VoteHypothesis& v, int x);
/// 1 iff at least half the members vote 1.
int maj_eval(const VoteHypothesis& v, int x);

struct VoteProposal {
  bool branch = false;
  std::optional<VoteHypothesis> vote;
  /// The eps-net sequence when branching.
  ExampleSequence net;
  Rational game_value;
  int doublings = 0;
  bool greedy = false;
  double constant = 0;
};

/// Memoized proposals for one (class, eps, seed). The key is the HighVote
/// set, which fully determines the proposal.
class ProposalCache {
 public:
  const VoteProposal* find(std::span<const LabeledExample> high_vote) const;
  const VoteProposal& insert(std::span<const LabeledExample> high_vote, VoteProposal proposal);
  std::size_t size() const { return table_.size(); }
  static std::uint64_t key_hash(std::span<const LabeledExample> high_vote);

 private:
  struct Key {
    std::uint64_t present = 0;
    std::uint64_t labels = 0;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  static Key key_of(std::span<const LabeledExample> high_vote);
  std::unordered_map<Key, VoteProposal, KeyHash> table_;
};

/// The proposal step, decided by the exact game value of C against `high_vote`: at most
/// eps/2 yields a sparse vote within eps of every label there; otherwise an
/// eps-net at eps/2 to branch on.
VoteProposal lv_propose(const ConceptClass& c, std::span<const LabeledExample> high_vote, const Rational& eps,
                        std::uint64_t seed, const SparsifyOptions& sparsify = {});

struct VoteOptions {
  std::string base_predictor = "soa";
  bool skip_weight_decay = false;
  std::uint64_t seed = 0;
  SparsifyOptions sparsify;
  /// Shared across learners on the same class, eps and seed.
  std::shared_ptr<ProposalCache> cache;
  /// Allows eps in [1/2, 1); the count inequality is still checked.
  bool allow_wide_eps = false;
};

struct VoteRound {
  bool branch = false;
  std::size_t t = 0;
  int x = -1;
  int y = -1;
  Rational value;
  bool margin_error = false;
  std::size_t vote_size = 0;
  std::size_t net_size = 0;
  Rational weight_before;
  Rational weight_after;
  std::size_t entries = 0;
};

struct VoteTrace {
  std::vector<VoteRound> rounds;
  int margin_errors = 0;
  int branches = 0;
  int ldim = 0;
  Rational eps;
  Rational eta;
  /// (8L / (eps (1 - eps/8))) ln(8/eps).
  double bound = 0;
  std::size_t max_vote_size = 0;
  double max_vote_constant = 0;
  double max_net_constant = 0;
  int max_doublings = 0;
  InvariantLog invariants;
};

class VoteLearner {
 public:
  VoteLearner(ConceptClass c, Rational eps, VoteOptions options = {});

  /// Branches until a vote is available, then commits to it.
  const VoteHypothesis& propose();
  Rational value(int x);
  void observe(LabeledExample e);
  const VoteTrace& finish();

  const VoteTrace& trace() const { return trace_; }
  const ConceptClass& concept_class() const { return c_; }
  const IndexSet& consistent() const { return consistent_; }
  WeightedCover& cover() { return cover_; }

 private:
  void check_witnesses();

  ConceptClass c_;
  Rational eps_;
  VoteOptions options_;
  WeightedCover cover_;
  int l_ = 0;
  IndexSet consistent_;
  std::optional<VoteHypothesis> committed_;
  ExampleSequence committed_high_vote_;
  /// Product of (eps/4) m over branch rounds.
  Rational witness_floor_ = 1;
  std::size_t t_ = 0;
  VoteTrace trace_;
};

/// Margin-error bound for a base learner with mistake bound `l`.
double vote_margin_bound(int l, const Rational& eps);

VoteTrace lv_run(const ConceptClass& c, const Rational& eps, Adversary& adversary, std::size_t horizon,
                 const VoteOptions& options = {});

struct MajTrace {
  int mistakes = 0;
  /// Majority label on each real round, in order.
  std::vector<int> predictions;
  /// 80 L.
  long bound = 0;
  VoteTrace inner;
};

/// Predicts with the majority of each proposed vote at eps = 1/3.
MajTrace lv_as_mistake_learner(const ConceptClass& c, Adversary& adversary, std::size_t horizon,
                               const VoteOptions& options = {});

}  // namespace pol
