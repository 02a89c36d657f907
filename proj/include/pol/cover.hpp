#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "pol/core.hpp"
#include "pol/rational.hpp"
#include "pol/soa.hpp"

namespace pol {

/// `multiplicity` identical entries, each with version space `space` and
/// weight eta^decays. Identical entries are stored once; they stay distinct
/// for every count and weight sum.
struct CoverEntry {
  IndexSet space;
  int decays = 0;
  BigInt multiplicity = 1;
};

/// The learner state Q: weighted version spaces, each running a base
/// predictor (SOA unless swapped).
class WeightedCover {
 public:
  WeightedCover(std::shared_ptr<BasePredictor> predictor, Rational eta);

  const ConceptClass& concept_class() const { return predictor_->concept_class(); }
  BasePredictor& predictor() { return *predictor_; }
  const Rational& eta() const { return eta_; }
  const std::vector<CoverEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// Number of entries counting multiplicity.
  BigInt entry_count() const;

  Rational entry_weight(const CoverEntry& e) const;
  Rational total_weight() const;

  /// Base-predictor labels of every instance for one version space, bit x
  /// set for label 1. Memoized.
  std::uint64_t predictions(const IndexSet& space);
  /// Weighted fraction of entries predicting 1, per instance. Throws
  /// InvalidInput on an empty cover.
  std::vector<Rational> votes();
  Rational vote(int x);
  /// (x, 1[vote >= 1/2]) for every x whose vote is within eps of 0 or 1.
  ExampleSequence high_vote(const Rational& eps);

  /// Every entry: decay if its predictor disagrees with e, restrict by e,
  /// drop if empty.
  void update(LabeledExample e, bool decay = true);
  /// Replaces each entry by one child per witness example: restricted to
  /// the flipped label, decayed if its predictor agreed with the example.
  void branch(std::span<const LabeledExample> witness, bool decay = true);

  /// Entries (with multiplicity) containing concept `index` whose decay
  /// count is at most `max_decays`.
  BigInt witness_count(std::size_t index, int max_decays) const;

 private:
  void absorb(std::vector<CoverEntry> raw);

  std::shared_ptr<BasePredictor> predictor_;
  Rational eta_;
  std::vector<CoverEntry> entries_;
  std::unordered_map<IndexSet, std::uint64_t, IndexSetHash> prediction_memo_;
};

}  // namespace pol
