#pragma once

#include <climits>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>

#include "pol/core.hpp"

namespace pol {

/// Extended nonnegative count; kUnbounded stands for +infinity.
using Count = int;
inline constexpr Count kUnbounded = INT_MAX;

inline Count saturating_add(Count a, Count b) {
  return (a == kUnbounded || b == kUnbounded) ? kUnbounded : a + b;
}

std::string count_to_string(Count c);

/// Memoized Littlestone dimension over the version spaces of one class.
/// Not thread-safe; use one instance per run.
class LittlestoneCache {
 public:
  explicit LittlestoneCache(ConceptClass c);

  const ConceptClass& concept_class() const { return class_; }
  int operator()(const IndexSet& space);
  int root() { return (*this)(class_.all()); }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  ConceptClass class_;
  std::unordered_map<IndexSet, int, IndexSetHash> memo_;
};

int ldim(const ConceptClass& c);
int vcdim(const ConceptClass& c);
int dual_vcdim(const ConceptClass& c);
int threshold_dim(const ConceptClass& c);

struct DualHellyOptions {
  /// Largest minimal H-unrealizable set the enumeration will examine.
  int max_set_size = 24;
};

struct DualHellyResult {
  Count value = 2;
  /// |C| <= 1: the value 2 comes only from the k >= 2 floor.
  bool trivial_class = false;
  /// The unclamped maximum over minimal H-unrealizable sets.
  Count raw = 0;
};

/// K(C, H): the least k >= 2 such that every H-unrealizable set of labeled
/// examples has a C-unrealizable subset of size at most k.
DualHellyResult dual_helly(const ConceptClass& c, const ConceptClass& h, const DualHellyOptions& options = {});

struct MistakeBoundOptions {
  std::size_t max_states = 1'000'000;
};

/// Value table of the mistake-bound game for learning C with hypotheses
/// from H. M(V) = min_h max_{(x,y) realizable} [1[h(x) != y] + M(V_(x,y))],
/// with +inf whenever h errs on an example that leaves V unchanged.
class MistakeBoundTable {
 public:
  MistakeBoundTable(ConceptClass c, ConceptClass h, MistakeBoundOptions options = {});

  const ConceptClass& concept_class() const { return c_; }
  const ConceptClass& hypotheses() const { return h_; }

  Count value(const IndexSet& space);
  Count root() { return value(c_.all()); }
  /// Lowest-index hypothesis attaining M(space).
  std::size_t best_hypothesis(const IndexSet& space);

 private:
  Count evaluate(const IndexSet& space, std::size_t* argmin);

  ConceptClass c_;
  ConceptClass h_;
  MistakeBoundOptions options_;
  LittlestoneCache ldim_;
  std::unordered_map<IndexSet, std::pair<Count, std::size_t>, IndexSetHash> memo_;
};

struct MistakeBoundResult {
  Count value = 0;
  std::optional<Concept> optimal_first_hypothesis;
};

MistakeBoundResult mb_exact(const ConceptClass& c, const ConceptClass& h, const MistakeBoundOptions& options = {});

/// Replays the equivalence-query protocol driven by the optimal online
/// learner against every target and every valid counterexample choice.
/// Returns the largest number of queries used.
Count simulate_eq_protocol(MistakeBoundTable& table);

/// QC_EQ(C, H) = MB(C, H) + 1. For |C| <= 8 the protocol simulation is run
/// and a DefectError is thrown if it ever needs more queries.
Count eq_query_complexity(const ConceptClass& c, const ConceptClass& h, const MistakeBoundOptions& options = {});

struct DimensionReport {
  int ldim = -1;
  int vcdim = 0;
  int dual_vcdim = 0;
  DualHellyResult dual_helly;
  int threshold_dim = 0;

  static std::string csv_header();
  std::string csv_row() const;
};

/// H defaults to C when not supplied.
DimensionReport dimension_report(const ConceptClass& c, const std::optional<ConceptClass>& h = std::nullopt);

}  // namespace pol
