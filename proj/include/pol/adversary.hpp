#pragma once

#include <functional>
#include <string>

#include "pol/core.hpp"

namespace pol {

/// Whether the learner's committed hypothesis counts (x, y) as an error.
using ErrorFn = std::function<bool(int x, int y)>;

/// Picks the next labeled example after the learner has committed to its
/// hypothesis for the round.
class Adversary {
 public:
  virtual ~Adversary() = default;
  /// `consistent` holds the concepts consistent with the stream so far.
  virtual LabeledExample choose(const IndexSet& consistent, const ErrorFn& is_error) = 0;
  virtual std::string name() const = 0;
  /// A replay adversary runs out; the others never do.
  virtual bool exhausted() const { return false; }
};

}  // namespace pol
