#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>

#include "pol/adversary.hpp"
#include "pol/core.hpp"
#include "pol/dims.hpp"

namespace pol {

/// Each round plays the realizable example maximizing
/// 1[learner errs] + value(restricted version space). The value is the
/// exact mistake-bound table of (C, H) when H is given, else L. Ties go to
/// errors, then to examples that shrink the version space, then to the
/// lowest (x, y).
class WorstCaseAdversary final : public Adversary {
 public:
  explicit WorstCaseAdversary(ConceptClass c, std::optional<ConceptClass> h = std::nullopt,
                              MistakeBoundOptions options = {});

  LabeledExample choose(const IndexSet& consistent, const ErrorFn& is_error) override;
  std::string name() const override { return "worst"; }
  /// The exact table hit its cap and the heuristic (error first, then the
  /// larger remaining L) took over. Never acceptable for acceptance runs.
  bool heuristic() const { return heuristic_; }

 private:
  Count value(const IndexSet& space);

  ConceptClass c_;
  std::unique_ptr<MistakeBoundTable> table_;
  LittlestoneCache ldim_;
  bool heuristic_ = false;
};

/// Uniform instance, then a uniform label among those keeping the stream
/// realizable.
class RandomAdversary final : public Adversary {
 public:
  RandomAdversary(ConceptClass c, std::uint64_t seed);
  LabeledExample choose(const IndexSet& consistent, const ErrorFn& is_error) override;
  std::string name() const override { return "random"; }

 private:
  ConceptClass c_;
  std::mt19937_64 rng_;
};

/// Plays a fixed sequence, realizable or not.
class ReplayAdversary final : public Adversary {
 public:
  explicit ReplayAdversary(ExampleSequence stream) : stream_(std::move(stream)) {}
  LabeledExample choose(const IndexSet& consistent, const ErrorFn& is_error) override;
  std::string name() const override { return "replay"; }
  bool exhausted() const override { return next_ >= stream_.size(); }

 private:
  ExampleSequence stream_;
  std::size_t next_ = 0;
};

/// Arbitrary labels: uniform instance and uniform label.
ExampleSequence random_label_stream(int domain_size, std::size_t length, std::uint64_t seed);

}  // namespace pol
