#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pol/core.hpp"
#include "pol/dims.hpp"

namespace pol {

/// argmax_y L(space restricted to (x, y)); ties go to 1. Throws InvalidInput
/// on an empty space.
int soa_predict(LittlestoneCache& cache, const IndexSet& space, int x);
int soa_predict(const ConceptClass& c, int x);

/// A deterministic mistake-bounded learner driven purely by its version
/// space. The cover learners run one of these inside every entry.
class BasePredictor {
 public:
  virtual ~BasePredictor() = default;
  virtual const ConceptClass& concept_class() const = 0;
  virtual int predict(const IndexSet& space, int x) = 0;
  /// Worst-case mistakes from `space` on; plays the role of L in the bounds.
  virtual int mistake_bound(const IndexSet& space) = 0;
  virtual std::string name() const = 0;
};

class SoaPredictor final : public BasePredictor {
 public:
  explicit SoaPredictor(ConceptClass c) : cache_(std::move(c)) {}
  const ConceptClass& concept_class() const override { return cache_.concept_class(); }
  int predict(const IndexSet& space, int x) override { return soa_predict(cache_, space, x); }
  int mistake_bound(const IndexSet& space) override { return cache_(space); }
  std::string name() const override { return "soa"; }
  LittlestoneCache& cache() { return cache_; }

 private:
  LittlestoneCache cache_;
};

/// Majority vote of the version space, ties to 1. Mistake bound
/// floor(log2 |space|), which exceeds L on most classes.
class HalvingPredictor final : public BasePredictor {
 public:
  explicit HalvingPredictor(ConceptClass c) : class_(std::move(c)) {}
  const ConceptClass& concept_class() const override { return class_; }
  int predict(const IndexSet& space, int x) override;
  int mistake_bound(const IndexSet& space) override;
  std::string name() const override { return "halving"; }

 private:
  ConceptClass class_;
};

std::shared_ptr<BasePredictor> make_predictor(const std::string& name, const ConceptClass& c);

/// Online SOA over a version space that shrinks by restriction each round.
class SoaLearner {
 public:
  explicit SoaLearner(ConceptClass c);
  SoaLearner(ConceptClass c, std::shared_ptr<SoaPredictor> shared);

  int predict(int x);
  /// Restricts the version space. Throws Unrealizable if it would empty.
  void update(LabeledExample e);

  int mistakes() const { return mistakes_; }
  std::size_t rounds() const { return rounds_; }
  const IndexSet& version_space() const { return space_; }
  ConceptClass version_space_class() const { return class_.subclass(space_); }

 private:
  ConceptClass class_;
  std::shared_ptr<SoaPredictor> predictor_;
  IndexSet space_;
  int mistakes_ = 0;
  std::size_t rounds_ = 0;
};

struct SoaRunResult {
  std::vector<int> predictions;
  int mistakes = 0;
  IndexSet final_space;
};

/// Throws Unrealizable carrying the shortest unrealizable prefix length.
SoaRunResult soa_run(const ConceptClass& c, std::span<const LabeledExample> stream);

}  // namespace pol
