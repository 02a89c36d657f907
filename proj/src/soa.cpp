#include "pol/soa.hpp"

#include <bit>

#include "pol/errors.hpp"

namespace pol {

int soa_predict(LittlestoneCache& cache, const IndexSet& space, int x) {
  if (space.empty()) throw InvalidInput("SOA prediction on an empty version space");
  const ConceptClass& c = cache.concept_class();
  c.check_instance(x);
  const int l0 = cache(space & c.agreeing(x, 0));
  const int l1 = cache(space & c.agreeing(x, 1));
  return l1 >= l0 ? 1 : 0;
}

int soa_predict(const ConceptClass& c, int x) {
  LittlestoneCache cache(c);
  return soa_predict(cache, c.all(), x);
}

int HalvingPredictor::predict(const IndexSet& space, int x) {
  if (space.empty()) throw InvalidInput("halving prediction on an empty version space");
  class_.check_instance(x);
  const std::size_t ones = (space & class_.agreeing(x, 1)).count();
  return 2 * ones >= space.count() ? 1 : 0;
}

int HalvingPredictor::mistake_bound(const IndexSet& space) {
  const std::size_t n = space.count();
  return n == 0 ? -1 : static_cast<int>(std::bit_width(n)) - 1;
}

std::shared_ptr<BasePredictor> make_predictor(const std::string& name, const ConceptClass& c) {
  if (name == "soa") return std::make_shared<SoaPredictor>(c);
  if (name == "halving") return std::make_shared<HalvingPredictor>(c);
  throw InvalidInput("unknown base predictor '" + name + "'");
}

SoaLearner::SoaLearner(ConceptClass c) : SoaLearner(c, std::make_shared<SoaPredictor>(c)) {}

SoaLearner::SoaLearner(ConceptClass c, std::shared_ptr<SoaPredictor> shared)
    : class_(std::move(c)), predictor_(std::move(shared)), space_(class_.all()) {
  if (class_.is_empty()) throw InvalidInput("SOA needs a non-empty class");
}

int SoaLearner::predict(int x) { return predictor_->predict(space_, x); }

void SoaLearner::update(LabeledExample e) {
  class_.check_instance(e.x);
  if (e.y != 0 && e.y != 1) throw InvalidInput("label must be 0 or 1");
  const int guess = predict(e.x);
  IndexSet next = class_.restrict(space_, e);
  ++rounds_;
  if (next.empty()) throw Unrealizable("stream is not realizable by the class", rounds_);
  if (guess != e.y) ++mistakes_;
  space_ = std::move(next);
}

SoaRunResult soa_run(const ConceptClass& c, std::span<const LabeledExample> stream) {
  SoaLearner learner(c);
  SoaRunResult result;
  for (const auto& e : stream) {
    result.predictions.push_back(learner.predict(e.x));
    learner.update(e);
  }
  result.mistakes = learner.mistakes();
  result.final_space = learner.version_space();
  return result;
}

}  // namespace pol
