#include "pol/harness/adversary.hpp"

#include <tuple>

#include "pol/errors.hpp"

namespace pol {

WorstCaseAdversary::WorstCaseAdversary(ConceptClass c, std::optional<ConceptClass> h, MistakeBoundOptions options)
    : c_(std::move(c)), ldim_(c_) {
  if (h) table_ = std::make_unique<MistakeBoundTable>(c_, *h, options);
}

Count WorstCaseAdversary::value(const IndexSet& space) {
  if (table_ && !heuristic_) {
    try {
      return table_->value(space);
    } catch (const CapExceeded&) {
      heuristic_ = true;
    }
  }
  return ldim_(space);
}

LabeledExample WorstCaseAdversary::choose(const IndexSet& consistent, const ErrorFn& is_error) {
  if (consistent.empty()) throw InvalidInput("adversary has no consistent concept to follow");
  std::optional<LabeledExample> best;
  std::tuple<Count, int, int> best_key{-1, -1, -1};
  for (int x = 0; x < c_.domain_size(); ++x) {
    for (int y = 0; y < 2; ++y) {
      const IndexSet next = consistent & c_.agreeing(x, y);
      if (next.empty()) continue;
      const int err = is_error(x, y) ? 1 : 0;
      const int shrinks = next == consistent ? 0 : 1;
      const std::tuple<Count, int, int> key{saturating_add(err, value(next)), err, shrinks};
      if (!best || key > best_key) {
        best = LabeledExample{x, y};
        best_key = key;
      }
    }
  }
  return *best;
}

RandomAdversary::RandomAdversary(ConceptClass c, std::uint64_t seed) : c_(std::move(c)), rng_(seed) {}

LabeledExample RandomAdversary::choose(const IndexSet& consistent, const ErrorFn&) {
  if (consistent.empty()) throw InvalidInput("adversary has no consistent concept to follow");
  std::uniform_int_distribution<int> pick_x(0, c_.domain_size() - 1);
  const int x = pick_x(rng_);
  const bool zero = consistent.intersects(c_.agreeing(x, 0));
  const bool one = consistent.intersects(c_.agreeing(x, 1));
  int y = one ? 1 : 0;
  if (zero && one) y = static_cast<int>(rng_() & 1U);
  return {x, y};
}

LabeledExample ReplayAdversary::choose(const IndexSet&, const ErrorFn&) {
  if (exhausted()) throw InvalidInput("replay stream is exhausted");
  return stream_[next_++];
}

ExampleSequence random_label_stream(int domain_size, std::size_t length, std::uint64_t seed) {
  if (domain_size < 1) throw InvalidInput("domain must be non-empty");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_x(0, domain_size - 1);
  ExampleSequence out;
  for (std::size_t t = 0; t < length; ++t) {
    const int x = pick_x(rng);
    out.push_back({x, static_cast<int>(rng() & 1U)});
  }
  return out;
}

}  // namespace pol
