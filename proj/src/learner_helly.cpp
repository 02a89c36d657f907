#include "pol/learner_helly.hpp"

#include <cmath>
#include <functional>

#include "pol/errors.hpp"

namespace pol {

std::optional<ExampleSequence> find_unrealizable_witness(const ConceptClass& c,
                                                         std::span<const LabeledExample> examples, int max_size) {
  const int size = static_cast<int>(examples.size());
  ExampleSequence pick;
  std::function<bool(int, int, const IndexSet&)> search = [&](int start, int remaining, const IndexSet& space) {
    if (remaining == 0) return space.empty();
    for (int i = start; i <= size - remaining; ++i) {
      const auto& e = examples[static_cast<std::size_t>(i)];
      pick.push_back(e);
      if (search(i + 1, remaining - 1, space & c.agreeing(e.x, e.y))) return true;
      pick.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= std::min(size, max_size); ++k)
    if (search(0, k, c.all())) return pick;
  return std::nullopt;
}

void InvariantLog::fail(bool& flag, const std::string& why) {
  if (flag && first_failure.empty()) first_failure = why;
  flag = false;
}

namespace {

Count checked_helly(const ConceptClass& c, const ConceptClass& h, const DualHellyOptions& options) {
  const Count k = dual_helly(c, h, options).value;
  if (k == kUnbounded) throw InvalidInput("dual Helly number is infinite; the cover learner needs it finite");
  return k;
}

}  // namespace

HellyLearner::HellyLearner(ConceptClass c, ConceptClass h, HellyOptions options)
    : c_(std::move(c)),
      h_(std::move(h)),
      options_(std::move(options)),
      k_(checked_helly(c_, h_, options_.helly)),
      cover_(make_predictor(options_.base_predictor, c_), Rational(1, 2 * k_)),
      consistent_(c_.all()) {
  if (h_.is_empty()) throw InvalidInput("hypothesis class is empty");
  l_ = cover_.predictor().mistake_bound(c_.all());
  trace_.ldim = l_;
  trace_.dual_helly = k_;
  trace_.eta = cover_.eta();
  trace_.bound = static_cast<long>(std::ceil(4.0 * l_ * k_ * std::log(2.0 * k_) - 1e-12));
}

std::size_t HellyLearner::propose() {
  if (committed_) return *committed_;
  while (true) {
    if (cover_.empty()) throw DefectError("cover emptied on a realizable stream");
    const ExampleSequence hv = cover_.high_vote(cover_.eta());
    const IndexSet fits = h_.consistent_with(hv);
    if (const auto first = fits.first()) {
      committed_ = *first;
      return *first;
    }
    const auto witness = find_unrealizable_witness(c_, hv, k_);
    if (!witness) throw DefectError("HighVote is H-unrealizable but has no C-unrealizable subset of size <= K");

    HellyRound round;
    round.branch = true;
    round.t = t_;
    round.witness = *witness;
    round.weight_before = cover_.total_weight();
    cover_.branch(*witness, !options_.skip_weight_decay);
    round.weight_after = cover_.total_weight();
    round.entries = cover_.entries().size();
    ++trace_.branches;
    if (static_cast<Count>(witness->size()) > k_ || c_.is_realizable(*witness))
      trace_.invariants.fail(trace_.invariants.witness_size, "branch witness is realizable or larger than K");
    const Rational factor = 1 - Rational(1, 4 * k_);
    if (round.weight_after > factor * round.weight_before)
      trace_.invariants.fail(trace_.invariants.branch_decay,
                             "branch round kept more than (1 - 1/(4K)) of the weight at t=" + std::to_string(t_));
    trace_.rounds.push_back(std::move(round));
    check_witnesses();
  }
}

int HellyLearner::predict(int x) {
  c_.check_instance(x);
  return h_[propose()](x);
}

void HellyLearner::observe(LabeledExample e) {
  c_.check_instance(e.x);
  if (e.y != 0 && e.y != 1) throw InvalidInput("label must be 0 or 1");
  const std::size_t hyp = propose();
  IndexSet next = c_.restrict(consistent_, e);
  if (next.empty()) throw Unrealizable("stream left the concept class", t_ + 1);
  consistent_ = std::move(next);

  HellyRound round;
  round.t = t_;
  round.x = e.x;
  round.y = e.y;
  round.hypothesis = hyp;
  round.prediction = h_[hyp](e.x);
  round.mistake = round.prediction != e.y;
  round.weight_before = cover_.total_weight();
  if (round.mistake) {
    ++trace_.mistakes;
    cover_.update(e, !options_.skip_weight_decay);
    const Rational& eta = cover_.eta();
    if (cover_.total_weight() > (1 - eta * (1 - eta)) * round.weight_before)
      trace_.invariants.fail(trace_.invariants.mistake_decay,
                             "mistake round kept more than (1 - eta(1-eta)) of the weight at t=" + std::to_string(t_));
  }
  round.weight_after = cover_.total_weight();
  round.entries = cover_.entries().size();
  trace_.rounds.push_back(std::move(round));
  committed_.reset();
  ++t_;
  check_witnesses();
}

void HellyLearner::check_witnesses() {
  // Every concept still consistent with the stream must sit in some entry
  // that has decayed at most L times.
  bool ok = true;
  consistent_.for_each([&](std::size_t i) {
    if (ok && cover_.witness_count(i, l_) == 0) ok = false;
  });
  if (!ok)
    trace_.invariants.fail(trace_.invariants.witness,
                           "no entry holds a consistent concept with weight >= eta^L at t=" + std::to_string(t_));
}

const HellyTrace& HellyLearner::finish() {
  const int total = trace_.mistakes + trace_.branches;
  if (total > 0) {
    const double lhs = static_cast<double>(total) / (4.0 * k_);
    const double rhs = l_ * std::log(2.0 * k_);
    if (!(lhs < rhs))
      trace_.invariants.fail(trace_.invariants.final_inequality,
                             "M/(4K) + N/(4K) = " + std::to_string(lhs) + " is not below L ln(2K) = " + std::to_string(rhs));
  }
  return trace_;
}

HellyTrace lh_run(const ConceptClass& c, const ConceptClass& h, Adversary& adversary, std::size_t horizon,
                  const HellyOptions& options) {
  HellyLearner learner(c, h, options);
  for (std::size_t t = 0; t < horizon && !adversary.exhausted(); ++t) {
    const Concept& hyp = learner.hypotheses()[learner.propose()];
    const auto e = adversary.choose(learner.consistent(), [&](int x, int y) { return hyp(x) != y; });
    learner.observe(e);
  }
  return learner.finish();
}

}  // namespace pol
