#include "pol/cover.hpp"

#include <algorithm>
#include <map>

#include "pol/errors.hpp"

namespace pol {

namespace {

Rational power(const Rational& base, int exponent) {
  Rational out = 1;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  out.canonicalize();
  return out;
}

}  // namespace

WeightedCover::WeightedCover(std::shared_ptr<BasePredictor> predictor, Rational eta)
    : predictor_(std::move(predictor)), eta_(std::move(eta)) {
  if (!predictor_) throw InvalidInput("cover needs a base predictor");
  if (sgn(eta_) <= 0 || eta_ >= 1) throw InvalidInput("eta must lie in (0, 1)");
  if (concept_class().is_empty()) throw InvalidInput("cover needs a non-empty class");
  entries_.push_back(CoverEntry{concept_class().all(), 0, 1});
}

BigInt WeightedCover::entry_count() const {
  BigInt total = 0;
  for (const auto& e : entries_) total += e.multiplicity;
  return total;
}

Rational WeightedCover::entry_weight(const CoverEntry& e) const { return power(eta_, e.decays); }

Rational WeightedCover::total_weight() const {
  Rational total = 0;
  for (const auto& e : entries_) total += entry_weight(e) * e.multiplicity;
  return total;
}

std::uint64_t WeightedCover::predictions(const IndexSet& space) {
  if (auto it = prediction_memo_.find(space); it != prediction_memo_.end()) return it->second;
  std::uint64_t bits = 0;
  for (int x = 0; x < concept_class().domain_size(); ++x)
    if (predictor_->predict(space, x)) bits |= std::uint64_t{1} << x;
  prediction_memo_.emplace(space, bits);
  return bits;
}

std::vector<Rational> WeightedCover::votes() {
  if (entries_.empty()) throw InvalidInput("vote of an empty cover");
  const int n = concept_class().domain_size();
  std::vector<Rational> ones(static_cast<std::size_t>(n), 0);
  Rational total = 0;
  for (const auto& e : entries_) {
    const Rational w = entry_weight(e) * e.multiplicity;
    total += w;
    const std::uint64_t bits = predictions(e.space);
    for (int x = 0; x < n; ++x)
      if ((bits >> x) & 1U) ones[static_cast<std::size_t>(x)] += w;
  }
  for (auto& v : ones) v /= total;
  return ones;
}

Rational WeightedCover::vote(int x) {
  concept_class().check_instance(x);
  return votes()[static_cast<std::size_t>(x)];
}

ExampleSequence WeightedCover::high_vote(const Rational& eps) {
  const auto v = votes();
  const Rational half(1, 2);
  ExampleSequence out;
  for (std::size_t x = 0; x < v.size(); ++x)
    if (v[x] <= eps || v[x] >= 1 - eps) out.push_back({static_cast<int>(x), v[x] >= half ? 1 : 0});
  return out;
}

void WeightedCover::update(LabeledExample e, bool decay) {
  const ConceptClass& c = concept_class();
  c.check_instance(e.x);
  std::vector<CoverEntry> next;
  next.reserve(entries_.size());
  for (auto& entry : entries_) {
    const int guess = static_cast<int>((predictions(entry.space) >> e.x) & 1U);
    CoverEntry child{entry.space & c.agreeing(e.x, e.y), entry.decays, entry.multiplicity};
    if (child.space.empty()) continue;
    if (decay && guess != e.y) ++child.decays;
    next.push_back(std::move(child));
  }
  absorb(std::move(next));
}

void WeightedCover::branch(std::span<const LabeledExample> witness, bool decay) {
  const ConceptClass& c = concept_class();
  std::vector<CoverEntry> next;
  for (auto& entry : entries_) {
    const std::uint64_t bits = predictions(entry.space);
    for (const auto& w : witness) {
      c.check_instance(w.x);
      CoverEntry child{entry.space & c.agreeing(w.x, 1 - w.y), entry.decays, entry.multiplicity};
      if (child.space.empty()) continue;
      if (decay && static_cast<int>((bits >> w.x) & 1U) == w.y) ++child.decays;
      next.push_back(std::move(child));
    }
  }
  absorb(std::move(next));
}

BigInt WeightedCover::witness_count(std::size_t index, int max_decays) const {
  BigInt total = 0;
  for (const auto& e : entries_)
    if (e.decays <= max_decays && e.space.test(index)) total += e.multiplicity;
  return total;
}

void WeightedCover::absorb(std::vector<CoverEntry> raw) {
  // First-occurrence order keeps traces reproducible.
  std::unordered_map<IndexSet, std::map<int, std::size_t>, IndexSetHash> slot;
  std::vector<CoverEntry> merged;
  merged.reserve(raw.size());
  for (auto& e : raw) {
    auto& by_decay = slot[e.space];
    if (auto it = by_decay.find(e.decays); it != by_decay.end()) {
      merged[it->second].multiplicity += e.multiplicity;
    } else {
      by_decay.emplace(e.decays, merged.size());
      merged.push_back(std::move(e));
    }
  }
  entries_ = std::move(merged);
}

}  // namespace pol
