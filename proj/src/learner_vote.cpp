#include "pol/learner_vote.hpp"

#include <algorithm>
#include <cmath>

#include "pol/errors.hpp"

namespace pol {

VoteHypothesis::VoteHypothesis(std::vector<Concept> members) : members_(std::move(members)) {
  if (members_.empty()) throw InvalidInput("a vote needs at least one member");
  for (const auto& m : members_)
    if (m.domain_size() != members_.front().domain_size()) throw InvalidInput("vote members must share a domain");
}

VoteHypothesis VoteHypothesis::from_indices(const ConceptClass& c, std::span<const std::size_t> indices) {
  std::vector<Concept> members;
  members.reserve(indices.size());
  for (auto i : indices) members.push_back(c[i]);
  return VoteHypothesis(std::move(members));
}

std::size_t VoteHypothesis::ones(int x) const {
  if (x < 0 || x >= members_.front().domain_size()) throw InvalidInput("instance outside the vote's domain");
  std::size_t k = 0;
  for (const auto& m : members_) k += static_cast<std::size_t>(m(x));
  return k;
}

Rational VoteHypothesis::operator()(int x) const {
  Rational v(static_cast<unsigned long>(ones(x)), static_cast<unsigned long>(members_.size()));
  v.canonicalize();
  return v;
}

Rational vote_eval(const VoteHypothesis& v, int x) { return v(x); }

int maj_eval(const VoteHypothesis& v, int x) { return 2 * v.ones(x) >= v.size() ? 1 : 0; }

ProposalCache::Key ProposalCache::key_of(std::span<const LabeledExample> high_vote) {
  Key k;
  for (const auto& e : high_vote) {
    k.present |= std::uint64_t{1} << e.x;
    if (e.y) k.labels |= std::uint64_t{1} << e.x;
  }
  return k;
}

std::size_t ProposalCache::KeyHash::operator()(const Key& k) const {
  return static_cast<std::size_t>(k.present * 0x9e3779b97f4a7c15ULL ^ (k.labels + 0x632be59bd9b4e019ULL));
}

std::uint64_t ProposalCache::key_hash(std::span<const LabeledExample> high_vote) {
  return KeyHash{}(key_of(high_vote));
}

const VoteProposal* ProposalCache::find(std::span<const LabeledExample> high_vote) const {
  auto it = table_.find(key_of(high_vote));
  return it == table_.end() ? nullptr : &it->second;
}

const VoteProposal& ProposalCache::insert(std::span<const LabeledExample> high_vote, VoteProposal proposal) {
  return table_.insert_or_assign(key_of(high_vote), std::move(proposal)).first->second;
}

VoteProposal lv_propose(const ConceptClass& c, std::span<const LabeledExample> high_vote, const Rational& eps,
                        std::uint64_t seed, const SparsifyOptions& sparsify) {
  if (c.is_empty()) throw InvalidInput("vote proposal needs a non-empty class");
  const Rational half_eps = eps / 2;
  VoteProposal out;
  std::vector<Rational> pi;
  if (high_vote.empty()) {
    out.game_value = 0;
    pi = MixedStrategy::uniform(static_cast<int>(c.size())).dense(static_cast<int>(c.size()));
  } else {
    const GameSolution sol = game_value(GameMatrix::error_matrix(c, high_vote));
    out.game_value = *sol.exact_value;
    if (out.game_value > half_eps) {
      const auto net = eps_net(c, high_vote, half_eps, seed, sparsify);
      if (!net) throw DefectError("game value exceeds eps/2 but no eps-net premise holds");
      out.branch = true;
      out.net = net->net;
      out.doublings = net->doublings;
      out.greedy = net->greedy;
      out.constant = net->constant;
      return out;
    }
    pi = sol.exact_row->dense(static_cast<int>(c.size()));
  }
  const auto approx = dual_eps_approx(c, pi, half_eps, high_vote, seed, sparsify);
  out.vote = VoteHypothesis::from_indices(c, approx.members);
  out.doublings = approx.doublings;
  out.greedy = approx.greedy;
  out.constant = approx.constant;
  for (const auto& e : high_vote) {
    const Rational gap = abs((*out.vote)(e.x) - e.y);
    if (gap > eps) throw DefectError("sparsified vote misses a HighVote label by more than eps");
  }
  return out;
}

double vote_margin_bound(int l, const Rational& eps) {
  const double e = eps.get_d();
  return 8.0 * l / (e * (1.0 - e / 8.0)) * std::log(8.0 / e);
}

VoteLearner::VoteLearner(ConceptClass c, Rational eps, VoteOptions options)
    : c_(std::move(c)),
      eps_(std::move(eps)),
      options_(std::move(options)),
      cover_(make_predictor(options_.base_predictor, c_), eps_ / 8),
      consistent_(c_.all()) {
  const Rational ceiling = options_.allow_wide_eps ? Rational(1) : Rational(1, 2);
  if (sgn(eps_) <= 0 || eps_ >= ceiling)
    throw InvalidInput("eps must lie in (0, " + ceiling.get_str() + "), got " + eps_.get_str());
  if (!options_.cache) options_.cache = std::make_shared<ProposalCache>();
  l_ = cover_.predictor().mistake_bound(c_.all());
  trace_.ldim = l_;
  trace_.eps = eps_;
  trace_.eta = cover_.eta();
  trace_.bound = vote_margin_bound(l_, eps_);
}

const VoteHypothesis& VoteLearner::propose() {
  if (committed_) return *committed_;
  const Rational eta = cover_.eta();
  while (true) {
    if (cover_.empty()) throw DefectError("cover emptied on a realizable stream");
    ExampleSequence hv = cover_.high_vote(eta);
    const VoteProposal* proposal = options_.cache->find(hv);
    if (!proposal) {
      const std::uint64_t seed = options_.seed * 0x9e3779b97f4a7c15ULL ^ ProposalCache::key_hash(hv);
      proposal = &options_.cache->insert(hv, lv_propose(c_, hv, eps_, seed, options_.sparsify));
    }
    trace_.max_doublings = std::max(trace_.max_doublings, proposal->doublings);
    if (!proposal->branch) {
      committed_ = *proposal->vote;
      committed_high_vote_ = std::move(hv);
      trace_.max_vote_size = std::max(trace_.max_vote_size, committed_->size());
      trace_.max_vote_constant = std::max(trace_.max_vote_constant, proposal->constant);
      for (const auto& e : committed_high_vote_)
        if (abs((*committed_)(e.x) - e.y) > eps_)
          trace_.invariants.fail(trace_.invariants.proposal_fit, "committed vote misses a HighVote label by > eps");
      return *committed_;
    }

    VoteRound round;
    round.branch = true;
    round.t = t_;
    round.net_size = proposal->net.size();
    round.weight_before = cover_.total_weight();
    cover_.branch(proposal->net, !options_.skip_weight_decay);
    round.weight_after = cover_.total_weight();
    round.entries = cover_.entries().size();
    ++trace_.branches;
    trace_.max_net_constant = std::max(trace_.max_net_constant, proposal->constant);
    const Rational m(static_cast<long>(round.net_size));
    const Rational eighth = eps_ / 8;
    if (round.weight_after > m * ((1 - eighth) * eta + eighth) * round.weight_before)
      trace_.invariants.fail(trace_.invariants.branch_decay,
                             "branch round grew the weight past m((1-eps/8)eta + eps/8) at t=" + std::to_string(t_));
    witness_floor_ *= eps_ / 4 * m;
    trace_.rounds.push_back(std::move(round));
    check_witnesses();
  }
}

Rational VoteLearner::value(int x) {
  c_.check_instance(x);
  return propose()(x);
}

void VoteLearner::observe(LabeledExample e) {
  c_.check_instance(e.x);
  if (e.y != 0 && e.y != 1) throw InvalidInput("label must be 0 or 1");
  const VoteHypothesis& vote = propose();
  IndexSet next = c_.restrict(consistent_, e);
  if (next.empty()) throw Unrealizable("stream left the concept class", t_ + 1);
  consistent_ = std::move(next);

  VoteRound round;
  round.t = t_;
  round.x = e.x;
  round.y = e.y;
  round.value = vote(e.x);
  round.vote_size = vote.size();
  round.margin_error = abs(round.value - e.y) > eps_;
  round.weight_before = cover_.total_weight();
  if (round.margin_error) {
    ++trace_.margin_errors;
    cover_.update(e, !options_.skip_weight_decay);
    const Rational eighth = eps_ / 8;
    if (cover_.total_weight() > (1 - eighth * (1 - eighth)) * round.weight_before)
      trace_.invariants.fail(trace_.invariants.mistake_decay,
                             "margin-error round kept more than (1 - (eps/8)(1-eps/8)) of the weight at t=" +
                                 std::to_string(t_));
  }
  round.weight_after = cover_.total_weight();
  round.entries = cover_.entries().size();
  trace_.rounds.push_back(std::move(round));
  committed_.reset();
  ++t_;
  check_witnesses();
}

void VoteLearner::check_witnesses() {
  // Each consistent concept must be held by at least prod (eps/4) m_i
  // entries that decayed at most L times.
  bool ok = true;
  consistent_.for_each([&](std::size_t i) {
    if (ok && Rational(cover_.witness_count(i, l_)) < witness_floor_) ok = false;
  });
  if (!ok)
    trace_.invariants.fail(trace_.invariants.witness,
                           "witness multiplicity fell below prod (eps/4) m at t=" + std::to_string(t_));
}

const VoteTrace& VoteLearner::finish() {
  const double e = eps_.get_d();
  const double scale = 8.0 / (e * (1.0 - e / 8.0));
  const double lhs = trace_.margin_errors + trace_.branches * scale * std::log(1.0 / (1.0 - e / 16.0));
  const double rhs = trace_.bound;
  if (lhs > rhs + 1e-9 * std::max(1.0, rhs))
    trace_.invariants.fail(trace_.invariants.final_inequality,
                           "M + N c ln(1/(1-eps/16)) = " + std::to_string(lhs) + " exceeds " + std::to_string(rhs));
  return trace_;
}

VoteTrace lv_run(const ConceptClass& c, const Rational& eps, Adversary& adversary, std::size_t horizon,
                 const VoteOptions& options) {
  VoteLearner learner(c, eps, options);
  for (std::size_t t = 0; t < horizon && !adversary.exhausted(); ++t) {
    const VoteHypothesis& vote = learner.propose();
    const auto e = adversary.choose(learner.consistent(), [&](int x, int y) { return abs(vote(x) - y) > eps; });
    learner.observe(e);
  }
  return learner.finish();
}

MajTrace lv_as_mistake_learner(const ConceptClass& c, Adversary& adversary, std::size_t horizon,
                               const VoteOptions& options) {
  VoteLearner learner(c, Rational(1, 3), options);
  MajTrace out;
  for (std::size_t t = 0; t < horizon && !adversary.exhausted(); ++t) {
    const VoteHypothesis& vote = learner.propose();
    const auto e = adversary.choose(learner.consistent(), [&](int x, int y) { return maj_eval(vote, x) != y; });
    const int guess = maj_eval(vote, e.x);
    out.predictions.push_back(guess);
    if (guess != e.y) ++out.mistakes;
    learner.observe(e);
  }
  out.inner = learner.finish();
  out.bound = 80L * out.inner.ldim;
  return out;
}

}  // namespace pol
