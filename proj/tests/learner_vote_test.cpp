#include <gtest/gtest.h>

#include <cmath>

#include "pol/cover.hpp"
#include "pol/errors.hpp"
#include "pol/harness/adversary.hpp"
#include "pol/harness/fixtures.hpp"
#include "pol/learner_vote.hpp"

using namespace pol;

namespace {

// Two unit-weight entries {100} and {010}: SOA says 1 and 0 at x = 0.
WeightedCover split_cover() {
  WeightedCover q(make_predictor("soa", singletons(3)), Rational(1, 4));
  const ExampleSequence witness{{0, 0}, {1, 0}};
  q.branch(witness, false);
  return q;
}

}  // namespace

TEST(Cover, VoteExamples) {
  WeightedCover q(make_predictor("soa", singletons(3)), Rational(1, 4));
  for (int x = 0; x < 3; ++x) EXPECT_EQ(q.vote(x), 0);
  EXPECT_EQ(q.high_vote(Rational(1, 4)), (ExampleSequence{{0, 0}, {1, 0}, {2, 0}}));

  WeightedCover two = split_cover();
  EXPECT_EQ(two.entries().size(), 2U);
  EXPECT_EQ(two.vote(0), Rational(1, 2));
  EXPECT_EQ(two.vote(2), 0);
  EXPECT_EQ(two.high_vote(Rational(1, 4)), (ExampleSequence{{2, 0}}));
  EXPECT_EQ(two.high_vote(Rational(0)), (ExampleSequence{{2, 0}}));

  WeightedCover single(make_predictor("soa", powerset(2)), Rational(1, 4));
  EXPECT_EQ(single.vote(0), soa_predict(powerset(2), 0));
}

TEST(Cover, UpdateDecaysDisagreeingEntries) {
  WeightedCover q(make_predictor("soa", singletons(3)), Rational(1, 4));
  q.update({1, 1});
  EXPECT_EQ(q.total_weight(), Rational(1, 4));
  EXPECT_EQ(q.witness_count(1, 1), 1);
  EXPECT_EQ(q.witness_count(1, 0), 0);
  EXPECT_EQ(q.witness_count(0, 5), 0);
}

TEST(Cover, IdenticalEntriesMergeWithMultiplicity) {
  WeightedCover q(make_predictor("soa", singletons(3)), Rational(1, 4));
  // Both witness examples flip to the same child {100}.
  const ExampleSequence witness{{0, 0}, {0, 0}};
  q.branch(witness, false);
  ASSERT_EQ(q.entries().size(), 1U);
  EXPECT_EQ(q.entry_count(), 2);
  EXPECT_EQ(q.total_weight(), 2);
}

TEST(Vote, Evaluation) {
  const VoteHypothesis s3 = VoteHypothesis::from_indices(singletons(3), std::vector<std::size_t>{0, 1, 2});
  for (int x = 0; x < 3; ++x) EXPECT_EQ(vote_eval(s3, x), Rational(1, 3));
  const Concept h = Concept::from_string("110");
  const Concept g = Concept::from_string("011");
  EXPECT_EQ(vote_eval(VoteHypothesis({h}), 0), 1);
  EXPECT_EQ(vote_eval(VoteHypothesis({h, h, g}), 0), Rational(2, 3));
  EXPECT_EQ(vote_eval(VoteHypothesis({h, h, g}), 2), Rational(1, 3));
  EXPECT_EQ(maj_eval(s3, 0), 0);
  EXPECT_EQ(maj_eval(VoteHypothesis({h, g}), 0), 1);
  EXPECT_EQ(maj_eval(VoteHypothesis({g}), 0), 0);
  EXPECT_THROW(VoteHypothesis({}), InvalidInput);
}

TEST(Propose, BranchesOnSingletonsAtWideMargin) {
  const ExampleSequence zeros{{0, 0}, {1, 0}, {2, 0}};
  const VoteProposal p = lv_propose(singletons(3), zeros, Rational(2, 5), 1);
  EXPECT_TRUE(p.branch);
  EXPECT_EQ(p.game_value, Rational(1, 3));
  EXPECT_FALSE(p.net.empty());
}

TEST(Propose, SingleConceptVotesForItself) {
  const ConceptClass one = make_class({{1, 0, 1}});
  const ExampleSequence hv{{0, 1}, {1, 0}};
  const VoteProposal p = lv_propose(one, hv, Rational(1, 4), 1);
  ASSERT_FALSE(p.branch);
  for (const auto& m : p.vote->members()) EXPECT_EQ(m.to_string(), "101");
}

TEST(VoteLearner, BoundArithmetic) {
  EXPECT_NEAR(vote_margin_bound(1, Rational(2, 5)), 8.0 / (0.4 * 0.95) * std::log(20.0), 1e-9);
  EXPECT_LE(vote_margin_bound(1, Rational(2, 5)), 64);
  EXPECT_NEAR(vote_margin_bound(2, Rational(1, 4)), 16.0 / (0.25 * (1 - 0.25 / 8)) * std::log(32.0), 1e-9);
}

TEST(VoteLearner, WorstCaseRuns) {
  struct Case {
    ConceptClass c;
    Rational eps;
  };
  for (const auto& [c, eps] : {Case{singletons(3), Rational(2, 5)}, Case{powerset(2), Rational(1, 4)}}) {
    WorstCaseAdversary adversary(c);
    const VoteTrace trace = lv_run(c, eps, adversary, 20);
    EXPECT_LE(trace.margin_errors, trace.bound);
    EXPECT_TRUE(trace.invariants.ok()) << trace.invariants.first_failure;
    EXPECT_LE(trace.max_doublings, 10);
  }
}

TEST(VoteLearner, RejectsOutOfRangeEps) {
  EXPECT_THROW(VoteLearner(singletons(3), Rational(1, 2)), InvalidInput);
  EXPECT_THROW(VoteLearner(singletons(3), Rational(0)), InvalidInput);
  VoteOptions wide;
  wide.allow_wide_eps = true;
  EXPECT_NO_THROW(VoteLearner(singletons(3), Rational(3, 5), wide));
  EXPECT_THROW(VoteLearner(singletons(3), Rational(1), wide), InvalidInput);
}

TEST(VoteLearner, SharedCacheReplaysIdentically) {
  VoteOptions options;
  options.cache = std::make_shared<ProposalCache>();
  RandomAdversary a(thresholds(4), 3);
  const VoteTrace first = lv_run(thresholds(4), Rational(1, 4), a, 20, options);
  const std::size_t cached = options.cache->size();
  RandomAdversary b(thresholds(4), 3);
  const VoteTrace second = lv_run(thresholds(4), Rational(1, 4), b, 20, options);
  EXPECT_EQ(options.cache->size(), cached);
  EXPECT_EQ(first.margin_errors, second.margin_errors);
  EXPECT_EQ(first.branches, second.branches);
  ASSERT_EQ(first.rounds.size(), second.rounds.size());
  for (std::size_t i = 0; i < first.rounds.size(); ++i) EXPECT_EQ(first.rounds[i].value, second.rounds[i].value);
}

TEST(VoteLearner, SkippingDecayBreaksTheInvariants) {
  VoteOptions broken;
  broken.skip_weight_decay = true;
  WorstCaseAdversary adversary(powerset(2));
  const VoteTrace trace = lv_run(powerset(2), Rational(1, 4), adversary, 20, broken);
  EXPECT_FALSE(trace.invariants.ok());
}

TEST(Majority, Examples) {
  WorstCaseAdversary s3(singletons(3));
  const MajTrace a = lv_as_mistake_learner(singletons(3), s3, 20);
  EXPECT_EQ(a.bound, 80);
  EXPECT_LE(a.mistakes, 80);
  EXPECT_EQ(a.predictions.size(), 20U);

  WorstCaseAdversary p2(powerset(2));
  const MajTrace b = lv_as_mistake_learner(powerset(2), p2, 20);
  EXPECT_EQ(b.bound, 160);
  EXPECT_LE(b.mistakes, 160);
  EXPECT_TRUE(b.inner.invariants.ok());

  const ConceptClass one = make_class({{0, 1, 1}});
  WorstCaseAdversary single(one);
  EXPECT_EQ(lv_as_mistake_learner(one, single, 10).mistakes, 0);
}

TEST(Majority, HalvingBaseKeepsItsOwnBound) {
  VoteOptions halving;
  halving.base_predictor = "halving";
  for (const auto& f : fixture_classes()) {
    if (f.c.size() > 8) continue;
    SCOPED_TRACE(f.name);
    WorstCaseAdversary adversary(f.c);
    const MajTrace trace = lv_as_mistake_learner(f.c, adversary, 15, halving);
    EXPECT_LE(trace.mistakes, trace.bound);
    EXPECT_TRUE(trace.inner.invariants.ok()) << trace.inner.invariants.first_failure;
  }
}
