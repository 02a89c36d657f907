#include <gtest/gtest.h>

#include "pol/errors.hpp"
#include "pol/harness/adversary.hpp"
#include "pol/harness/fixtures.hpp"
#include "pol/learner_helly.hpp"

using namespace pol;

namespace {

ConceptClass with_zero(const ConceptClass& c) {
  const Concept z(0, c.domain_size());
  return c.with(std::span<const Concept>(&z, 1));
}

}  // namespace

TEST(Witness, SmallestUnrealizableSubset) {
  const ConceptClass s3 = singletons(3);
  const ExampleSequence zeros{{0, 0}, {1, 0}, {2, 0}};
  const auto w = find_unrealizable_witness(s3, zeros, 3);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 3U);
  EXPECT_FALSE(find_unrealizable_witness(s3, zeros, 2));
  const ExampleSequence clash{{0, 1}, {2, 0}, {1, 1}};
  EXPECT_EQ(find_unrealizable_witness(s3, clash, 3)->size(), 2U);
}

TEST(HellyLearner, HandTraceWithZeroHypothesis) {
  const ConceptClass s3 = singletons(3);
  const ConceptClass h = with_zero(s3);
  HellyLearner learner(s3, h);
  EXPECT_EQ(learner.trace().eta, Rational(1, 4));
  EXPECT_EQ(learner.trace().bound, 12);
  EXPECT_EQ(h[learner.propose()].to_string(), "000");
  learner.observe({0, 1});
  EXPECT_EQ(learner.trace().mistakes, 1);
  ASSERT_EQ(learner.cover().entries().size(), 1U);
  EXPECT_EQ(learner.cover().total_weight(), Rational(1, 4));
  EXPECT_EQ(learner.consistent().count(), 1U);
  EXPECT_EQ(h[learner.propose()].to_string(), "100");
  for (int x : {1, 2, 0, 1}) learner.observe({x, x == 0 ? 1 : 0});
  const HellyTrace& trace = learner.finish();
  EXPECT_EQ(trace.mistakes, 1);
  EXPECT_TRUE(trace.invariants.ok()) << trace.invariants.first_failure;
}

TEST(HellyLearner, ProperSingletonsBranch) {
  const ConceptClass s3 = singletons(3);
  WorstCaseAdversary adversary(s3, s3);
  const HellyTrace trace = lh_run(s3, s3, adversary, 20);
  EXPECT_EQ(trace.dual_helly, 3);
  EXPECT_GT(trace.branches, 0);
  EXPECT_EQ(trace.mistakes, 2);
  EXPECT_LE(trace.mistakes, trace.bound);
  EXPECT_TRUE(trace.invariants.ok()) << trace.invariants.first_failure;
}

TEST(HellyLearner, PowersetNeverBranches) {
  const ConceptClass p2 = powerset(2);
  WorstCaseAdversary adversary(p2, p2);
  const HellyTrace trace = lh_run(p2, p2, adversary, 20);
  EXPECT_EQ(trace.branches, 0);
  EXPECT_LE(trace.mistakes, 2);
  // ceil(4 * 2 * 2 * ln 4) with L = 2.
  EXPECT_EQ(trace.bound, 23);
  EXPECT_LE(trace.mistakes, 12);
  EXPECT_TRUE(trace.invariants.ok());
}

TEST(HellyLearner, WorstCaseExamples) {
  const ConceptClass s3 = singletons(3);
  WorstCaseAdversary a(s3, with_zero(s3));
  const HellyTrace t = lh_run(s3, with_zero(s3), a, 20);
  EXPECT_GE(t.mistakes, 1);
  EXPECT_LE(t.mistakes, 2);

  const ConceptClass s8 = singletons(8);
  WorstCaseAdversary b(s8, with_zero(s8));
  const HellyTrace t8 = lh_run(s8, with_zero(s8), b, 30);
  EXPECT_EQ(t8.bound, 12);
  EXPECT_LE(t8.mistakes, 12);
  EXPECT_TRUE(t8.invariants.ok());
}

TEST(HellyLearner, RejectsBadInput) {
  const ConceptClass c = make_class({{1, 0}, {0, 1}});
  EXPECT_THROW(HellyLearner(c, make_class({{0, 1}})), InvalidInput);
  HellyLearner learner(singletons(3), singletons(3));
  learner.observe({0, 1});
  EXPECT_THROW(learner.observe({1, 1}), Unrealizable);
  EXPECT_THROW(learner.observe({5, 1}), InvalidInput);
}

TEST(HellyLearner, SkippingDecayBreaksTheInvariants) {
  const ConceptClass s3 = singletons(3);
  HellyOptions broken;
  broken.skip_weight_decay = true;
  WorstCaseAdversary adversary(s3, s3);
  const HellyTrace trace = lh_run(s3, s3, adversary, 20, broken);
  EXPECT_FALSE(trace.invariants.ok());
  EXPECT_FALSE(trace.invariants.first_failure.empty());
}

TEST(HellyLearner, HalvingBaseKeepsItsOwnBound) {
  // Any mistake-bounded base learner works; L becomes its bound.
  for (const auto& p : fixture_pairs()) {
    if (p.c.size() > 8 || dual_helly(p.c, p.h).value > 4) continue;
    SCOPED_TRACE(p.name);
    HellyOptions halving;
    halving.base_predictor = "halving";
    WorstCaseAdversary adversary(p.c, p.h);
    const HellyTrace trace = lh_run(p.c, p.h, adversary, 25, halving);
    EXPECT_LE(trace.mistakes, trace.bound);
    EXPECT_TRUE(trace.invariants.ok()) << trace.invariants.first_failure;
  }
}
