#include <gtest/gtest.h>

#include "pol/errors.hpp"
#include "pol/harness/adversary.hpp"
#include "pol/harness/fixtures.hpp"
#include "pol/soa.hpp"

using namespace pol;

TEST(SoaPredict, Examples) {
  EXPECT_EQ(soa_predict(make_class({{1, 0, 0}}), 0), 1);
  EXPECT_EQ(soa_predict(singletons(3), 0), 0);
  EXPECT_EQ(soa_predict(powerset(2), 0), 1);
  LittlestoneCache cache(singletons(3));
  EXPECT_THROW(soa_predict(cache, singletons(3).none(), 0), InvalidInput);
}

TEST(SoaRun, Examples) {
  const ExampleSequence stream{{0, 0}, {1, 0}, {2, 1}};
  const SoaRunResult r = soa_run(singletons(3), stream);
  EXPECT_LE(r.mistakes, 1);
  // After (0, 0) both survivors have L = 0 at x = 1, so the tie goes to 1.
  EXPECT_EQ(r.predictions, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(r.mistakes, 1);
  EXPECT_EQ(r.final_space.count(), 1U);

  const ExampleSequence constant{{0, 1}, {1, 0}, {0, 1}};
  EXPECT_EQ(soa_run(make_class({{1, 0}}), constant).mistakes, 0);
}

TEST(SoaRun, UnrealizablePrefixIsReported) {
  const ExampleSequence stream{{0, 0}, {1, 1}, {0, 1}, {2, 1}};
  try {
    soa_run(singletons(3), stream);
    FAIL() << "expected Unrealizable";
  } catch (const Unrealizable& e) {
    EXPECT_EQ(e.prefix_length(), 3U);
  }
}

TEST(SoaLearner, NeverExceedsLittlestoneAgainstWorstCase) {
  for (const auto& f : fixture_classes()) {
    SCOPED_TRACE(f.name);
    const int l = ldim(f.c);
    WorstCaseAdversary adversary(f.c);
    SoaLearner learner(f.c);
    for (int t = 0; t < 25; ++t) {
      const auto e = adversary.choose(learner.version_space(), [&](int x, int y) { return learner.predict(x) != y; });
      learner.update(e);
    }
    EXPECT_LE(learner.mistakes(), l);
  }
}

TEST(SoaLearner, WorstCaseForcesExactlyL) {
  // The adversary's value is L itself, so against SOA it extracts all of it.
  for (const auto& c : {singletons(3), powerset(2), powerset(3), thresholds(6)}) {
    WorstCaseAdversary adversary(c);
    SoaLearner learner(c);
    for (int t = 0; t < 20; ++t)
      learner.update(adversary.choose(learner.version_space(), [&](int x, int y) { return learner.predict(x) != y; }));
    EXPECT_EQ(learner.mistakes(), ldim(c));
  }
}

TEST(Halving, BoundIsLogOfVersionSpace) {
  HalvingPredictor halving(powerset(3));
  EXPECT_EQ(halving.mistake_bound(powerset(3).all()), 3);
  HalvingPredictor s8(singletons(8));
  EXPECT_EQ(s8.mistake_bound(singletons(8).all()), 3);
  EXPECT_EQ(s8.predict(singletons(8).all(), 0), 0);
  EXPECT_EQ(make_predictor("soa", singletons(3))->name(), "soa");
  EXPECT_EQ(make_predictor("halving", singletons(3))->name(), "halving");
  EXPECT_THROW(make_predictor("other", singletons(3)), InvalidInput);
}
