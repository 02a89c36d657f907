#include <gtest/gtest.h>

#include <cmath>

#include "pol/agnostic.hpp"
#include "pol/errors.hpp"

using namespace pol;

TEST(MistakeSets, Enumeration) {
  const auto sets = mistake_sets(4, 1);
  EXPECT_EQ(sets.size(), 5U);
  EXPECT_EQ(sets[0], MistakeSet{});
  EXPECT_EQ(sets[4], (MistakeSet{4}));
  EXPECT_EQ(mistake_set_count(16, 2), 137U);
  EXPECT_EQ(mistake_sets(16, 2).size(), 137U);
  EXPECT_THROW(mistake_sets(30, 5, 1000), CapExceeded);
}

TEST(Experts, TraceExamples) {
  LittlestoneCache cache(singletons(3));
  const std::vector<int> xs{0, 1, 2, 0};
  EXPECT_EQ(expert_trace(cache, {}, xs), (std::vector<int>{0, 0, 0, 0}));
  EXPECT_EQ(expert_trace(cache, {1}, xs), (std::vector<int>{1, 0, 0, 1}));
  EXPECT_EQ(expert_g(singletons(3), {1}, std::vector<int>{0}), 1);
  EXPECT_THROW(expert_g(singletons(3), {}, std::vector<int>{}), InvalidInput);
}

TEST(Experts, MistakeSetRecoversTheConcept) {
  const ConceptClass c = thresholds(4);
  LittlestoneCache cache(c);
  const std::vector<int> xs{2, 0, 3, 1, 2};
  for (const auto& h : c.concepts()) {
    const MistakeSet i = mistake_set_of(cache, h, xs);
    EXPECT_LE(static_cast<int>(i.size()), ldim(c));
    const auto trace = expert_trace(cache, i, xs);
    for (std::size_t t = 0; t < xs.size(); ++t) EXPECT_EQ(trace[t], h(xs[t]));
  }
}

TEST(Experts, CoverageOnNamedClasses) {
  for (const auto& c : {singletons(3), thresholds(3), powerset(2)}) {
    const int n = c.domain_size();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) EXPECT_TRUE(expert_coverage_holds(c, std::vector<int>{a, b, d, a}));
  }
}

TEST(SparsifyFinal, Examples) {
  const ConceptClass s3 = singletons(3);
  const std::vector<double> point{0, 0, 1};
  const auto single = sparsify_final(s3, point, 0.1, 1);
  EXPECT_EQ(single.max_deviation, 0.0);
  for (auto i : single.members) EXPECT_EQ(i, 2U);
  const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
  EXPECT_LE(sparsify_final(s3, uniform, 0.1, 2).max_deviation, 0.1);
}

TEST(AgnosticRun, ParameterArithmetic) {
  const ExampleSequence stream{{0, 0}, {1, 0}, {2, 1}, {0, 0}};
  const AgnosticReport rep = agnostic_run(singletons(3), stream);
  EXPECT_EQ(rep.experts, 5U);
  EXPECT_NEAR(rep.eta, 1.794, 1e-3);
  EXPECT_NEAR(rep.eta, std::sqrt(2.0 * std::log(5.0)), 1e-12);
  EXPECT_NEAR(rep.eps, std::sqrt(0.25 * std::log(std::exp(1.0) * 4)), 1e-12);
  EXPECT_TRUE(rep.trivial_regime);
}

TEST(AgnosticRun, RealizableStream) {
  ExampleSequence stream;
  for (int x : {0, 1, 2, 2, 0, 1, 2, 1}) stream.push_back({x, x == 2 ? 1 : 0});
  const AgnosticReport rep = agnostic_run(singletons(3), stream);
  EXPECT_EQ(rep.best_concept_loss, 0);
  EXPECT_LE(rep.regret, rep.composite_bound);
  EXPECT_LE(rep.aggregator_regret, rep.experts_bound);
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
}

TEST(AgnosticRun, AlternatingLabels) {
  ExampleSequence stream;
  for (int t = 0; t < 8; ++t) stream.push_back({t % 3, t % 2});
  AgnosticOptions options;
  options.monte_carlo_draws = 10000;
  const AgnosticReport rep = agnostic_run(singletons(3), stream, options);
  EXPECT_GT(rep.best_concept_loss, 0);
  EXPECT_GT(rep.learner_loss, 0);
  EXPECT_LE(rep.regret, rep.composite_bound);
  ASSERT_TRUE(rep.monte_carlo);
  EXPECT_TRUE(rep.monte_carlo->ok);
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
  EXPECT_EQ(rep.rounds.size(), 8U);
  EXPECT_NEAR(rep.rounds.back().cum_regret_vs_best, rep.regret, 1e-12);
}

TEST(AgnosticRun, Csv) {
  EXPECT_EQ(AgnosticReport::csv_header(), "round,vote_size,prediction,label,abs_loss,cum_regret_vs_best");
  const ExampleSequence stream{{0, 1}, {1, 1}};
  const std::string rows = agnostic_run(thresholds(2), stream).csv_rows();
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 2);
  EXPECT_EQ(rows.rfind("1,", 0), 0U);
}

TEST(AgnosticRun, RejectsBadInput) {
  EXPECT_THROW(agnostic_run(singletons(3), ExampleSequence{}), InvalidInput);
  EXPECT_THROW(agnostic_run(singletons(3), ExampleSequence{{0, 2}}), InvalidInput);
  EXPECT_THROW(agnostic_run(singletons(3), ExampleSequence{{3, 0}}), InvalidInput);
  AgnosticOptions tiny;
  tiny.max_experts = 3;
  EXPECT_THROW(agnostic_run(singletons(3), ExampleSequence{{0, 0}, {1, 0}, {2, 0}}, tiny), CapExceeded);
}
