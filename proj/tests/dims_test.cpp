#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pol/dims.hpp"
#include "pol/errors.hpp"
#include "pol/harness/fixtures.hpp"

using namespace pol;

namespace {

// Values computed once by the brute-force oracles and frozen here. Columns:
// ldim, vcdim, dual vcdim, threshold dim, K(C, C), K(C, C + zero),
// QC_EQ(C, C), QC_EQ(C, C + zero).
struct Frozen {
  const char* name;
  int ldim, vcdim, dual_vcdim, threshold_dim;
  Count helly_self, helly_zero, eq_self, eq_zero;
};

const Frozen kFrozen[] = {
    {"singletons:2", 1, 1, 1, 1, 2, 2, 2, 2},
    {"singletons:3", 1, 1, 1, 1, 3, 2, 3, 2},
    {"singletons:4", 1, 1, 1, 1, 4, 2, 4, 2},
    {"singletons:5", 1, 1, 1, 1, 5, 2, 5, 2},
    {"singletons:6", 1, 1, 1, 1, 6, 2, 6, 2},
    {"singletons:7", 1, 1, 1, 1, 7, 2, 7, 2},
    {"singletons:8", 1, 1, 1, 1, 8, 2, 8, 2},
    {"thresholds:2", 1, 1, 1, 2, 2, 2, 2, 2},
    {"thresholds:3", 2, 1, 1, 3, 2, 2, 3, 3},
    {"thresholds:4", 2, 1, 1, 4, 2, 2, 3, 3},
    {"thresholds:5", 2, 1, 1, 5, 2, 2, 3, 3},
    {"thresholds:6", 2, 1, 1, 6, 2, 2, 3, 3},
    {"powerset:1", 1, 1, 0, 1, 2, 2, 2, 2},
    {"powerset:2", 2, 2, 1, 2, 2, 2, 3, 3},
    {"powerset:3", 3, 3, 1, 3, 2, 2, 4, 4},
    {"random:2:1:269593", 0, 0, 1, 1, 2, 2, 1, 1},
    {"random:6:5:201445", 2, 2, 2, 3, 3, 3, 3, 3},
    {"random:6:11:561569", 3, 3, 2, 4, 4, 4, 4, 4},
    {"random:4:5:58026", 2, 2, 1, 3, 3, 3, 3, 3},
    {"random:6:9:975912", 3, 3, 2, 4, 4, 4, 4, 4},
    {"random:4:4:215957", 2, 1, 2, 2, 3, 3, 3, 3},
    {"random:5:5:350505", 2, 2, 2, 3, 3, 3, 3, 3},
    {"random:3:5:825419", 2, 2, 1, 3, 2, 2, 3, 3},
    {"random:3:1:482349", 0, 0, 0, 1, 2, 2, 1, 1},
    {"random:5:9:12887", 3, 2, 2, 4, 4, 4, 4, 4},
    {"random:4:3:343878", 1, 1, 1, 2, 2, 2, 2, 2},
    {"random:5:14:557245", 3, 3, 2, 4, 4, 4, 5, 5},
    {"random:5:12:371993", 3, 3, 2, 3, 4, 4, 4, 4},
    {"random:3:4:657266", 2, 2, 1, 2, 3, 3, 3, 3},
    {"random:5:9:418024", 3, 2, 2, 4, 4, 4, 4, 4},
    {"random:6:15:533095", 3, 3, 2, 4, 4, 4, 5, 5},
    {"random:3:2:172451", 1, 1, 1, 1, 2, 2, 2, 2},
    {"random:2:1:157877", 0, 0, 1, 1, 2, 2, 1, 1},
    {"random:2:3:375327", 1, 1, 1, 2, 2, 2, 2, 2},
    {"random:2:3:699657", 1, 1, 1, 2, 2, 2, 2, 2},
    {"random:5:7:851251", 2, 2, 2, 4, 4, 4, 4, 4},
    {"random:6:8:637682", 3, 2, 2, 5, 3, 3, 4, 4},
    {"random:6:15:456999", 3, 3, 2, 4, 5, 5, 5, 5},
    {"random:4:10:574453", 3, 3, 2, 3, 4, 4, 4, 4},
    {"random:5:15:756534", 3, 3, 2, 5, 4, 4, 4, 4},
    {"random:6:2:38356", 1, 1, 1, 1, 2, 2, 2, 2},
    {"random:4:12:951665", 3, 3, 2, 4, 3, 3, 4, 4},
    {"random:5:8:170931", 2, 2, 2, 3, 5, 5, 5, 5},
    {"random:2:1:301632", 0, 0, 0, 0, 2, 2, 1, 1},
    {"random:2:4:854349", 2, 2, 1, 2, 2, 2, 3, 3},
    {"random:5:6:32130", 2, 2, 2, 4, 4, 4, 4, 4},
    {"random:6:8:518463", 3, 2, 2, 4, 5, 5, 5, 5},
    {"random:4:11:714233", 3, 3, 2, 3, 4, 4, 4, 4},
    {"random:6:10:600888", 3, 3, 2, 5, 4, 4, 4, 4},
    {"random:3:1:759848", 0, 0, 1, 1, 2, 2, 1, 1},
    {"random:2:1:349531", 0, 0, 1, 1, 2, 2, 1, 1},
    {"random:2:2:819729", 1, 1, 1, 2, 2, 2, 2, 2},
    {"random:4:10:165599", 3, 3, 2, 4, 4, 4, 4, 4},
    {"random:4:16:711210", 4, 4, 2, 4, 2, 2, 5, 5},
    {"random:3:8:679624", 3, 3, 1, 3, 2, 2, 4, 4},
    {"random:3:2:100015", 1, 1, 1, 2, 2, 2, 2, 2},
    {"random:2:2:939141", 1, 1, 0, 1, 2, 2, 2, 2},
    {"random:5:13:666564", 3, 3, 2, 4, 4, 4, 5, 5},
    {"random:3:5:543095", 2, 2, 1, 3, 3, 3, 3, 3},
    {"random:4:9:965163", 3, 2, 2, 4, 4, 4, 4, 4},
    {"random:2:2:56640", 1, 1, 1, 1, 2, 2, 2, 2},
    {"random:3:6:781732", 2, 2, 1, 2, 3, 3, 3, 3},
    {"random:3:8:81083", 3, 3, 1, 3, 2, 2, 4, 4},
    {"random:3:4:910975", 2, 1, 1, 3, 2, 2, 3, 3},
    {"random:5:12:433714", 3, 3, 2, 5, 3, 3, 4, 4},
};

ConceptClass with_zero(const ConceptClass& c) {
  const Concept z(0, c.domain_size());
  return c.with(std::span<const Concept>(&z, 1));
}

}  // namespace

TEST(Littlestone, Examples) {
  EXPECT_EQ(ldim(ConceptClass::empty(3)), -1);
  EXPECT_EQ(ldim(make_class({{1, 0, 1}})), 0);
  EXPECT_EQ(ldim(singletons(3)), 1);
  EXPECT_EQ(ldim(powerset(2)), 2);
}

TEST(Vc, Examples) {
  for (int d = 1; d <= 4; ++d) EXPECT_EQ(vcdim(powerset(d)), d);
  EXPECT_EQ(vcdim(singletons(3)), 1);
  EXPECT_EQ(vcdim(thresholds(4)), 1);
}

TEST(DualVc, Examples) {
  EXPECT_EQ(dual_vcdim(singletons(3)), 1);
  EXPECT_EQ(dual_vcdim(powerset(2)), 1);
  EXPECT_EQ(dual_vcdim(powerset(4)), 2);
}

TEST(DualHelly, Examples) {
  const ConceptClass s3 = singletons(3);
  EXPECT_EQ(dual_helly(s3, s3).value, 3);
  EXPECT_EQ(dual_helly(s3, with_zero(s3)).value, 2);
  EXPECT_EQ(dual_helly(powerset(2), powerset(2)).value, 2);
  const DualHellyResult one = dual_helly(make_class({{1, 0}}), make_class({{1, 0}}));
  EXPECT_EQ(one.value, 2);
  EXPECT_TRUE(one.trivial_class);
}

TEST(DualHelly, InfiniteWhenHMissesARealizableSet) {
  // H cannot fit the label 1 at instance 0, which C can.
  const ConceptClass c = make_class({{1, 0}, {0, 1}});
  const ConceptClass h = make_class({{0, 1}});
  EXPECT_EQ(dual_helly(c, h).value, kUnbounded);
  EXPECT_EQ(oracle::dual_helly_brute(c, h), kUnbounded);
}

TEST(ThresholdDim, Examples) {
  EXPECT_EQ(threshold_dim(thresholds(4)), 4);
  EXPECT_EQ(threshold_dim(singletons(3)), 1);
  EXPECT_EQ(threshold_dim(make_class({{0, 0, 0}})), 0);
}

TEST(MistakeBound, Examples) {
  const ConceptClass s3 = singletons(3);
  EXPECT_EQ(mb_exact(s3, s3).value, 2);
  const MistakeBoundResult zero = mb_exact(s3, with_zero(s3));
  EXPECT_EQ(zero.value, 1);
  ASSERT_TRUE(zero.optimal_first_hypothesis);
  EXPECT_EQ(zero.optimal_first_hypothesis->to_string(), "000");
  EXPECT_EQ(mb_exact(powerset(2), powerset(2)).value, 2);
}

TEST(MistakeBound, SelfLoopIsUnbounded) {
  // The only hypothesis errs on (0, 1) forever without shrinking {10}.
  EXPECT_EQ(mb_exact(make_class({{1, 0}}), make_class({{0, 0}})).value, kUnbounded);
}

TEST(MistakeBound, StateCapThrows) {
  MistakeBoundOptions tiny;
  tiny.max_states = 1;
  EXPECT_THROW(mb_exact(powerset(3), powerset(3), tiny), CapExceeded);
}

TEST(EqQueries, Examples) {
  const ConceptClass s3 = singletons(3);
  EXPECT_EQ(eq_query_complexity(s3, s3), 3);
  EXPECT_EQ(eq_query_complexity(make_class({{0, 1, 1}}), with_zero(make_class({{0, 1, 1}}))), 1);
  EXPECT_EQ(eq_query_complexity(powerset(2), powerset(2)), 3);
}

TEST(DimensionReport, CsvRow) {
  EXPECT_EQ(DimensionReport::csv_header(), "ldim,vcdim,dual_vcdim,dual_helly,threshold_dim,dual_helly_trivial");
  EXPECT_EQ(dimension_report(singletons(3)).csv_row(), "1,1,1,3,1,0");
  EXPECT_EQ(count_to_string(kUnbounded), "inf");
}

TEST(Frozen, FixtureClassesMatchRecordedOracleValues) {
  const auto fixtures = fixture_classes();
  ASSERT_EQ(fixtures.size(), std::size(kFrozen));
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto& f = fixtures[i];
    const Frozen& want = kFrozen[i];
    SCOPED_TRACE(f.name);
    ASSERT_EQ(f.name, want.name);
    EXPECT_EQ(ldim(f.c), want.ldim);
    EXPECT_EQ(vcdim(f.c), want.vcdim);
    EXPECT_EQ(dual_vcdim(f.c), want.dual_vcdim);
    EXPECT_EQ(threshold_dim(f.c), want.threshold_dim);
    EXPECT_EQ(dual_helly(f.c, f.c).value, want.helly_self);
    EXPECT_EQ(dual_helly(f.c, with_zero(f.c)).value, want.helly_zero);
    EXPECT_EQ(eq_query_complexity(f.c, f.c), want.eq_self);
    EXPECT_EQ(eq_query_complexity(f.c, with_zero(f.c)), want.eq_zero);
  }
}

TEST(Oracles, AgreeWithLibraryOnExhaustiveSmallClasses) {
  for (const auto& f : exhaustive_small_classes(3, 6)) {
    SCOPED_TRACE(f.name);
    EXPECT_EQ(ldim(f.c), oracle::ldim_tree(f.c));
    EXPECT_EQ(vcdim(f.c), oracle::vcdim_brute(f.c));
    EXPECT_EQ(dual_vcdim(f.c), oracle::dual_vcdim_brute(f.c));
    EXPECT_EQ(threshold_dim(f.c), oracle::threshold_dim_brute(f.c));
    EXPECT_EQ(dual_helly(f.c, f.c).value, oracle::dual_helly_brute(f.c, f.c));
    EXPECT_EQ(eq_query_complexity(f.c, f.c), oracle::eq_queries_brute(f.c, f.c));
  }
}
