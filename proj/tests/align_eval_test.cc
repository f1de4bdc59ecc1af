// Copyright 2026 The Polyname Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polyname/align_eval.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "oracles.h"
#include "polyname/unicode.h"

namespace polyname {
namespace {

std::vector<std::pair<int, int>> Edges(const AlignmentGraph &g) {
  return {g.edges().begin(), g.edges().end()};
}

AlignmentGraph Reversal(int n) {
  AlignmentGraph g;
  for (int i = 0; i < n; ++i) g.AddEdge(i, n - 1 - i);
  return g;
}

TEST(CrossingCountTest, Examples) {
  EXPECT_EQ(CrossingCount({{0, 0}, {1, 1}}), 0u);
  EXPECT_EQ(CrossingCount({{0, 1}, {1, 0}}), 1u);
  AlignmentGraph reversal = Reversal(4);
  EXPECT_EQ(oracle::BruteForceCrossings(Edges(reversal)), 6u);
  EXPECT_EQ(CrossingCount(reversal), 6u);
  EXPECT_EQ(CrossingCount({}), 0u);
}

TEST(CrossingCountTest, ReversalsMatchClosedForm) {
  for (int n = 1; n <= 8; ++n) {
    uint64_t expected = static_cast<uint64_t>(n) * (n - 1) / 2;
    EXPECT_EQ(oracle::BruteForceCrossings(Edges(Reversal(n))), expected);
    EXPECT_EQ(CrossingCount(Reversal(n)), expected);
  }
}

TEST(CrossingCountTest, RandomGraphsMatchPairEnumeration) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    AlignmentGraph g;
    int n = rng() % 8, m = 1 + rng() % 8;
    for (int e = rng() % 12; e > 0; --e) g.AddEdge(rng() % std::max(n, 1), rng() % m);
    ASSERT_EQ(CrossingCount(g), oracle::BruteForceCrossings(Edges(g)));
  }
}

TEST(CrossingCountTest, OneToOneAlignmentsCountInversions) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> perm(1 + rng() % 8);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    AlignmentGraph g, shifted;
    uint64_t inversions = 0;
    for (size_t i = 0; i < perm.size(); ++i) {
      g.AddEdge(static_cast<int>(i), perm[i]);
      // Order-preserving relabeling of both sides.
      shifted.AddEdge(static_cast<int>(3 * i + 1), 2 * perm[i] + 5);
      for (size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    }
    ASSERT_EQ(CrossingCount(g), inversions);
    ASSERT_EQ(CrossingCount(shifted), inversions);
  }
}

TEST(ParseAlignmentsTest, Examples) {
  AlignmentGraph g;
  ASSERT_TRUE(ParseAlignmentLine("0-1 1-0", g));
  EXPECT_EQ(g, (AlignmentGraph{{0, 1}, {1, 0}}));
  AlignmentGraph empty;
  ASSERT_TRUE(ParseAlignmentLine("", empty));
  EXPECT_TRUE(empty.empty());
  AlignmentGraph dup;
  ASSERT_TRUE(ParseAlignmentLine("0-0 0-0 1-1", dup));
  EXPECT_EQ(dup, (AlignmentGraph{{0, 0}, {1, 1}}));
}

TEST(ParseAlignmentsTest, MalformedLinesAreCountedAndSkipped) {
  std::istringstream in("0-0 1-1\n0-x\n\n1-0 0-1\n-1-2\n");
  AlignmentParseStats stats;
  std::vector<AlignmentGraph> graphs = ParseAlignments(in, &stats);
  ASSERT_EQ(graphs.size(), 5u);
  EXPECT_EQ(stats.lines, 5u);
  EXPECT_EQ(stats.malformed, 2u);
  EXPECT_TRUE(graphs[1].empty());
  EXPECT_EQ(CrossingCount(graphs[3]), 1u);
}

TEST(MeanCrossingAlignmentsTest, Averages) {
  auto mca = MeanCrossingAlignments({"ru", "ru", "uk", "uk"},
                                    {{{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}, Reversal(2), Reversal(3)});
  EXPECT_DOUBLE_EQ(mca["ru"].mca, 0.0);
  EXPECT_DOUBLE_EQ(mca["uk"].mca, 2.0);
  EXPECT_EQ(McaReportTsv(mca), "language\tname_count\tmca\nru\t2\t0.000000\nuk\t2\t2.000000\n");
}

TEST(MeanCrossingAlignmentsTest, UnalignedNamesAreExcludedAndCounted) {
  auto mca = MeanCrossingAlignments({"kv", "kv", "xx"}, {Reversal(2), {}, {}});
  EXPECT_EQ(mca["kv"].names, 1u);
  EXPECT_EQ(mca["kv"].unaligned, 1u);
  EXPECT_DOUBLE_EQ(mca["kv"].mca, 1.0);
  EXPECT_FALSE(mca.contains("xx"));
}

TEST(MeanCrossingAlignmentsTest, ReversedFixtureScoresHigherThanCorrected) {
  std::vector<std::string> languages(6, "ru");
  std::vector<AlignmentGraph> reversed, corrected;
  for (int i = 0; i < 6; ++i) {
    int n = 2 + i % 3;
    reversed.push_back(i % 2 == 0 ? Reversal(n) : Reversal(1));
    AlignmentGraph monotone;
    for (int k = 0; k < n; ++k) monotone.AddEdge(k, k);
    corrected.push_back(monotone);
  }
  EXPECT_GT(MeanCrossingAlignments(languages, reversed)["ru"].mca,
            MeanCrossingAlignments(languages, corrected)["ru"].mca);
}

TEST(McaHistogramTest, Bins) {
  std::map<std::string, LanguageMca> mca{{"a", {1, 0, 0.0}}, {"b", {1, 0, 0.3}}, {"c", {1, 0, 0.6}}};
  auto bins = McaHistogram(mca, 0.25);
  ASSERT_EQ(bins.size(), 3u);
  EXPECT_EQ(bins[0].languages, 1u);
  EXPECT_EQ(bins[1].languages, 1u);
  EXPECT_EQ(bins[2].languages, 1u);
  EXPECT_EQ(HistogramTsv(bins).rfind("bin_low\tbin_high\tlanguage_count\n0.0000\t0.2500\t1\n", 0), 0u);
  EXPECT_THROW(McaHistogram(mca, 0.0), std::invalid_argument);
}

TEST(LcsF1Test, Examples) {
  EXPECT_DOUBLE_EQ(LcsF1("Joe Biden", "Joe Biden"), 1.0);
  EXPECT_NEAR(LcsF1("ab", "abc"), oracle::ExhaustiveLcsF1(U"ab", U"abc"), 1e-12);
  EXPECT_NEAR(LcsF1("ab", "abc"), 0.8, 1e-12);
  EXPECT_EQ(LcsF1("xyz", "abc"), 0.0);
  EXPECT_EQ(LcsF1("", "abc"), 0.0);
  EXPECT_THROW(LcsF1("abc", ""), std::invalid_argument);
}

TEST(LcsF1Test, RandomPairsMatchExhaustiveOracle) {
  std::mt19937 rng(10);
  const char32_t kAlphabet[] = {U'a', U'b', U'c', U'ж'};
  for (int trial = 0; trial < 1000; ++trial) {
    std::u32string a, b;
    for (int n = rng() % 9; n > 0; --n) a.push_back(kAlphabet[rng() % 4]);
    for (int n = 1 + rng() % 8; n > 0; --n) b.push_back(kAlphabet[rng() % 4]);
    ASSERT_EQ(LcsLength(a, b), oracle::ExhaustiveLcs(a, b));
    double f1 = LcsF1(EncodeUtf8(a), EncodeUtf8(b));
    ASSERT_NEAR(f1, oracle::ExhaustiveLcsF1(a, b), 1e-12);
    ASSERT_GE(f1, 0.0);
    ASSERT_LE(f1, 1.0);
    ASSERT_EQ(f1 == 1.0, a == b);
  }
}

TEST(GoldTest, ParsesFourAndFiveColumns) {
  auto gold = ParseGold("# header\nru\tБайден Джо\tДжо Байден\t1\tJoe Biden\nuk\ta b\ta b\t0\n");
  ASSERT_EQ(gold.size(), 2u);
  EXPECT_TRUE(gold[0].needs_reordering);
  EXPECT_EQ(gold[0].english, "Joe Biden");
  EXPECT_EQ(gold[1].english, "");
  EXPECT_THROW(ParseGold("ru\ta b\tb a\tyes\n"), std::exception);
  EXPECT_THROW(ParseGold("ru\ta b\n"), std::exception);
}

TEST(GoldTest, ShippedSeedIsConsistent) {
  auto gold = LoadGold(std::string(POLYNAME_SOURCE_DATA) + "/gold/reorder_seed.tsv");
  EXPECT_GE(gold.size(), 20u);
  for (const auto &g : gold) EXPECT_EQ(g.needs_reordering, g.input != g.gold) << g.input;
}

std::vector<GoldExample> HalfReversedGold() {
  return {{"ru", "Байден Джо", "Джо Байден", true, "Joe Biden"},
          {"ru", "Джо Байден", "Джо Байден", false, "Joe Biden"}};
}

TEST(EvaluateReorderingTest, PerfectSystem) {
  auto gold = HalfReversedGold();
  auto scores = EvaluateReordering({"Джо Байден", "Джо Байден"}, gold);
  EXPECT_DOUBLE_EQ(scores.accuracy, 100.0);
  EXPECT_DOUBLE_EQ(scores.mean_f1, 100.0);
  EXPECT_DOUBLE_EQ(scores.precision, 100.0);
  EXPECT_DOUBLE_EQ(scores.recall, 100.0);
}

TEST(EvaluateReorderingTest, NoActionBaseline) {
  auto gold = HalfReversedGold();
  auto scores = EvaluateReordering({"Байден Джо", "Джо Байден"}, gold);
  EXPECT_EQ(FormatPercent(scores.accuracy), "50.0");
  EXPECT_DOUBLE_EQ(scores.recall, 0.0);
  EXPECT_THROW(EvaluateReordering({"x"}, gold), std::invalid_argument);
}

}  // namespace
}  // namespace polyname
