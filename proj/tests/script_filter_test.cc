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

#include "polyname/script_filter.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <unicode/uchar.h>
#include <unicode/uscript.h>

#include "polyname/error.h"
#include "polyname/unicode.h"

namespace polyname {
namespace {

ScriptTag Tag(const char *name) { return *ScriptTag::Parse(name); }

// Direct evaluation of -sum p log2 p.
double ReferenceEntropy(const std::vector<double> &counts) {
  double total = 0;
  for (double c : counts) total += c;
  double h = 0;
  for (double c : counts) {
    if (c > 0) h -= (c / total) * std::log2(c / total);
  }
  return h;
}

TypedName Name(const std::string &language, const std::string &label) {
  return TypedName{Qid(1), language, label, EntityTypeSet{EntityType::kPer}};
}

TEST(ScriptTagTest, ParsesLongAndShortNames) {
  EXPECT_EQ(Tag("Cyrillic"), Tag("Cyrl"));
  EXPECT_EQ(Tag("Latin").name(), "Latin");
  EXPECT_FALSE(ScriptTag::Parse("Klingonish"));
  EXPECT_TRUE(ScriptTag::Common().excluded_from_majority());
  EXPECT_TRUE(Tag("Inherited").excluded_from_majority());
}

TEST(MajorityScriptTest, Examples) {
  EXPECT_EQ(MajorityScript("Джо Байден").name(), "Cyrillic");
  EXPECT_EQ(MajorityScript("Canada").name(), "Latin");
  EXPECT_EQ(MajorityScript("123 - !").name(), "Common");
  EXPECT_THROW(MajorityScript(""), std::invalid_argument);
}

TEST(MajorityScriptTest, MixedNameAgreesWithCodepointCount) {
  // Count Script values one codepoint at a time straight from ICU.
  std::map<int, int> counts;
  for (char32_t c : DecodeUtf8("Ab Вгд")) {
    UErrorCode status = U_ZERO_ERROR;
    int code = uscript_getScript(static_cast<UChar32>(c), &status);
    if (code != USCRIPT_COMMON && code != USCRIPT_INHERITED && code != USCRIPT_UNKNOWN) {
      ++counts[code];
    }
  }
  EXPECT_EQ(counts[USCRIPT_CYRILLIC], 3);
  EXPECT_EQ(counts[USCRIPT_LATIN], 2);
  EXPECT_EQ(MajorityScript("Ab Вгд").name(), "Cyrillic");
}

TEST(MajorityScriptTest, TieGoesToEarliestCodepoint) {
  EXPECT_EQ(MajorityScript("Ab Вг").name(), "Latin");
  EXPECT_EQ(MajorityScript("Вг Ab").name(), "Cyrillic");
}

TEST(MajorityScriptTest, InvariantUnderAppendingCommonCharacters) {
  std::mt19937 rng(3);
  const char *kBases[] = {"Canada", "Джо", "王丽娜", "Ab Вгд", "ﺏﺕ", "Αθήνα"};
  const char *kCommon[] = {" ", "1", "-", ".", "!", "  42", ","};
  for (int trial = 0; trial < 500; ++trial) {
    std::string base = kBases[rng() % 6];
    std::string extended = base;
    for (int n = 1 + rng() % 5; n > 0; --n) extended += kCommon[rng() % 7];
    EXPECT_EQ(MajorityScript(extended), MajorityScript(base)) << extended;
  }
}

TEST(ScriptEntropyTest, FrozenValues) {
  ScriptProfile single;
  single.Add(Tag("Cyrillic"), 100);
  EXPECT_EQ(ScriptEntropy(single), 0.0);

  ScriptProfile half;
  half.Add(Tag("Cyrillic"), 50);
  half.Add(Tag("Latin"), 50);
  EXPECT_DOUBLE_EQ(ScriptEntropy(half), 1.0);

  ScriptProfile skewed;
  skewed.Add(Tag("Cyrillic"), 90);
  skewed.Add(Tag("Latin"), 10);
  EXPECT_NEAR(ScriptEntropy(skewed), 0.4690, 1e-3);
  EXPECT_NEAR(ScriptEntropy(skewed), ReferenceEntropy({90, 10}), 1e-12);

  EXPECT_THROW(ScriptEntropy(ScriptProfile{}), std::invalid_argument);
}

TEST(ScriptEntropyTest, RandomProfilesMatchReference) {
  std::mt19937 rng(17);
  const char *kScripts[] = {"Latin", "Cyrillic", "Han", "Arabic", "Greek"};
  for (int trial = 0; trial < 500; ++trial) {
    ScriptProfile profile;
    std::vector<double> counts;
    for (const char *s : kScripts) {
      uint64_t c = rng() % 3 == 0 ? 0 : rng() % 1000;
      if (c > 0) profile.Add(Tag(s), c);
      counts.push_back(static_cast<double>(c));
    }
    if (profile.empty()) continue;
    double h = ScriptEntropy(profile);
    EXPECT_GE(h, 0.0);
    EXPECT_NEAR(h, ReferenceEntropy(counts), 1e-9);
    EXPECT_EQ(h == 0.0, profile.counts().size() == 1);
  }
}

TEST(AllowedScriptsTest, ParsesTsvWithComments) {
  AllowedScripts allowed = AllowedScripts::Parse("# lang\tscripts\nru\tCyrillic\nky\tCyrillic,Arabic\n\n");
  EXPECT_EQ(allowed.size(), 2u);
  EXPECT_EQ(allowed.Find("ky")->size(), 2u);
  EXPECT_EQ(allowed.Find("de"), nullptr);
  EXPECT_THROW(AllowedScripts::Parse("ru\tCyrillicc\n"), ConfigError);
}

TEST(AllowedScriptsTest, ShippedListLoads) {
  AllowedScripts allowed = AllowedScripts::Load(std::string(POLYNAME_SOURCE_DATA) + "/allowed_scripts.tsv");
  ASSERT_NE(allowed.Find("ru"), nullptr);
  EXPECT_TRUE(allowed.Find("ru")->contains(Tag("Cyrillic")));
  EXPECT_TRUE(allowed.Find("ky")->contains(Tag("Arabic")));
}

TEST(FilterNamesTest, Examples) {
  AllowedScripts allowed = AllowedScripts::Parse("ru\tCyrillic\nky\tCyrillic,Arabic\n");
  std::vector<TypedName> names = {Name("ru", "Canada"), Name("ru", "Джо Байден"),
                                  Name("ky", "قىرعىز"), Name("xx", "Anything")};
  FilterResult result = FilterNames(names, allowed);
  ASSERT_EQ(result.removed.size(), 1u);
  EXPECT_EQ(result.removed[0].label, "Canada");
  ASSERT_EQ(result.kept.size(), 3u);
  EXPECT_EQ(result.kept[0].label, "Джо Байден");

  ScriptFilter filter(allowed);
  EXPECT_TRUE(filter.Keep(Name("xx", "Anything")));
  EXPECT_EQ(filter.unlisted_languages(), std::set<std::string>{"xx"});
}

TEST(FilterNamesTest, PartitionIsExactAndSingletonSetsReachZeroEntropy) {
  std::mt19937 rng(8);
  const char *kLabels[] = {"Canada", "Джо", "王", "Αθήνα", "Ab Вгд", "123"};
  const char *kLanguages[] = {"ru", "en", "el", "zh", "xx"};
  AllowedScripts allowed =
      AllowedScripts::Parse("ru\tCyrillic\nen\tLatin\nel\tGreek\nzh\tHan\n");
  std::vector<TypedName> names;
  for (int i = 0; i < 2000; ++i) names.push_back(Name(kLanguages[rng() % 5], kLabels[rng() % 6]));
  FilterResult result = FilterNames(names, allowed);
  EXPECT_EQ(result.kept.size() + result.removed.size(), names.size());

  std::map<std::string, ScriptProfile> before, after;
  for (const auto &n : names) before[n.language].AddName(n.label, ProfileGranularity::kName);
  for (const auto &n : result.kept) after[n.language].AddName(n.label, ProfileGranularity::kName);
  for (const char *lang : {"ru", "en", "el", "zh"}) {
    EXPECT_GT(ScriptEntropy(before[lang]), 0.0);
    EXPECT_EQ(ScriptEntropy(after[lang]), 0.0) << lang;
  }
}

TEST(EntropyReportTest, MacroAverages) {
  std::map<std::string, ScriptProfile> before, after;
  before["aa"].Add(Tag("Latin"), 5);
  before["aa"].Add(Tag("Cyrillic"), 5);
  after["aa"].Add(Tag("Latin"), 5);
  before["bb"].Add(Tag("Cyrillic"), 4);
  after["bb"].Add(Tag("Cyrillic"), 4);
  EntropyReport report = BuildEntropyReport(before, after);
  EXPECT_DOUBLE_EQ(report.mean_before, 0.5);
  EXPECT_DOUBLE_EQ(report.mean_after, 0.0);
  std::string tsv = report.ToTsv("14.0", ProfileGranularity::kName);
  EXPECT_NE(tsv.find("entropy_base=2"), std::string::npos);
  EXPECT_NE(tsv.find("unicode_version=14.0"), std::string::npos);
  EXPECT_NE(tsv.find("MACRO_AVG\t0.5"), std::string::npos) << tsv;
}

TEST(EntropyReportTest, EmptiedLanguageIsFlagged) {
  std::map<std::string, ScriptProfile> before, after;
  before["ru"].Add(Tag("Latin"), 3);
  EntropyReport report = BuildEntropyReport(before, after);
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_TRUE(report.rows[0].emptied);
  EXPECT_EQ(report.rows[0].after, 0.0);
  EXPECT_EQ(report.rows[0].names_after, 0u);
}

TEST(ScriptProfileTest, CodepointGranularityCountsEachVotingCodepoint) {
  ScriptProfile profile;
  profile.AddName("Ab Вгд", ProfileGranularity::kCodepoint);
  EXPECT_EQ(profile.total(), 5u);
  EXPECT_EQ(profile.counts().at(Tag("Latin")), 2u);
  EXPECT_EQ(LinkedUnicodeVersion(), "14.0");
}

}  // namespace
}  // namespace polyname
