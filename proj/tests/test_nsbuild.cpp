#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace {

using namespace mathns;

// Edit distance with insert/delete cost 1 and substitution cost 2, so that
// the normalized similarity is 1 - dist/(|a|+|b|).
double indel_ratio(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 2)});
  return 1.0 - static_cast<double>(d[a.size()][b.size()]) / static_cast<double>(a.size() + b.size());
}

TEST(Fuzzy, RatioMatchesEditDistance) {
  const std::vector<std::string> words = {"", "variance", "varience", "population variance", "mean", "means", "kitten",
                                          "sitting", "abc", "cba"};
  for (const auto& a : words)
    for (const auto& b : words) EXPECT_NEAR(fuzzy::ratio(a, b), indel_ratio(a, b), 1e-15) << a << "|" << b;
}

TEST(Fuzzy, TokenSetRatio) {
  const SuffixStemmer s;
  EXPECT_DOUBLE_EQ(fuzzy::token_set_ratio("variance", "population variance", s), 1.0);
  EXPECT_DOUBLE_EQ(fuzzy::token_set_ratio("the estimator", "estimators", s), 1.0);
  EXPECT_LT(fuzzy::token_set_ratio("mean", "square error", s), 0.85);
  EXPECT_DOUBLE_EQ(fuzzy::token_set_ratio("mass", "mass", s), fuzzy::token_set_ratio("mass", "mass", s));
  const double ab = fuzzy::token_set_ratio("random sample", "sample size", s);
  EXPECT_DOUBLE_EQ(ab, fuzzy::token_set_ratio("sample size", "random sample", s));
}

TEST(MergeExact, SumsScores) {
  const auto merged = merge_exact(oracle::abc_relations());
  auto sum = [&](const std::string& k, const std::string& d) {
    for (const auto& x : merged.at(k))
      if (x.definition == d) return x.score;
    return -1.0;
  };
  EXPECT_NEAR(sum("theta", "estimator"), 0.98 + 0.93 + 0.93, 1e-12);
  EXPECT_NEAR(sum("theta", "unknown parameter"), 0.98 + 0.94, 1e-12);
  EXPECT_NEAR(sum("mu", "random variables"), 3 * 0.89, 1e-12);
  EXPECT_NEAR(sum("sigma", "variance"), 0.99 + 0.94, 1e-12);
}

TEST(MergeFuzzy, GroupsSubsetPhrases) {
  const auto groups = merge_fuzzy(merge_exact(oracle::abc_relations()), 0.85);
  const DefinitionGroup* var = nullptr;
  for (const auto& g : groups.at("sigma"))
    if (g.label == "variance") var = &g;
  ASSERT_NE(var, nullptr);
  EXPECT_EQ(var->members, (std::vector<std::string>{"variance", "population variance"}));
  EXPECT_NEAR(var->score, 3.70, 1e-12);
}

TEST(BuildNamespace, GoldenExample) {
  const Namespace ns = build_namespace({"A", "B", "C"}, oracle::abc_relations(), oracle::abc_labels());
  const auto want = oracle::abc_expected();
  EXPECT_EQ(ns.name, "Statistics");
  ASSERT_EQ(ns.entries.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(ns.entries[i].identifier.key(), want[i].key);
    EXPECT_EQ(ns.entries[i].definition, want[i].definition) << want[i].key;
    EXPECT_NEAR(ns.entries[i].raw_score, want[i].raw, 0.005) << want[i].key;
    EXPECT_NEAR(ns.entries[i].score, want[i].squashed, 0.005) << want[i].key;
  }
}

TEST(BuildNamespace, LiteralInputPicksMeanForMu) {
  // with "population" for mu in A and C, no group reaches 2.67
  const Namespace ns = build_namespace({"A", "B", "C"}, oracle::abc_relations(true), oracle::abc_labels());
  for (const auto& e : ns.entries)
    if (e.identifier.key() == "mu") EXPECT_NE(e.definition, "random variables");
}

TEST(BuildNamespace, OnlyClusterRelationsAndEmptyThrows) {
  const auto rels = oracle::abc_relations();
  const Namespace ns = build_namespace({"B"}, rels, oracle::abc_labels(), 4);
  EXPECT_EQ(ns.cluster_id, 4);
  for (const auto& e : ns.entries) EXPECT_NE(e.identifier.key(), "n");
  EXPECT_THROW(build_namespace({"Z"}, rels, oracle::abc_labels()), NoRelationsInCluster);
}

TEST(Squash, TanhHalf) {
  EXPECT_NEAR(squash_score(3.0), 0.905, 0.001);
  EXPECT_EQ(squash_score(0.0), 0.0);
  for (double x = 0; x < 10; x += 0.5) {
    EXPECT_LT(squash_score(x), squash_score(x + 0.5));
    EXPECT_LT(squash_score(x), 1.0);
  }
  EXPECT_THROW(squash_score(-1), DomainError);
}

TEST(Hierarchy, MapsByKeywordCosine) {
  const auto scheme = parse_hierarchy(nlohmann::json::parse(R"([
    {"top":"Physics","second":"Mechanics","keywords":["force mass velocity","motion"]},
    {"top":"Mathematics","second":"Statistics","keywords":["variance mean estimator"]}])"));
  ASSERT_EQ(scheme.categories.size(), 2u);
  Namespace ns;
  ns.name = "Statistics";
  ns.docs = {"a"};
  const auto kw = namespace_keywords(ns, {{"a", "Statistics"}}, {{"a", "Mean and variance"}});
  const auto m = map_to_hierarchy(kw, scheme);
  EXPECT_FALSE(m.others);
  EXPECT_EQ(m.second, "Statistics");
  EXPECT_EQ(m.matched, 2u);
  std::size_t matched = 0;
  EXPECT_NEAR(m.cosine, keyword_cosine(kw, scheme.categories[1].keywords, &matched), 1e-15);
  const auto none = map_to_hierarchy({"quantum"}, scheme);
  EXPECT_TRUE(none.others);
  EXPECT_EQ(none.top, "OTHERS");
  EXPECT_THROW(map_to_hierarchy(kw, HierarchyScheme{}), EmptyScheme);
  EXPECT_THROW(parse_hierarchy(nlohmann::json::object()), ParseError);
}

TEST(Hierarchy, KeywordCosineHand) {
  std::size_t m = 0;
  EXPECT_NEAR(keyword_cosine({"a", "b", "c"}, {"b", "c", "d", "e"}, &m), 2.0 / std::sqrt(12.0), 1e-15);
  EXPECT_EQ(m, 2u);
  EXPECT_EQ(keyword_cosine({}, {"a"}), 0.0);
}

TEST(Hierarchy, NineOfTwelveSharedGivesThreeQuarters) {
  std::set<std::string> a, b;
  for (int i = 0; i < 12; ++i) a.insert("k" + std::to_string(i));
  for (int i = 3; i < 15; ++i) b.insert("k" + std::to_string(i));
  std::size_t m = 0;
  EXPECT_NEAR(keyword_cosine(a, b, &m), 0.75, 1e-15);
  EXPECT_EQ(m, 9u);
}

TEST(Hierarchy, ToyLogicKeywordsMapToGeneralLogic) {
  const auto scheme = parse_hierarchy(artifacts::read_json(std::string(MATHNS_TOY_DIR) + "/hierarchy.json"));
  const auto m = map_to_hierarchy(keyword_set("logic axioms proof", SuffixStemmer()), scheme);
  EXPECT_FALSE(m.others);
  EXPECT_EQ(m.second, "General logic");
  EXPECT_GE(m.matched, 2u);
}

TEST(NamespaceJson, Fields) {
  const Namespace ns = build_namespace({"A", "B", "C"}, oracle::abc_relations(), oracle::abc_labels(), 2);
  const auto j = to_json(ns);
  EXPECT_EQ(j["name"], "Statistics");
  EXPECT_EQ(j["cluster_id"], 2);
  EXPECT_EQ(j["entries"][0]["identifier"], "P");
  EXPECT_EQ(j["entries"][0]["subscript"], "theta");
  EXPECT_EQ(j["docs"].size(), 3u);
}

}  // namespace
