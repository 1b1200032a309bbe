#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "mathns/error.hpp"
#include "mathns/evalns.hpp"
#include "mathns/extraction.hpp"
#include "mathns/fuzzy.hpp"
#include "mathns/stemmer.hpp"

namespace mathns {

struct ScoredDefinition {
  std::string definition;
  double score = 0;
};

/// identifier key -> definitions with summed scores, ordered by definition.
using MergedDefinitions = std::map<std::string, std::vector<ScoredDefinition>>;

inline MergedDefinitions merge_exact(const std::vector<Relation>& pairs) {
  std::map<std::string, std::map<std::string, double>> sums;
  for (const auto& r : pairs) sums[r.identifier.key()][r.definition] += r.score;
  MergedDefinitions out;
  for (const auto& [id, defs] : sums)
    for (const auto& [def, s] : defs) out[id].push_back({def, s});
  return out;
}

struct DefinitionGroup {
  std::string label;  ///< highest-scoring member
  std::vector<std::string> members;
  double score = 0;
};

using GroupedDefinitions = std::map<std::string, std::vector<DefinitionGroup>>;

/// Greedy grouping per identifier: definitions are visited by score desc
/// (ties by text) and join the first group whose label has token-set ratio
/// ≥ threshold, otherwise start a new group.
inline GroupedDefinitions merge_fuzzy(const MergedDefinitions& merged, double ratio_threshold,
                                      const Stemmer& stemmer = SuffixStemmer()) {
  GroupedDefinitions out;
  for (const auto& [id, defs] : merged) {
    std::vector<ScoredDefinition> order = defs;
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      return a.score != b.score ? a.score > b.score : a.definition < b.definition;
    });
    auto& groups = out[id];
    for (const auto& d : order) {
      auto it = std::find_if(groups.begin(), groups.end(), [&](const DefinitionGroup& g) {
        return fuzzy::token_set_ratio(g.label, d.definition, stemmer) >= ratio_threshold;
      });
      if (it == groups.end()) {
        groups.push_back({d.definition, {d.definition}, d.score});
      } else {
        it->members.push_back(d.definition);
        it->score += d.score;
      }
    }
  }
  return out;
}

inline double squash_score(double raw) {
  if (raw < 0) throw DomainError("raw score must be nonnegative");
  return std::tanh(raw / 2.0);
}

struct NamespaceEntry {
  Identifier identifier;
  std::string definition;
  double score = 0;      ///< squashed
  double raw_score = 0;  ///< group sum before squashing
};

struct Namespace {
  std::string name;
  int cluster_id = 0;
  std::vector<NamespaceEntry> entries;  ///< one per identifier, by key
  std::vector<std::string> docs;
};

/// Per identifier, the best group by summed score (ties to the smaller
/// label), squashed with tanh(x/2).
inline std::vector<NamespaceEntry> select_definitions(const GroupedDefinitions& grouped) {
  std::vector<NamespaceEntry> out;
  for (const auto& [id, groups] : grouped) {
    if (groups.empty()) continue;
    const DefinitionGroup* best = &groups.front();
    for (const auto& g : groups)
      if (g.score > best->score || (g.score == best->score && g.label < best->label)) best = &g;
    out.push_back({identifier_from_key(id), best->label, squash_score(best->score), best->score});
  }
  return out;
}

struct NamespaceOptions {
  double fuzzy_threshold = 0.85;
};

/// merge_exact → merge_fuzzy → best group per identifier → squash, over the
/// relations of `cluster_docs`. The name is the majority category.
inline Namespace build_namespace(const std::vector<std::string>& cluster_docs, const std::vector<Relation>& relations,
                                 const Labels& labels, int cluster_id = 0, const NamespaceOptions& opt = {},
                                 const Stemmer& stemmer = SuffixStemmer()) {
  const std::unordered_set<std::string> members(cluster_docs.begin(), cluster_docs.end());
  std::vector<Relation> mine;
  for (const auto& r : relations)
    if (members.count(r.doc_id)) mine.push_back(r);
  if (mine.empty()) throw NoRelationsInCluster("cluster " + std::to_string(cluster_id) + " has no relations");
  Namespace ns;
  ns.cluster_id = cluster_id;
  ns.docs = cluster_docs;
  ns.name = cluster_docs.empty() ? std::string() : cluster_purity(cluster_docs, labels).category;
  ns.entries = select_definitions(merge_fuzzy(merge_exact(mine), opt.fuzzy_threshold, stemmer));
  return ns;
}

inline nlohmann::ordered_json to_json(const Namespace& ns) {
  nlohmann::ordered_json j;
  j["name"] = ns.name;
  j["cluster_id"] = ns.cluster_id;
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : ns.entries) {
    entries.push_back({{"identifier", e.identifier.base},
                       {"subscript", e.identifier.subscript ? nlohmann::ordered_json(*e.identifier.subscript)
                                                            : nlohmann::ordered_json()},
                       {"definition", e.definition},
                       {"score", e.score}});
  }
  j["docs"] = ns.docs;
  return j;
}

// ---------------------------------------------------------------------------
// Hierarchy mapping
// ---------------------------------------------------------------------------

struct HierarchyCategory {
  std::string top;
  std::string second;
  std::set<std::string> keywords;  ///< lowercased, stemmed, deduped
};

struct HierarchyScheme {
  std::vector<HierarchyCategory> categories;
};

/// Stemmed content tokens of free text: alphanumeric runs of length ≥ 2,
/// stopwords removed.
inline std::set<std::string> keyword_set(std::string_view text, const Stemmer& stemmer) {
  std::set<std::string> out;
  for (auto& t : fuzzy::stemmed_tokens(text, stemmer))
    if (t.size() >= 2) out.insert(std::move(t));
  return out;
}

/// Parses a JSON list of {top, second, keywords: [...]}.
inline HierarchyScheme parse_hierarchy(const nlohmann::json& j, const Stemmer& stemmer = SuffixStemmer()) {
  if (!j.is_array()) throw ParseError("hierarchy must be a JSON list");
  HierarchyScheme scheme;
  for (const auto& c : j) {
    try {
      HierarchyCategory cat;
      cat.top = c.at("top").get<std::string>();
      cat.second = c.at("second").get<std::string>();
      for (const auto& k : c.at("keywords")) {
        auto ks = keyword_set(k.get<std::string>(), stemmer);
        cat.keywords.insert(ks.begin(), ks.end());
      }
      scheme.categories.push_back(std::move(cat));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad hierarchy entry: ") + e.what());
    }
  }
  return scheme;
}

struct HierarchyMatch {
  bool others = true;
  std::string top = "OTHERS";
  std::string second;
  double cosine = 0;
  std::size_t matched = 0;
};

/// Keywords of a namespace: its name, its members' categories and titles.
inline std::set<std::string> namespace_keywords(const Namespace& ns, const Labels& labels,
                                                const std::map<std::string, std::string>& titles,
                                                const Stemmer& stemmer = SuffixStemmer()) {
  std::set<std::string> out = keyword_set(ns.name, stemmer);
  for (const auto& d : ns.docs) {
    if (const auto it = labels.find(d); it != labels.end()) {
      auto ks = keyword_set(it->second, stemmer);
      out.insert(ks.begin(), ks.end());
    }
    if (const auto it = titles.find(d); it != titles.end()) {
      auto ks = keyword_set(it->second, stemmer);
      out.insert(ks.begin(), ks.end());
    }
  }
  return out;
}

/// Binary cosine |A∩B| / sqrt(|A|·|B|).
inline double keyword_cosine(const std::set<std::string>& a, const std::set<std::string>& b, std::size_t* matched = nullptr) {
  std::size_t common = 0;
  for (const auto& k : a) common += b.count(k);
  if (matched) *matched = common;
  if (a.empty() || b.empty()) return 0.0;
  return static_cast<double>(common) / std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

/// Best category by keyword cosine (ties to the earlier category); OTHERS
/// when the cosine is below `min_cos` or fewer than `min_matches` keywords
/// are shared.
inline HierarchyMatch map_to_hierarchy(const std::set<std::string>& keywords, const HierarchyScheme& scheme,
                                       double min_cos = 0.2, std::size_t min_matches = 2) {
  if (scheme.categories.empty()) throw EmptyScheme("hierarchy scheme has no categories");
  HierarchyMatch best;
  best.cosine = -1;
  const HierarchyCategory* arg = nullptr;
  for (const auto& c : scheme.categories) {
    std::size_t matched = 0;
    const double cos = keyword_cosine(keywords, c.keywords, &matched);
    if (cos > best.cosine) {
      best.cosine = cos;
      best.matched = matched;
      arg = &c;
    }
  }
  if (best.cosine >= min_cos && best.matched >= min_matches) {
    best.others = false;
    best.top = arg->top;
    best.second = arg->second;
  }
  return best;
}

}  // namespace mathns
