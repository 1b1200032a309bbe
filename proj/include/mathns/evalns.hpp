#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mathns/assignment.hpp"
#include "mathns/error.hpp"
#include "mathns/rng.hpp"
#include "mathns/strings.hpp"

namespace mathns {

/// doc_id -> category. Missing or empty categories mean "unlabeled".
using Labels = std::unordered_map<std::string, std::string>;

/// Reads `doc_id<TAB>category` lines; `#` lines are comments.
inline Labels parse_labels(std::string_view tsv) {
  Labels out;
  for (const auto& line : str::parse_list_lines(tsv)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("labels line without a tab: '" + line + "'");
    out[std::string(str::trim(line.substr(0, tab)))] = std::string(str::trim(line.substr(tab + 1)));
  }
  return out;
}

struct PurityResult {
  double purity = 0;
  std::string category;  ///< majority category; empty if the winner is an unlabeled document
};

/// max_c count(c) / |members|. Each unlabeled member is its own category;
/// ties go to the lexicographically smallest real category.
inline PurityResult cluster_purity(const std::vector<std::string>& members, const Labels& labels) {
  if (members.empty()) throw EmptyCluster("purity of an empty cluster");
  std::map<std::string, std::size_t> counts;
  std::size_t best_unlabeled = 0;
  for (const auto& d : members) {
    const auto it = labels.find(d);
    if (it == labels.end() || it->second.empty()) {
      best_unlabeled = 1;
      continue;
    }
    ++counts[it->second];
  }
  PurityResult r;
  std::size_t best = 0;
  for (const auto& [cat, n] : counts) {
    if (n > best) {
      best = n;
      r.category = cat;
    }
  }
  if (best == 0) best = best_unlabeled;
  r.purity = static_cast<double>(best) / static_cast<double>(members.size());
  return r;
}

struct ClusterPurity {
  int cluster = 0;
  std::size_t size = 0;
  std::string category;
  double purity = 0;
};

struct PurityReport {
  std::vector<ClusterPurity> per_cluster;  ///< non-empty, non-noise clusters by id
  double overall = 0;                      ///< size-weighted, noise excluded
  std::size_t n_pure = 0;
  double noise_fraction = 0;
};

inline PurityReport purity_report(const ClusterAssignment& a, const std::vector<std::string>& doc_ids,
                                  const Labels& labels, double purity_threshold = 0.8, std::size_t min_size = 3) {
  if (doc_ids.size() != a.size()) throw LengthMismatch("assignment and doc id list differ in length");
  PurityReport rep;
  const auto clusters = a.clusters();
  double weighted = 0;
  std::size_t total = 0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].empty()) continue;
    std::vector<std::string> members;
    for (std::size_t i : clusters[c]) members.push_back(doc_ids[i]);
    const auto p = cluster_purity(members, labels);
    rep.per_cluster.push_back({static_cast<int>(c), members.size(), p.category, p.purity});
    weighted += p.purity * static_cast<double>(members.size());
    total += members.size();
    if (p.purity >= purity_threshold && members.size() >= min_size) ++rep.n_pure;
  }
  rep.overall = total ? weighted / static_cast<double>(total) : 0.0;
  rep.noise_fraction = a.size() ? static_cast<double>(a.noise_count()) / static_cast<double>(a.size()) : 0.0;
  return rep;
}

/// Clusters with purity ≥ threshold and size ≥ min_size, largest first,
/// then by cluster id.
inline std::vector<int> namespace_defining(const PurityReport& rep, double purity_threshold = 0.8,
                                           std::size_t min_size = 3) {
  std::vector<const ClusterPurity*> keep;
  for (const auto& c : rep.per_cluster)
    if (c.purity >= purity_threshold && c.size >= min_size) keep.push_back(&c);
  std::stable_sort(keep.begin(), keep.end(), [](const auto* x, const auto* y) { return x->size > y->size; });
  std::vector<int> out;
  for (const auto* c : keep) out.push_back(c->cluster);
  return out;
}

inline std::vector<int> namespace_defining(const ClusterAssignment& a, const std::vector<std::string>& doc_ids,
                                           const Labels& labels, double purity_threshold = 0.8,
                                           std::size_t min_size = 3) {
  return namespace_defining(purity_report(a, doc_ids, labels, purity_threshold, min_size), purity_threshold, min_size);
}

inline nlohmann::ordered_json to_json(const PurityReport& r) {
  nlohmann::ordered_json j;
  j["overall_purity"] = r.overall;
  j["namespace_defining"] = r.n_pure;
  j["noise_fraction"] = r.noise_fraction;
  auto& cl = j["clusters"] = nlohmann::ordered_json::array();
  for (const auto& c : r.per_cluster)
    cl.push_back({{"cluster", c.cluster}, {"size", c.size}, {"category", c.category}, {"purity", c.purity}});
  return j;
}

// ---------------------------------------------------------------------------
// Random baseline
// ---------------------------------------------------------------------------

struct BaselineSummary {
  std::size_t trials = 0;
  std::size_t min = 0;
  double mean = 0;
  std::size_t max = 0;
};

/// Pure clusters found when `categories` (one per document, empty =
/// unlabeled) are dealt at random into clusters of `cluster_size`.
inline std::size_t baseline_trial(const std::vector<std::string>& categories, std::size_t cluster_size, Rng& rng,
                                  double purity_threshold, std::size_t min_size) {
  const std::size_t n = categories.size();
  std::vector<std::size_t> slots(n);
  for (std::size_t i = 0; i < n; ++i) slots[i] = i / cluster_size;
  rng.shuffle(slots.begin(), slots.end());
  const std::size_t n_clusters = (n + cluster_size - 1) / cluster_size;
  std::vector<std::vector<std::string>> members(n_clusters);
  Labels labels;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = std::to_string(i);
    labels[id] = categories[i];
    members[slots[i]].push_back(id);
  }
  std::size_t pure = 0;
  for (const auto& m : members) {
    if (m.size() < min_size) continue;
    if (cluster_purity(m, labels).purity >= purity_threshold) ++pure;
  }
  return pure;
}

/// Trial t uses Rng::stream(seed, t), so summaries do not depend on how
/// trials are scheduled.
inline BaselineSummary random_baseline(const std::vector<std::string>& categories, std::size_t trials,
                                       std::uint64_t seed, std::size_t cluster_size = 3,
                                       double purity_threshold = 0.8, std::size_t min_size = 3) {
  if (cluster_size == 0) throw DomainError("cluster_size must be positive");
  BaselineSummary s;
  s.trials = trials;
  if (trials == 0) return s;
  s.min = std::numeric_limits<std::size_t>::max();
  double sum = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    const std::size_t pure = baseline_trial(categories, cluster_size, rng, purity_threshold, min_size);
    s.min = std::min(s.min, pure);
    s.max = std::max(s.max, pure);
    sum += static_cast<double>(pure);
  }
  s.mean = sum / static_cast<double>(trials);
  return s;
}

}  // namespace mathns
