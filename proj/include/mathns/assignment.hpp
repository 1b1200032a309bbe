#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mathns/error.hpp"

namespace mathns {

/// Per-document cluster labels in {NOISE, 0..K-1}.
struct ClusterAssignment {
  static constexpr int NOISE = -1;

  std::vector<int> labels;
  int K = 0;
  std::optional<double> inertia;

  std::size_t size() const { return labels.size(); }

  /// Member indices of each non-noise cluster, by label.
  std::vector<std::vector<std::size_t>> clusters() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(K));
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] != NOISE) out[static_cast<std::size_t>(labels[i])].push_back(i);
    return out;
  }

  std::size_t noise_count() const {
    std::size_t n = 0;
    for (int l : labels) n += l == NOISE;
    return n;
  }

  /// Relabels non-noise clusters 0..K'-1 in order of first appearance and
  /// drops empty labels.
  void compact() {
    std::map<int, int> remap;
    for (int& l : labels) {
      if (l == NOISE) continue;
      auto [it, inserted] = remap.emplace(l, static_cast<int>(remap.size()));
      l = it->second;
    }
    K = static_cast<int>(remap.size());
  }

  void validate() const {
    for (int l : labels)
      if (l < NOISE || l >= K) throw DomainError("label " + std::to_string(l) + " outside [-1, K)");
  }
};

}  // namespace mathns
