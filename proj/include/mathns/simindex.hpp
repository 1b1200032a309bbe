#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mathns/error.hpp"
#include "mathns/idspace.hpp"

namespace mathns {

enum class Measure { Cosine, Inner, Jaccard, EuclideanDist };

inline Measure parse_measure(std::string_view s) {
  if (s == "cosine") return Measure::Cosine;
  if (s == "inner") return Measure::Inner;
  if (s == "jaccard") return Measure::Jaccard;
  if (s == "euclidean") return Measure::EuclideanDist;
  throw ConfigError("unknown measure '" + std::string(s) + "'");
}

/// Similarity of two dense vectors of equal length. Cosine and Jaccard are
/// 0 when a vector (or both binarized sets) is empty, and `zero_vector` is
/// set. EuclideanDist returns the distance, not a similarity.
inline double similarity(Measure m, std::span<const double> a, std::span<const double> b, bool* zero_vector = nullptr) {
  if (a.size() != b.size()) throw LengthMismatch("vectors differ in length");
  if (zero_vector) *zero_vector = false;
  switch (m) {
    case Measure::Inner: {
      double s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
      return s;
    }
    case Measure::Cosine: {
      double dot = 0, na = 0, nb = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
      }
      if (na == 0 || nb == 0) {
        if (zero_vector) *zero_vector = true;
        return 0.0;
      }
      return dot / (std::sqrt(na) * std::sqrt(nb));
    }
    case Measure::Jaccard: {
      std::size_t both = 0, either = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const bool x = a[i] != 0, y = b[i] != 0;
        both += x && y;
        either += x || y;
      }
      if (either == 0) {
        if (zero_vector) *zero_vector = true;
        return 0.0;
      }
      return static_cast<double>(both) / static_cast<double>(either);
    }
    case Measure::EuclideanDist: {
      double s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(s);
    }
  }
  return 0.0;
}

inline double cosine_distance(std::span<const double> a, std::span<const double> b) {
  return 1.0 - similarity(Measure::Cosine, a, b);
}

// ---------------------------------------------------------------------------
// Inverted index and kNN
// ---------------------------------------------------------------------------

/// K nearest documents of `owner`, best first. For EuclideanDist the score
/// is the negated distance so that larger is always closer.
struct NeighborList {
  std::size_t owner = 0;
  std::vector<std::pair<std::size_t, double>> neighbors;

  std::vector<std::size_t> ids() const {
    std::vector<std::size_t> out;
    out.reserve(neighbors.size());
    for (const auto& [id, _] : neighbors) out.push_back(id);
    return out;
  }
};

/// Column-major postings over a DocMatrix. Dot products are accumulated in
/// ascending dimension order, the same order a dense row-by-row scan uses.
class InvertedIndex {
 public:
  explicit InvertedIndex(const DocMatrix& m) : m_(&m), postings_(m.n_cols()), sq_norm_(m.n_rows(), 0.0) {
    for (std::size_t i = 0; i < m.n_rows(); ++i) {
      const auto idx = m.row_indices(i);
      const auto val = m.row_values(i);
      for (std::size_t k = 0; k < idx.size(); ++k) {
        postings_[idx[k]].emplace_back(i, val[k]);
        sq_norm_[i] += val[k] * val[k];
      }
    }
  }

  std::size_t size() const { return m_->n_rows(); }

  /// Score of every document against document `i` (entry i included).
  std::vector<double> scores(std::size_t i, Measure measure) const {
    const std::size_t n = size();
    std::vector<double> dot(n, 0.0);
    std::vector<std::size_t> shared(n, 0);
    const auto idx = m_->row_indices(i);
    const auto val = m_->row_values(i);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      for (const auto& [j, v] : postings_[idx[k]]) {
        dot[j] += val[k] * v;
        ++shared[j];
      }
    }
    std::vector<double> out(n, 0.0);
    const double ni = std::sqrt(sq_norm_[i]);
    const std::size_t nnz_i = idx.size();
    for (std::size_t j = 0; j < n; ++j) {
      switch (measure) {
        case Measure::Inner: out[j] = dot[j]; break;
        case Measure::Cosine: {
          const double nj = std::sqrt(sq_norm_[j]);
          out[j] = (ni == 0 || nj == 0) ? 0.0 : dot[j] / (ni * nj);
          break;
        }
        case Measure::Jaccard: {
          const std::size_t either = nnz_i + m_->row_indices(j).size() - shared[j];
          out[j] = either == 0 ? 0.0 : static_cast<double>(shared[j]) / static_cast<double>(either);
          break;
        }
        case Measure::EuclideanDist:
          out[j] = -std::sqrt(std::max(0.0, sq_norm_[i] + sq_norm_[j] - 2.0 * dot[j]));
          break;
      }
    }
    return out;
  }

  /// Exact top-K excluding `i`; ties go to the smaller document index.
  NeighborList knn(std::size_t i, std::size_t K, Measure measure) const {
    if (K >= size()) {
      throw KTooLarge("K=" + std::to_string(K) + " needs more than " + std::to_string(size()) + " documents");
    }
    const auto s = scores(i, measure);
    std::vector<std::size_t> order;
    order.reserve(size() - 1);
    for (std::size_t j = 0; j < size(); ++j)
      if (j != i) order.push_back(j);
    auto better = [&](std::size_t a, std::size_t b) { return s[a] != s[b] ? s[a] > s[b] : a < b; };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(K), order.end(), better);
    NeighborList out;
    out.owner = i;
    for (std::size_t k = 0; k < K; ++k) out.neighbors.emplace_back(order[k], s[order[k]]);
    return out;
  }

 private:
  const DocMatrix* m_;
  std::vector<std::vector<std::pair<std::size_t, double>>> postings_;
  std::vector<double> sq_norm_;
};

inline NeighborList knn(const DocMatrix& m, std::size_t i, std::size_t K, Measure measure) {
  return InvertedIndex(m).knn(i, K, measure);
}

inline std::vector<NeighborList> knn_all(const DocMatrix& m, std::size_t K, Measure measure) {
  const InvertedIndex index(m);
  std::vector<NeighborList> out;
  out.reserve(m.n_rows());
  for (std::size_t i = 0; i < m.n_rows(); ++i) out.push_back(index.knn(i, K, measure));
  return out;
}

// ---------------------------------------------------------------------------
// Shared nearest neighbours
// ---------------------------------------------------------------------------

/// |NN(p) ∩ NN(q)|, or |NN(p) ∪ NN(q)| with `use_union`.
inline int snn_similarity(const NeighborList& p, const NeighborList& q, bool use_union = false) {
  if (p.neighbors.size() != q.neighbors.size()) throw LengthMismatch("neighbor lists differ in length");
  auto a = p.ids();
  auto b = q.ids();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::size_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  const auto shared = static_cast<int>(common.size());
  return use_union ? static_cast<int>(a.size() + b.size()) - shared : shared;
}

/// Symmetric SNN matrix stored as per-row sorted (column, value) lists of
/// the nonzero off-diagonal entries. The diagonal is K by convention.
struct SnnGraph {
  std::size_t K = 0;
  std::vector<std::vector<std::pair<std::size_t, int>>> adjacency;

  std::size_t size() const { return adjacency.size(); }

  int at(std::size_t p, std::size_t q) const {
    if (p == q) return static_cast<int>(K);
    const auto& row = adjacency[p];
    const auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(q, 0),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return (it != row.end() && it->first == q) ? it->second : 0;
  }
};

/// With `use_union` every off-diagonal entry is 2K - |shared| instead.
inline SnnGraph build_snn_graph(const std::vector<NeighborList>& lists, std::size_t K, bool use_union = false) {
  const std::size_t n = lists.size();
  // reverse lists: who has r as a neighbour
  std::vector<std::vector<std::size_t>> holders(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (lists[p].neighbors.size() != K) throw LengthMismatch("neighbor list of length != K");
    for (const auto& [r, _] : lists[p].neighbors) holders[r].push_back(p);
  }
  SnnGraph g;
  g.K = K;
  g.adjacency.resize(n);
  std::vector<int> counts(n, 0);
  std::vector<std::size_t> touched;
  for (std::size_t p = 0; p < n; ++p) {
    for (const auto& [r, _] : lists[p].neighbors) {
      for (std::size_t q : holders[r]) {
        if (q == p) continue;
        if (counts[q]++ == 0) touched.push_back(q);
      }
    }
    if (use_union) {
      for (std::size_t q = 0; q < n; ++q)
        if (q != p) g.adjacency[p].emplace_back(q, static_cast<int>(2 * K) - counts[q]);
      for (std::size_t q : touched) counts[q] = 0;
    } else {
      std::sort(touched.begin(), touched.end());
      for (std::size_t q : touched) {
        g.adjacency[p].emplace_back(q, counts[q]);
        counts[q] = 0;
      }
    }
    touched.clear();
  }
  return g;
}

inline SnnGraph build_snn_graph(const DocMatrix& m, std::size_t K, Measure measure, bool use_union = false) {
  return build_snn_graph(knn_all(m, K, measure), K, use_union);
}

}  // namespace mathns
