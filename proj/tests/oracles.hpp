#pragma once
// Independent reference implementations and fixtures shared by the unit
// suites and the acceptance binary. Oracles use dense brute force and
// exhaustive enumeration; none of them calls the routine it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mathns/mathns.hpp"

namespace oracle {

using mathns::DocMatrix;
using mathns::Relation;

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

inline Relation rel(const std::string& doc, const std::string& key, const std::string& def, double score) {
  Relation r;
  r.identifier = mathns::identifier_from_key(key);
  r.definition = def;
  r.score = score;
  r.doc_id = doc;
  return r;
}

/// Three statistics documents with extracted relations. `literal` keeps
/// "population 0.89" for mu in A and C; otherwise those two entries read
/// "random variables", the form the merged list assumes.
inline std::vector<Relation> abc_relations(bool literal = false) {
  const std::string mu_ac = literal ? "population" : "random variables";
  return {
      rel("A", "n", "predictions", 0.95), rel("A", "n", "size", 0.92), rel("A", "n", "random sample", 0.82),
      rel("A", "n", "population", 0.82), rel("A", "theta", "estimator", 0.98),
      rel("A", "theta", "unknown parameter", 0.98), rel("A", "theta", "unknown parameter", 0.94),
      rel("A", "mu", "true mean", 0.96), rel("A", "mu", mu_ac, 0.89), rel("A", "mu_4", "central moment", 0.83),
      rel("A", "sigma", "population variance", 0.86), rel("A", "sigma", "square error", 0.83),
      rel("A", "sigma", "estimators", 0.82),
      rel("B", "P_theta", "family", 0.87), rel("B", "X", "measurable space", 0.95), rel("B", "X", "poisson", 0.82),
      rel("B", "theta", "sufficient statistic", 0.93), rel("B", "mu", "mean", 0.99), rel("B", "mu", "variance", 0.95),
      rel("B", "mu", "random variables", 0.89), rel("B", "mu", "normal", 0.83), rel("B", "sigma", "variance", 0.99),
      rel("B", "sigma", "mean", 0.83),
      rel("C", "n", "tickets", 0.96), rel("C", "n", "maximum-likelihood estimator", 0.89), rel("C", "x", "data", 0.99),
      rel("C", "x", "observations", 0.93), rel("C", "theta", "statistic", 0.95), rel("C", "theta", "estimator", 0.93),
      rel("C", "theta", "estimator", 0.93), rel("C", "theta", "rise", 0.91),
      rel("C", "theta", "statistical model", 0.85), rel("C", "theta", "fixed constant", 0.82),
      rel("C", "mu", "expectation", 0.96), rel("C", "mu", "variance", 0.93), rel("C", "mu", mu_ac, 0.89),
      rel("C", "sigma", "variance", 0.94), rel("C", "sigma", "population variance", 0.91),
      rel("C", "sigma", "estimator", 0.87),
  };
}

inline mathns::Labels abc_labels() { return {{"A", "Statistics"}, {"B", "Statistics"}, {"C", "Statistics"}}; }

struct ExpectedEntry {
  std::string key;
  std::string definition;
  double raw;
  double squashed;
};

/// The final namespace of the A/B/C example.
inline std::vector<ExpectedEntry> abc_expected() {
  return {{"P_theta", "family", 0.87, 0.41}, {"X", "measurable space", 0.95, 0.44},
          {"mu", "random variables", 2.67, 0.87}, {"mu_4", "central moment", 0.83, 0.39},
          {"n", "tickets", 0.96, 0.45},         {"sigma", "variance", 3.70, 0.95},
          {"theta", "estimator", 2.84, 0.89},   {"x", "data", 0.99, 0.46}};
}

/// d1 = {E, m, c}, d2 = {m, c}, d3 = {E} with relations E-energy, m-mass,
/// c-speed of light.
inline std::vector<mathns::DocumentEvidence> emc_documents() {
  auto doc = [](const std::string& id, const std::vector<std::string>& keys) {
    static const std::map<std::string, std::string> defs = {
        {"E", "energy"}, {"m", "mass"}, {"c", "speed of light"}};
    mathns::DocumentEvidence d;
    d.doc_id = id;
    for (const auto& k : keys) {
      d.identifier_counts[k] = 1;
      d.relations.push_back(rel(id, k, defs.at(k), 1.0));
    }
    return d;
  };
  return {doc("d1", {"E", "m", "c"}), doc("d2", {"m", "c"}), doc("d3", {"E"})};
}

/// label -> (d1, d2, d3) for the three association modes.
inline std::map<std::string, std::vector<double>> emc_expected(mathns::Association mode) {
  using mathns::Association;
  const std::vector<double> e{1, 0, 1}, m{1, 1, 0}, c{1, 1, 0};
  switch (mode) {
    case Association::IdentifiersOnly: return {{"E", e}, {"m", m}, {"c", c}};
    case Association::Weak:
      return {{"E", e}, {"m", m}, {"c", c}, {"def:energy", e}, {"def:mass", m}, {"def:speed of light", c}};
    case Association::Strong:
      return {{"pair:E_energy", e}, {"pair:m_mass", m}, {"pair:c_speed of light", c}};
  }
  return {};
}

/// Column view of a DocMatrix: label -> value per row.
inline std::map<std::string, std::vector<double>> columns_by_label(const DocMatrix& m) {
  std::map<std::string, std::vector<double>> out;
  const Eigen::MatrixXd d = m.dense();
  for (std::size_t j = 0; j < m.n_cols(); ++j) {
    auto& col = out[m.cols[j].label()];
    for (std::size_t i = 0; i < m.n_rows(); ++i) col.push_back(d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random data
// ---------------------------------------------------------------------------

inline DocMatrix to_docmatrix(const Eigen::MatrixXd& X) {
  DocMatrix m;
  for (Eigen::Index j = 0; j < X.cols(); ++j) m.cols.push_back({mathns::Dim::Identifier, "t" + std::to_string(j)});
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    std::vector<std::pair<std::size_t, double>> e;
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      if (X(i, j) != 0.0) e.emplace_back(static_cast<std::size_t>(j), X(i, j));
    m.push_row("d" + std::to_string(i), e);
  }
  return m;
}

/// n×d nonnegative matrix with roughly `density` nonzeros, each row
/// guaranteed at least one nonzero.
inline Eigen::MatrixXd random_sparse(std::mt19937_64& gen, int n, int d, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> col(0, d - 1);
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j)
      if (u(gen) < density) X(i, j) = 0.05 + u(gen);
    X(i, col(gen)) = 0.05 + u(gen);
  }
  return X;
}

inline Eigen::MatrixXd random_normal(std::mt19937_64& gen, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd X(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) X(i, j) = g(gen);
  return X;
}

// ---------------------------------------------------------------------------
// Similarity and kNN
// ---------------------------------------------------------------------------

inline double dense_cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm(), nb = b.norm();
  return (na == 0 || nb == 0) ? 0.0 : a.dot(b) / (na * nb);
}

/// Cosine of every row pair by dense arithmetic.
inline Eigen::MatrixXd cosine_matrix(const Eigen::MatrixXd& X) {
  const auto n = X.rows();
  Eigen::MatrixXd S(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) S(i, j) = dense_cosine(X.row(i).transpose(), X.row(j).transpose());
  return S;
}

/// Brute-force top-K by full sort of row `i` of S, self excluded, ties to
/// the smaller index.
inline std::vector<std::size_t> brute_knn(const Eigen::MatrixXd& S, std::size_t i, std::size_t K) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < static_cast<std::size_t>(S.rows()); ++j)
    if (j != i) idx.push_back(j);
  const auto row = static_cast<Eigen::Index>(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double sa = S(row, static_cast<Eigen::Index>(a)), sb = S(row, static_cast<Eigen::Index>(b));
    return sa != sb ? sa > sb : a < b;
  });
  idx.resize(K);
  return idx;
}

/// Same top-K up to ties: position by position, the candidate's oracle
/// score equals the reference's within `tol`, and ids are distinct.
inline bool same_topk(const Eigen::MatrixXd& S, std::size_t i, const std::vector<std::size_t>& got,
                      const std::vector<std::size_t>& want, double tol = 1e-12) {
  if (got.size() != want.size()) return false;
  if (std::set<std::size_t>(got.begin(), got.end()).size() != got.size()) return false;
  const auto row = static_cast<Eigen::Index>(i);
  for (std::size_t k = 0; k < got.size(); ++k) {
    if (got[k] == i) return false;
    if (std::abs(S(row, static_cast<Eigen::Index>(got[k])) - S(row, static_cast<Eigen::Index>(want[k]))) > tol)
      return false;
  }
  return true;
}

/// SNN counts from explicit neighbor sets.
inline std::vector<std::vector<int>> snn_counts(const std::vector<std::vector<std::size_t>>& nn) {
  const std::size_t n = nn.size();
  std::vector<std::vector<int>> s(n, std::vector<int>(n, 0));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      for (std::size_t a : nn[p])
        for (std::size_t b : nn[q]) s[p][q] += a == b;
    }
  return s;
}

// ---------------------------------------------------------------------------
// Density clustering
// ---------------------------------------------------------------------------

/// Checks a DBSCAN labeling against the core-point reachability graph:
/// core points are those with ≥ minpts neighbours (self excluded); the
/// clusters restricted to core points must equal the connected components
/// of the core-core adjacency (closure by O(n³) Warshall); each non-core
/// point with a core neighbour carries the label of one such neighbour; all
/// other points are noise.
inline bool dbscan_matches_reachability(const std::vector<std::vector<bool>>& adj, std::size_t minpts,
                                        const std::vector<int>& labels) {
  const std::size_t n = adj.size();
  if (labels.size() != n) return false;
  std::vector<bool> core(n);
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t deg = 0;
    for (std::size_t q = 0; q < n; ++q) deg += (p != q && adj[p][q]);
    core[p] = deg >= minpts;
  }
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) reach[p][q] = p == q || (core[p] && core[q] && adj[p][q]);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  for (std::size_t p = 0; p < n; ++p) {
    if (!core[p]) continue;
    if (labels[p] < 0) return false;
    for (std::size_t q = 0; q < n; ++q)
      if (core[q] && (reach[p][q] != (labels[p] == labels[q]))) return false;
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (core[p]) continue;
    bool has_core_nb = false, label_ok = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (q == p || !adj[p][q] || !core[q]) continue;
      has_core_nb = true;
      label_ok = label_ok || labels[q] == labels[p];
    }
    if (has_core_nb ? !label_ok : labels[p] != mathns::ClusterAssignment::NOISE) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// Labels renumbered by first appearance; noise stays -1.
inline std::vector<int> canonical(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out;
  for (int l : labels) {
    if (l < 0) {
      out.push_back(-1);
      continue;
    }
    out.push_back(remap.emplace(l, static_cast<int>(remap.size())).first->second);
  }
  return out;
}

inline double partition_sse(const Eigen::MatrixXd& X, const std::vector<int>& labels, int K) {
  double sse = 0;
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(X.cols());
    int cnt = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == k) {
        mean += X.row(static_cast<Eigen::Index>(i)).transpose();
        ++cnt;
      }
    if (cnt == 0) continue;
    mean /= cnt;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == k) sse += (X.row(static_cast<Eigen::Index>(i)).transpose() - mean).squaredNorm();
  }
  return sse;
}

/// Minimum-SSE two-cluster partition by enumerating all 2^(n-1) - 1
/// bipartitions (point 0 always in cluster 0).
inline std::vector<int> best_bipartition(const Eigen::MatrixXd& X, double* best_sse = nullptr) {
  const auto n = static_cast<std::size_t>(X.rows());
  std::vector<int> best;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::vector<int> labels(n, 0);
    for (std::size_t i = 1; i < n; ++i) labels[i] = (mask >> (i - 1)) & 1U;
    const double sse = partition_sse(X, labels, 2);
    if (sse < best_val) {
      best_val = sse;
      best = labels;
    }
  }
  if (best_sse) *best_sse = best_val;
  return best;
}

// ---------------------------------------------------------------------------
// Purity and baseline
// ---------------------------------------------------------------------------

/// Size-weighted purity over the non-noise clusters; unlabeled counted as
/// distinct singletons.
inline double overall_purity(const std::vector<int>& labels, const std::vector<std::string>& cats) {
  std::map<int, std::map<std::string, int>> counts;
  std::map<int, int> sizes;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    ++sizes[labels[i]];
    if (!cats[i].empty()) ++counts[labels[i]][cats[i]];
  }
  double weighted = 0;
  int total = 0;
  for (const auto& [c, sz] : sizes) {
    int best = 0;
    for (const auto& [_, k] : counts[c]) best = std::max(best, k);
    if (best == 0) best = 1;
    weighted += best;
    total += sz;
  }
  return total ? weighted / total : 0.0;
}

/// Exact mean of pure clusters over all arrangements: every permutation of
/// the documents is dealt into consecutive groups of `cluster_size`.
inline double exact_baseline_mean(std::vector<std::string> cats, std::size_t cluster_size, double threshold,
                                  std::size_t min_size) {
  std::vector<std::size_t> perm(cats.size());
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0;
  std::size_t count = 0;
  do {
    std::size_t pure = 0;
    for (std::size_t start = 0; start < perm.size(); start += cluster_size) {
      const std::size_t end = std::min(perm.size(), start + cluster_size);
      if (end - start < min_size) continue;
      std::map<std::string, std::size_t> c;
      for (std::size_t i = start; i < end; ++i) ++c[cats[perm[i]]];
      std::size_t best = 0;
      for (const auto& [_, k] : c) best = std::max(best, k);
      if (static_cast<double>(best) / static_cast<double>(end - start) >= threshold) ++pure;
    }
    total += static_cast<double>(pure);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// Linear algebra
// ---------------------------------------------------------------------------

/// Singular values (descending) from the eigenvalues of AᵀA or AAᵀ,
/// whichever is smaller.
inline Eigen::VectorXd singular_values(const Eigen::MatrixXd& A) {
  const Eigen::MatrixXd G = A.rows() >= A.cols() ? Eigen::MatrixXd(A.transpose() * A) : Eigen::MatrixXd(A * A.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  Eigen::VectorXd ev = es.eigenvalues().reverse();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(0.0, ev(i)));
  return ev;
}

/// Optimal rank-k Frobenius error: sqrt(‖A‖² − Σ_{i≤k} s_i²).
inline double best_rank_k_error(const Eigen::MatrixXd& A, int k) {
  const Eigen::VectorXd s = singular_values(A);
  double head = 0;
  for (int i = 0; i < k && i < s.size(); ++i) head += s(i) * s(i);
  return std::sqrt(std::max(0.0, A.squaredNorm() - head));
}

}  // namespace oracle
