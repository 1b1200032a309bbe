#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mathns/assignment.hpp"
#include "mathns/error.hpp"
#include "mathns/idspace.hpp"
#include "mathns/rng.hpp"
#include "mathns/simindex.hpp"

namespace mathns {

// ---------------------------------------------------------------------------
// Row adaptors
// ---------------------------------------------------------------------------

/// Dense n×d data, one point per row.
struct DenseRows {
  const Eigen::MatrixXd& X;

  std::size_t size() const { return static_cast<std::size_t>(X.rows()); }
  Eigen::Index dim() const { return X.cols(); }
  double sq_dist(std::size_t i, const Eigen::VectorXd& c, double /*c_sq*/) const {
    return (X.row(static_cast<Eigen::Index>(i)).transpose() - c).squaredNorm();
  }
  void add_to(std::size_t i, Eigen::VectorXd& acc, double w) const {
    acc += w * X.row(static_cast<Eigen::Index>(i)).transpose();
  }
  Eigen::VectorXd row(std::size_t i) const { return X.row(static_cast<Eigen::Index>(i)).transpose(); }
};

/// Sparse rows of a DocMatrix; distances use ‖x‖² − 2x·c + ‖c‖².
struct SparseRows {
  const DocMatrix& M;
  std::vector<double> sq_norm;

  explicit SparseRows(const DocMatrix& m) : M(m), sq_norm(m.n_rows(), 0.0) {
    for (std::size_t i = 0; i < m.n_rows(); ++i)
      for (double v : m.row_values(i)) sq_norm[i] += v * v;
  }

  std::size_t size() const { return M.n_rows(); }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(M.n_cols()); }
  double sq_dist(std::size_t i, const Eigen::VectorXd& c, double c_sq) const {
    double dot = 0;
    const auto idx = M.row_indices(i);
    const auto val = M.row_values(i);
    for (std::size_t k = 0; k < idx.size(); ++k) dot += val[k] * c(static_cast<Eigen::Index>(idx[k]));
    return std::max(0.0, sq_norm[i] - 2.0 * dot + c_sq);
  }
  void add_to(std::size_t i, Eigen::VectorXd& acc, double w) const {
    const auto idx = M.row_indices(i);
    const auto val = M.row_values(i);
    for (std::size_t k = 0; k < idx.size(); ++k) acc(static_cast<Eigen::Index>(idx[k])) += w * val[k];
  }
  Eigen::VectorXd row(std::size_t i) const {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(dim());
    add_to(i, r, 1.0);
    return r;
  }
};

// ---------------------------------------------------------------------------
// Centroid truncation
// ---------------------------------------------------------------------------

struct TopC {
  std::size_t c;
};
struct NormFraction {
  double f;
};
using TruncationPolicy = std::variant<TopC, NormFraction>;

/// TopC keeps the c largest-magnitude entries (ties to the lower index).
/// NormFraction zeroes the smallest entries as long as the retained norm
/// stays at least f times the original norm.
inline Eigen::VectorXd truncate_centroid(const Eigen::VectorXd& c, const TruncationPolicy& policy) {
  const auto n = static_cast<std::size_t>(c.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // ascending magnitude; among equal magnitudes the higher index goes first
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double x = std::fabs(c(static_cast<Eigen::Index>(a))), y = std::fabs(c(static_cast<Eigen::Index>(b)));
    return x != y ? x < y : a > b;
  });
  Eigen::VectorXd out = c;
  if (const auto* top = std::get_if<TopC>(&policy)) {
    const std::size_t drop = n > top->c ? n - top->c : 0;
    for (std::size_t k = 0; k < drop; ++k) out(static_cast<Eigen::Index>(order[k])) = 0.0;
    return out;
  }
  const double f = std::get<NormFraction>(policy).f;
  if (!(f > 0.0) || f > 1.0) throw DomainError("norm fraction must be in (0, 1]");
  const double total = c.squaredNorm();
  const double floor = f * f * total;
  double kept = total;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = c(static_cast<Eigen::Index>(order[k]));
    if (kept - v * v < floor) break;
    kept -= v * v;
    out(static_cast<Eigen::Index>(order[k])) = 0.0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// K-Means
// ---------------------------------------------------------------------------

struct KMeansOptions {
  int max_iter = 300;
  int n_restarts = 1;
  std::optional<TruncationPolicy> truncation;
};

struct KMeansResult {
  ClusterAssignment assignment;
  Eigen::MatrixXd centroids;          ///< K × d
  std::vector<double> inertia_trace;  ///< after each assignment step
  int iterations = 0;
};

namespace detail {

inline void check_k(int K, std::size_t n) {
  if (K < 1) throw DomainError("K must be at least 1");
  if (static_cast<std::size_t>(K) > n)
    throw KTooLarge("K=" + std::to_string(K) + " exceeds " + std::to_string(n) + " points");
}

/// `count` distinct indices from [0, n) via a partial Fisher-Yates shuffle.
inline std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

/// Nearest centroid (ties to the lower index) and its squared distance.
template <class Rows>
std::pair<int, double> nearest(const Rows& X, std::size_t i, const Eigen::MatrixXd& C, const std::vector<double>& c_sq) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < C.rows(); ++k) {
    const double d = X.sq_dist(i, C.row(k).transpose(), c_sq[static_cast<std::size_t>(k)]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  return {best, best_d};
}

inline std::vector<double> row_sq_norms(const Eigen::MatrixXd& C) {
  std::vector<double> out(static_cast<std::size_t>(C.rows()));
  for (Eigen::Index k = 0; k < C.rows(); ++k) out[static_cast<std::size_t>(k)] = C.row(k).squaredNorm();
  return out;
}

template <class Rows>
KMeansResult lloyd(const Rows& X, int K, Rng& rng, const KMeansOptions& opt) {
  const std::size_t n = X.size();
  KMeansResult r;
  r.centroids.resize(K, X.dim());
  const auto seeds = sample_distinct(n, static_cast<std::size_t>(K), rng);
  for (int k = 0; k < K; ++k) r.centroids.row(k) = X.row(seeds[static_cast<std::size_t>(k)]).transpose();

  std::vector<int> labels(n, -1);
  for (int it = 0; it < opt.max_iter; ++it) {
    const auto c_sq = row_sq_norms(r.centroids);
    bool changed = false;
    double inertia = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [k, d] = nearest(X, i, r.centroids, c_sq);
      changed |= labels[i] != k;
      labels[i] = k;
      inertia += d;
    }
    r.inertia_trace.push_back(inertia);
    r.iterations = it + 1;
    if (!changed) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(K, X.dim());
    std::vector<std::size_t> counts(static_cast<std::size_t>(K), 0);
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::VectorXd acc = sums.row(labels[i]).transpose();
      X.add_to(i, acc, 1.0);
      sums.row(labels[i]) = acc.transpose();
      ++counts[static_cast<std::size_t>(labels[i])];
    }
    std::vector<bool> taken(n, false);
    for (int k = 0; k < K; ++k) {
      if (counts[static_cast<std::size_t>(k)] > 0) {
        r.centroids.row(k) = sums.row(k) / static_cast<double>(counts[static_cast<std::size_t>(k)]);
        continue;
      }
      // empty: move to the point farthest from the old centroid
      const Eigen::VectorXd old = r.centroids.row(k).transpose();
      const double old_sq = old.squaredNorm();
      std::size_t far = 0;
      double far_d = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i]) continue;
        const double d = X.sq_dist(i, old, old_sq);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      taken[far] = true;
      r.centroids.row(k) = X.row(far).transpose();
    }
    if (opt.truncation) {
      for (int k = 0; k < K; ++k)
        r.centroids.row(k) = truncate_centroid(r.centroids.row(k).transpose(), *opt.truncation).transpose();
    }
  }
  r.assignment.labels = std::move(labels);
  r.assignment.K = K;
  r.assignment.inertia = r.inertia_trace.back();
  return r;
}

}  // namespace detail

/// Lloyd's algorithm from K distinct random data points, repeated
/// `n_restarts` times with independent streams; the lowest final inertia
/// wins (ties to the earlier restart).
template <class Rows>
KMeansResult kmeans(const Rows& X, int K, std::uint64_t seed, const KMeansOptions& opt = {}) {
  detail::check_k(K, X.size());
  std::optional<KMeansResult> best;
  for (int restart = 0; restart < std::max(opt.n_restarts, 1); ++restart) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(restart));
    auto r = detail::lloyd(X, K, rng, opt);
    if (!best || *r.assignment.inertia < *best->assignment.inertia) best = std::move(r);
  }
  return std::move(*best);
}

inline KMeansResult kmeans(const Eigen::MatrixXd& X, int K, std::uint64_t seed, const KMeansOptions& opt = {}) {
  return kmeans(DenseRows{X}, K, seed, opt);
}

struct MiniBatchOptions {
  std::size_t batch_size = 1024;
  int iters = 100;
  std::optional<TruncationPolicy> truncation;
};

/// Sculley-style mini-batch K-Means: each batch is drawn without
/// replacement, its points are assigned to the current centers, and every
/// center moves toward each assigned point with rate 1/count. A final pass
/// assigns all points.
template <class Rows>
KMeansResult minibatch_kmeans(const Rows& X, int K, std::uint64_t seed, const MiniBatchOptions& opt = {}) {
  const std::size_t n = X.size();
  detail::check_k(K, n);
  Rng rng(seed);
  KMeansResult r;
  r.centroids.resize(K, X.dim());
  const auto seeds = detail::sample_distinct(n, static_cast<std::size_t>(K), rng);
  for (int k = 0; k < K; ++k) r.centroids.row(k) = X.row(seeds[static_cast<std::size_t>(k)]).transpose();
  std::vector<double> counts(static_cast<std::size_t>(K), 0.0);
  const std::size_t b = std::clamp<std::size_t>(opt.batch_size, 1, n);
  std::vector<int> batch_labels(b);
  for (int it = 0; it < opt.iters; ++it) {
    const auto batch = detail::sample_distinct(n, b, rng);
    const auto c_sq = detail::row_sq_norms(r.centroids);
    for (std::size_t t = 0; t < b; ++t) batch_labels[t] = detail::nearest(X, batch[t], r.centroids, c_sq).first;
    for (std::size_t t = 0; t < b; ++t) {
      const int k = batch_labels[t];
      const double eta = 1.0 / ++counts[static_cast<std::size_t>(k)];
      Eigen::VectorXd c = (1.0 - eta) * r.centroids.row(k).transpose();
      X.add_to(batch[t], c, eta);
      r.centroids.row(k) = c.transpose();
    }
    if (opt.truncation) {
      for (int k = 0; k < K; ++k)
        r.centroids.row(k) = truncate_centroid(r.centroids.row(k).transpose(), *opt.truncation).transpose();
    }
  }
  const auto c_sq = detail::row_sq_norms(r.centroids);
  r.assignment.labels.resize(n);
  double inertia = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [k, d] = detail::nearest(X, i, r.centroids, c_sq);
    r.assignment.labels[i] = k;
    inertia += d;
  }
  r.assignment.K = K;
  r.assignment.inertia = inertia;
  r.inertia_trace.push_back(inertia);
  r.iterations = opt.iters;
  return r;
}

inline KMeansResult minibatch_kmeans(const Eigen::MatrixXd& X, int K, std::uint64_t seed,
                                     const MiniBatchOptions& opt = {}) {
  return minibatch_kmeans(DenseRows{X}, K, seed, opt);
}

// ---------------------------------------------------------------------------
// DBSCAN
// ---------------------------------------------------------------------------

using RegionQuery = std::function<std::vector<std::size_t>(std::size_t)>;

/// Classic DBSCAN over an abstract neighbourhood. `region_query(p)` must
/// not contain p; p is a core point iff it returns at least `minpts`
/// points. Points are visited in index order, so a border point reachable
/// from two clusters joins the first one that claims it.
inline ClusterAssignment dbscan(const RegionQuery& region_query, std::size_t n, std::size_t minpts) {
  constexpr int kUnvisited = -2;
  ClusterAssignment a;
  a.labels.assign(n, kUnvisited);
  int cluster = -1;
  std::vector<bool> queued(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    if (a.labels[p] != kUnvisited) continue;
    const auto neighbors = region_query(p);
    if (neighbors.size() < minpts) {
      a.labels[p] = ClusterAssignment::NOISE;
      continue;
    }
    ++cluster;
    a.labels[p] = cluster;
    std::vector<std::size_t> seeds;
    std::fill(queued.begin(), queued.end(), false);
    queued[p] = true;
    for (std::size_t q : neighbors)
      if (!queued[q]) {
        queued[q] = true;
        seeds.push_back(q);
      }
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const std::size_t q = seeds[s];
      if (a.labels[q] == ClusterAssignment::NOISE) a.labels[q] = cluster;  // border point
      if (a.labels[q] != kUnvisited) continue;
      a.labels[q] = cluster;
      const auto nq = region_query(q);
      if (nq.size() < minpts) continue;
      for (std::size_t x : nq)
        if (!queued[x]) {
          queued[x] = true;
          seeds.push_back(x);
        }
    }
  }
  a.K = cluster + 1;
  return a;
}

/// DBSCAN over a dense similarity matrix: neighbours have sim ≥ eps.
inline ClusterAssignment dbscan_similarity(const Eigen::MatrixXd& S, double eps, std::size_t minpts) {
  const auto n = static_cast<std::size_t>(S.rows());
  return dbscan(
      [&](std::size_t p) {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < n; ++q)
          if (q != p && S(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) >= eps) out.push_back(q);
        return out;
      },
      n, minpts);
}

/// DBSCAN over points with Euclidean distance: neighbours have dist ≤ eps.
inline ClusterAssignment dbscan_distance(const Eigen::MatrixXd& X, double eps, std::size_t minpts) {
  const auto n = static_cast<std::size_t>(X.rows());
  return dbscan(
      [&](std::size_t p) {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < n; ++q)
          if (q != p && (X.row(static_cast<Eigen::Index>(p)) - X.row(static_cast<Eigen::Index>(q))).norm() <= eps)
            out.push_back(q);
        return out;
      },
      n, minpts);
}

/// DBSCAN with region_query(p) = {q ≠ p : snn(p, q) ≥ eps}.
inline ClusterAssignment snn_dbscan(const SnnGraph& g, int eps, std::size_t minpts) {
  if (eps >= static_cast<int>(g.K)) {
    throw EpsNotBelowK("eps=" + std::to_string(eps) + " must be below K=" + std::to_string(g.K));
  }
  const std::size_t n = g.size();
  return dbscan(
      [&](std::size_t p) {
        std::vector<std::size_t> out;
        if (eps <= 0) {
          for (std::size_t q = 0; q < n; ++q)
            if (q != p) out.push_back(q);
          return out;
        }
        for (const auto& [q, s] : g.adjacency[p])
          if (s >= eps) out.push_back(q);
        return out;
      },
      n, minpts);
}

inline ClusterAssignment snn_dbscan(const DocMatrix& m, std::size_t K, Measure measure, int eps, std::size_t minpts,
                                    bool use_union = false) {
  if (eps >= static_cast<int>(K)) {
    throw EpsNotBelowK("eps=" + std::to_string(eps) + " must be below K=" + std::to_string(K));
  }
  return snn_dbscan(build_snn_graph(m, K, measure, use_union), eps, minpts);
}

// ---------------------------------------------------------------------------
// Agglomerative clustering
// ---------------------------------------------------------------------------

enum class Linkage { Single, Complete, Average, Ward };

inline Linkage parse_linkage(std::string_view s) {
  if (s == "single") return Linkage::Single;
  if (s == "complete") return Linkage::Complete;
  if (s == "average") return Linkage::Average;
  if (s == "ward") return Linkage::Ward;
  throw ConfigError("unknown linkage '" + std::string(s) + "'");
}

struct Merge {
  std::size_t a = 0;  ///< surviving cluster slot (the smaller index)
  std::size_t b = 0;  ///< absorbed cluster slot
  double distance = 0;
  std::size_t size = 0;  ///< size of the merged cluster
};

struct AgglomerativeResult {
  ClusterAssignment assignment;
  std::vector<Merge> merges;
};

/// Lance-Williams agglomeration on Euclidean distances (Ward on half squared
/// distances, so each merge distance is the increase in within-cluster sum
/// of squares). Ties go to the lexicographically smallest slot pair.
inline AgglomerativeResult agglomerative(const Eigen::MatrixXd& X, Linkage linkage, int K,
                                         std::size_t max_points = 5000) {
  const auto n = static_cast<std::size_t>(X.rows());
  if (n > max_points) {
    throw TooManyDocuments(std::to_string(n) + " points exceed the agglomerative cap of " + std::to_string(max_points));
  }
  detail::check_k(K, n);
  Eigen::MatrixXd D(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double sq = (X.row(static_cast<Eigen::Index>(i)) - X.row(static_cast<Eigen::Index>(j))).squaredNorm();
      D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = linkage == Linkage::Ward ? 0.5 * sq : std::sqrt(sq);
    }
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> owner(n);
  std::iota(owner.begin(), owner.end(), std::size_t{0});
  AgglomerativeResult r;
  for (std::size_t remaining = n; remaining > static_cast<std::size_t>(K); --remaining) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const double d = D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    const double ni = static_cast<double>(size[bi]), nj = static_cast<double>(size[bj]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const auto ik = static_cast<Eigen::Index>(k), ii = static_cast<Eigen::Index>(bi), ij = static_cast<Eigen::Index>(bj);
      const double dki = D(ik, ii), dkj = D(ik, ij);
      double d = 0;
      switch (linkage) {
        case Linkage::Single: d = std::min(dki, dkj); break;
        case Linkage::Complete: d = std::max(dki, dkj); break;
        case Linkage::Average: d = (ni * dki + nj * dkj) / (ni + nj); break;
        case Linkage::Ward: {
          const double nk = static_cast<double>(size[k]);
          d = ((ni + nk) * dki + (nj + nk) * dkj - nk * best) / (ni + nj + nk);
          break;
        }
      }
      D(ik, ii) = D(ii, ik) = d;
    }
    active[bj] = false;
    size[bi] += size[bj];
    for (auto& o : owner)
      if (o == bj) o = bi;
    r.merges.push_back({bi, bj, best, size[bi]});
  }
  r.assignment.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.assignment.labels[i] = static_cast<int>(owner[i]);
  r.assignment.compact();
  return r;
}

}  // namespace mathns
