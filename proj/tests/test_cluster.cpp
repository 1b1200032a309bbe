#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace {

using namespace mathns;

// Two well separated Gaussian blobs in the plane.
Eigen::MatrixXd blobs(std::mt19937_64& gen, int per, double gap) {
  Eigen::MatrixXd X = 0.3 * oracle::random_normal(gen, 2 * per, 2);
  for (int i = per; i < 2 * per; ++i) X(i, 0) += gap;
  return X;
}

std::vector<std::vector<bool>> adjacency(const Eigen::MatrixXd& X, double eps) {
  const auto n = static_cast<std::size_t>(X.rows());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      adj[p][q] = p != q && (X.row(static_cast<Eigen::Index>(p)) - X.row(static_cast<Eigen::Index>(q))).norm() <= eps;
  return adj;
}

// Prim's minimum spanning tree edge weights, sorted.
std::vector<double> mst_weights(const Eigen::MatrixXd& X) {
  const auto n = X.rows();
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  std::vector<double> best(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<double> out;
  best[0] = 0;
  for (Eigen::Index step = 0; step < n; ++step) {
    Eigen::Index u = -1;
    for (Eigen::Index v = 0; v < n; ++v)
      if (!in[static_cast<std::size_t>(v)] && (u < 0 || best[static_cast<std::size_t>(v)] < best[static_cast<std::size_t>(u)]))
        u = v;
    in[static_cast<std::size_t>(u)] = true;
    if (step > 0) out.push_back(best[static_cast<std::size_t>(u)]);
    for (Eigen::Index v = 0; v < n; ++v)
      best[static_cast<std::size_t>(v)] = std::min(best[static_cast<std::size_t>(v)], (X.row(u) - X.row(v)).norm());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Truncation, TopC) {
  Eigen::VectorXd c(5);
  c << 0.1, -0.9, 0.5, 0.5, 0.0;
  Eigen::VectorXd want(5);
  want << 0, -0.9, 0.5, 0.5, 0;
  EXPECT_EQ(truncate_centroid(c, TopC{3}), want);
  want << 0, -0.9, 0.5, 0, 0;  // tie to the lower index
  EXPECT_EQ(truncate_centroid(c, TopC{2}), want);
  EXPECT_EQ(truncate_centroid(c, TopC{10}), c);
}

TEST(Truncation, NormFractionKeepsNorm) {
  std::mt19937_64 gen(61);
  for (int t = 0; t < 50; ++t) {
    const Eigen::VectorXd c = oracle::random_normal(gen, 12, 1);
    for (double f : {0.5, 0.8, 0.95, 1.0}) {
      const Eigen::VectorXd out = truncate_centroid(c, NormFraction{f});
      EXPECT_GE(out.norm(), f * c.norm() - 1e-12);
      // dropping the smallest surviving entry as well would violate the floor
      double smallest = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < out.size(); ++i)
        if (out(i) != 0) smallest = std::min(smallest, std::fabs(out(i)));
      if (std::isfinite(smallest)) EXPECT_LT(out.squaredNorm() - smallest * smallest, f * f * c.squaredNorm());
    }
  }
  EXPECT_THROW(truncate_centroid(Eigen::VectorXd::Ones(2), NormFraction{0}), DomainError);
}

TEST(KMeans, MatchesExhaustiveBipartition) {
  std::mt19937_64 gen(67);
  for (int t = 0; t < 5; ++t) {
    const Eigen::MatrixXd X = oracle::random_normal(gen, 10, 2);
    double best_sse = 0;
    oracle::best_bipartition(X, &best_sse);
    KMeansOptions opt;
    opt.n_restarts = 20;
    const auto r = kmeans(X, 2, static_cast<std::uint64_t>(t), opt);
    EXPECT_NEAR(*r.assignment.inertia, best_sse, 1e-9);
  }
}

TEST(KMeans, InertiaNonIncreasingAndConsistent) {
  std::mt19937_64 gen(71);
  const Eigen::MatrixXd X = oracle::random_normal(gen, 80, 5);
  const auto r = kmeans(X, 6, 3);
  for (std::size_t i = 1; i < r.inertia_trace.size(); ++i) EXPECT_LE(r.inertia_trace[i], r.inertia_trace[i - 1] + 1e-12);
  EXPECT_NEAR(*r.assignment.inertia, oracle::partition_sse(X, r.assignment.labels, 6), 1e-9);
  r.assignment.validate();
}

TEST(KMeans, SparseRowsAgreeWithDense) {
  std::mt19937_64 gen(73);
  const Eigen::MatrixXd X = oracle::random_sparse(gen, 40, 10, 0.3);
  const DocMatrix m = oracle::to_docmatrix(X);
  const auto a = kmeans(X, 4, 11), b = kmeans(SparseRows(m), 4, 11);
  EXPECT_EQ(a.assignment.labels, b.assignment.labels);
  EXPECT_NEAR(*a.assignment.inertia, *b.assignment.inertia, 1e-9);
}

TEST(KMeans, DeterministicAndSeparatesBlobs) {
  std::mt19937_64 gen(79);
  const Eigen::MatrixXd X = blobs(gen, 15, 10);
  const auto a = kmeans(X, 2, 5), b = kmeans(X, 2, 5);
  EXPECT_EQ(a.assignment.labels, b.assignment.labels);
  for (int i = 1; i < 15; ++i) EXPECT_EQ(a.assignment.labels[i], a.assignment.labels[0]);
  for (int i = 16; i < 30; ++i) EXPECT_EQ(a.assignment.labels[i], a.assignment.labels[15]);
  EXPECT_NE(a.assignment.labels[0], a.assignment.labels[15]);
}

TEST(KMeans, BadK) {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Ones(3, 2);
  EXPECT_THROW(kmeans(X, 4, 1), KTooLarge);
  EXPECT_THROW(kmeans(X, 0, 1), DomainError);
}

TEST(KMeans, TruncationLimitsCentroidSupport) {
  std::mt19937_64 gen(83);
  const Eigen::MatrixXd X = oracle::random_sparse(gen, 50, 30, 0.3);
  KMeansOptions opt;
  opt.truncation = TopC{5};
  const auto r = kmeans(X, 3, 2, opt);
  for (Eigen::Index k = 0; k < 3; ++k) EXPECT_LE((r.centroids.row(k).array() != 0).count(), 5);
}

TEST(MiniBatch, SeparatesBlobsAndIsDeterministic) {
  std::mt19937_64 gen(89);
  const Eigen::MatrixXd X = blobs(gen, 20, 10);
  MiniBatchOptions opt;
  opt.batch_size = 10;
  opt.iters = 50;
  const auto a = minibatch_kmeans(X, 2, 4, opt), b = minibatch_kmeans(X, 2, 4, opt);
  EXPECT_EQ(a.assignment.labels, b.assignment.labels);
  EXPECT_NE(a.assignment.labels[0], a.assignment.labels[20]);
  // distances are to the mini-batch centers, never below the cluster-mean SSE
  EXPECT_GE(*a.assignment.inertia + 1e-9, oracle::partition_sse(X, a.assignment.labels, 2));
}

TEST(Dbscan, MatchesReachabilityOracle) {
  std::mt19937_64 gen(97);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXd X = oracle::random_normal(gen, 40, 2);
    for (double eps : {0.2, 0.4, 0.7})
      for (std::size_t minpts : {2u, 3u, 5u}) {
        const auto a = dbscan_distance(X, eps, minpts);
        EXPECT_TRUE(oracle::dbscan_matches_reachability(adjacency(X, eps), minpts, a.labels))
            << "eps=" << eps << " minpts=" << minpts;
        a.validate();
      }
  }
}

TEST(Dbscan, SimilarityVariantAgreesWithDistance) {
  std::mt19937_64 gen(101);
  const Eigen::MatrixXd X = oracle::random_normal(gen, 30, 2);
  const auto n = X.rows();
  Eigen::MatrixXd S(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) S(i, j) = -(X.row(i) - X.row(j)).norm();
  EXPECT_EQ(dbscan_similarity(S, -0.5, 3).labels, dbscan_distance(X, 0.5, 3).labels);
}

TEST(SnnDbscan, MatchesReachabilityOnSnnGraph) {
  std::mt19937_64 gen(103);
  const Eigen::MatrixXd X = oracle::random_sparse(gen, 50, 20, 0.2);
  const DocMatrix m = oracle::to_docmatrix(X);
  const std::size_t K = 8;
  const SnnGraph g = build_snn_graph(m, K, Measure::Cosine);
  for (int eps : {2, 4, 6})
    for (std::size_t minpts : {2u, 4u}) {
      std::vector<std::vector<bool>> adj(g.size(), std::vector<bool>(g.size()));
      for (std::size_t p = 0; p < g.size(); ++p)
        for (std::size_t q = 0; q < g.size(); ++q) adj[p][q] = p != q && g.at(p, q) >= eps;
      const auto a = snn_dbscan(g, eps, minpts);
      EXPECT_TRUE(oracle::dbscan_matches_reachability(adj, minpts, a.labels)) << eps << " " << minpts;
    }
}

TEST(SnnDbscan, EpsMustBeBelowK) {
  std::mt19937_64 gen(107);
  const DocMatrix m = oracle::to_docmatrix(oracle::random_sparse(gen, 10, 5, 0.5));
  EXPECT_THROW(snn_dbscan(m, 3, Measure::Cosine, 3, 2), EpsNotBelowK);
}

TEST(Agglomerative, WardMergeCostsSumToSse) {
  std::mt19937_64 gen(109);
  const Eigen::MatrixXd X = oracle::random_normal(gen, 25, 3);
  for (int K : {1, 3, 6}) {
    const auto r = agglomerative(X, Linkage::Ward, K);
    double total = 0;
    for (const auto& m : r.merges) total += m.distance;
    EXPECT_NEAR(total, oracle::partition_sse(X, r.assignment.labels, r.assignment.K), 1e-9);
    EXPECT_EQ(r.assignment.K, K);
    EXPECT_EQ(r.merges.size(), static_cast<std::size_t>(25 - K));
  }
}

TEST(Agglomerative, SingleLinkageFollowsMinimumSpanningTree) {
  std::mt19937_64 gen(113);
  const Eigen::MatrixXd X = oracle::random_normal(gen, 20, 2);
  const auto r = agglomerative(X, Linkage::Single, 1);
  std::vector<double> got;
  for (const auto& m : r.merges) got.push_back(m.distance);
  const auto want = mst_weights(X);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
}

TEST(Agglomerative, LinkagesSeparateBlobsAndCap) {
  std::mt19937_64 gen(127);
  const Eigen::MatrixXd X = blobs(gen, 8, 10);
  for (auto l : {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward}) {
    const auto r = agglomerative(X, l, 2);
    std::vector<int> want(16, 0);
    for (int i = 8; i < 16; ++i) want[i] = 1;
    EXPECT_EQ(oracle::canonical(r.assignment.labels), want);
  }
  EXPECT_THROW(agglomerative(X, Linkage::Ward, 2, 10), TooManyDocuments);
  EXPECT_THROW(parse_linkage("median"), ConfigError);
}

TEST(ClusterAssignment, CompactAndValidate) {
  ClusterAssignment a;
  a.labels = {5, -1, 2, 5, 2, 9};
  a.K = 10;
  a.compact();
  EXPECT_EQ(a.labels, (std::vector<int>{0, -1, 1, 0, 1, 2}));
  EXPECT_EQ(a.K, 3);
  EXPECT_EQ(a.noise_count(), 1u);
  EXPECT_EQ(a.clusters()[1], (std::vector<std::size_t>{2, 4}));
  a.labels.push_back(3);
  EXPECT_THROW(a.validate(), DomainError);
}

}  // namespace
