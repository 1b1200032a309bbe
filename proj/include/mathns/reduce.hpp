#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "mathns/assignment.hpp"
#include "mathns/error.hpp"
#include "mathns/idspace.hpp"
#include "mathns/rng.hpp"

namespace mathns {

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

inline SparseRowMatrix to_sparse(const DocMatrix& m) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(m.nnz());
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    const auto idx = m.row_indices(i);
    const auto val = m.row_values(i);
    for (std::size_t k = 0; k < idx.size(); ++k)
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(idx[k]), val[k]);
  }
  SparseRowMatrix s(static_cast<Eigen::Index>(m.n_rows()), static_cast<Eigen::Index>(m.n_cols()));
  s.setFromTriplets(triplets.begin(), triplets.end());
  return s;
}

// ---------------------------------------------------------------------------
// Randomized SVD
// ---------------------------------------------------------------------------

/// A ≈ U diag(S) Vᵀ with U (m×k), V (n×k) orthonormal columns and S
/// non-increasing. For a doc-major matrix, rows of U·diag(S) are the
/// document embeddings.
struct SvdFactors {
  Eigen::MatrixXd U;
  Eigen::VectorXd S;
  Eigen::MatrixXd V;
  int power_iterations = 0;

  Eigen::MatrixXd embedding() const { return U * S.asDiagonal(); }
  Eigen::MatrixXd reconstruct() const { return U * S.asDiagonal() * V.transpose(); }
};

struct SvdOptions {
  int oversample = 10;
  int power_iters = 2;      ///< minimum number of subspace iterations
  double tol = 1e-13;       ///< stop once top-k Ritz values move < tol*s1; <= 0 disables
  int max_power_iters = 300;
};

namespace detail {

inline Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& Y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(Y.rows(), Y.cols());
}

inline Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

}  // namespace detail

/// Range-finder SVD: Gaussian sketch with `oversample` extra columns, then
/// subspace iteration, then an exact SVD of the projected l×n matrix.
template <class Matrix>
SvdFactors randomized_svd(const Matrix& A, int k, std::uint64_t seed, const SvdOptions& opt = {}) {
  const Eigen::Index m = A.rows(), n = A.cols();
  const Eigen::Index r = std::min(m, n);
  if (k < 1 || k > r) {
    throw RankTooLarge("k=" + std::to_string(k) + " not in [1, " + std::to_string(r) + "]");
  }
  const Eigen::Index l = std::min<Eigen::Index>(k + std::max(opt.oversample, 0), r);
  Eigen::MatrixXd Q = detail::orthonormalize(A * detail::gaussian_matrix(n, l, seed));

  Eigen::VectorXd prev;
  int it = 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  for (;;) {
    const bool more = it < opt.power_iters;
    if (!more) {
      svd.compute(Q.transpose() * A, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::VectorXd s = svd.singularValues().head(k);
      if (opt.tol <= 0 || it >= opt.max_power_iters) break;
      if (prev.size() == k && s.size() > 0 && (s - prev).cwiseAbs().maxCoeff() <= opt.tol * s(0)) break;
      prev = s;
    }
    const Eigen::MatrixXd Z = detail::orthonormalize(A.transpose() * Q);
    Q = detail::orthonormalize(A * Z);
    ++it;
  }
  SvdFactors f;
  f.U = Q * svd.matrixU().leftCols(k);
  f.S = svd.singularValues().head(k);
  f.V = svd.matrixV().leftCols(k);
  f.power_iterations = it;
  // fix signs: the largest-magnitude entry of each left vector is positive
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index arg = 0;
    f.U.col(j).cwiseAbs().maxCoeff(&arg);
    if (f.U(arg, j) < 0) {
      f.U.col(j) *= -1.0;
      f.V.col(j) *= -1.0;
    }
  }
  return f;
}

inline SvdFactors randomized_svd(const DocMatrix& D, int k, std::uint64_t seed, const SvdOptions& opt = {}) {
  return randomized_svd(to_sparse(D), k, seed, opt);
}

/// Rank-k document embeddings (one row per document).
inline Eigen::MatrixXd lsa_embed(const DocMatrix& D, int k, std::uint64_t seed, const SvdOptions& opt = {}) {
  return randomized_svd(D, k, seed, opt).embedding();
}

// ---------------------------------------------------------------------------
// NMF
// ---------------------------------------------------------------------------

/// X (docs × dims) ≈ doc_factors · term_factorsᵀ, all entries ≥ 0.
struct NmfFactors {
  Eigen::MatrixXd doc_factors;   ///< docs × k
  Eigen::MatrixXd term_factors;  ///< dims × k
  std::vector<double> objective_trace;  ///< Frobenius error, initial value first
};

struct NmfOptions {
  int max_iters = 200;
  double tol = 1e-4;
  /// Called after initialization (iteration 0) and after every update.
  std::function<void(int, const Eigen::MatrixXd&, const Eigen::MatrixXd&)> observer;
};

namespace detail {

template <class Matrix>
double nmf_error(const Matrix& X, double x_sq, const Eigen::MatrixXd& W, const Eigen::MatrixXd& H) {
  const Eigen::MatrixXd XH = X * H;
  const double cross = (W.array() * XH.array()).sum();
  const double model = ((W.transpose() * W).array() * (H.transpose() * H).array()).sum();
  return std::sqrt(std::max(0.0, x_sq - 2.0 * cross + model));
}

template <class Matrix>
bool has_negative(const Matrix& X) {
  if constexpr (std::is_base_of_v<Eigen::SparseMatrixBase<Matrix>, Matrix>) {
    for (int o = 0; o < X.outerSize(); ++o)
      for (typename Matrix::InnerIterator it(X, o); it; ++it)
        if (it.value() < 0) return true;
    return false;
  } else {
    return (X.array() < 0).any();
  }
}

template <class Matrix>
double mean_entry(const Matrix& X) {
  const double cells = static_cast<double>(X.rows()) * static_cast<double>(X.cols());
  if (cells == 0) return 0;
  if constexpr (std::is_base_of_v<Eigen::SparseMatrixBase<Matrix>, Matrix>) {
    double s = 0;
    for (int o = 0; o < X.outerSize(); ++o)
      for (typename Matrix::InnerIterator it(X, o); it; ++it) s += it.value();
    return s / cells;
  } else {
    return X.sum() / cells;
  }
}

}  // namespace detail

/// Lee-Seung multiplicative updates for the Frobenius loss. Factors start
/// at Uniform(0,1)·mean(X)/k; iteration stops after `max_iters` updates or
/// once the relative objective improvement drops below `tol`.
template <class Matrix>
NmfFactors nmf(const Matrix& X, int k, std::uint64_t seed, const NmfOptions& opt = {}) {
  if (k < 1) throw RankTooLarge("NMF rank must be at least 1");
  if (detail::has_negative(X)) throw NegativeInput("NMF input has negative entries");
  const Eigen::Index n = X.rows(), d = X.cols();
  const double scale = detail::mean_entry(X) / k;
  Rng rng(seed);
  NmfFactors f;
  f.doc_factors.resize(n, k);
  f.term_factors.resize(d, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < n; ++i) f.doc_factors(i, j) = rng.uniform() * scale;
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < d; ++i) f.term_factors(i, j) = rng.uniform() * scale;

  constexpr double tiny = std::numeric_limits<double>::min();
  const double x_sq = X.squaredNorm();
  Eigen::MatrixXd& W = f.doc_factors;
  Eigen::MatrixXd& H = f.term_factors;
  f.objective_trace.push_back(detail::nmf_error(X, x_sq, W, H));
  if (opt.observer) opt.observer(0, W, H);
  for (int it = 1; it <= opt.max_iters; ++it) {
    const Eigen::MatrixXd XH = X * H;
    const Eigen::MatrixXd WHH = W * (H.transpose() * H);
    W = (W.array() * XH.array() / (WHH.array() + tiny)).matrix();
    const Eigen::MatrixXd XtW = X.transpose() * W;
    const Eigen::MatrixXd HWW = H * (W.transpose() * W);
    H = (H.array() * XtW.array() / (HWW.array() + tiny)).matrix();
    const double prev = f.objective_trace.back();
    const double cur = detail::nmf_error(X, x_sq, W, H);
    f.objective_trace.push_back(cur);
    if (opt.observer) opt.observer(it, W, H);
    if (prev <= 0 || (prev - cur) / prev < opt.tol) break;
  }
  return f;
}

inline NmfFactors nmf(const DocMatrix& D, int k, std::uint64_t seed, const NmfOptions& opt = {}) {
  return nmf(to_sparse(D), k, seed, opt);
}

/// Scales column j of the document factors by the norm of term factor
/// column j, then assigns each document to its argmax column (ties to the
/// lowest index).
inline ClusterAssignment nmf_assign(const NmfFactors& f) {
  const Eigen::Index k = f.doc_factors.cols();
  Eigen::MatrixXd V = f.doc_factors;
  for (Eigen::Index j = 0; j < k; ++j) V.col(j) *= f.term_factors.col(j).norm();
  ClusterAssignment a;
  a.K = static_cast<int>(k);
  a.labels.resize(static_cast<std::size_t>(V.rows()));
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < k; ++j)
      if (V(i, j) > V(i, best)) best = j;
    a.labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return a;
}

}  // namespace mathns
