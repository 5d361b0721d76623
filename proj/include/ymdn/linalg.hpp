#ifndef YMDN_LINALG_HPP
#define YMDN_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace ymdn {

using SpMat = Eigen::SparseMatrix<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline double mass_dot(const SpMat& M, const VectorXd& a, const VectorXd& b) {
  return a.dot(M * b);
}

inline double mass_norm(const SpMat& M, const VectorXd& a) {
  double s = mass_dot(M, a, a);
  return s > 0.0 ? std::sqrt(s) : 0.0;
}

/// M-orthonormal basis of span(cols) by modified Gram-Schmidt with
/// re-orthogonalization. Columns whose remainder drops below
/// tol * (largest incoming norm) are treated as dependent and dropped.
inline MatrixXd mgs_orthonormalize(const MatrixXd& cols, const SpMat& M, double tol = 1e-10) {
  if (cols.cols() == 0) return MatrixXd(cols.rows(), 0);
  double scale = 0.0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) scale = std::max(scale, mass_norm(M, cols.col(j)));
  if (scale == 0.0) return MatrixXd(cols.rows(), 0);

  MatrixXd Q(cols.rows(), cols.cols());
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    VectorXd v = cols.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < r; ++i) v -= mass_dot(M, Q.col(i), v) * Q.col(i);
    double nv = mass_norm(M, v);
    if (nv > tol * scale) Q.col(r++) = v / nv;
  }
  return Q.leftCols(r);
}

/// Euclidean-orthonormal right null space of a dense matrix, rank cutoff
/// at tol * sigma_max.
inline MatrixXd nullspace(const MatrixXd& A, double tol = 1e-10) {
  if (A.rows() == 0) return MatrixXd::Identity(A.cols(), A.cols());
  Eigen::BDCSVD<MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

inline Eigen::Index dense_rank(const MatrixXd& A, double tol = 1e-10) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  Eigen::BDCSVD<MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  double smax = sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax) ++rank;
  return rank;
}

/// max over columns of Q1 of the M-norm distance to span(Q2); both bases
/// M-orthonormal. This is the sine of the largest principal angle from
/// span(Q1) into span(Q2).
inline double max_sin_angle(const MatrixXd& Q1, const MatrixXd& Q2, const SpMat& M) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < Q1.cols(); ++j) {
    VectorXd q = Q1.col(j);
    VectorXd r = q;
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < Q2.cols(); ++i) r -= mass_dot(M, Q2.col(i), r) * Q2.col(i);
    worst = std::max(worst, mass_norm(M, r));
  }
  return worst;
}

/// Symmetric subspace distance: max of the two one-sided sines.
inline double subspace_gap(const MatrixXd& Q1, const MatrixXd& Q2, const SpMat& M) {
  return std::max(max_sin_angle(Q1, Q2, M), max_sin_angle(Q2, Q1, M));
}

/// Deterministic basis normal form: each column's largest-|entry| made
/// positive, columns sorted by the row index of that entry.
inline MatrixXd canonicalize_basis(MatrixXd Q) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> order;  // (pivot row, col)
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    Eigen::Index piv = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < Q.rows(); ++i)
      if (std::abs(Q(i, j)) > best) { best = std::abs(Q(i, j)); piv = i; }
    if (Q(piv, j) < 0) Q.col(j) *= -1.0;
    order.emplace_back(piv, j);
  }
  std::sort(order.begin(), order.end());
  MatrixXd R(Q.rows(), Q.cols());
  for (Eigen::Index j = 0; j < Q.cols(); ++j) R.col(j) = Q.col(order[j].second);
  return R;
}

inline SpMat identity_sparse(Eigen::Index n) {
  SpMat I(n, n);
  I.setIdentity();
  return I;
}

}  // namespace ymdn

#endif
