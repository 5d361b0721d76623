#include "ymdn/hodge.hpp"

namespace ymdn {

namespace {

Subspace make_subspace(const DecOperators& ops, int k, std::string tag, MatrixXd span_cols,
                       double tol) {
  Subspace s;
  s.complex_id = ops.complex->id;
  s.degree = k;
  s.tag = std::move(tag);
  s.basis = canonicalize_basis(mgs_orthonormalize(span_cols, ops.mass[k], tol));
  return s;
}

MatrixXd stack(const std::vector<MatrixXd>& blocks, int cols) {
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  MatrixXd out(rows, cols);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

// Each constraint block scaled to unit max entry so the joint rank cutoff
// treats the blocks evenly.
MatrixXd normalized(MatrixXd A) {
  if (A.rows() == 0 || A.cols() == 0) return A;
  double m = A.cwiseAbs().maxCoeff();
  if (m > 0) A /= m;
  return A;
}

/// Intersection of two subspaces given by M-orthonormal bases.
MatrixXd intersect_subspaces(const MatrixXd& U, const MatrixXd& W, const SpMat& M, double tol) {
  if (U.cols() == 0 || W.cols() == 0) return MatrixXd(U.rows(), 0);
  MatrixXd B(U.rows(), U.cols() + W.cols());
  B << U, -W;
  MatrixXd N = nullspace(B, tol);
  MatrixXd inter = U * N.topRows(U.cols());
  return mgs_orthonormalize(inter, M, tol);
}

VectorXd project(const MatrixXd& Q, const SpMat& M, const VectorXd& v) {
  if (Q.cols() == 0) return VectorXd::Zero(v.size());
  return Q * (Q.transpose() * (M * v));
}

}  // namespace

Subspace harmonic_fields(const DecOperators& ops, int k, double tol) {
  std::vector<MatrixXd> rows;
  if (k < ops.dim()) rows.push_back(normalized(MatrixXd(ops.d[k])));
  if (k > 0) {
    SpMat R = ops.interior_injection(k - 1);
    rows.push_back(normalized(MatrixXd((ops.d[k - 1] * R).transpose() * ops.mass[k])));
  }
  MatrixXd C = stack(rows, ops.count(k));
  return make_subspace(ops, k, "H", nullspace(C, tol), tol);
}

Subspace harmonic_neumann(const DecOperators& ops, int k, double tol) {
  std::vector<MatrixXd> rows;
  if (k < ops.dim()) rows.push_back(normalized(MatrixXd(ops.d[k])));
  if (k > 0)
    rows.push_back(normalized(MatrixXd(ops.d[k - 1]).transpose() * MatrixXd(ops.mass[k])));
  MatrixXd C = stack(rows, ops.count(k));
  return make_subspace(ops, k, "H_N", nullspace(C, tol), tol);
}

Subspace harmonic_dirichlet(const DecOperators& ops, int k, double tol) {
  SpMat Rk = ops.interior_injection(k);
  std::vector<MatrixXd> rows;
  if (k < ops.dim()) rows.push_back(normalized(MatrixXd(ops.d[k] * Rk)));
  if (k > 0) {
    SpMat Rkm = ops.interior_injection(k - 1);
    rows.push_back(normalized(MatrixXd((ops.d[k - 1] * Rkm).transpose() * ops.mass[k] * Rk)));
  }
  MatrixXd C = stack(rows, static_cast<int>(Rk.cols()));
  MatrixXd local = nullspace(C, tol);
  return make_subspace(ops, k, "H_D", MatrixXd(Rk) * local, tol);
}

namespace {

struct HmfBases {
  MatrixXd exact_d;  // d of trace-zero (k-1)-cochains
  MatrixXd h_n;      // harmonic, vanishing normal trace
  MatrixXd h_e;      // harmonic and exact
};

HmfBases hmf_bases(const DecOperators& ops, int k, double tol) {
  HmfBases b;
  const SpMat& M = ops.mass[k];
  if (k > 0) {
    SpMat R = ops.interior_injection(k - 1);
    b.exact_d = mgs_orthonormalize(MatrixXd(ops.d[k - 1] * R), M, tol);
    MatrixXd full_exact = mgs_orthonormalize(MatrixXd(ops.d[k - 1]), M, tol);
    b.h_e = intersect_subspaces(harmonic_fields(ops, k, tol).basis, full_exact, M, tol);
  } else {
    b.exact_d = MatrixXd(ops.count(k), 0);
    b.h_e = MatrixXd(ops.count(k), 0);
  }
  b.h_n = harmonic_neumann(ops, k, tol).basis;
  return b;
}

}  // namespace

HmfSplit hmf_decompose(const DecOperators& ops, int k, const Cochain& omega, double tol) {
  if (omega.values.size() != ops.count(k)) throw Error("hmf_decompose: size mismatch");
  auto bases = hmf_bases(ops, k, tol);
  const SpMat& M = ops.mass[k];

  HmfSplit out;
  auto mk = [&](VectorXd v) { return Cochain{ops.complex->id, k, std::move(v)}; };
  VectorXd e = project(bases.exact_d, M, omega.values);
  VectorXd hn = project(bases.h_n, M, omega.values);
  VectorXd he = project(bases.h_e, M, omega.values);
  out.e_D = mk(e);
  out.h_N = mk(hn);
  out.h_E = mk(he);
  out.c_N = mk(omega.values - e - hn - he);
  return out;
}

HodgeSplit hodge_decompose_closed(const DecOperators& ops, int k, const Cochain& phi,
                                  double tol) {
  if (!ops.complex->is_closed()) throw Error("hodge_decompose_closed: complex has boundary");
  if (phi.values.size() != ops.count(k)) throw Error("hodge_decompose_closed: size mismatch");
  const SpMat& M = ops.mass[k];
  MatrixXd exact =
      k > 0 ? mgs_orthonormalize(MatrixXd(ops.d[k - 1]), M, tol) : MatrixXd(ops.count(k), 0);
  MatrixXd H = harmonic_fields(ops, k, tol).basis;

  HodgeSplit out;
  auto mk = [&](VectorXd v) { return Cochain{ops.complex->id, k, std::move(v)}; };
  VectorXd e = project(exact, M, phi.values);
  VectorXd h = project(H, M, phi.values);
  out.exact = mk(e);
  out.harmonic = mk(h);
  out.coexact = mk(phi.values - e - h);
  return out;
}

VectorXd CoclosedProjector::apply(const VectorXd& v) const {
  if (exact_.cols() == 0) return v;
  return v - exact_ * (exact_.transpose() * (mass_ * v));
}

MatrixXd CoclosedProjector::matrix() const {
  MatrixXd I = MatrixXd::Identity(exact_.rows(), exact_.rows());
  if (exact_.cols() == 0) return I;
  return I - exact_ * (exact_.transpose() * (mass_ * I));
}

CoclosedProjector coclosed_projector(const DecOperators& ops, int k, double tol) {
  if (!ops.complex->is_closed()) throw Error("coclosed_projector: complex has boundary");
  CoclosedProjector P;
  P.mass_ = ops.mass[k];
  P.exact_ = k > 0 ? mgs_orthonormalize(MatrixXd(ops.d[k - 1]), ops.mass[k], tol)
                   : MatrixXd(ops.count(k), 0);
  MatrixXd delta_rows = k > 0 ? MatrixXd(MatrixXd(ops.d[k - 1]).transpose() * ops.mass[k])
                              : MatrixXd(0, ops.count(k));
  P.coclosed_ = canonicalize_basis(
      mgs_orthonormalize(nullspace(normalized(delta_rows), tol), ops.mass[k], tol));
  return P;
}

Subspace coclosed_subspace(const DecOperators& ops, int k, double tol) {
  auto P = coclosed_projector(ops, k, tol);
  Subspace s;
  s.complex_id = ops.complex->id;
  s.degree = k;
  s.tag = "KER_COCLOSED";
  s.basis = P.coclosed_basis();
  return s;
}

}  // namespace ymdn
