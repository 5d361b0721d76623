#ifndef YMDN_HODGE_HPP
#define YMDN_HODGE_HPP

#include "ymdn/dec.hpp"

namespace ymdn {

/// Degree-tagged list of basis cochains, M_k-orthonormal, in deterministic
/// normal form (pivot entries positive, columns ordered by pivot index).
struct Subspace {
  std::string complex_id;
  int degree = 0;
  std::string tag;
  MatrixXd basis;  // columns

  int dimension() const { return static_cast<int>(basis.cols()); }
};

/// The four summands of the boundary-conditioned decomposition of a
/// k-cochain: omega = e_D + h_N + h_E + c_N with
///   e_D in d(trace-zero (k-1)-cochains),
///   h_N harmonic with vanishing normal trace (variationally),
///   h_E harmonic and exact,
///   c_N the orthogonal remainder (coexact with vanishing tangential
///   normal data, realized as the complement).
struct HmfSplit {
  Cochain e_D, h_N, h_E, c_N;
};

/// Harmonic fields: closed, and coclosed against every trace-zero
/// (k-1)-cochain. On a closed complex this is ker d_k intersect ker delta_k.
Subspace harmonic_fields(const DecOperators& ops, int k, double tol_rank = 1e-10);

/// Harmonic fields with vanishing normal trace: ker d_k intersect
/// (ran d_{k-1})-perp in M_k. Dimension equals the k-th Betti number.
Subspace harmonic_neumann(const DecOperators& ops, int k, double tol_rank = 1e-10);

/// Harmonic fields of the trace-zero subcomplex. Dimension equals the
/// k-th relative Betti number.
Subspace harmonic_dirichlet(const DecOperators& ops, int k, double tol_rank = 1e-10);

HmfSplit hmf_decompose(const DecOperators& ops, int k, const Cochain& omega,
                       double tol_rank = 1e-10);

/// Closed-complex Hodge decomposition (exact, harmonic, coexact).
struct HodgeSplit {
  Cochain exact, harmonic, coexact;
};
HodgeSplit hodge_decompose_closed(const DecOperators& sigma_ops, int k, const Cochain& phi,
                                  double tol_rank = 1e-10);

/// M_k-orthogonal projector onto ker delta_k (coclosed k-cochains) of a
/// closed complex.
class CoclosedProjector {
 public:
  VectorXd apply(const VectorXd& v) const;
  MatrixXd matrix() const;
  int rank() const { return static_cast<int>(coclosed_.cols()); }
  const MatrixXd& coclosed_basis() const { return coclosed_; }

 private:
  MatrixXd exact_;     // M-orthonormal basis of ran d_{k-1}
  MatrixXd coclosed_;  // M-orthonormal basis of the complement
  SpMat mass_;
  friend CoclosedProjector coclosed_projector(const DecOperators&, int, double);
};

CoclosedProjector coclosed_projector(const DecOperators& sigma_ops, int k,
                                     double tol_rank = 1e-10);

/// M-orthonormal basis of ker delta_k on a closed complex.
Subspace coclosed_subspace(const DecOperators& sigma_ops, int k, double tol_rank = 1e-10);

}  // namespace ymdn

#endif
