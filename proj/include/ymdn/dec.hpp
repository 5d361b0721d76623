#ifndef YMDN_DEC_HPP
#define YMDN_DEC_HPP

#include <memory>

#include "ymdn/mesh.hpp"

namespace ymdn {

/// Real coefficient vector on the oriented k-simplices of a named complex.
struct Cochain {
  std::string complex_id;
  int degree = 0;
  VectorXd values;
};

/// Dirichlet/Neumann pair of boundary 1-cochains.
struct BoundaryDatum {
  Cochain phiD;
  Cochain phiN;
};

/// Coboundaries d_k, Whitney-Galerkin mass matrices M_k, codifferentials
/// delta_k = M_{k-1}^{-1} d_{k-1}^T M_k, and boundary trace matrices.
/// Immutable after build; factorizations are cached and safe to share
/// read-only across threads.
class DecOperators {
 public:
  std::shared_ptr<const SimplicialComplex> complex;
  std::vector<SpMat> d;     // d[k]: N_{k+1} x N_k, k = 0..dim-1, entries in {-1,0,1}
  std::vector<SpMat> mass;  // mass[k]: N_k x N_k, SPD

  BoundaryComplex boundary;                 // induced boundary complex + index maps
  std::shared_ptr<DecOperators> boundary_ops;  // null when the boundary is empty
  std::vector<SpMat> trace;                 // trace[k]: N_k(dM) x N_k(M), one +-1 per row

  std::vector<std::vector<int>> interior;   // [k]: k-simplices not on the boundary

  int dim() const { return complex->dim; }
  int count(int k) const { return complex->n_simplices(k); }

  VectorXd apply_d(int k, const VectorXd& v) const { return d[k] * v; }
  /// delta_k = M_{k-1}^{-1} d_{k-1}^T M_k (strong codifferential).
  VectorXd codifferential(int k, const VectorXd& v) const;
  /// Solve M_k x = b through the cached factorization.
  VectorXd mass_solve(int k, const VectorXd& b) const;

  /// Injection matrix of the interior k-simplex subspace (N_k x n_interior).
  SpMat interior_injection(int k) const;

 private:
  std::vector<std::shared_ptr<Eigen::SimplicialLDLT<SpMat>>> mass_ldlt_;
  friend DecOperators build_operators(std::shared_ptr<const SimplicialComplex> M);
};

DecOperators build_operators(std::shared_ptr<const SimplicialComplex> M);
inline DecOperators build_operators(const SimplicialComplex& M) {
  return build_operators(std::make_shared<SimplicialComplex>(M));
}

/// [a,b]_Sigma = <a.phiD, b.phiN> in the M_1(Sigma) inner product.
double bracket(const DecOperators& sigma_ops, const BoundaryDatum& a, const BoundaryDatum& b);

/// Extension of a boundary k-cochain into M supported on the first collar
/// layer (sharp cutoff): the trace is reproduced exactly and every
/// coefficient off the boundary is zero.
Cochain extend_collar(const DecOperators& ops, const Cochain& phi_boundary);

}  // namespace ymdn

#endif
