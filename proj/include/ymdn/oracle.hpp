#ifndef YMDN_ORACLE_HPP
#define YMDN_ORACLE_HPP

#include "ymdn/mesh.hpp"

namespace ymdn {

/// Integer-arithmetic rank/Betti oracle over the signed incidence matrices.
/// Ranks are computed by Gaussian elimination over GF(p), p = 2^31 - 1,
/// which agrees with the rational rank whenever the complex has no
/// p-torsion (all complexes in this project are orientable surfaces, balls,
/// and products thereof, which are torsion-free). Entirely independent of
/// the metric/mass-matrix code paths.
namespace oracle {

/// Signed incidence matrix d_k as integer triplets (row: (k+1)-simplex).
std::vector<std::vector<std::pair<int, int>>> incidence_rows(const SimplicialComplex& M, int k);

/// Rank of d_k over GF(2^31 - 1).
int rank_d(const SimplicialComplex& M, int k);

/// Absolute Betti number b_k = dim ker d_k - rank d_{k-1}.
int betti(const SimplicialComplex& M, int k);

/// Relative Betti number of (M, boundary): same computation on the
/// subcomplex of simplices not contained in the boundary.
int relative_betti(const SimplicialComplex& M, int k);

}  // namespace oracle
}  // namespace ymdn

#endif
