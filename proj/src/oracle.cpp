#include "ymdn/oracle.hpp"

#include <set>

namespace ymdn {
namespace oracle {

namespace {

constexpr long long P = 2147483647LL;  // 2^31 - 1, prime

long long inv_mod(long long a) {
  long long r = 1, b = P - 2, base = ((a % P) + P) % P;
  while (b) {
    if (b & 1) r = r * base % P;
    base = base * base % P;
    b >>= 1;
  }
  return r;
}

/// Rank over GF(P) of a sparse matrix given as rows of (col, value).
int gf_rank(std::vector<std::vector<std::pair<int, int>>> rows, int ncols) {
  std::vector<std::vector<std::pair<int, long long>>> work;
  work.reserve(rows.size());
  for (auto& r : rows) {
    std::vector<std::pair<int, long long>> row;
    for (auto [c, v] : r) row.emplace_back(c, ((v % P) + P) % P);
    work.push_back(std::move(row));
  }
  std::vector<int> pivot_row_of_col(ncols, -1);
  std::vector<std::vector<long long>> dense_pivots;  // pivot rows, dense
  int rank = 0;
  for (auto& row : work) {
    std::vector<long long> acc(ncols, 0);
    for (auto [c, v] : row) acc[c] = (acc[c] + v) % P;
    for (int c = 0; c < ncols; ++c) {
      if (acc[c] == 0) continue;
      int pr = pivot_row_of_col[c];
      if (pr < 0) {
        long long s = inv_mod(acc[c]);
        for (int j = c; j < ncols; ++j) acc[j] = acc[j] * s % P;
        pivot_row_of_col[c] = static_cast<int>(dense_pivots.size());
        dense_pivots.push_back(std::move(acc));
        ++rank;
        break;
      }
      long long f = acc[c];
      const auto& prow = dense_pivots[pr];
      for (int j = c; j < ncols; ++j) acc[j] = (acc[j] - f * prow[j]) % P;
      for (int j = c; j < ncols; ++j) if (acc[j] < 0) acc[j] += P;
    }
  }
  return rank;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> incidence_rows(const SimplicialComplex& M, int k) {
  std::vector<std::vector<std::pair<int, int>>> rows;
  if (k < 0 || k >= M.dim) return rows;
  rows.resize(M.n_simplices(k + 1));
  for (int s = 0; s < M.n_simplices(k + 1); ++s) {
    const auto& tup = M.simplices[k + 1][s];
    for (size_t i = 0; i < tup.size(); ++i) {
      std::vector<int> face;
      for (size_t j = 0; j < tup.size(); ++j)
        if (j != i) face.push_back(tup[j]);
      int fi = M.find_simplex(k, face);
      int sgn = M.signs[k + 1][s] * ((i % 2 == 0) ? 1 : -1) * M.signs[k][fi];
      rows[s].emplace_back(fi, sgn);
    }
  }
  return rows;
}

int rank_d(const SimplicialComplex& M, int k) {
  if (k < 0 || k >= M.dim) return 0;
  return gf_rank(incidence_rows(M, k), M.n_simplices(k));
}

int betti(const SimplicialComplex& M, int k) {
  int nk = M.n_simplices(k);
  int rk = rank_d(M, k);
  int rkm1 = rank_d(M, k - 1);
  return (nk - rk) - rkm1;
}

int relative_betti(const SimplicialComplex& M, int k) {
  // Interior simplices per degree (not contained in the boundary).
  const int bd = M.dim - 1;
  std::vector<std::set<int>> bdry(M.dim + 1);
  std::vector<int> bfacets = M.boundary_facet_indices();
  for (int f : bfacets) bdry[bd].insert(f);
  // Every face of a boundary facet is a boundary simplex.
  for (int kk = bd; kk >= 1; --kk)
    for (int s : bdry[kk]) {
      const auto& tup = M.simplices[kk][s];
      for (size_t i = 0; i < tup.size(); ++i) {
        std::vector<int> face;
        for (size_t j = 0; j < tup.size(); ++j)
          if (j != i) face.push_back(tup[j]);
        bdry[kk - 1].insert(M.find_simplex(kk - 1, face));
      }
    }

  std::vector<std::vector<int>> interior(M.dim + 1);      // local -> global
  std::vector<std::vector<int>> local_of(M.dim + 1);      // global -> local or -1
  for (int kk = 0; kk <= M.dim; ++kk) {
    local_of[kk].assign(M.n_simplices(kk), -1);
    for (int s = 0; s < M.n_simplices(kk); ++s)
      if (!bdry[kk].count(s)) {
        local_of[kk][s] = static_cast<int>(interior[kk].size());
        interior[kk].push_back(s);
      }
  }

  auto restricted_rank = [&](int kk) -> int {
    if (kk < 0 || kk >= M.dim) return 0;
    auto rows = incidence_rows(M, kk);
    std::vector<std::vector<std::pair<int, int>>> sub;
    for (int s = 0; s < M.n_simplices(kk + 1); ++s) {
      if (bdry[kk + 1].count(s)) continue;
      std::vector<std::pair<int, int>> row;
      for (auto [c, v] : rows[s])
        if (local_of[kk][c] >= 0) row.emplace_back(local_of[kk][c], v);
      sub.push_back(std::move(row));
    }
    return gf_rank(std::move(sub), static_cast<int>(interior[kk].size()));
  };

  int nk = static_cast<int>(interior[k].size());
  return (nk - restricted_rank(k)) - restricted_rank(k - 1);
}

}  // namespace oracle
}  // namespace ymdn
