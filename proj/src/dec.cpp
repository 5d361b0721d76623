#include "ymdn/dec.hpp"

#include <array>
#include <set>

namespace ymdn {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SpMat coboundary(const SimplicialComplex& M, int k) {
  Triplets trips;
  for (int s = 0; s < M.n_simplices(k + 1); ++s) {
    const auto& tup = M.simplices[k + 1][s];
    for (size_t i = 0; i < tup.size(); ++i) {
      std::vector<int> face;
      for (size_t j = 0; j < tup.size(); ++j)
        if (j != i) face.push_back(tup[j]);
      int fi = M.find_simplex(k, face);
      double sgn = M.signs[k + 1][s] * ((i % 2 == 0) ? 1.0 : -1.0) * M.signs[k][fi];
      trips.emplace_back(s, fi, sgn);
    }
  }
  SpMat D(M.n_simplices(k + 1), M.n_simplices(k));
  D.setFromTriplets(trips.begin(), trips.end());
  return D;
}

struct CellGeometry {
  double volume;
  MatrixXd grad_dot;   // (n+1)x(n+1), pairwise dots of barycentric gradients
  MatrixXd lambda_int; // (n+1)x(n+1), integrals of lambda_a lambda_b
};

CellGeometry cell_geometry(const SimplicialComplex& M, int c) {
  const int n = M.dim;
  const auto& tup = M.simplices[n][c];
  MatrixXd E(M.vertices.cols(), n);
  for (int j = 1; j <= n; ++j)
    E.col(j - 1) = (M.vertices.row(tup[j]) - M.vertices.row(tup[0])).transpose();
  MatrixXd G = E.transpose() * E;
  double det = G.determinant();
  if (det <= 0.0) throw Error("degenerate simplex " + std::to_string(c) + " in " + M.id);
  double fact = 1.0;
  for (int j = 2; j <= n; ++j) fact *= j;

  CellGeometry geo;
  geo.volume = std::sqrt(det) / fact;
  MatrixXd B = G.inverse();

  geo.grad_dot = MatrixXd::Zero(n + 1, n + 1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) geo.grad_dot(i, j) = B(i - 1, j - 1);
  for (int j = 1; j <= n; ++j) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += B(i - 1, j - 1);
    geo.grad_dot(0, j) = geo.grad_dot(j, 0) = -s;
  }
  geo.grad_dot(0, 0) = B.sum();

  geo.lambda_int = MatrixXd::Constant(n + 1, n + 1, geo.volume / ((n + 1) * (n + 2)));
  geo.lambda_int.diagonal() *= 2.0;
  return geo;
}

// Whitney 0-form (hat) mass contribution of one cell.
void add_mass0(const SimplicialComplex& M, int c, const CellGeometry& geo, Triplets& out) {
  const auto& tup = M.simplices[M.dim][c];
  for (size_t a = 0; a < tup.size(); ++a)
    for (size_t b = 0; b < tup.size(); ++b)
      out.emplace_back(tup[a], tup[b], geo.lambda_int(a, b));
}

// Whitney 1-form mass: W_ab = lambda_a grad(lambda_b) - lambda_b grad(lambda_a),
// edges taken in ascending vertex order (matching stored orientation).
void add_mass1(const SimplicialComplex& M, int c, const CellGeometry& geo, Triplets& out) {
  const int n = M.dim;
  const auto& tup = M.simplices[n][c];
  const auto& I = geo.lambda_int;
  const auto& g = geo.grad_dot;
  std::vector<std::pair<int, int>> loc;  // local index pairs a<b
  std::vector<int> gid;
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      loc.emplace_back(a, b);
      gid.push_back(M.find_simplex(1, {tup[a], tup[b]}));
    }
  for (size_t e = 0; e < loc.size(); ++e)
    for (size_t f = 0; f < loc.size(); ++f) {
      auto [a, b] = loc[e];
      auto [cc, dd] = loc[f];
      double val = I(a, cc) * g(b, dd) - I(a, dd) * g(b, cc) - I(b, cc) * g(a, dd) +
                   I(b, dd) * g(a, cc);
      out.emplace_back(gid[e], gid[f], val);
    }
}

// Whitney 2-form mass on tetrahedra:
// W_abc = 2 (la gb x gc + lb gc x ga + lc ga x gb), with
// (u x v).(w x z) = (u.w)(v.z) - (u.z)(v.w) evaluated through grad_dot.
void add_mass2(const SimplicialComplex& M, int c, const CellGeometry& geo, Triplets& out) {
  const auto& tup = M.simplices[3][c];
  const auto& I = geo.lambda_int;
  const auto& g = geo.grad_dot;
  std::vector<std::array<int, 3>> loc;
  std::vector<int> gid;
  for (int a = 0; a <= 3; ++a)
    for (int b = a + 1; b <= 3; ++b)
      for (int d = b + 1; d <= 3; ++d) {
        loc.push_back({a, b, d});
        gid.push_back(M.find_simplex(2, {tup[a], tup[b], tup[d]}));
      }
  auto cyclic = [](const std::array<int, 3>& t) {
    return std::array<std::array<int, 3>, 3>{{{t[0], t[1], t[2]}, {t[1], t[2], t[0]}, {t[2], t[0], t[1]}}};
  };
  for (size_t e = 0; e < loc.size(); ++e)
    for (size_t f = 0; f < loc.size(); ++f) {
      double val = 0.0;
      for (const auto& p : cyclic(loc[e]))
        for (const auto& q : cyclic(loc[f]))
          val += I(p[0], q[0]) *
                 (g(p[1], q[1]) * g(p[2], q[2]) - g(p[1], q[2]) * g(p[2], q[1]));
      out.emplace_back(gid[e], gid[f], 4.0 * val);
    }
}

SpMat assemble_mass(const SimplicialComplex& M, int k) {
  const int n = M.dim;
  Triplets trips;
  if (k == n) {
    for (int c = 0; c < M.n_simplices(n); ++c) {
      double v = M.simplex_volume(n, c);
      trips.emplace_back(c, c, 1.0 / v);
    }
  } else {
    for (int c = 0; c < M.n_simplices(n); ++c) {
      auto geo = cell_geometry(M, c);
      if (k == 0) add_mass0(M, c, geo, trips);
      else if (k == 1) add_mass1(M, c, geo, trips);
      else add_mass2(M, c, geo, trips);
    }
  }
  SpMat A(M.n_simplices(k), M.n_simplices(k));
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

}  // namespace

VectorXd DecOperators::codifferential(int k, const VectorXd& v) const {
  if (k <= 0 || k > dim()) throw Error("codifferential degree out of range");
  return mass_ldlt_[k - 1]->solve(d[k - 1].transpose() * (mass[k] * v));
}

VectorXd DecOperators::mass_solve(int k, const VectorXd& b) const {
  return mass_ldlt_[k]->solve(b);
}

SpMat DecOperators::interior_injection(int k) const {
  Triplets trips;
  for (size_t i = 0; i < interior[k].size(); ++i)
    trips.emplace_back(interior[k][i], static_cast<int>(i), 1.0);
  SpMat R(count(k), static_cast<int>(interior[k].size()));
  R.setFromTriplets(trips.begin(), trips.end());
  return R;
}

DecOperators build_operators(std::shared_ptr<const SimplicialComplex> M) {
  M->validate();
  DecOperators ops;
  ops.complex = M;
  const int n = M->dim;

  for (int k = 0; k < n; ++k) ops.d.push_back(coboundary(*M, k));
  for (int k = 0; k <= n; ++k) ops.mass.push_back(assemble_mass(*M, k));
  for (int k = 0; k <= n; ++k) {
    auto f = std::make_shared<Eigen::SimplicialLDLT<SpMat>>();
    f->compute(ops.mass[k]);
    if (f->info() != Eigen::Success)
      throw Error("mass matrix factorization failed at degree " + std::to_string(k) + " in " +
                  M->id + " (degenerate simplex?)");
    ops.mass_ldlt_.push_back(f);
  }

  ops.boundary = boundary_complex(*M);
  const auto& B = ops.boundary;
  for (int k = 0; k < n; ++k) {
    Triplets trips;
    if (k <= B.complex.dim && !B.index_map.empty() && k < static_cast<int>(B.index_map.size()))
      for (size_t i = 0; i < B.index_map[k].size(); ++i)
        trips.emplace_back(static_cast<int>(i), B.index_map[k][i],
                           static_cast<double>(B.sign_map[k][i]));
    SpMat T(k <= B.complex.dim && B.complex.n_vertices() > 0 ? B.complex.n_simplices(k) : 0,
            M->n_simplices(k));
    T.setFromTriplets(trips.begin(), trips.end());
    ops.trace.push_back(T);
  }

  ops.interior.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    std::set<int> on_bdry;
    if (B.complex.n_vertices() > 0 && k < static_cast<int>(B.index_map.size()))
      on_bdry.insert(B.index_map[k].begin(), B.index_map[k].end());
    for (int s = 0; s < M->n_simplices(k); ++s)
      if (!on_bdry.count(s)) ops.interior[k].push_back(s);
  }

  if (B.complex.n_vertices() > 0)
    ops.boundary_ops = std::make_shared<DecOperators>(
        build_operators(std::make_shared<SimplicialComplex>(B.complex)));
  return ops;
}

double bracket(const DecOperators& sigma_ops, const BoundaryDatum& a, const BoundaryDatum& b) {
  if (a.phiD.complex_id != b.phiD.complex_id)
    throw Error("bracket: mismatched complexes");
  if (a.phiD.values.size() != sigma_ops.count(1) || b.phiN.values.size() != sigma_ops.count(1))
    throw Error("bracket: cochain size mismatch");
  return a.phiD.values.dot(sigma_ops.mass[1] * b.phiN.values);
}

Cochain extend_collar(const DecOperators& ops, const Cochain& phi_boundary) {
  const int k = phi_boundary.degree;
  if (ops.trace.empty() || ops.trace[k].rows() != phi_boundary.values.size())
    throw Error("extend_collar: boundary cochain size mismatch");
  Cochain out;
  out.complex_id = ops.complex->id;
  out.degree = k;
  out.values = ops.trace[k].transpose() * phi_boundary.values;
  return out;
}

}  // namespace ymdn
