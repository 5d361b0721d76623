#include "ymdn/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace ymdn {

namespace {

// Sign of the permutation taking `tuple` to ascending order; 0 on repeats.
int sort_parity(std::vector<int>& tuple) {
  int sign = 1;
  for (size_t i = 0; i < tuple.size(); ++i)
    for (size_t j = i + 1; j < tuple.size(); ++j) {
      if (tuple[i] == tuple[j]) return 0;
      if (tuple[i] > tuple[j]) {
        std::swap(tuple[i], tuple[j]);
        sign = -sign;
      }
    }
  return sign;
}

std::vector<int> drop_entry(const std::vector<int>& tuple, size_t i) {
  std::vector<int> out;
  out.reserve(tuple.size() - 1);
  for (size_t j = 0; j < tuple.size(); ++j)
    if (j != i) out.push_back(tuple[j]);
  return out;
}

}  // namespace

int SimplicialComplex::euler_characteristic() const {
  int chi = 0;
  for (int k = 0; k <= dim; ++k) chi += (k % 2 == 0 ? 1 : -1) * n_simplices(k);
  return chi;
}

bool SimplicialComplex::is_closed() const { return boundary_facet_indices().empty(); }

int SimplicialComplex::find_simplex(int k, const std::vector<int>& ascending) const {
  auto it = lookup_[k].find(ascending);
  return it == lookup_[k].end() ? -1 : it->second;
}

std::vector<int> SimplicialComplex::boundary_facet_indices() const {
  if (dim == 0) return {};
  std::vector<int> count(n_simplices(dim - 1), 0);
  for (const auto& cell : simplices[dim])
    for (size_t i = 0; i < cell.size(); ++i) count[find_simplex(dim - 1, drop_entry(cell, i))]++;
  std::vector<int> out;
  for (int f = 0; f < n_simplices(dim - 1); ++f)
    if (count[f] == 1) out.push_back(f);
  return out;
}

int SimplicialComplex::induced_facet_sign(int facet_index) const {
  const auto& facet = simplices[dim - 1][facet_index];
  for (int c = 0; c < n_simplices(dim); ++c) {
    const auto& cell = simplices[dim][c];
    for (size_t i = 0; i < cell.size(); ++i)
      if (drop_entry(cell, i) == facet)
        return signs[dim][c] * ((i % 2 == 0) ? 1 : -1) * signs[dim - 1][facet_index];
  }
  throw Error("facet " + std::to_string(facet_index) + " has no incident cell");
}

const std::vector<int>& SimplicialComplex::component_facets(const std::string& label) const {
  for (const auto& [name, facets] : boundary_components)
    if (name == label) return facets;
  throw Error("unknown boundary component '" + label + "' in " + id);
}

double SimplicialComplex::simplex_volume(int k, int index) const {
  if (k == 0) return 1.0;
  const auto& s = simplices[k][index];
  MatrixXd E(vertices.cols(), k);
  for (int j = 1; j <= k; ++j) E.col(j - 1) = (vertices.row(s[j]) - vertices.row(s[0])).transpose();
  MatrixXd G = E.transpose() * E;
  double det = G.determinant();
  if (det <= 0.0) return 0.0;
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  return std::sqrt(det) / fact;
}

SimplicialComplex SimplicialComplex::from_cells(
    std::string id, int dim, MatrixXd vertices,
    const std::vector<std::vector<int>>& oriented_cells,
    std::vector<std::pair<std::string, std::vector<int>>> boundary_labels,
    MetricSource metric_source) {
  if (dim < 1 || dim > 3) throw Error("unsupported dimension " + std::to_string(dim));
  if (oriented_cells.empty()) throw Error("parse error: empty cell list");

  SimplicialComplex M;
  M.id = std::move(id);
  M.dim = dim;
  M.metric_source = metric_source;
  M.vertices = std::move(vertices);
  M.simplices.resize(dim + 1);
  M.signs.resize(dim + 1);
  M.lookup_.resize(dim + 1);

  const int nv = M.n_vertices();
  std::vector<std::pair<std::vector<int>, int>> cells;  // (ascending, sign)
  for (auto cell : oriented_cells) {
    if (static_cast<int>(cell.size()) != dim + 1) throw Error("cell arity mismatch in " + M.id);
    for (int v : cell)
      if (v < 0 || v >= nv) throw Error("cell vertex out of range in " + M.id);
    int sign = sort_parity(cell);
    if (sign == 0) throw Error("degenerate cell (repeated vertex) in " + M.id);
    cells.emplace_back(std::move(cell), sign);
  }

  // Lexicographic enumeration of every k-face of every cell.
  for (int k = 0; k < dim; ++k) {
    std::set<std::vector<int>> faces;
    std::vector<int> mask(dim + 1, 0);
    std::fill(mask.begin(), mask.begin() + k + 1, 1);
    for (const auto& [cell, sign] : cells) {
      std::vector<int> sel = mask;
      do {
        std::vector<int> face;
        for (int i = 0; i <= dim; ++i)
          if (sel[i]) face.push_back(cell[i]);
        faces.insert(face);
      } while (std::prev_permutation(sel.begin(), sel.end()));
    }
    for (const auto& f : faces) {
      M.lookup_[k].emplace(f, static_cast<int>(M.simplices[k].size()));
      M.simplices[k].push_back(f);
      M.signs[k].push_back(1);
    }
  }
  {
    std::set<std::pair<std::vector<int>, int>> seen;
    std::map<std::vector<int>, int> cell_sign;
    for (const auto& [cell, sign] : cells) {
      auto [it, fresh] = cell_sign.emplace(cell, sign);
      if (!fresh) throw Error("duplicate cell in " + M.id);
    }
    for (const auto& [cell, sign] : cell_sign) {
      M.lookup_[dim].emplace(cell, static_cast<int>(M.simplices[dim].size()));
      M.simplices[dim].push_back(cell);
      M.signs[dim].push_back(sign);
    }
  }

  if (boundary_labels.empty()) {
    // Discover components of the once-incident facet set by adjacency
    // across (dim-2)-faces (shared endpoints for dim 1).
    auto bdry = M.boundary_facet_indices();
    std::map<int, int> pos;
    for (size_t i = 0; i < bdry.size(); ++i) pos[bdry[i]] = static_cast<int>(i);
    std::map<std::vector<int>, std::vector<int>> by_face;
    for (int f : bdry) {
      const auto& facet = M.simplices[dim - 1][f];
      if (dim == 1)
        by_face[facet].push_back(f);
      else
        for (size_t i = 0; i < facet.size(); ++i) by_face[drop_entry(facet, i)].push_back(f);
    }
    std::vector<int> comp(bdry.size(), -1);
    int ncomp = 0;
    for (size_t seed = 0; seed < bdry.size(); ++seed) {
      if (comp[seed] >= 0) continue;
      std::vector<int> stack = {static_cast<int>(seed)};
      comp[seed] = ncomp;
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        const auto& facet = M.simplices[dim - 1][bdry[cur]];
        auto visit = [&](const std::vector<int>& face) {
          for (int g : by_face[face]) {
            int p = pos[g];
            if (comp[p] < 0) {
              comp[p] = ncomp;
              stack.push_back(p);
            }
          }
        };
        if (dim == 1)
          visit(facet);
        else
          for (size_t i = 0; i < facet.size(); ++i) visit(drop_entry(facet, i));
      }
      ++ncomp;
    }
    for (int c = 0; c < ncomp; ++c) {
      std::vector<int> facets;
      for (size_t i = 0; i < bdry.size(); ++i)
        if (comp[i] == c) facets.push_back(bdry[i]);
      M.boundary_components.emplace_back("Sigma" + std::to_string(c + 1), std::move(facets));
    }
  } else {
    M.boundary_components = std::move(boundary_labels);
  }

  M.validate();
  return M;
}

void SimplicialComplex::validate() const {
  if (n_simplices(dim) == 0) throw Error("empty complex " + id);

  // Nondegenerate metric.
  for (int c = 0; c < n_simplices(dim); ++c)
    if (simplex_volume(dim, c) < 1e-14)
      throw Error("degenerate simplex " + std::to_string(c) + " (zero volume) in " + id);

  if (dim >= 1) {
    // Manifold + orientation consistency: every facet bounds one or two
    // cells; two incident cells must induce opposite orientations.
    std::vector<int> count(n_simplices(dim - 1), 0);
    std::vector<int> induced(n_simplices(dim - 1), 0);
    for (int c = 0; c < n_simplices(dim); ++c) {
      const auto& cell = simplices[dim][c];
      for (size_t i = 0; i < cell.size(); ++i) {
        int f = find_simplex(dim - 1, drop_entry(cell, i));
        count[f]++;
        induced[f] += signs[dim][c] * ((i % 2 == 0) ? 1 : -1);
      }
    }
    for (int f = 0; f < n_simplices(dim - 1); ++f) {
      if (count[f] == 0 || count[f] > 2)
        throw Error("non-manifold connectivity at facet " + std::to_string(f) + " in " + id);
      if (count[f] == 2 && induced[f] != 0)
        throw Error("inconsistent orientation at facet " + std::to_string(f) + " in " + id);
    }

    // Labeled components partition the once-incident facet set.
    std::set<int> bdry;
    for (int f = 0; f < n_simplices(dim - 1); ++f)
      if (count[f] == 1) bdry.insert(f);
    std::set<int> labeled;
    for (const auto& [label, facets] : boundary_components)
      for (int f : facets) {
        if (!bdry.count(f))
          throw Error("component '" + label + "' lists non-boundary facet in " + id);
        if (!labeled.insert(f).second)
          throw Error("boundary components overlap at facet " + std::to_string(f) + " in " + id);
      }
    if (labeled.size() != bdry.size())
      throw Error("non-manifold connectivity: boundary facets without component label in " + id +
                  " (dangling facet)");

    // Each labeled component is closed: within the component every
    // (dim-2)-face of a facet is shared by exactly two facets (dim >= 2).
    if (dim >= 2)
      for (const auto& [label, facets] : boundary_components) {
        std::map<std::vector<int>, int> ridge_count;
        for (int f : facets) {
          const auto& facet = simplices[dim - 1][f];
          for (size_t i = 0; i < facet.size(); ++i) ridge_count[drop_entry(facet, i)]++;
        }
        for (const auto& [ridge, cnt] : ridge_count)
          if (cnt != 2)
            throw Error("boundary component '" + label + "' is not closed in " + id);
      }
  }
}

SimplicialComplex gen_disk(int m) {
  if (m < 3) throw Error("gen_disk: need m >= 3");
  MatrixXd V(m + 1, 2);
  for (int i = 0; i < m; ++i) {
    double t = 2.0 * M_PI * i / m;
    V(i, 0) = std::cos(t);
    V(i, 1) = std::sin(t);
  }
  V(m, 0) = V(m, 1) = 0.0;
  std::vector<std::vector<int>> cells;
  for (int i = 0; i < m; ++i) cells.push_back({i, (i + 1) % m, m});
  return SimplicialComplex::from_cells("disk" + std::to_string(m), 2, std::move(V), cells);
}

SimplicialComplex gen_annulus(int m, double r_in, double r_out) {
  if (m < 3) throw Error("gen_annulus: need m >= 3");
  if (!(r_in > 0.0) || !(r_in < r_out)) throw Error("gen_annulus: need 0 < r_in < r_out");
  MatrixXd V(2 * m, 2);
  for (int i = 0; i < m; ++i) {
    double t = 2.0 * M_PI * i / m;
    V(i, 0) = r_out * std::cos(t);
    V(i, 1) = r_out * std::sin(t);
    V(m + i, 0) = r_in * std::cos(t);
    V(m + i, 1) = r_in * std::sin(t);
  }
  std::vector<std::vector<int>> cells;
  for (int i = 0; i < m; ++i) {
    int a = i, b = (i + 1) % m, ai = m + i, bi = m + (i + 1) % m;
    cells.push_back({a, b, bi});
    cells.push_back({a, bi, ai});
  }
  std::ostringstream name;
  name << "annulus" << m;
  return SimplicialComplex::from_cells(name.str(), 2, std::move(V), cells);
}

SimplicialComplex gen_circle(int m) {
  if (m < 3) throw Error("gen_circle: need m >= 3");
  MatrixXd V(m, 2);
  for (int i = 0; i < m; ++i) {
    double t = 2.0 * M_PI * i / m;
    V(i, 0) = std::cos(t);
    V(i, 1) = std::sin(t);
  }
  std::vector<std::vector<int>> cells;
  for (int i = 0; i < m; ++i) cells.push_back({i, (i + 1) % m});
  return SimplicialComplex::from_cells("circle" + std::to_string(m), 1, std::move(V), cells);
}

SimplicialComplex collar(const SimplicialComplex& sigma, int layers, double eps) {
  if (!sigma.is_closed()) throw Error("collar: base complex is not closed");
  if (layers < 1) throw Error("collar: need layers >= 1");
  if (!(eps > 0.0)) throw Error("collar: need eps > 0");
  if (sigma.dim > 2) throw Error("collar: base dimension must be 1 or 2");

  const int nv = sigma.n_vertices();
  const int cd = static_cast<int>(sigma.vertices.cols());
  MatrixXd V((layers + 1) * nv, cd + 1);
  for (int l = 0; l <= layers; ++l)
    for (int v = 0; v < nv; ++v) {
      V.row(l * nv + v).head(cd) = sigma.vertices.row(v);
      V(l * nv + v, cd) = eps * l / layers;
    }
  auto at = [nv](int v, int l) { return l * nv + v; };

  std::vector<std::vector<int>> cells;
  if (sigma.dim == 1) {
    for (int e = 0; e < sigma.n_simplices(1); ++e) {
      int a = sigma.simplices[1][e][0], b = sigma.simplices[1][e][1];  // a < b
      bool flip = sigma.signs[1][e] < 0;
      for (int l = 0; l < layers; ++l) {
        std::vector<int> t1 = {at(a, l), at(b, l), at(b, l + 1)};
        std::vector<int> t2 = {at(a, l), at(b, l + 1), at(a, l + 1)};
        if (flip) {
          std::swap(t1[0], t1[1]);
          std::swap(t2[0], t2[1]);
        }
        cells.push_back(t1);
        cells.push_back(t2);
      }
    }
  } else {
    for (int t = 0; t < sigma.n_simplices(2); ++t) {
      int p = sigma.simplices[2][t][0], q = sigma.simplices[2][t][1], r = sigma.simplices[2][t][2];
      bool flip = sigma.signs[2][t] < 0;
      for (int l = 0; l < layers; ++l) {
        std::vector<std::vector<int>> tets = {
            {at(p, l), at(q, l), at(r, l), at(r, l + 1)},
            {at(p, l), at(q, l), at(r, l + 1), at(q, l + 1)},
            {at(p, l), at(q, l + 1), at(r, l + 1), at(p, l + 1)}};
        for (auto& tet : tets) {
          if (flip) std::swap(tet[0], tet[1]);
          cells.push_back(tet);
        }
      }
    }
  }

  std::ostringstream name;
  name << "collar(" << sigma.id << "," << layers << "," << eps << ")";
  auto M = SimplicialComplex::from_cells(name.str(), sigma.dim + 1, std::move(V), cells, {},
                                         MetricSource::ProductCollar);

  // Relabel the two boundary components by layer.
  std::vector<int> bottom, top;
  for (int f : M.boundary_facet_indices()) {
    bool is_bottom = true, is_top = true;
    for (int v : M.simplices[sigma.dim][f]) {
      if (v >= nv) is_bottom = false;
      if (v < layers * nv) is_top = false;
    }
    if (is_bottom) bottom.push_back(f);
    else if (is_top) top.push_back(f);
    else throw Error("collar: unexpected side boundary over " + sigma.id);
  }
  M.boundary_components = {{"Sigma", bottom}, {"SigmaPrime", top}};
  M.validate();

  GluingMap cm;
  cm.source_component = "Sigma";
  cm.target_component = "SigmaPrime";
  for (int v = 0; v < nv; ++v) cm.vertex_bijection.emplace_back(at(v, 0), at(v, layers));
  M.collar_map = cm;
  return M;
}

BoundaryComplex boundary_complex(const SimplicialComplex& M) {
  BoundaryComplex out;
  const int bd = M.dim - 1;
  std::vector<int> facets;
  for (const auto& [label, comp] : M.boundary_components)
    facets.insert(facets.end(), comp.begin(), comp.end());

  if (facets.empty()) {
    out.complex.id = "boundary(" + M.id + ")";
    out.complex.dim = bd;
    out.index_map.resize(bd + 1);
    out.sign_map.resize(bd + 1);
    return out;
  }

  std::set<int> vert_set;
  for (int f : facets)
    for (int v : M.simplices[bd][f]) vert_set.insert(v);
  std::vector<int> verts(vert_set.begin(), vert_set.end());
  std::map<int, int> to_local;
  for (size_t i = 0; i < verts.size(); ++i) to_local[verts[i]] = static_cast<int>(i);

  MatrixXd V(verts.size(), M.vertices.cols());
  for (size_t i = 0; i < verts.size(); ++i) V.row(i) = M.vertices.row(verts[i]);

  std::vector<std::vector<int>> cells;
  std::map<std::vector<int>, int> facet_of_cell;  // local ascending tuple -> M facet
  for (int f : facets) {
    std::vector<int> local;
    for (int v : M.simplices[bd][f]) local.push_back(to_local[v]);
    facet_of_cell[local] = f;
    if (M.induced_facet_sign(f) * M.signs[bd][f] < 0 && local.size() >= 2)
      std::swap(local[0], local[1]);
    cells.push_back(local);
  }

  auto B = SimplicialComplex::from_cells("boundary(" + M.id + ")", bd, std::move(V), cells, {},
                                         M.metric_source);

  // Boundary component labels carry over: reuse M's labels keyed by facets.
  std::vector<std::pair<std::string, std::vector<int>>> comps;
  for (const auto& [label, comp] : M.boundary_components) {
    std::set<int> members(comp.begin(), comp.end());
    std::vector<int> local_ids;
    for (int i = 0; i < B.n_simplices(bd); ++i)
      if (members.count(facet_of_cell.at(B.simplices[bd][i]))) local_ids.push_back(i);
    comps.emplace_back(label, std::move(local_ids));
  }

  out.complex = std::move(B);
  out.vertex_map = verts;
  out.index_map.resize(bd + 1);
  out.sign_map.resize(bd + 1);
  for (int k = 0; k <= bd; ++k) {
    out.index_map[k].resize(out.complex.n_simplices(k));
    out.sign_map[k].resize(out.complex.n_simplices(k));
    for (int i = 0; i < out.complex.n_simplices(k); ++i) {
      std::vector<int> global;
      for (int v : out.complex.simplices[k][i]) global.push_back(verts[v]);
      int gi = M.find_simplex(k, global);
      if (gi < 0) throw Error("boundary simplex missing in bulk complex " + M.id);
      out.index_map[k][i] = gi;
      out.sign_map[k][i] = out.complex.signs[k][i] * M.signs[k][gi];
    }
  }
  // Re-attach component labels computed against M's partition.
  out.complex.boundary_components.clear();
  (void)comps;  // labels live on M; the boundary complex itself is closed
  return out;
}

SimplicialComplex glue(const SimplicialComplex& M, const GluingMap& g) {
  if (g.source_component == g.target_component)
    throw Error("glue: components must be distinct");
  const auto& src = M.component_facets(g.source_component);
  const auto& tgt = M.component_facets(g.target_component);
  if (src.size() != tgt.size()) throw Error("glue: component sizes differ");

  const int bd = M.dim - 1;
  std::map<int, int> fwd;  // source vertex -> target vertex
  for (auto [s, t] : g.vertex_bijection)
    if (!fwd.emplace(s, t).second) throw Error("glue: bijection repeats a source vertex");

  std::set<int> src_verts, tgt_verts;
  for (int f : src)
    for (int v : M.simplices[bd][f]) src_verts.insert(v);
  for (int f : tgt)
    for (int v : M.simplices[bd][f]) tgt_verts.insert(v);
  if (src_verts.size() != fwd.size()) throw Error("glue: bijection does not cover the source component");
  std::set<int> image;
  for (auto [s, t] : fwd) {
    if (!src_verts.count(s)) throw Error("glue: bijection source vertex not on source component");
    if (!tgt_verts.count(t)) throw Error("glue: bijection target vertex not on target component");
    image.insert(t);
  }
  if (image.size() != tgt_verts.size()) throw Error("glue: bijection is not onto the target component");
  for (int v : src_verts)
    if (tgt_verts.count(v)) throw Error("glue: components share vertices");

  // Simpliciality + orientation reversal, facet by facet.
  std::set<int> tgt_set(tgt.begin(), tgt.end());
  for (int f : src) {
    std::vector<int> mapped;
    for (int v : M.simplices[bd][f]) mapped.push_back(fwd.at(v));
    int parity = sort_parity(mapped);
    if (parity == 0) throw Error("glue: bijection not simplicial (degenerate facet image)");
    int tf = M.find_simplex(bd, mapped);
    if (tf < 0 || !tgt_set.count(tf)) throw Error("glue: bijection not simplicial");
    int s_ind = M.induced_facet_sign(f) * M.signs[bd][f];     // induced sign over ascending tuple
    int t_ind = M.induced_facet_sign(tf) * M.signs[bd][tf];
    if (s_ind * parity != -t_ind)
      throw Error("glue: bijection does not reverse the induced orientation");
  }

  // Replace target vertices by source partners, compact, rebuild.
  std::map<int, int> back;  // target vertex -> source vertex
  for (auto [s, t] : fwd) back[t] = s;
  const int nv = M.n_vertices();
  std::vector<int> newid(nv, -1);
  int next = 0;
  for (int v = 0; v < nv; ++v)
    if (!back.count(v)) newid[v] = next++;
  MatrixXd V(next, M.vertices.cols());
  for (int v = 0; v < nv; ++v)
    if (newid[v] >= 0) V.row(newid[v]) = M.vertices.row(v);
  auto remap = [&](int v) { return back.count(v) ? newid[back.at(v)] : newid[v]; };

  std::vector<std::vector<int>> cells;
  std::set<std::vector<int>> cell_support;
  for (int c = 0; c < M.n_simplices(M.dim); ++c) {
    std::vector<int> cell = M.simplices[M.dim][c];
    if (M.signs[M.dim][c] < 0) std::swap(cell[0], cell[1]);
    for (int& v : cell) v = remap(v);
    std::vector<int> sorted = cell;
    if (sort_parity(sorted) == 0) throw Error("glue: bijection not simplicial (cell degenerates)");
    if (!cell_support.insert(sorted).second)
      throw Error("glue: bijection not simplicial (cells collide)");
    cells.push_back(cell);
  }

  // Remaining boundary components, re-keyed to the rebuilt complex.
  auto out = SimplicialComplex::from_cells(
      "glue(" + M.id + "," + g.source_component + "~" + g.target_component + ")", M.dim,
      std::move(V), cells, {}, M.metric_source);

  std::vector<std::pair<std::string, std::vector<int>>> kept;
  for (const auto& [label, facets] : M.boundary_components) {
    if (label == g.source_component || label == g.target_component) continue;
    std::vector<int> ids;
    for (int f : facets) {
      std::vector<int> mapped;
      for (int v : M.simplices[bd][f]) mapped.push_back(remap(v));
      std::sort(mapped.begin(), mapped.end());
      int lf = out.find_simplex(bd, mapped);
      if (lf < 0) throw Error("glue: lost boundary facet of '" + label + "'");
      ids.push_back(lf);
    }
    std::sort(ids.begin(), ids.end());
    kept.emplace_back(label, std::move(ids));
  }
  {
    auto discovered = out.boundary_facet_indices();
    std::set<int> keptset;
    for (const auto& [label, ids] : kept) keptset.insert(ids.begin(), ids.end());
    if (keptset.size() != discovered.size())
      throw Error("glue: boundary of result does not match remaining components");
  }
  out.boundary_components = kept;
  out.validate();
  return out;
}

}  // namespace ymdn
