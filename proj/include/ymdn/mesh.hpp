#ifndef YMDN_MESH_HPP
#define YMDN_MESH_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ymdn/linalg.hpp"

namespace ymdn {

/// Identification of one boundary component with another, vertex by vertex.
/// Valid maps carry facets to facets and reverse the induced orientation.
struct GluingMap {
  std::string source_component;
  std::string target_component;
  std::vector<std::pair<int, int>> vertex_bijection;  // (source vertex, target vertex)
};

enum class MetricSource { Embedded, ProductCollar };

/// Oriented simplicial mesh of a compact n-manifold with boundary, n = 1..3.
/// All k-simplices are stored as ascending vertex tuples enumerated
/// lexicographically; orientation is a sign relative to the ascending order.
/// Only top-dimensional simplices (and induced boundary facets) carry
/// meaningful signs; lower interior degrees use the ascending convention.
class SimplicialComplex {
 public:
  std::string id;
  int dim = 0;
  MetricSource metric_source = MetricSource::Embedded;
  MatrixXd vertices;                                // nv x coord_dim
  std::vector<std::vector<std::vector<int>>> simplices;  // [k][i] ascending tuple
  std::vector<std::vector<int>> signs;                   // [k][i] in {+1,-1}
  std::vector<std::pair<std::string, std::vector<int>>> boundary_components;  // label -> facet ids
  std::optional<GluingMap> collar_map;  // recorded by collar(): bottom <-> top

  int n_simplices(int k) const { return static_cast<int>(simplices[k].size()); }
  int n_vertices() const { return static_cast<int>(vertices.rows()); }
  int euler_characteristic() const;
  bool is_closed() const;

  /// Index of a k-simplex by its ascending vertex tuple; -1 if absent.
  int find_simplex(int k, const std::vector<int>& ascending) const;

  /// Facets incident to exactly one cell, ascending order of facet index.
  std::vector<int> boundary_facet_indices() const;

  /// Induced orientation sign of a boundary facet (relative to its ascending
  /// tuple), read off the unique incident cell.
  int induced_facet_sign(int facet_index) const;

  /// Facet indices of one labeled component; throws if the label is unknown.
  const std::vector<int>& component_facets(const std::string& label) const;

  /// Checks all structural invariants (manifoldness, consistent orientation,
  /// closed labeled components covering the boundary, nondegenerate cells).
  void validate() const;

  /// Volume of a k-simplex from vertex coordinates.
  double simplex_volume(int k, int index) const;

  /// Build from oriented cells (vertex order realizes the orientation).
  /// Boundary labels may be empty, in which case components are discovered
  /// and labeled Sigma1, Sigma2, ... in deterministic order.
  static SimplicialComplex from_cells(
      std::string id, int dim, MatrixXd vertices,
      const std::vector<std::vector<int>>& oriented_cells,
      std::vector<std::pair<std::string, std::vector<int>>> boundary_labels = {},
      MetricSource metric_source = MetricSource::Embedded);

 private:
  std::vector<std::map<std::vector<int>, int>> lookup_;  // per degree
  friend SimplicialComplex glue(const SimplicialComplex&, const GluingMap&);
};

/// Triangulated planar disk: m boundary edges around one interior hub.
SimplicialComplex gen_disk(int m);

/// Triangulated planar annulus with m edges per circle, radii r_in < r_out.
SimplicialComplex gen_annulus(int m, double r_in, double r_out);

/// Closed polygonal circle as a 1-complex with m vertices, oriented ccw.
SimplicialComplex gen_circle(int m);

/// Product-metric prism collar Sigma x [0, eps] with the given number of
/// layers, triangulated by a staircase rule keyed to global vertex indices.
/// Boundary components are labeled "Sigma" (bottom) and "SigmaPrime" (top);
/// the canonical bottom<->top identification is recorded as collar_map.
SimplicialComplex collar(const SimplicialComplex& sigma, int layers, double eps);

/// Boundary complex with induced orientation plus, per degree k, the index
/// and sign of each boundary k-simplex inside M.
struct BoundaryComplex {
  SimplicialComplex complex;             // dim n-1, possibly empty
  std::vector<std::vector<int>> index_map;  // [k][i] -> k-simplex index in M
  std::vector<std::vector<int>> sign_map;   // [k][i] -> relative orientation
  std::vector<int> vertex_map;              // boundary vertex -> M vertex
};

BoundaryComplex boundary_complex(const SimplicialComplex& M);

/// Identify the target component of g with its source component. Vertices of
/// the target are replaced by their source partners (source coordinates are
/// kept) and coincident simplices merge. Throws if the bijection is not
/// simplicial, does not reverse the induced orientation, or degenerates cells.
SimplicialComplex glue(const SimplicialComplex& M, const GluingMap& g);

}  // namespace ymdn

#endif
