#include "ymdn/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ymdn {

using json = nlohmann::ordered_json;

SimplicialComplex load_mesh(const std::string& bytes, const std::string& id) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const std::exception& e) {
    throw Error(std::string("parse error: ") + e.what());
  }
  try {
    int dim = j.at("dim").get<int>();
    auto jverts = j.at("vertices");
    auto jcells = j.at("cells");
    if (!jverts.is_array() || jverts.empty()) throw Error("parse error: no vertices");
    if (!jcells.is_array() || jcells.empty()) throw Error("parse error: empty cell list");

    size_t cd = jverts[0].size();
    MatrixXd V(jverts.size(), cd);
    for (size_t i = 0; i < jverts.size(); ++i) {
      if (jverts[i].size() != cd) throw Error("parse error: ragged vertex coordinates");
      for (size_t c = 0; c < cd; ++c) V(i, c) = jverts[i][c].get<double>();
    }

    std::vector<std::vector<int>> cells;
    for (const auto& jc : jcells) cells.push_back(jc.get<std::vector<int>>());

    MetricSource ms = MetricSource::Embedded;
    if (j.contains("metric_source")) {
      std::string s = j["metric_source"].get<std::string>();
      if (s == "embedded") ms = MetricSource::Embedded;
      else if (s == "product_collar") ms = MetricSource::ProductCollar;
      else throw Error("parse error: unknown metric_source '" + s + "'");
    }

    std::vector<std::pair<std::string, std::vector<int>>> labels;
    if (j.contains("boundary_labels"))
      for (auto it = j["boundary_labels"].begin(); it != j["boundary_labels"].end(); ++it)
        labels.emplace_back(it.key(), it.value().get<std::vector<int>>());

    return SimplicialComplex::from_cells(id, dim, std::move(V), cells, std::move(labels), ms);
  } catch (const json::exception& e) {
    throw Error(std::string("parse error: ") + e.what());
  }
}

std::string save_mesh(const SimplicialComplex& M) {
  json j;
  j["dim"] = M.dim;
  json verts = json::array();
  for (int v = 0; v < M.n_vertices(); ++v) {
    json row = json::array();
    for (int c = 0; c < M.vertices.cols(); ++c) row.push_back(M.vertices(v, c));
    verts.push_back(row);
  }
  j["vertices"] = verts;
  json cells = json::array();
  for (int c = 0; c < M.n_simplices(M.dim); ++c) {
    std::vector<int> cell = M.simplices[M.dim][c];
    if (M.signs[M.dim][c] < 0) std::swap(cell[0], cell[1]);
    cells.push_back(cell);
  }
  j["cells"] = cells;
  json labels = json::object();
  for (const auto& [label, facets] : M.boundary_components) labels[label] = facets;
  j["boundary_labels"] = labels;
  j["metric_source"] = M.metric_source == MetricSource::Embedded ? "embedded" : "product_collar";
  return j.dump(2) + "\n";
}

std::string save_gluing_map(const GluingMap& g) {
  json j;
  j["source"] = g.source_component;
  j["target"] = g.target_component;
  json pairs = json::array();
  for (auto [s, t] : g.vertex_bijection) pairs.push_back(json::array({s, t}));
  j["vertex_bijection"] = pairs;
  return j.dump(2) + "\n";
}

GluingMap load_gluing_map(const std::string& bytes) {
  try {
    json j = json::parse(bytes);
    GluingMap g;
    g.source_component = j.at("source").get<std::string>();
    g.target_component = j.at("target").get<std::string>();
    for (const auto& p : j.at("vertex_bijection"))
      g.vertex_bijection.emplace_back(p[0].get<int>(), p[1].get<int>());
    return g;
  } catch (const json::exception& e) {
    throw Error(std::string("parse error: ") + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ymdn
