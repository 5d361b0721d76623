#ifndef YMDN_MESH_IO_HPP
#define YMDN_MESH_IO_HPP

#include <string>

#include "ymdn/mesh.hpp"

namespace ymdn {

/// Parse the JSON mesh format:
///   { "dim": n, "vertices": [[x,y,(z)]...], "cells": [[v0..vn]...],
///     "boundary_labels": {"Sigma1": [facet indices], ...},
///     "metric_source": "embedded" | "product_collar" }
/// Cell vertex order realizes the cell orientation. Facet indices refer to
/// the canonical enumeration (ascending vertex tuples, lexicographic).
SimplicialComplex load_mesh(const std::string& bytes, const std::string& id = "mesh");

/// Serialize in the same format, byte-deterministic for a given complex.
std::string save_mesh(const SimplicialComplex& M);

std::string save_gluing_map(const GluingMap& g);
GluingMap load_gluing_map(const std::string& bytes);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ymdn

#endif
