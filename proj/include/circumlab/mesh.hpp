#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circumlab/geometry.hpp"

namespace circumlab {

struct Vertex {
  Point p;
  bool boundary = false;
};

struct FamilyTag {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
};

/// Triangles are counterclockwise index triples into `vertices`.
struct Mesh {
  std::vector<Vertex> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::optional<FamilyTag> family;

  Triangle element(std::size_t k) const;
};

struct MeshStats {
  std::size_t n_vertices = 0;
  std::size_t n_triangles = 0;
  double h_max = 0;
  double max_R_K = 0;
  double min_angle = 0;
  double max_angle = 0;
  double min_rho_over_h = 0;
};

/// Unit square, n x n cells, each split along the (0,0)-(1,1) diagonal direction.
Mesh gen_uniform(int n);

/// Unit square with n columns and ceil(n^alpha) rows, each cell split into
/// four triangles through its center. Throws InvalidFamily unless
/// 1 < alpha < 2 or `force` is set (alpha must still lie in [1, 2]).
Mesh gen_crisscross_aniso(int n, double alpha, bool force = false);

/// |x-y|^{3/2} + |x+y|^{3/2} <= 2 + tol.
bool in_lens(Point p, double tol = 1e-12);

/// Lens domain meshed by ceil(n^{3/2}) thin rings, each a scaled copy of the
/// boundary with 4n points, alternate rings staggered by half a step.
/// Throws InvalidFamily for n < 2.
Mesh gen_lens(int n);

/// Throws DegenerateTriangle naming the offending element.
MeshStats stats(const Mesh& mesh);

/// Vertices sorted by (y, x), each triangle rotated to start at its smallest
/// index, triangles sorted lexicographically.
void canonicalize(Mesh& mesh);

/// Sets boundary flags from the edges used by exactly one triangle.
void mark_boundary(Mesh& mesh);

/// Throws NonConforming for an edge shared by more than two triangles, an
/// interior edge traversed twice in the same direction (overlap or flipped
/// neighbour), or a vertex lying inside a boundary edge (hanging vertex).
void check_conformity(const Mesh& mesh);

struct ReadResult {
  Mesh mesh;
  std::vector<std::string> warnings;
};

/// Parses the text format; clockwise triangles are reoriented and reported
/// in `warnings`. Throws ParseError, DegenerateTriangle or NonConforming.
ReadResult read_mesh(std::string_view text);
std::string write_mesh(const Mesh& mesh);

}  // namespace circumlab
