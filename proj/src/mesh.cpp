#include "circumlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "circumlab/errors.hpp"

namespace circumlab {

Triangle Mesh::element(std::size_t k) const {
  const auto& t = triangles[k];
  return Triangle(vertices[static_cast<std::size_t>(t[0])].p, vertices[static_cast<std::size_t>(t[1])].p,
                  vertices[static_cast<std::size_t>(t[2])].p);
}

namespace {

using Edge = std::pair<int, int>;

Edge undirected(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct EdgeUse {
  int count = 0;
  int forward = 0;  // traversals from the smaller to the larger index
};

std::map<Edge, EdgeUse> edge_uses(const Mesh& mesh) {
  std::map<Edge, EdgeUse> uses;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const int a = t[static_cast<std::size_t>(e)], b = t[static_cast<std::size_t>((e + 1) % 3)];
      EdgeUse& u = uses[undirected(a, b)];
      ++u.count;
      if (a < b) ++u.forward;
    }
  }
  return uses;
}

double signed_area(Point a, Point b, Point c) { return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)); }

std::string point_text(Point p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p.x, p.y);
  return buf;
}

Mesh finish(Mesh mesh, FamilyTag tag) {
  mark_boundary(mesh);
  canonicalize(mesh);
  mesh.family = std::move(tag);
  return mesh;
}

}  // namespace

void mark_boundary(Mesh& mesh) {
  for (auto& v : mesh.vertices) v.boundary = false;
  for (const auto& [edge, use] : edge_uses(mesh)) {
    if (use.count == 1) {
      mesh.vertices[static_cast<std::size_t>(edge.first)].boundary = true;
      mesh.vertices[static_cast<std::size_t>(edge.second)].boundary = true;
    }
  }
}

void canonicalize(Mesh& mesh) {
  const std::size_t n = mesh.vertices.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Point pa = mesh.vertices[static_cast<std::size_t>(a)].p, pb = mesh.vertices[static_cast<std::size_t>(b)].p;
    return pa.y != pb.y ? pa.y < pb.y : pa.x < pb.x;
  });
  std::vector<int> new_index(n);
  std::vector<Vertex> vertices(n);
  for (std::size_t k = 0; k < n; ++k) {
    new_index[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
    vertices[k] = mesh.vertices[static_cast<std::size_t>(order[k])];
  }
  mesh.vertices = std::move(vertices);
  for (auto& t : mesh.triangles) {
    for (auto& i : t) i = new_index[static_cast<std::size_t>(i)];
    std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
  }
  std::sort(mesh.triangles.begin(), mesh.triangles.end());
}

void check_conformity(const Mesh& mesh) {
  const auto uses = edge_uses(mesh);
  for (const auto& [edge, use] : uses) {
    const std::string where = "edge " + std::to_string(edge.first) + "-" + std::to_string(edge.second);
    if (use.count > 2) throw NonConforming(where + " is shared by " + std::to_string(use.count) + " triangles");
    if (use.count == 2 && use.forward != 1) {
      throw NonConforming(where + " is traversed twice in the same direction (overlapping triangles)");
    }
  }
  std::vector<int> boundary_vertices;
  for (const auto& [edge, use] : uses) {
    if (use.count == 1) {
      boundary_vertices.push_back(edge.first);
      boundary_vertices.push_back(edge.second);
    }
  }
  std::sort(boundary_vertices.begin(), boundary_vertices.end());
  boundary_vertices.erase(std::unique(boundary_vertices.begin(), boundary_vertices.end()), boundary_vertices.end());
  for (const auto& [edge, use] : uses) {
    if (use.count != 1) continue;
    const Point a = mesh.vertices[static_cast<std::size_t>(edge.first)].p;
    const Point b = mesh.vertices[static_cast<std::size_t>(edge.second)].p;
    const Point d = b - a;
    const double len2 = d.x * d.x + d.y * d.y;
    const double lo_x = std::min(a.x, b.x), hi_x = std::max(a.x, b.x);
    const double lo_y = std::min(a.y, b.y), hi_y = std::max(a.y, b.y);
    for (int v : boundary_vertices) {
      if (v == edge.first || v == edge.second) continue;
      const Point p = mesh.vertices[static_cast<std::size_t>(v)].p;
      if (p.x < lo_x || p.x > hi_x || p.y < lo_y || p.y > hi_y) continue;
      const Point w = p - a;
      const double cross = d.x * w.y - d.y * w.x;
      const double along = (d.x * w.x + d.y * w.y) / len2;
      if (std::abs(cross) <= 1e-12 * len2 && along > 0 && along < 1) {
        throw NonConforming("hanging vertex " + std::to_string(v) + " at " + point_text(p) + " on edge " +
                            std::to_string(edge.first) + "-" + std::to_string(edge.second));
      }
    }
  }
}

Mesh gen_uniform(int n) {
  if (n < 1) throw InvalidFamily("uniform mesh needs n >= 1");
  Mesh mesh;
  const int w = n + 1;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.vertices.push_back({{static_cast<double>(i) / n, static_cast<double>(j) / n}, false});
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * w + i, b = a + 1, c = a + w + 1, d = a + w;
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  return finish(std::move(mesh), {"uniform", {{"n", n}}});
}

Mesh gen_crisscross_aniso(int n, double alpha, bool force) {
  if (n < 1) throw InvalidFamily("crisscross mesh needs n >= 1");
  const bool admissible = alpha > 1.0 && alpha < 2.0;
  if (!admissible && !(force && alpha >= 1.0 && alpha <= 2.0)) {
    throw InvalidFamily("crisscross mesh needs 1 < alpha < 2");
  }
  // The tolerance keeps exact integer powers (n = 4, alpha = 1.5) from rounding up.
  const int rows = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), alpha) - 1e-9));
  Mesh mesh;
  const int w = n + 1;
  for (int j = 0; j <= rows; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.vertices.push_back({{static_cast<double>(i) / n, static_cast<double>(j) / rows}, false});
    }
  }
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * w + i, b = a + 1, c = a + w + 1, d = a + w;
      const int e = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back({{(i + 0.5) / n, (j + 0.5) / rows}, false});
      mesh.triangles.push_back({a, b, e});
      mesh.triangles.push_back({b, c, e});
      mesh.triangles.push_back({c, d, e});
      mesh.triangles.push_back({d, a, e});
    }
  }
  return finish(std::move(mesh), {"crisscross", {{"n", n}, {"alpha", alpha}, {"rows", rows}}});
}

bool in_lens(Point p, double tol) {
  return std::pow(std::abs(p.x - p.y), 1.5) + std::pow(std::abs(p.x + p.y), 1.5) <= 2.0 + tol;
}

namespace {

/// Distance from the origin to the lens boundary in direction phi.
double lens_radius(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return std::pow(2.0 / (std::pow(std::abs(c - s), 1.5) + std::pow(std::abs(c + s), 1.5)), 2.0 / 3.0);
}

}  // namespace

Mesh gen_lens(int n) {
  if (n < 2) throw InvalidFamily("lens mesh needs n >= 2");
  const int layers = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.5) - 1e-9));
  const int per_layer = 4 * n;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  constexpr double start = std::numbers::pi / 4.0;

  Mesh mesh;
  struct Ring {
    std::vector<int> ids;
    std::vector<double> phi;
  };
  auto add = [&mesh](double lambda, double phi) {
    const double r = lambda * lens_radius(phi);
    mesh.vertices.push_back({{r * std::cos(phi), r * std::sin(phi)}, false});
    return static_cast<int>(mesh.vertices.size()) - 1;
  };
  const int center = add(0.0, 0.0);

  // Each ring is a scaled copy of the boundary, traversed from the corner at
  // phi = pi/4 and closed by repeating its first vertex. Odd rings are
  // staggered by half a step but keep the four corners on the diagonals.
  std::vector<Ring> rings;
  for (int r = 1; r <= layers; ++r) {
    const double lambda = static_cast<double>(r) / layers;
    Ring ring;
    for (int j = 0; j < per_layer; ++j) {
      const double phi = start + two_pi * j / per_layer;
      if (r % 2 == 0 || j % n == 0) {
        ring.ids.push_back(add(lambda, phi));
        ring.phi.push_back(phi);
      }
      if (r % 2 == 1) {
        const double half = start + two_pi * (j + 0.5) / per_layer;
        ring.ids.push_back(add(lambda, half));
        ring.phi.push_back(half);
      }
    }
    ring.ids.push_back(ring.ids.front());
    ring.phi.push_back(start + two_pi);
    rings.push_back(std::move(ring));
  }

  auto push_ccw = [&mesh](int a, int b, int c) {
    const Point pa = mesh.vertices[static_cast<std::size_t>(a)].p, pb = mesh.vertices[static_cast<std::size_t>(b)].p,
                pc = mesh.vertices[static_cast<std::size_t>(c)].p;
    if (signed_area(pa, pb, pc) < 0) std::swap(b, c);
    mesh.triangles.push_back({a, b, c});
  };
  for (std::size_t j = 0; j + 1 < rings.front().ids.size(); ++j) {
    push_ccw(center, rings.front().ids[j], rings.front().ids[j + 1]);
  }
  for (std::size_t r = 0; r + 1 < rings.size(); ++r) {
    const Ring& inner = rings[r];
    const Ring& outer = rings[r + 1];
    std::size_t i = 0, j = 0;
    while (i + 1 < inner.ids.size() || j + 1 < outer.ids.size()) {
      const bool advance_inner =
          j + 1 == outer.ids.size() || (i + 1 < inner.ids.size() && inner.phi[i + 1] < outer.phi[j + 1]);
      if (advance_inner) {
        push_ccw(inner.ids[i], inner.ids[i + 1], outer.ids[j]);
        ++i;
      } else {
        push_ccw(inner.ids[i], outer.ids[j + 1], outer.ids[j]);
        ++j;
      }
    }
  }
  return finish(std::move(mesh), {"lens", {{"n", n}, {"layers", layers}}});
}

MeshStats stats(const Mesh& mesh) {
  MeshStats s;
  s.n_vertices = mesh.vertices.size();
  s.n_triangles = mesh.triangles.size();
  s.min_angle = std::numbers::pi;
  s.min_rho_over_h = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
    TriangleMetrics m;
    try {
      m = metrics(mesh.element(k));
    } catch (const DegenerateTriangle& e) {
      throw DegenerateTriangle("element " + std::to_string(k) + ": " + e.what());
    }
    s.h_max = std::max(s.h_max, m.h_K);
    s.max_R_K = std::max(s.max_R_K, m.R_K);
    s.min_angle = std::min(s.min_angle, m.theta_min);
    s.max_angle = std::max(s.max_angle, m.theta_max);
    s.min_rho_over_h = std::min(s.min_rho_over_h, m.rho_K / m.h_K);
  }
  if (mesh.triangles.empty()) s.min_rho_over_h = 0;
  return s;
}

std::string write_mesh(const Mesh& mesh) {
  std::string out = "vertices " + std::to_string(mesh.vertices.size()) + "\n";
  char buf[96];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", v.p.x, v.p.y, v.boundary ? 1 : 0);
    out += buf;
  }
  out += "triangles " + std::to_string(mesh.triangles.size()) + "\n";
  for (const auto& t : mesh.triangles) {
    std::snprintf(buf, sizeof buf, "%d %d %d\n", t[0], t[1], t[2]);
    out += buf;
  }
  return out;
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : in_(std::string(text)) {}

  /// Next non-blank line with comments stripped; false at end of input.
  bool next(std::string& line) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      line = raw;
      return true;
    }
    return false;
  }
  std::size_t number() const { return number_; }

 private:
  std::istringstream in_;
  std::size_t number_ = 0;
};

std::size_t parse_header(LineReader& reader, const std::string& keyword) {
  std::string line;
  if (!reader.next(line)) throw ParseError(reader.number() + 1, "expected '" + keyword + " N'");
  std::istringstream ls(line);
  std::string word;
  long long count = -1;
  std::string rest;
  if (!(ls >> word >> count) || word != keyword || count < 0 || (ls >> rest)) {
    throw ParseError(reader.number(), "expected '" + keyword + " N'");
  }
  return static_cast<std::size_t>(count);
}

}  // namespace

ReadResult read_mesh(std::string_view text) {
  LineReader reader(text);
  ReadResult result;
  Mesh& mesh = result.mesh;
  std::string line, rest;

  const std::size_t nv = parse_header(reader, "vertices");
  std::vector<bool> flags(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    if (!reader.next(line)) throw ParseError(reader.number() + 1, "expected vertex line");
    std::istringstream ls(line);
    double x = 0, y = 0;
    int flag = -1;
    if (!(ls >> x >> y >> flag) || (flag != 0 && flag != 1) || (ls >> rest) || !std::isfinite(x) ||
        !std::isfinite(y)) {
      throw ParseError(reader.number(), "expected 'x y flag' with flag 0 or 1");
    }
    mesh.vertices.push_back({{x, y}, flag == 1});
    flags[k] = flag == 1;
  }

  const std::size_t nt = parse_header(reader, "triangles");
  for (std::size_t k = 0; k < nt; ++k) {
    if (!reader.next(line)) throw ParseError(reader.number() + 1, "expected triangle line");
    std::istringstream ls(line);
    long long i = -1, j = -1, l = -1;
    if (!(ls >> i >> j >> l) || (ls >> rest)) throw ParseError(reader.number(), "expected 'i j k'");
    for (long long v : {i, j, l}) {
      if (v < 0 || static_cast<std::size_t>(v) >= nv) {
        throw ParseError(reader.number(), "vertex index " + std::to_string(v) + " out of range");
      }
    }
    if (i == j || j == l || i == l) throw ParseError(reader.number(), "repeated vertex index");
    std::array<int, 3> t{static_cast<int>(i), static_cast<int>(j), static_cast<int>(l)};
    const Point a = mesh.vertices[static_cast<std::size_t>(t[0])].p, b = mesh.vertices[static_cast<std::size_t>(t[1])].p,
                c = mesh.vertices[static_cast<std::size_t>(t[2])].p;
    try {
      (void)Triangle(a, b, c);
    } catch (const DegenerateTriangle& e) {
      throw DegenerateTriangle("triangle " + std::to_string(k) + " (line " + std::to_string(reader.number()) +
                               "): " + e.what());
    }
    if (signed_area(a, b, c) < 0) {
      std::swap(t[1], t[2]);
      result.warnings.push_back("triangle " + std::to_string(k) + " (line " + std::to_string(reader.number()) +
                                ") was clockwise and has been reoriented");
    }
    mesh.triangles.push_back(t);
  }
  if (reader.next(line)) throw ParseError(reader.number(), "unexpected trailing content");

  check_conformity(mesh);
  mark_boundary(mesh);
  for (std::size_t k = 0; k < nv; ++k) {
    if (flags[k] != mesh.vertices[k].boundary) {
      result.warnings.push_back("vertex " + std::to_string(k) + " boundary flag corrected to " +
                                (mesh.vertices[k].boundary ? "1" : "0"));
    }
  }
  return result;
}

}  // namespace circumlab
