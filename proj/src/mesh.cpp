#include "mafem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "mafem/error.hpp"

namespace mafem {

namespace {

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                   const Eigen::Vector2d& c) {
  const Eigen::Vector2d u = b - a, v = c - a;
  return 0.5 * (u.x() * v.y() - u.y() * v.x());
}

std::int64_t edge_key(int a, int b, int nv) {
  return static_cast<std::int64_t>(std::min(a, b)) * nv + std::max(a, b);
}

}  // namespace

Mesh::Mesh(std::vector<Eigen::Vector2d> vertices,
           std::vector<std::array<int, 3>> cells,
           std::vector<std::array<int, 3>> boundary,
           std::vector<int> refinement_edges)
    : vertices_(std::move(vertices)), cells_(std::move(cells)) {
  const int nv = num_vertices();
  const int nc = num_cells();
  if (nv < 3) throw ArgumentError("mesh needs at least 3 vertices");
  if (nc < 1) throw ArgumentError("mesh needs at least 1 cell");

  const bool refs_given = !refinement_edges.empty();
  if (refs_given && static_cast<int>(refinement_edges.size()) != nc)
    throw InternalError("refinement edge list does not match cell count");

  for (int c = 0; c < nc; ++c) {
    for (int l = 0; l < 3; ++l) {
      const int v = cells_[c][l];
      if (v < 0 || v >= nv)
        throw ArgumentError("cell " + std::to_string(c) + ": vertex index " +
                            std::to_string(v) + " out of range");
    }
    double area = signed_area(vertices_[cells_[c][0]], vertices_[cells_[c][1]],
                              vertices_[cells_[c][2]]);
    if (area < 0.0) {
      if (refs_given)
        throw InternalError("clockwise cell with pinned refinement edges");
      std::swap(cells_[c][1], cells_[c][2]);
      area = -area;
    }
    if (area == 0.0)
      throw ArgumentError("cell " + std::to_string(c) + " is degenerate (zero area)");
  }

  // Edge table, ids assigned in order of first encounter.
  std::unordered_map<std::int64_t, int> lookup;
  cell_edges_.assign(nc, {-1, -1, -1});
  for (int c = 0; c < nc; ++c) {
    for (int l = 0; l < 3; ++l) {
      const int a = cells_[c][(l + 1) % 3];
      const int b = cells_[c][(l + 2) % 3];
      auto [it, inserted] = lookup.try_emplace(edge_key(a, b, nv), num_edges());
      if (inserted) {
        EdgeInfo e;
        e.v0 = std::min(a, b);
        e.v1 = std::max(a, b);
        e.cell0 = c;
        edges_.push_back(e);
      } else {
        EdgeInfo& e = edges_[it->second];
        if (e.cell1 != -1)
          throw ArgumentError("edge (" + std::to_string(e.v0) + "," +
                              std::to_string(e.v1) + ") has more than 2 incident cells");
        e.cell1 = c;
      }
      cell_edges_[c][l] = it->second;
    }
  }

  for (int e = 0; e < num_edges(); ++e)
    if (edges_[e].cell1 == -1) boundary_edges_.push_back(e);

  // Boundary markers: explicit triples must exactly cover the boundary.
  if (boundary.empty()) {
    for (int e : boundary_edges_) edges_[e].marker = 1;
  } else {
    for (const auto& t : boundary) {
      if (t[0] < 0 || t[0] >= nv || t[1] < 0 || t[1] >= nv)
        throw ArgumentError("boundary edge vertex index out of range");
      auto it = lookup.find(edge_key(t[0], t[1], nv));
      if (it == lookup.end())
        throw ArgumentError("boundary entry (" + std::to_string(t[0]) + "," +
                            std::to_string(t[1]) + ") is not a mesh edge");
      EdgeInfo& e = edges_[it->second];
      if (e.cell1 != -1)
        throw ArgumentError("boundary entry (" + std::to_string(t[0]) + "," +
                            std::to_string(t[1]) + ") is an interior edge");
      if (e.marker != -1)
        throw ArgumentError("duplicate boundary entry (" + std::to_string(t[0]) +
                            "," + std::to_string(t[1]) + ")");
      e.marker = t[2];
    }
    for (int e : boundary_edges_)
      if (edges_[e].marker == -1)
        throw ArgumentError("boundary edge (" + std::to_string(edges_[e].v0) + "," +
                            std::to_string(edges_[e].v1) + ") has no marker");
  }

  // Boundary edges must form closed loops: 0 or 2 boundary edges per vertex.
  std::vector<int> bcount(nv, 0);
  for (int e : boundary_edges_) {
    ++bcount[edges_[e].v0];
    ++bcount[edges_[e].v1];
  }
  for (int v = 0; v < nv; ++v)
    if (bcount[v] != 0 && bcount[v] != 2)
      throw ArgumentError("boundary is not a closed loop at vertex " + std::to_string(v));

  if (refs_given) {
    for (int c = 0; c < nc; ++c)
      if (refinement_edges[c] < 0 || refinement_edges[c] > 2)
        throw InternalError("refinement edge index out of range");
    refinement_edge_ = std::move(refinement_edges);
  } else {
    refinement_edge_.resize(nc);
    for (int c = 0; c < nc; ++c) {
      int best = 0;
      double best_len = -1.0;
      for (int l = 0; l < 3; ++l) {
        const double len = (vertices_[cells_[c][(l + 1) % 3]] -
                            vertices_[cells_[c][(l + 2) % 3]]).norm();
        if (len > best_len) {
          best_len = len;
          best = l;
        }
      }
      refinement_edge_[c] = best;
    }
  }
}

double Mesh::cell_area(int c) const {
  return signed_area(vertices_[cells_[c][0]], vertices_[cells_[c][1]],
                     vertices_[cells_[c][2]]);
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int c = 0; c < num_cells(); ++c) a += cell_area(c);
  return a;
}

Eigen::Matrix2d Mesh::cell_jacobian(int c) const {
  Eigen::Matrix2d J;
  J.col(0) = vertices_[cells_[c][1]] - vertices_[cells_[c][0]];
  J.col(1) = vertices_[cells_[c][2]] - vertices_[cells_[c][0]];
  return J;
}

Eigen::Vector2d Mesh::map_to_physical(int c, const Eigen::Vector2d& ref) const {
  return vertices_[cells_[c][0]] + cell_jacobian(c) * ref;
}

Mesh unit_square_mesh(int n) {
  if (n < 1) throw ArgumentError("unit_square_mesh: n must be >= 1");
  std::vector<Eigen::Vector2d> verts;
  verts.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.emplace_back(double(i) / n, double(j) / n);
  auto idx = [n](int i, int j) { return j * (n + 1) + i; };

  std::vector<std::array<int, 3>> cells;
  std::vector<int> refs;
  cells.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
      cells.push_back({a, b, c});
      refs.push_back(1);  // hypotenuse (a,c) opposite b
      cells.push_back({a, c, d});
      refs.push_back(2);  // hypotenuse (a,c) opposite d
    }
  }

  std::vector<std::array<int, 3>> boundary;
  for (int i = 0; i < n; ++i) boundary.push_back({idx(i, 0), idx(i + 1, 0), 1});
  for (int j = 0; j < n; ++j) boundary.push_back({idx(n, j), idx(n, j + 1), 2});
  for (int i = 0; i < n; ++i) boundary.push_back({idx(i, n), idx(i + 1, n), 3});
  for (int j = 0; j < n; ++j) boundary.push_back({idx(0, j), idx(0, j + 1), 4});

  return Mesh(std::move(verts), std::move(cells), std::move(boundary), std::move(refs));
}

ShapeReport shape_metrics(const Mesh& mesh) {
  const int nc = mesh.num_cells();
  ShapeReport r;
  r.h.resize(nc);
  r.rho.resize(nc);
  r.ratio.resize(nc);
  double h_min = std::numeric_limits<double>::max();
  for (int c = 0; c < nc; ++c) {
    const auto& cv = mesh.cell(c);
    double perim = 0.0, h = 0.0;
    for (int l = 0; l < 3; ++l) {
      const double len = (mesh.vertex(cv[(l + 1) % 3]) - mesh.vertex(cv[(l + 2) % 3])).norm();
      perim += len;
      h = std::max(h, len);
    }
    const double area = mesh.cell_area(c);
    if (!(area > 0.0))
      throw ArgumentError("shape_metrics: cell " + std::to_string(c) + " is degenerate");
    r.h[c] = h;
    r.rho[c] = 2.0 * area / perim;
    r.ratio[c] = r.h[c] / r.rho[c];
    if (r.ratio[c] < 3.4)
      throw InternalError("shape ratio below the geometric lower bound");
    r.h_max = std::max(r.h_max, h);
    h_min = std::min(h_min, h);
  }
  r.quasi_uniformity = r.h_max / h_min;
  return r;
}

Mesh refine_uniform(const Mesh& mesh, std::vector<int>* parents) {
  const int nv = mesh.num_vertices();
  std::vector<Eigen::Vector2d> verts = mesh.vertices();
  verts.reserve(nv + mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto& ed = mesh.edge(e);
    verts.push_back(0.5 * (mesh.vertex(ed.v0) + mesh.vertex(ed.v1)));
  }
  auto mid = [nv](int e) { return nv + e; };

  std::vector<std::array<int, 3>> cells;
  cells.reserve(4 * mesh.num_cells());
  if (parents) parents->clear();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& cv = mesh.cell(c);
    const auto& ce = mesh.cell_edges(c);
    const int m0 = mid(ce[0]), m1 = mid(ce[1]), m2 = mid(ce[2]);
    cells.push_back({cv[0], m2, m1});
    cells.push_back({m2, cv[1], m0});
    cells.push_back({m1, m0, cv[2]});
    cells.push_back({m2, m0, m1});
    if (parents) parents->insert(parents->end(), 4, c);
  }

  std::vector<std::array<int, 3>> boundary;
  for (int e : mesh.boundary_edge_ids()) {
    const auto& ed = mesh.edge(e);
    boundary.push_back({ed.v0, mid(e), ed.marker});
    boundary.push_back({mid(e), ed.v1, ed.marker});
  }
  return Mesh(std::move(verts), std::move(cells), std::move(boundary));
}

Mesh bisect(const Mesh& mesh, const std::vector<int>& marked, std::vector<int>* parents) {
  const int nc = mesh.num_cells();
  const int nv = mesh.num_vertices();
  const int ne = mesh.num_edges();

  std::vector<char> cut(ne, 0);
  for (int c : marked) {
    if (c < 0 || c >= nc)
      throw ArgumentError("bisect: marked cell " + std::to_string(c) + " out of range");
    cut[mesh.cell_edges(c)[mesh.refinement_edge(c)]] = 1;
  }

  // Closure: any cell touching a cut edge must have its refinement edge cut,
  // otherwise the midpoint could not be matched from that side.
  const int budget = 4 * nc;
  int rounds = 0;
  bool changed = !marked.empty();
  while (changed) {
    if (++rounds > budget)
      throw InternalError("bisect: conformity closure exceeded its budget "
                          "(corrupt refinement edge data?)");
    changed = false;
    for (int c = 0; c < nc; ++c) {
      const auto& ce = mesh.cell_edges(c);
      const int re = ce[mesh.refinement_edge(c)];
      if (cut[re]) continue;
      if (cut[ce[0]] || cut[ce[1]] || cut[ce[2]]) {
        cut[re] = 1;
        changed = true;
      }
    }
  }

  std::vector<Eigen::Vector2d> verts = mesh.vertices();
  std::vector<int> mid(ne, -1);
  for (int e = 0; e < ne; ++e) {
    if (!cut[e]) continue;
    mid[e] = static_cast<int>(verts.size());
    verts.push_back(0.5 * (mesh.vertex(mesh.edge(e).v0) + mesh.vertex(mesh.edge(e).v1)));
  }

  std::vector<std::array<int, 3>> cells;
  std::vector<int> refs;
  std::vector<int> par;

  // (peak, a, b): refinement edge (a,b) opposite the peak. Edge ids are
  // original-mesh ids, -1 for edges created during this call; only original
  // edges can be cut, so recursion stops after at most two levels.
  std::function<void(int, int, int, int, int, int, int)> split =
      [&](int peak, int a, int b, int e_ab, int e_pa, int e_bp, int parent) {
        if (e_ab < 0 || !cut[e_ab]) {
          cells.push_back({peak, a, b});
          refs.push_back(0);
          par.push_back(parent);
          return;
        }
        const int m = mid[e_ab];
        split(m, peak, a, e_pa, -1, -1, parent);
        split(m, b, peak, e_bp, -1, -1, parent);
      };

  for (int c = 0; c < nc; ++c) {
    const auto& ce = mesh.cell_edges(c);
    const int r = mesh.refinement_edge(c);
    if (!cut[ce[0]] && !cut[ce[1]] && !cut[ce[2]]) {
      cells.push_back(mesh.cell(c));
      refs.push_back(r);
      par.push_back(c);
      continue;
    }
    const auto& cv = mesh.cell(c);
    split(cv[r], cv[(r + 1) % 3], cv[(r + 2) % 3],
          ce[r], ce[(r + 2) % 3], ce[(r + 1) % 3], c);
  }

  std::vector<std::array<int, 3>> boundary;
  for (int e : mesh.boundary_edge_ids()) {
    const auto& ed = mesh.edge(e);
    if (cut[e]) {
      boundary.push_back({ed.v0, mid[e], ed.marker});
      boundary.push_back({mid[e], ed.v1, ed.marker});
    } else {
      boundary.push_back({ed.v0, ed.v1, ed.marker});
    }
  }

  if (parents) *parents = std::move(par);
  (void)nv;
  return Mesh(std::move(verts), std::move(cells), std::move(boundary), std::move(refs));
}

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string write_mesh(const Mesh& mesh) {
  std::ostringstream out;
  out << mesh.num_vertices() << ' ' << mesh.num_cells() << ' '
      << mesh.num_boundary_edges() << '\n';
  for (int v = 0; v < mesh.num_vertices(); ++v)
    out << fmt_double(mesh.vertex(v).x()) << ' ' << fmt_double(mesh.vertex(v).y()) << '\n';
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& cv = mesh.cell(c);
    out << cv[0] << ' ' << cv[1] << ' ' << cv[2] << '\n';
  }
  for (int e : mesh.boundary_edge_ids()) {
    const auto& ed = mesh.edge(e);
    out << ed.v0 << ' ' << ed.v1 << ' ' << ed.marker << '\n';
  }
  return out.str();
}

Mesh read_mesh(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto next_line = [&](std::istringstream& ls) {
    while (std::getline(in, line)) {
      ++lineno;
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      ls.clear();
      ls.str(line);
      return true;
    }
    return false;
  };

  std::istringstream ls;
  if (!next_line(ls)) throw ParseError("empty mesh file");
  long long nv = 0, nc = 0, nb = 0;
  if (!(ls >> nv >> nc >> nb) || nv < 3 || nc < 1 || nb < 3)
    throw ParseError("malformed header, expected 'nv nc nb'", lineno);

  std::vector<Eigen::Vector2d> verts(nv);
  for (long long v = 0; v < nv; ++v) {
    if (!next_line(ls)) throw ParseError("unexpected end of file in vertex list", lineno);
    double x, y;
    if (!(ls >> x >> y)) throw ParseError("expected 'x y'", lineno);
    if (!std::isfinite(x) || !std::isfinite(y))
      throw ParseError("non-finite vertex coordinate", lineno);
    verts[v] = Eigen::Vector2d(x, y);
  }

  std::vector<std::array<int, 3>> cells(nc);
  for (long long c = 0; c < nc; ++c) {
    if (!next_line(ls)) throw ParseError("unexpected end of file in cell list", lineno);
    std::array<int, 3> t;
    if (!(ls >> t[0] >> t[1] >> t[2])) throw ParseError("expected 'i j k'", lineno);
    for (int l = 0; l < 3; ++l)
      if (t[l] < 0 || t[l] >= nv)
        throw ParseError("vertex index " + std::to_string(t[l]) + " out of range", lineno);
    // Clockwise cells are repaired, degenerate ones rejected.
    if (signed_area(verts[t[0]], verts[t[1]], verts[t[2]]) == 0.0)
      throw ParseError("degenerate cell (zero area)", lineno);
    cells[c] = t;
  }

  std::vector<std::array<int, 3>> boundary(nb);
  for (long long b = 0; b < nb; ++b) {
    if (!next_line(ls)) throw ParseError("unexpected end of file in boundary list", lineno);
    std::array<int, 3> t;
    if (!(ls >> t[0] >> t[1] >> t[2])) throw ParseError("expected 'i j marker'", lineno);
    for (int l = 0; l < 2; ++l)
      if (t[l] < 0 || t[l] >= nv)
        throw ParseError("vertex index " + std::to_string(t[l]) + " out of range", lineno);
    boundary[b] = t;
  }

  try {
    return Mesh(std::move(verts), std::move(cells), std::move(boundary));
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("invalid mesh: ") + e.what());
  }
}

}  // namespace mafem
