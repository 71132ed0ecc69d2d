#ifndef MAFEM_MESH_HPP
#define MAFEM_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mafem {

/// Per-cell and global shape-quality metrics of a triangulation.
struct ShapeReport {
  Eigen::VectorXd h;      ///< cell diameter (longest edge)
  Eigen::VectorXd rho;    ///< inradius, 2*area/perimeter
  Eigen::VectorXd ratio;  ///< h/rho
  double h_max = 0.0;
  double quasi_uniformity = 0.0;  ///< h_max / min h_K
};

/// Immutable conforming triangulation of a polygonal domain.
///
/// Cells are counterclockwise vertex triples. Local edge i of a cell is the
/// edge opposite local vertex i. Each cell carries the local index of its
/// refinement edge (the edge bisected by newest-vertex bisection).
class Mesh {
 public:
  struct EdgeInfo {
    int v0 = -1, v1 = -1;        // endpoints, v0 < v1
    int cell0 = -1, cell1 = -1;  // incident cells, cell1 = -1 on the boundary
    int marker = -1;             // boundary marker, -1 for interior edges
  };

  /// Builds topology from raw data. Clockwise cells are repaired by swapping
  /// two vertices; zero-area cells are rejected. `boundary` lists
  /// (v0, v1, marker) triples; when empty, every boundary edge gets marker 1.
  /// `refinement_edges` may pin the per-cell refinement edge; when empty the
  /// longest edge is used.
  Mesh(std::vector<Eigen::Vector2d> vertices,
       std::vector<std::array<int, 3>> cells,
       std::vector<std::array<int, 3>> boundary = {},
       std::vector<int> refinement_edges = {});

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_boundary_edges() const { return static_cast<int>(boundary_edges_.size()); }

  const Eigen::Vector2d& vertex(int v) const { return vertices_[v]; }
  const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
  const std::array<int, 3>& cell(int c) const { return cells_[c]; }
  const std::vector<std::array<int, 3>>& cells() const { return cells_; }
  const EdgeInfo& edge(int e) const { return edges_[e]; }
  const std::array<int, 3>& cell_edges(int c) const { return cell_edges_[c]; }
  int refinement_edge(int c) const { return refinement_edge_[c]; }
  const std::vector<int>& boundary_edge_ids() const { return boundary_edges_; }

  double cell_area(int c) const;
  double total_area() const;
  /// Affine map x = v0 + J*xi from the reference triangle, J constant.
  Eigen::Matrix2d cell_jacobian(int c) const;
  Eigen::Vector2d map_to_physical(int c, const Eigen::Vector2d& ref) const;

 private:
  std::vector<Eigen::Vector2d> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<EdgeInfo> edges_;
  std::vector<std::array<int, 3>> cell_edges_;
  std::vector<int> refinement_edge_;
  std::vector<int> boundary_edges_;
};

/// Structured mesh of [0,1]^2 with 2n^2 right triangles, diagonals aligned,
/// refinement edges on the hypotenuses. Boundary markers: bottom 1, right 2,
/// top 3, left 4.
Mesh unit_square_mesh(int n);

ShapeReport shape_metrics(const Mesh& mesh);

/// Red refinement: every cell is split into four similar children through
/// the edge midpoints. `parents`, when non-null, receives the coarse cell
/// index of each child.
Mesh refine_uniform(const Mesh& mesh, std::vector<int>* parents = nullptr);

/// Newest-vertex bisection of the marked cells with recursive conformity
/// closure. The result has no hanging nodes.
Mesh bisect(const Mesh& mesh, const std::vector<int>& marked,
            std::vector<int>* parents = nullptr);

/// Plain-text mesh format:
///   line 1: nv nc nb
///   nv lines: x y
///   nc lines: i j k     (0-based vertex indices, counterclockwise)
///   nb lines: i j marker
/// Lines starting with '#' are ignored.
Mesh read_mesh(const std::string& text);
std::string write_mesh(const Mesh& mesh);

}  // namespace mafem

#endif
