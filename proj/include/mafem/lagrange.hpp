#ifndef MAFEM_LAGRANGE_HPP
#define MAFEM_LAGRANGE_HPP

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mafem/mesh.hpp"

namespace mafem {

using ScalarField = std::function<double(const Eigen::Vector2d&)>;

/// Lagrange basis of degree k on the reference triangle, nodes on the
/// principal lattice. Node order matches the cell-local DOF order:
/// 3 vertices, then k-1 nodes per local edge (edge i runs from local vertex
/// (i+1)%3 to (i+2)%3), then the interior lattice points.
class ReferenceBasis {
 public:
  explicit ReferenceBasis(int k);  // 3 <= k <= 6

  int degree() const { return k_; }
  int size() const { return nloc_; }
  const std::vector<Eigen::Vector2d>& nodes() const { return nodes_; }

  /// Values of all basis functions at a reference point.
  Eigen::VectorXd eval(const Eigen::Vector2d& p) const;
  /// Reference gradients, one row (d/dx, d/dy) per basis function.
  Eigen::MatrixXd eval_grad(const Eigen::Vector2d& p) const;
  /// Reference second derivatives, one row (dxx, dxy, dyy) per basis function.
  Eigen::MatrixXd eval_hess(const Eigen::Vector2d& p) const;

  /// Local DOF indices lying on local edge e, ordered along the edge.
  std::vector<int> edge_dofs(int e) const;

 private:
  void bernstein(const Eigen::Vector2d& p, Eigen::VectorXd* val, Eigen::MatrixXd* grad,
                 Eigen::MatrixXd* hess) const;

  int k_ = 0;
  int nloc_ = 0;
  std::vector<Eigen::Vector2d> nodes_;
  std::vector<std::array<int, 3>> multi_;  // Bernstein exponents, |alpha| = k
  std::vector<double> coef_;               // multinomial k!/(i!j!l!)
  Eigen::MatrixXd lagrange_from_bernstein_;
};

/// Basis tables at a fixed set of reference points (one row per point).
struct BasisTab {
  Eigen::MatrixXd val, dx, dy, hxx, hxy, hyy;
};
BasisTab tabulate(const ReferenceBasis& basis, std::span<const Eigen::Vector2d> points);

constexpr int kMinDegree = 3;
constexpr int kMaxDegree = 6;

/// Global DOF numbering of the degree-k Lagrange space V_h over a mesh,
/// with the induced numbering of the 4-component space for 2x2 matrix
/// fields and of the boundary trace space.
///
/// Scalar DOFs: vertices, then (k-1) per edge (ordered from the lower to the
/// higher vertex index), then interior nodes cell by cell. Matrix fields use
/// four stacked scalar copies, component-major in the order
/// (11, 12, 21, 22). Trace DOFs are the boundary scalar DOFs in ascending
/// order.
class DofMap {
 public:
  DofMap(Mesh mesh, int k);

  const Mesh& mesh() const { return mesh_; }
  const ReferenceBasis& basis() const { return basis_; }
  int degree() const { return basis_.degree(); }

  int num_dofs() const { return num_dofs_; }                     // dim V_h
  int num_sigma_dofs() const { return 4 * num_dofs_; }           // dim Sigma_h
  int num_boundary_dofs() const { return static_cast<int>(boundary_dofs_.size()); }
  int num_interior_dofs() const { return static_cast<int>(interior_dofs_.size()); }

  std::span<const int> cell_dofs(int c) const;
  const Eigen::Vector2d& dof_point(int dof) const { return dof_points_[dof]; }

  bool is_boundary_dof(int dof) const { return interior_index_[dof] < 0; }
  const std::vector<int>& boundary_dofs() const { return boundary_dofs_; }
  const std::vector<int>& interior_dofs() const { return interior_dofs_; }
  /// Position of a V_h DOF in the interior list, -1 for boundary DOFs.
  int interior_index(int dof) const { return interior_index_[dof]; }
  /// Position of a V_h DOF in the trace space, -1 for interior DOFs.
  int lambda_index(int dof) const { return lambda_index_[dof]; }

  struct BoundaryEdge {
    int edge = -1;        // mesh edge id
    int cell = -1;        // the single incident cell
    int local_edge = -1;  // local edge index within that cell
    int marker = -1;
  };
  const std::vector<BoundaryEdge>& boundary() const { return boundary_geo_; }

 private:
  Mesh mesh_;
  ReferenceBasis basis_;
  int num_dofs_ = 0;
  std::vector<int> cell_dofs_;  // num_cells * nloc, row-major
  std::vector<Eigen::Vector2d> dof_points_;
  std::vector<int> boundary_dofs_;
  std::vector<int> interior_dofs_;
  std::vector<int> interior_index_;
  std::vector<int> lambda_index_;
  std::vector<BoundaryEdge> boundary_geo_;
};

/// Coefficients of the discrete solution triple. `sigma` stacks the four
/// matrix components (11, 12, 21, 22), each of length dim V_h; `lambda`
/// lives on the trace DOFs.
struct State {
  Eigen::VectorXd sigma;
  Eigen::VectorXd u;
  Eigen::VectorXd lambda;
};

/// Nodal interpolation into V_h. Throws DataError if fn is not finite at a
/// node, naming the node position.
Eigen::VectorXd interpolate(const DofMap& dofmap, const ScalarField& fn);
/// Nodal interpolation into the trace space (boundary DOFs only).
Eigen::VectorXd interpolate_boundary(const DofMap& dofmap, const ScalarField& fn);

/// Point evaluation of a V_h coefficient vector on one cell.
double eval_value(const DofMap& dofmap, const Eigen::VectorXd& coeffs, int cell,
                  const Eigen::Vector2d& ref);
Eigen::Vector2d eval_gradient(const DofMap& dofmap, const Eigen::VectorXd& coeffs,
                              int cell, const Eigen::Vector2d& ref);
Eigen::Matrix2d eval_hessian(const DofMap& dofmap, const Eigen::VectorXd& coeffs,
                             int cell, const Eigen::Vector2d& ref);

}  // namespace mafem

#endif
