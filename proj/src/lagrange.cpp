#include "mafem/lagrange.hpp"

#include <cmath>
#include <sstream>

#include "mafem/error.hpp"

namespace mafem {

namespace {

double ipow(double b, int e) {
  if (e < 0) return 0.0;
  double r = 1.0;
  while (e-- > 0) r *= b;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

ReferenceBasis::ReferenceBasis(int k) : k_(k) {
  if (k < kMinDegree || k > kMaxDegree)
    throw ArgumentError("unsupported Lagrange degree " + std::to_string(k) +
                        " (supported: " + std::to_string(kMinDegree) + ".." +
                        std::to_string(kMaxDegree) + ")");
  nloc_ = (k + 1) * (k + 2) / 2;

  // Nodes: vertices, edge lattice points, interior lattice points.
  const Eigen::Vector2d R[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  nodes_.assign(R, R + 3);
  for (int e = 0; e < 3; ++e) {
    const Eigen::Vector2d a = R[(e + 1) % 3], b = R[(e + 2) % 3];
    for (int i = 1; i < k; ++i) nodes_.push_back(a + (double(i) / k) * (b - a));
  }
  for (int i = 1; i < k; ++i)
    for (int j = 1; j < k - i; ++j)
      nodes_.emplace_back(double(i) / k, double(j) / k);
  if (static_cast<int>(nodes_.size()) != nloc_)
    throw InternalError("reference node count mismatch");

  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k - i; ++j) {
      multi_.push_back({i, j, k - i - j});
      coef_.push_back(factorial(k) / (factorial(i) * factorial(j) * factorial(k - i - j)));
    }

  // Lagrange coefficients over the Bernstein basis, inverted in extended
  // precision to keep the Kronecker property tight at k = 6.
  using LongMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  LongMat A(nloc_, nloc_);
  for (int n = 0; n < nloc_; ++n) {
    const long double l1 = nodes_[n].x(), l2 = nodes_[n].y();
    const long double l0 = 1.0L - l1 - l2;
    for (int m = 0; m < nloc_; ++m) {
      long double v = coef_[m];
      for (int t = 0; t < multi_[m][0]; ++t) v *= l0;
      for (int t = 0; t < multi_[m][1]; ++t) v *= l1;
      for (int t = 0; t < multi_[m][2]; ++t) v *= l2;
      A(n, m) = v;
    }
  }
  LongMat X = A.fullPivLu().solve(LongMat::Identity(nloc_, nloc_));
  lagrange_from_bernstein_ = X.cast<double>();
}

void ReferenceBasis::bernstein(const Eigen::Vector2d& p, Eigen::VectorXd* val,
                               Eigen::MatrixXd* grad, Eigen::MatrixXd* hess) const {
  const double l1 = p.x(), l2 = p.y(), l0 = 1.0 - l1 - l2;
  if (val) val->resize(nloc_);
  if (grad) grad->resize(nloc_, 2);
  if (hess) hess->resize(nloc_, 3);
  for (int m = 0; m < nloc_; ++m) {
    const int i = multi_[m][0], j = multi_[m][1], l = multi_[m][2];
    const double c = coef_[m];
    if (val) (*val)[m] = c * ipow(l0, i) * ipow(l1, j) * ipow(l2, l);
    // d/dx = -d/dl0 + d/dl1, d/dy = -d/dl0 + d/dl2
    const double d0 = i > 0 ? c * i * ipow(l0, i - 1) * ipow(l1, j) * ipow(l2, l) : 0.0;
    const double d1 = j > 0 ? c * j * ipow(l0, i) * ipow(l1, j - 1) * ipow(l2, l) : 0.0;
    const double d2 = l > 0 ? c * l * ipow(l0, i) * ipow(l1, j) * ipow(l2, l - 1) : 0.0;
    if (grad) {
      (*grad)(m, 0) = d1 - d0;
      (*grad)(m, 1) = d2 - d0;
    }
    if (hess) {
      auto dd = [&](int a, int b) {  // d^2/dl_a dl_b
        int e[3] = {i, j, l};
        double f = c;
        f *= e[a];
        --e[a];
        if (e[a] < 0) return 0.0;
        f *= e[b];
        --e[b];
        if (e[b] < 0) return 0.0;
        return f * ipow(l0, e[0]) * ipow(l1, e[1]) * ipow(l2, e[2]);
      };
      const double d00 = dd(0, 0), d11 = dd(1, 1), d22 = dd(2, 2);
      const double d01 = dd(0, 1), d02 = dd(0, 2), d12 = dd(1, 2);
      (*hess)(m, 0) = d00 - 2.0 * d01 + d11;
      (*hess)(m, 1) = d00 - d01 - d02 + d12;
      (*hess)(m, 2) = d00 - 2.0 * d02 + d22;
    }
  }
}

Eigen::VectorXd ReferenceBasis::eval(const Eigen::Vector2d& p) const {
  Eigen::VectorXd b;
  bernstein(p, &b, nullptr, nullptr);
  return lagrange_from_bernstein_.transpose() * b;
}

Eigen::MatrixXd ReferenceBasis::eval_grad(const Eigen::Vector2d& p) const {
  Eigen::MatrixXd g;
  bernstein(p, nullptr, &g, nullptr);
  return lagrange_from_bernstein_.transpose() * g;
}

Eigen::MatrixXd ReferenceBasis::eval_hess(const Eigen::Vector2d& p) const {
  Eigen::MatrixXd h;
  bernstein(p, nullptr, nullptr, &h);
  return lagrange_from_bernstein_.transpose() * h;
}

std::vector<int> ReferenceBasis::edge_dofs(int e) const {
  std::vector<int> d;
  d.push_back((e + 1) % 3);
  for (int i = 0; i < k_ - 1; ++i) d.push_back(3 + e * (k_ - 1) + i);
  d.push_back((e + 2) % 3);
  return d;
}

BasisTab tabulate(const ReferenceBasis& basis, std::span<const Eigen::Vector2d> points) {
  const int np = static_cast<int>(points.size());
  const int n = basis.size();
  BasisTab t;
  t.val.resize(np, n);
  t.dx.resize(np, n);
  t.dy.resize(np, n);
  t.hxx.resize(np, n);
  t.hxy.resize(np, n);
  t.hyy.resize(np, n);
  for (int q = 0; q < np; ++q) {
    t.val.row(q) = basis.eval(points[q]).transpose();
    const Eigen::MatrixXd g = basis.eval_grad(points[q]);
    t.dx.row(q) = g.col(0).transpose();
    t.dy.row(q) = g.col(1).transpose();
    const Eigen::MatrixXd h = basis.eval_hess(points[q]);
    t.hxx.row(q) = h.col(0).transpose();
    t.hxy.row(q) = h.col(1).transpose();
    t.hyy.row(q) = h.col(2).transpose();
  }
  return t;
}

DofMap::DofMap(Mesh mesh, int k) : mesh_(std::move(mesh)), basis_(k) {
  const int nv = mesh_.num_vertices();
  const int ne = mesh_.num_edges();
  const int nc = mesh_.num_cells();
  const int per_edge = k - 1;
  const int per_cell = (k - 1) * (k - 2) / 2;
  num_dofs_ = nv + ne * per_edge + nc * per_cell;

  const int nloc = basis_.size();
  cell_dofs_.resize(static_cast<size_t>(nc) * nloc);
  const int edge_off = nv;
  const int cell_off = nv + ne * per_edge;

  for (int c = 0; c < nc; ++c) {
    int* dofs = &cell_dofs_[static_cast<size_t>(c) * nloc];
    const auto& cv = mesh_.cell(c);
    for (int l = 0; l < 3; ++l) dofs[l] = cv[l];
    for (int e = 0; e < 3; ++e) {
      const int g = mesh_.cell_edges(c)[e];
      const int p = cv[(e + 1) % 3];  // local edge runs p -> q
      const bool fwd = (p == mesh_.edge(g).v0);
      for (int i = 1; i < k; ++i) {
        const int canonical = fwd ? i : k - i;
        dofs[3 + e * per_edge + (i - 1)] = edge_off + g * per_edge + (canonical - 1);
      }
    }
    for (int i = 0; i < per_cell; ++i)
      dofs[3 + 3 * per_edge + i] = cell_off + c * per_cell + i;
  }

  // Geometric node positions: canonical edge direction is v0 -> v1.
  dof_points_.resize(num_dofs_);
  for (int v = 0; v < nv; ++v) dof_points_[v] = mesh_.vertex(v);
  for (int e = 0; e < ne; ++e) {
    const Eigen::Vector2d a = mesh_.vertex(mesh_.edge(e).v0);
    const Eigen::Vector2d b = mesh_.vertex(mesh_.edge(e).v1);
    for (int i = 1; i < k; ++i)
      dof_points_[edge_off + e * per_edge + (i - 1)] = a + (double(i) / k) * (b - a);
  }
  const auto& ref_nodes = basis_.nodes();
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < per_cell; ++i)
      dof_points_[cell_off + c * per_cell + i] =
          mesh_.map_to_physical(c, ref_nodes[3 + 3 * per_edge + i]);

  // Boundary bookkeeping.
  std::vector<char> on_boundary(num_dofs_, 0);
  for (int e : mesh_.boundary_edge_ids()) {
    on_boundary[mesh_.edge(e).v0] = 1;
    on_boundary[mesh_.edge(e).v1] = 1;
    for (int i = 0; i < per_edge; ++i) on_boundary[edge_off + e * per_edge + i] = 1;

    BoundaryEdge be;
    be.edge = e;
    be.cell = mesh_.edge(e).cell0;
    be.marker = mesh_.edge(e).marker;
    for (int l = 0; l < 3; ++l)
      if (mesh_.cell_edges(be.cell)[l] == e) be.local_edge = l;
    boundary_geo_.push_back(be);
  }
  interior_index_.assign(num_dofs_, -1);
  lambda_index_.assign(num_dofs_, -1);
  for (int d = 0; d < num_dofs_; ++d) {
    if (on_boundary[d]) {
      lambda_index_[d] = static_cast<int>(boundary_dofs_.size());
      boundary_dofs_.push_back(d);
    } else {
      interior_index_[d] = static_cast<int>(interior_dofs_.size());
      interior_dofs_.push_back(d);
    }
  }
}

std::span<const int> DofMap::cell_dofs(int c) const {
  return {&cell_dofs_[static_cast<size_t>(c) * basis_.size()],
          static_cast<size_t>(basis_.size())};
}

namespace {

double node_value(const DofMap& dofmap, const ScalarField& fn, int dof) {
  const double v = fn(dofmap.dof_point(dof));
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "interpolation: non-finite value at node (" << dofmap.dof_point(dof).x()
        << ", " << dofmap.dof_point(dof).y() << ")";
    throw DataError(msg.str());
  }
  return v;
}

}  // namespace

Eigen::VectorXd interpolate(const DofMap& dofmap, const ScalarField& fn) {
  Eigen::VectorXd out(dofmap.num_dofs());
  for (int d = 0; d < dofmap.num_dofs(); ++d) out[d] = node_value(dofmap, fn, d);
  return out;
}

Eigen::VectorXd interpolate_boundary(const DofMap& dofmap, const ScalarField& fn) {
  const auto& bdofs = dofmap.boundary_dofs();
  Eigen::VectorXd out(bdofs.size());
  for (size_t i = 0; i < bdofs.size(); ++i) out[i] = node_value(dofmap, fn, bdofs[i]);
  return out;
}

double eval_value(const DofMap& dofmap, const Eigen::VectorXd& coeffs, int cell,
                  const Eigen::Vector2d& ref) {
  const Eigen::VectorXd phi = dofmap.basis().eval(ref);
  const auto dofs = dofmap.cell_dofs(cell);
  double v = 0.0;
  for (int l = 0; l < static_cast<int>(dofs.size()); ++l) v += coeffs[dofs[l]] * phi[l];
  return v;
}

Eigen::Vector2d eval_gradient(const DofMap& dofmap, const Eigen::VectorXd& coeffs,
                              int cell, const Eigen::Vector2d& ref) {
  const Eigen::MatrixXd g = dofmap.basis().eval_grad(ref);
  const auto dofs = dofmap.cell_dofs(cell);
  Eigen::Vector2d ref_grad = Eigen::Vector2d::Zero();
  for (int l = 0; l < static_cast<int>(dofs.size()); ++l)
    ref_grad += coeffs[dofs[l]] * g.row(l).transpose();
  const Eigen::Matrix2d Jinv = dofmap.mesh().cell_jacobian(cell).inverse();
  return Jinv.transpose() * ref_grad;
}

Eigen::Matrix2d eval_hessian(const DofMap& dofmap, const Eigen::VectorXd& coeffs,
                             int cell, const Eigen::Vector2d& ref) {
  const Eigen::MatrixXd h = dofmap.basis().eval_hess(ref);
  const auto dofs = dofmap.cell_dofs(cell);
  Eigen::Matrix2d Href = Eigen::Matrix2d::Zero();
  for (int l = 0; l < static_cast<int>(dofs.size()); ++l) {
    Href(0, 0) += coeffs[dofs[l]] * h(l, 0);
    Href(0, 1) += coeffs[dofs[l]] * h(l, 1);
    Href(1, 1) += coeffs[dofs[l]] * h(l, 2);
  }
  Href(1, 0) = Href(0, 1);
  const Eigen::Matrix2d Jinv = dofmap.mesh().cell_jacobian(cell).inverse();
  return Jinv.transpose() * Href * Jinv;
}

}  // namespace mafem
