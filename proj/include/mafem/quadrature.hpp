#ifndef MAFEM_QUADRATURE_HPP
#define MAFEM_QUADRATURE_HPP

#include <vector>

#include <Eigen/Dense>

namespace mafem {

/// Quadrature rule on the reference triangle {x,y >= 0, x+y <= 1}.
/// Weights sum to 1/2 and are strictly positive; points lie inside the
/// closed reference triangle.
struct TriangleRule {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  int exactness = 0;
};

/// Gauss rule on the reference edge [0,1]. Weights sum to 1.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exactness = 0;
};

/// Conical-product rule exact for all bivariate monomials of total degree
/// <= `degree`. Supported range: 1..20.
TriangleRule triangle_rule(int degree);

/// Gauss-Legendre rule on [0,1] with ceil((degree+1)/2) points.
EdgeRule edge_rule(int degree);

constexpr int kMaxTriangleDegree = 20;

}  // namespace mafem

#endif
