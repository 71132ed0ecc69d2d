#include "mafem/quadrature.hpp"

#include <cmath>

#include "mafem/error.hpp"

namespace mafem {

namespace {

// Golub-Welsch: nodes and weights of a Gauss rule from the three-term
// recurrence of the orthogonal polynomials. `beta_sq` holds the squared
// off-diagonal entries, `mu0` the total weight-function mass.
void gauss_from_recurrence(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta_sq,
                           double mu0, std::vector<double>& x, std::vector<double>& w) {
  const int m = static_cast<int>(alpha.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = std::sqrt(beta_sq[i]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  x.resize(m);
  w.resize(m);
  for (int i = 0; i < m; ++i) {
    x[i] = es.eigenvalues()[i];
    const double q0 = es.eigenvectors()(0, i);
    w[i] = mu0 * q0 * q0;
  }
}

// m-point Gauss-Legendre on [0,1].
void gauss_legendre_01(int m, std::vector<double>& x, std::vector<double>& w) {
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd beta_sq(m);
  for (int n = 1; n < m; ++n) beta_sq[n - 1] = double(n) * n / (4.0 * n * n - 1.0);
  gauss_from_recurrence(alpha, beta_sq, 2.0, x, w);
  for (int i = 0; i < m; ++i) {
    x[i] = 0.5 * (1.0 + x[i]);
    w[i] *= 0.5;
  }
}

// m-point Gauss-Jacobi for the weight (1-x) on [0,1].
void gauss_jacobi10_01(int m, std::vector<double>& x, std::vector<double>& w) {
  Eigen::VectorXd alpha(m), beta_sq(m);
  alpha[0] = -1.0 / 3.0;
  for (int n = 1; n < m; ++n) {
    alpha[n] = -1.0 / ((2.0 * n + 1.0) * (2.0 * n + 3.0));
    beta_sq[n - 1] = double(n) * (n + 1.0) / ((2.0 * n + 1.0) * (2.0 * n + 1.0));
  }
  gauss_from_recurrence(alpha, beta_sq, 2.0, x, w);
  for (int i = 0; i < m; ++i) {
    x[i] = 0.5 * (1.0 + x[i]);
    w[i] *= 0.25;
  }
}

}  // namespace

TriangleRule triangle_rule(int degree) {
  if (degree < 1)
    throw ArgumentError("triangle_rule: degree must be >= 1");
  if (degree > kMaxTriangleDegree)
    throw ArgumentError("triangle_rule: unsupported degree " + std::to_string(degree) +
                        " (max " + std::to_string(kMaxTriangleDegree) + ")");
  const int m = (degree + 2) / 2;
  std::vector<double> xj, wj, xl, wl;
  gauss_jacobi10_01(m, xj, wj);
  gauss_legendre_01(m, xl, wl);

  TriangleRule rule;
  rule.exactness = degree;
  rule.points.reserve(m * m);
  rule.weights.reserve(m * m);
  // int_T f = int_0^1 int_0^1 f(x, (1-x)s) (1-x) ds dx
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      rule.points.emplace_back(xj[i], (1.0 - xj[i]) * xl[j]);
      rule.weights.push_back(wj[i] * wl[j]);
    }
  }
  return rule;
}

EdgeRule edge_rule(int degree) {
  if (degree < 1) throw ArgumentError("edge_rule: degree must be >= 1");
  const int m = (degree + 2) / 2;
  EdgeRule rule;
  rule.exactness = degree;
  gauss_legendre_01(m, rule.points, rule.weights);
  return rule;
}

}  // namespace mafem
