#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace vortwave {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Chebyshev-Gauss-Lobatto grid mapped to [0,1], nodes ascending.
struct CollocationGrid {
  int n = 0;
  Vec y;     // nodes, y(0) = 0, y(n-1) = 1
  Mat D;     // d/dy on nodal values
  Vec w;     // Clenshaw-Curtis weights, sum 1
  Mat A;     // antiderivative from y = 0
  Mat Tinv;  // nodal values -> Chebyshev coefficients

  template <class V>
  auto quad(const V &f) const { return w.template cast<typename V::Scalar>().dot(f); }
  template <class V>
  auto diff(const V &f) const { return (D * f).eval(); }

  /// Barycentric interpolation of nodal values at x in [0,1].
  double interp(const Vec &f, double x) const;
  Vec interp(const Vec &f, const Vec &x) const;
  /// Matrix evaluating the interpolant of nodal values at the points x.
  Mat interp_matrix(const Vec &x) const;

 private:
  friend CollocationGrid build_grid(int);
  Vec bw_;  // barycentric weights
};

CollocationGrid build_grid(int n);

// Trace formulas: theta(0) and theta(1) written through integrals of theta and theta_y.
template <class V>
auto trace_bottom(const CollocationGrid &g, const V &f) {
  using S = typename V::Scalar;
  Eigen::Matrix<S, Eigen::Dynamic, 1> fy = g.D * f;
  Eigen::Matrix<S, Eigen::Dynamic, 1> om = (Vec::Ones(g.n) - g.y).template cast<S>();
  return S(-g.quad(om.cwiseProduct(fy)) + g.quad(f));
}

template <class V>
auto trace_top(const CollocationGrid &g, const V &f) {
  using S = typename V::Scalar;
  Eigen::Matrix<S, Eigen::Dynamic, 1> fy = g.D * f;
  return S(g.quad(g.y.template cast<S>().cwiseProduct(fy)) + g.quad(f));
}

/// Safeguarded Newton on a bracket. dg may be empty, then secant slopes are used.
double find_real_root(const std::function<double(double)> &g, double a, double b,
                      double tol = 1e-12,
                      const std::function<double(double)> &dg = {});

}  // namespace vortwave
