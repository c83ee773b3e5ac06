#pragma once

#include <vector>

#include "vortwave/phase_space.hpp"

namespace vortwave {

/// The linearisation of the flattened field at the trivial state, acting on
/// (Phi, theta, Z, eta). omega0 and sigma0 are taken from p.
template <class S>
State<S> apply_L(const CollocationGrid &g, const State<S> &v, const Params &p) {
  using VS = typename State<S>::VecS;
  const double om = p.omega0, sg = p.sigma0;
  const int e = g.n - 1;
  VS ty = g.D.template cast<S>() * v.theta;
  VS Py = g.D.template cast<S>() * v.phi;
  VS y = g.y.template cast<S>();
  VS shape = ((1.0 / 3.0 - g.y.array().square()) / (2.0 * sg)).matrix().template cast<S>();
  VS lin = (2.0 * g.y.array() - 1.0).matrix().template cast<S>();
  VS bub = ((1.0 - g.y.array()) * g.y.array()).matrix().template cast<S>();
  const S s = v.phi(e) + v.z;
  State<S> r;
  r.phi = ty + (ty(e) + v.eta) * shape + S(om) * v.eta * lin;
  r.theta = -Py + S(3.0 * om) * s * bub;
  r.z = -ty(e) - S(om) * v.eta;
  r.eta = S(3.0) * s;
  return r;
}

cplx dispersion_residual(cplx lambda, double sigma0);
cplx dispersion_derivative(cplx lambda, double sigma0);

struct DispersionRoot {
  cplx lambda;
  double residual = 0.0;
  bool converged = false;
};

/// Roots of lambda cos(lambda) = (1 - sigma0 lambda^2) sin(lambda) of smallest
/// modulus, zero excluded, sorted by modulus (ties: real part ascending).
/// `seeds` are extra complex starting points for Newton (e.g. collocation eigenvalues).
std::vector<DispersionRoot> dispersion_roots(double sigma0, int count,
                                             const std::vector<cplx> &seeds = {});

/// Closed-form eigenvector for a nonzero root, sampled on g.
CState eigenvector_of(const CollocationGrid &g, cplx lambda, double sigma0);

/// Discretised L restricted to the constrained subspace
/// {mean Phi = 0, Phi_y(0) = Phi_y(1) = 0, theta(0) = theta(1) = 0, top Chebyshev coefficient of theta = 0}.
struct DiscreteL {
  CollocationGrid g;
  Params p;
  Mat L;     // full (2n+2)^2 collocation matrix
  Mat C;     // constraint rows
  Mat B;     // orthonormal basis of ker C
  Vec Wd;    // quadrature weights on the flat layout
  Mat G;     // B^T diag(Wd) B
  Mat Ared;  // reduced operator G^{-1} B^T diag(Wd) L B
  Mat Pw;    // G^{-1} B^T diag(Wd): flat vector -> reduced coordinates

  static DiscreteL build(int n, const Params &p);
  int dim() const { return int(B.cols()); }
  /// Weighted projection of a flat vector onto reduced coordinates.
  template <class VS>
  auto to_reduced(const VS &v) const {
    using S = typename VS::Scalar;
    return Eigen::Matrix<S, Eigen::Dynamic, 1>(Pw.template cast<S>() * v);
  }
};

struct SpectrumReport {
  double sigma0 = 0.0;
  int n = 0;
  std::vector<cplx> eigenvalues;         // clustered, spurious modes removed, sorted by modulus
  std::vector<int> multiplicity;         // size of each cluster
  std::vector<double> residuals;         // ||L v - lambda v|| / ||v|| in the weighted norm
  std::vector<double> dispersion_residuals;
  std::vector<cplx> raw;                 // every eigenvalue of the reduced matrix
  std::vector<cplx> raw_clustered;       // raw values after cluster averaging
  int zero_geometric = 0;
  int zero_algebraic = 0;
};

/// Collocation spectrum. Eigenvalues closer than cluster_tol*(1+|lambda|) are
/// reported once by their mean; roundoff splits the Jordan block at zero by about 1e-6.
SpectrumReport collocation_spectrum(double sigma0, int n, double cluster_tol = 1e-5);

/// |alpha| times the largest singular value of (L - i alpha)^{-1} in the discrete X^1 norm.
double resolvent_gain(double alpha, double sigma0, int n);

/// Riesz projection onto the generalised kernel by trapezoidal contour quadrature.
struct SpectralProjector {
  DiscreteL op;
  double radius = 0.0;
  int points = 64;
  Mat Pred;  // projection in reduced coordinates

  /// radius <= 0 picks min(1, half the distance to the nearest nonzero root).
  static SpectralProjector build(int n, const Params &p, double radius = 0.0, int points = 64);
  FlattenedPoint apply(const FlattenedPoint &v) const;
  CState apply(const CState &v) const;
};

double psi_form(const CollocationGrid &g, const FlattenedPoint &v1, const FlattenedPoint &v2,
                const Params &p);

struct JordanChain {
  FlattenedPoint Phi1, Phi2, e, f;
};
JordanChain jordan_chain(const CollocationGrid &g, const Params &p);

double max_abs(const CState &v);

}  // namespace vortwave
