#include "vortwave/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace vortwave {

namespace {

double root_gap(double sigma, double zt) {
  double r = sigma * sigma - zt * zt;
  if (r <= 0.0) throw std::domain_error("|z~| >= sigma: outside the admissible set");
  return std::sqrt(r);
}

}  // namespace

double symplectic_form(const CollocationGrid &g, const TangentVec &v1, const TangentVec &v2) {
  if (v1.n() != g.n || v2.n() != g.n) throw std::invalid_argument("symplectic_form: grid mismatch");
  Vec t1y = g.D * v1.theta, t2y = g.D * v2.theta;
  return v2.z * v1.eta - v2.eta * v1.z + g.quad(t2y.cwiseProduct(v1.phi) - v2.phi.cwiseProduct(t1y));
}

HamiltonianEval hamiltonian(const CollocationGrid &g, const PhasePoint &m, const Params &p) {
  const double om = p.omega(), sg = p.sigma();
  const double zt = z_tilde(g, m, p);
  const double gap = root_gap(sg, zt);
  const double h = m.eta + 1.0;
  Vec ty = g.D * m.theta, py = g.D * m.phi;
  Eigen::ArrayXd y = g.y.array();
  Eigen::ArrayXd a = ty.array() + om * (1.0 - y) + m.eta;
  Vec i1 = ((a.square() - py.array().square()) / (2.0 * h)).matrix();
  Vec i2 = (om * (y * h - 1.0) * (ty.array() - 1.0 + om * (1.0 - y))).matrix();
  HamiltonianEval r;
  r.value = g.quad(i1) + g.quad(i2) - gap - om / 2.0 + om * om / 6.0 + sg;
  r.ztilde = zt;
  r.m = m;
  r.params = p;
  return r;
}

TangentVec vector_field(const CollocationGrid &g, const PhasePoint &m, const Params &p) {
  const double om = p.omega(), sg = p.sigma();
  const double zt = z_tilde(g, m, p);
  const double W = zt / root_gap(sg, zt);
  const double h = m.eta + 1.0;
  Vec ty = g.D * m.theta, py = g.D * m.phi;
  Eigen::ArrayXd y = g.y.array();
  const double p1 = m.phi(g.n - 1);
  Eigen::ArrayXd b = ty.array() + om * (1.0 - y) - 1.0;

  TangentVec v;
  v.phi = ((ty.array() + W * (y * py.array() - p1)) / h + om * h * (y - 0.5) - om * (y - 0.5) / h).matrix();
  v.theta = ((W * y * b - py.array()) / h).matrix();
  v.z = g.quad(((b.square() - py.array().square()) / (2.0 * h * h) - 0.5).matrix()) +
        W * g.quad((y * py.array() * b / (h * h)).matrix()) - g.quad((om * y * b).matrix());
  v.eta = W;
  return v;
}

double check_bc(const CollocationGrid &g, const PhasePoint &m, const Params &p) {
  const double zt = z_tilde(g, m, p);
  const double gap = root_gap(p.sigma(), zt);
  Vec py = g.D * m.phi, ty = g.D * m.theta;
  const int e = g.n - 1;
  return std::max(std::abs(py(0)), std::abs(py(e) - zt * (ty(e) - 1.0) / gap));
}

double dH_fd(const CollocationGrid &g, const PhasePoint &m, const TangentVec &v, const Params &p,
             double h) {
  return (H(g, m + h * v, p) - H(g, m - h * v, p)) / (2.0 * h);
}

}  // namespace vortwave
