#include "vortwave/flattening.hpp"

#include <cmath>
#include <stdexcept>

#include "vortwave/hamiltonian.hpp"

namespace vortwave {

namespace {

Vec shape(const CollocationGrid &g) { return 0.5 * (g.y.cwiseAbs2().array() - 1.0 / 3.0).matrix(); }

void check_ball(const CollocationGrid &g, const PhasePoint &m, double radius, const char *who) {
  if (norm_X2(g, m) > radius)
    throw std::domain_error(std::string(who) + ": state outside the flattening neighborhood");
}

}  // namespace

double w_of(const CollocationGrid &g, const PhasePoint &m, const Params &p) {
  const double zt = z_tilde(g, m, p), sg = p.sigma();
  if (std::abs(zt) >= sg) throw std::domain_error("w_of: |z~| >= sigma");
  return zt / std::sqrt(sg * sg - zt * zt);
}

Vec theta_p(const CollocationGrid &g, const Vec &theta) {
  Vec c = g.A * g.y.cwiseProduct(g.D * theta);
  c.array() -= g.quad(c);
  return c;
}

double r_of(const CollocationGrid &g, const FlattenedPoint &u) {
  const double den = theta_p(g, u.theta)(g.n - 1) - 1.0 / 3.0;
  if (std::abs(den) < 1e-6) throw std::domain_error("r_of: theta_p(1) - 1/3 is singular");
  return -(u.phi(g.n - 1) + u.z) / den;
}

FlattenedPoint flatten(const CollocationGrid &g, const PhasePoint &m, const Params &p, double radius) {
  check_ball(g, m, radius, "flatten");
  const double W = w_of(g, m, p);
  FlattenedPoint u;
  u.phi = m.phi - W * (theta_p(g, m.theta) - shape(g));
  u.theta = m.theta;
  u.z = -m.phi(g.n - 1);
  u.eta = m.eta;
  return u;
}

PhasePoint unflatten(const CollocationGrid &g, const FlattenedPoint &u, const Params &p, double radius) {
  check_ball(g, u, radius, "unflatten");
  const double om = p.omega(), sg = p.sigma();
  const double R = r_of(g, u);
  Eigen::ArrayXd y = g.y.array();
  Eigen::ArrayXd ty = (g.D * u.theta).array(), Py = (g.D * u.phi).array();
  const double Zp = g.quad((y / (u.eta + 1.0) * (Py + R * y * (ty - 1.0)) * (ty - 1.0 + om * (1.0 - y))).matrix());
  PhasePoint m;
  m.phi = u.phi + R * (theta_p(g, u.theta) - shape(g));
  m.theta = u.theta;
  m.z = sg * R / std::sqrt(1.0 + R * R) - Zp;
  m.eta = u.eta;
  return m;
}

TangentVec df0(const CollocationGrid &g, const TangentVec &v, const Params &p) {
  const double om = p.omega0, sg = p.sigma0;
  const double p1 = v.phi(g.n - 1);
  const double k = (v.z - p1 + 2.0 * om * g.quad(g.y.cwiseProduct(v.phi))) / sg;
  return TangentVec(v.phi + k * shape(g), v.theta, -p1, v.eta);
}

TangentVec df0_inv(const CollocationGrid &g, const TangentVec &v, const Params &p) {
  const double om = p.omega0, sg = p.sigma0;
  const double P1 = v.phi(g.n - 1);
  const double s = P1 + v.z;
  return TangentVec(v.phi - 3.0 * s * shape(g), v.theta,
                    (3.0 * sg - 1.0 + om / 4.0) * s + P1 - 2.0 * om * g.quad(g.y.cwiseProduct(v.phi)),
                    v.eta);
}

double transformed_hamiltonian(const CollocationGrid &g, const FlattenedPoint &u, const Params &p) {
  const double om = p.omega(), sg = p.sigma();
  const double R = r_of(g, u);
  const double e = u.eta, h = 1.0 + e;
  Eigen::ArrayXd y = g.y.array();
  Eigen::ArrayXd ty = (g.D * u.theta).array(), Py = (g.D * u.phi).array();
  Eigen::ArrayXd grad = Py + R * y * (ty - 1.0);
  const double qt = g.quad(u.theta);
  return g.quad((ty.square() - grad.square()).matrix()) / (2.0 * h) + e * e / (2.0 * h) + om / h * qt -
         om * h * qt + om * om / (6.0 * h) + om * e / (2.0 * h) + om * om * e / 6.0 - om * om / 6.0 -
         om * e / 2.0 + sg - sg / std::sqrt(1.0 + R * R);
}

TangentVec transformed_field(const CollocationGrid &g, const FlattenedPoint &u, const Params &p) {
  const double om = p.omega(), sg = p.sigma();
  const double R = r_of(g, u);
  const double h = 1.0 + u.eta;
  const int e = g.n - 1;
  Eigen::ArrayXd y = g.y.array();
  Eigen::ArrayXd ty = (g.D * u.theta).array(), Py = (g.D * u.phi).array();
  Eigen::ArrayXd Phi = u.phi.array();
  const double ty1 = ty(e), P1 = Phi(e), Z = u.z;
  const double Zb = (1.0 + R * R) * (ty1 - 1.0) * (ty1 - 1.0) / (2.0 * h * h) - 0.5;
  Eigen::ArrayXd tps = (theta_p(g, u.theta) - shape(g)).array();

  TangentVec v;
  v.phi = ((ty + R * (2.0 * y * Py + R * y.square() * (ty - 1.0) - Phi - P1 + Z)) / h -
           Zb * std::pow(1.0 + R * R, 1.5) / sg * tps + om * R * R * y.square() * (4.0 * y - 3.0) / (6.0 * h) +
           om * h * (y - 0.5) - om / h * (y - 0.5))
              .matrix();
  v.theta = (-(Py - om * R * (1.0 - y) * y) / h).matrix();
  v.z = -(ty1 + R * (R * (ty1 - 1.0) + Z)) / h - om * h / 2.0 + om / (2.0 * h);
  v.eta = R;
  return v;
}

TangentVec dflatten_fd(const CollocationGrid &g, const PhasePoint &m, const TangentVec &v,
                       const Params &p, double h) {
  // the probe points may sit slightly outside the ball; no radius check here
  const double big = 1e300;
  TangentVec a = flatten(g, m + h * v, p, big), b = flatten(g, m - h * v, p, big);
  return (1.0 / (2.0 * h)) * (a - b);
}

}  // namespace vortwave
