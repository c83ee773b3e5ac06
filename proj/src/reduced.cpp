#include "vortwave/reduced.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <stdexcept>

#include "vortwave/flattening.hpp"

namespace vortwave {

namespace {

struct Diag {
  double s;   // Phi(1) + Z
  Vec ty, Py;
};

Diag pieces(const CollocationGrid &g, const FlattenedPoint &u) {
  return {u.phi(g.n - 1) + u.z, g.D * u.theta, g.D * u.phi};
}

}  // namespace

double d2H0_diag(const CollocationGrid &g, const FlattenedPoint &u, const Params &p) {
  const double om = p.omega0, sg = p.sigma0, e = u.eta;
  auto [s, ty, Py] = pieces(g, u);
  return g.quad(ty.cwiseAbs2()) - g.quad(Py.cwiseAbs2()) + 6.0 * s * g.quad(g.y.cwiseProduct(Py)) -
         3.0 * s * s + e * e - 4.0 * om * e * g.quad(u.theta) + om * om / 3.0 * e * e - om * e * e +
         9.0 * sg * s * s;
}

double d3H0_diag(const CollocationGrid &g, const FlattenedPoint &u, const Params &p) {
  const double om = p.omega0, sg = p.sigma0, e = u.eta;
  auto [s, ty, Py] = pieces(g, u);
  const double tp1 = theta_p(g, u.theta)(g.n - 1);
  const double yPy = g.quad(g.y.cwiseProduct(Py));
  return -3.0 * e * g.quad(ty.cwiseAbs2()) + 3.0 * e * g.quad(Py.cwiseAbs2()) - om * om * e * e * e +
         3.0 * om * e * e * e - 3.0 * e * e * e + 6.0 * om * e * e * g.quad(u.theta) -
         18.0 * s * g.quad(g.y.cwiseProduct(Py).cwiseProduct(ty)) + 54.0 * s * tp1 * yPy -
         18.0 * e * s * yPy + 9.0 * e * s * s + 54.0 * s * s * g.quad(g.y.cwiseAbs2().cwiseProduct(ty)) -
         54.0 * s * s * tp1 + 162.0 * sg * s * s * tp1;
}

double d2H1_diag(const CollocationGrid &g, const FlattenedPoint &u, const Params &p) {
  const double om = p.omega0, e = u.eta;
  return -4.0 * e * g.quad(u.theta) + 2.0 * om / 3.0 * e * e - e * e;
}

double quad_form_d2H0(const CollocationGrid &g, const FlattenedPoint &v1, const FlattenedPoint &v2,
                      const Params &p) {
  if (v1.n() != g.n || v2.n() != g.n) throw std::invalid_argument("quad_form_d2H0: grid mismatch");
  return 0.25 * (d2H0_diag(g, v1 + v2, p) - d2H0_diag(g, v1 - v2, p));
}

double quad_form_d2H1(const CollocationGrid &g, const FlattenedPoint &v1, const FlattenedPoint &v2,
                      const Params &p) {
  if (v1.n() != g.n || v2.n() != g.n) throw std::invalid_argument("quad_form_d2H1: grid mismatch");
  return 0.25 * (d2H1_diag(g, v1 + v2, p) - d2H1_diag(g, v1 - v2, p));
}

double cubic_form_d3H0(const CollocationGrid &g, const FlattenedPoint &a, const FlattenedPoint &b,
                       const FlattenedPoint &c, const Params &p) {
  if (a.n() != g.n || b.n() != g.n || c.n() != g.n) throw std::invalid_argument("cubic_form_d3H0: grid mismatch");
  // (1/6) sum over nonempty subsets A of {a,b,c} of (-1)^{3-|A|} Q3(sum A)
  auto Q = [&](const FlattenedPoint &v) { return d3H0_diag(g, v, p); };
  double t = Q(a + b + c) - Q(a + b) - Q(a + c) - Q(b + c) + Q(a) + Q(b) + Q(c);
  return t / 6.0;
}

PlanarState reduced_field(const PlanarState &s, double eps1, double sigma0) {
  const double c0 = sigma0 - 1.0 / 3.0;
  return {s.p, eps1 * s.q / c0 + s.q * s.q / (2.0 * std::pow(c0, 1.5))};
}

RescaledState rescale(const PlanarState &s, double x, double eps1, double sigma0) {
  if (eps1 <= 0.0) throw std::invalid_argument("rescale: eps1 must be positive");
  const double c0 = sigma0 - 1.0 / 3.0;
  return {s.q / (eps1 * std::sqrt(c0)), s.p / std::pow(eps1, 1.5), std::sqrt(eps1 / c0) * x};
}

PlanarState unrescale(const RescaledState &r, double eps1, double sigma0, double *x) {
  if (eps1 <= 0.0) throw std::invalid_argument("unrescale: eps1 must be positive");
  const double c0 = sigma0 - 1.0 / 3.0;
  if (x) *x = r.xbar / std::sqrt(eps1 / c0);
  return {r.Q * eps1 * std::sqrt(c0), r.P * std::pow(eps1, 1.5)};
}

Planar kdv_field(const Planar &s) { return {s[1], s[0] + 0.5 * s[0] * s[0]}; }

double kdv_energy(const Planar &s) {
  return 0.5 * s[1] * s[1] - 0.5 * s[0] * s[0] - s[0] * s[0] * s[0] / 6.0;
}

RescaledState exact_homoclinic(double xbar) {
  const double sh = 1.0 / std::cosh(xbar / 2.0);
  return {-3.0 * sh * sh, 3.0 * sh * sh * std::tanh(xbar / 2.0), xbar};
}

namespace {

namespace ode = boost::numeric::odeint;
using state = Planar;

auto system_of(const PlanarField &field) {
  return [&field](const state &s, state &ds, double) { ds = field(s); };
}

}  // namespace

std::vector<Planar> integrate_adaptive(const PlanarField &field, Planar s0, double x0, double x1,
                                       int samples, double tol) {
  std::vector<double> times(samples);
  for (int i = 0; i < samples; ++i) times[i] = x0 + (x1 - x0) * i / (samples - 1);
  std::vector<Planar> out;
  auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<state>());
  ode::integrate_times(stepper, system_of(field), s0, times.begin(), times.end(), 1e-3,
                       [&](const state &s, double) { out.push_back(s); });
  return out;
}

std::vector<Planar> integrate_rk4(const PlanarField &field, Planar s, double h, int steps) {
  ode::runge_kutta4<state> rk;
  std::vector<Planar> out;
  out.reserve(steps + 1);
  out.push_back(s);
  double x = 0.0;
  for (int i = 0; i < steps; ++i) {
    rk.do_step(system_of(field), s, x, h);
    x += h;
    out.push_back(s);
  }
  return out;
}

Trajectory shoot_homoclinic(const PlanarField &field, const ShootOptions &opt) {
  // unstable direction from a centred-difference Jacobian at the origin
  const double h = 1e-6;
  Eigen::Matrix2d J;
  for (int j = 0; j < 2; ++j) {
    Planar a{0.0, 0.0}, b{0.0, 0.0};
    a[j] = h;
    b[j] = -h;
    Planar fa = field(a), fb = field(b);
    J(0, j) = (fa[0] - fb[0]) / (2.0 * h);
    J(1, j) = (fa[1] - fb[1]) / (2.0 * h);
  }
  Eigen::EigenSolver<Eigen::Matrix2d> es(J);
  int iu = es.eigenvalues()(0).real() > es.eigenvalues()(1).real() ? 0 : 1;
  if (es.eigenvalues()(iu).real() <= 0.0 || es.eigenvalues()(1 - iu).real() >= 0.0)
    throw std::domain_error("shoot_homoclinic: origin is not a saddle");
  Eigen::Vector2d dir = es.eigenvectors().col(iu).real().normalized();
  // the branch heading into Q < 0
  if (dir(0) > 0.0) dir = -dir;
  const state s0{opt.offset * dir(0), opt.offset * dir(1)};

  auto sys = system_of(field);
  auto stepper = ode::make_dense_output(opt.tol, opt.tol, ode::runge_kutta_dopri5<state>());
  stepper.initialize(s0, 0.0, 1e-3);
  double xc = -1.0;
  int steps = 0;
  while (stepper.current_time() < opt.xmax) {
    const state prev = stepper.current_state();
    auto [ta, tb] = stepper.do_step(sys);
    ++steps;
    const state cur = stepper.current_state();
    if (prev[1] < 0.0 && cur[1] >= 0.0 && cur[0] < opt.Q_gate) {
      auto P_at = [&](double t) {
        state s;
        stepper.calc_state(t, s);
        return s[1];
      };
      xc = (cur[1] == 0.0) ? tb : find_real_root(P_at, ta, tb, 1e-15);
      break;
    }
  }
  if (xc < 0.0) throw std::runtime_error("shoot_homoclinic: no crossing of the symmetric section");

  // resample the first half on a grid that lands exactly on xc
  const int K = int(std::floor(xc / opt.dx));
  std::vector<double> times;
  times.push_back(0.0);
  for (int k = K; k >= 0; --k) times.push_back(xc - k * opt.dx);
  std::vector<state> half;
  auto again = ode::make_dense_output(opt.tol, opt.tol, ode::runge_kutta_dopri5<state>());
  state s = s0;
  ode::integrate_times(again, sys, s, times.begin(), times.end(), 1e-3,
                       [&](const state &v, double) { half.push_back(v); });
  half.erase(half.begin());

  Trajectory tr;
  tr.x0 = xc;
  tr.Q_turn = half.back()[0];
  tr.steps = steps;
  for (int j = -K; j <= K; ++j) {
    const state &v = half[K - std::abs(j)];
    tr.x.push_back(xc + j * opt.dx);
    tr.Q.push_back(v[0]);
    tr.P.push_back(j <= 0 ? v[1] : -v[1]);
  }
  return tr;
}

}  // namespace vortwave
