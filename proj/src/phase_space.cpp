#include "vortwave/phase_space.hpp"

#include <cmath>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace vortwave {

double max_abs(const PhasePoint &m) {
  return std::max({m.phi.cwiseAbs().maxCoeff(), m.theta.cwiseAbs().maxCoeff(), std::abs(m.z),
                   std::abs(m.eta)});
}

double z_tilde(const CollocationGrid &g, const PhasePoint &m, const Params &p) {
  if (m.eta <= -1.0) throw std::domain_error("z_tilde: eta <= -1");
  const double om = p.omega();
  Vec py = g.D * m.phi, ty = g.D * m.theta;
  Vec f = g.y.cwiseProduct(py).cwiseProduct((ty.array() + om * (1.0 - g.y.array()) - 1.0).matrix());
  return m.z + g.quad(f) / (m.eta + 1.0);
}

PhasePoint reverser(const PhasePoint &m) { return PhasePoint(-m.phi, m.theta, -m.z, m.eta); }

PhasePoint project_M0(const CollocationGrid &g, const PhasePoint &raw) {
  PhasePoint m = raw;
  m.phi.array() -= g.quad(raw.phi);
  double t0 = trace_bottom(g, raw.theta), t1 = trace_top(g, raw.theta);
  m.theta -= t0 * (Vec::Ones(g.n) - g.y) + t1 * g.y;
  return m;
}

double m0_violation(const CollocationGrid &g, const PhasePoint &m) {
  return std::max({std::abs(g.quad(m.phi)), std::abs(trace_bottom(g, m.theta)),
                   std::abs(trace_top(g, m.theta))});
}

double neumann_violation(const CollocationGrid &g, const PhasePoint &m) {
  Vec py = g.D * m.phi;
  return std::max(std::abs(py(0)), std::abs(py(g.n - 1)));
}

double norm_X1(const CollocationGrid &g, const PhasePoint &m) {
  Vec py = g.D * m.phi, ty = g.D * m.theta;
  double s = g.quad(m.phi.cwiseAbs2()) + g.quad(py.cwiseAbs2()) + g.quad(m.theta.cwiseAbs2()) +
             g.quad(ty.cwiseAbs2()) + m.z * m.z + m.eta * m.eta;
  return std::sqrt(s);
}

double norm_X2(const CollocationGrid &g, const PhasePoint &m) {
  Vec pyy = g.D * (g.D * m.phi), tyy = g.D * (g.D * m.theta);
  double x1 = norm_X1(g, m);
  return std::sqrt(x1 * x1 + g.quad(pyy.cwiseAbs2()) + g.quad(tyy.cwiseAbs2()));
}

namespace {

Vec random_fn(const CollocationGrid &g, std::mt19937_64 &rng, double amp) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec f = Vec::Zero(g.n);
  for (int j = 0; j < 6; ++j) {
    double c = nd(rng) * amp;
    f += c * ((j + 1) * 1.3 * g.y.array() + j).cos().matrix();
  }
  return f;
}

}  // namespace

PhasePoint random_M0(const CollocationGrid &g, std::mt19937_64 &rng, double amp) {
  std::normal_distribution<double> nd(0.0, 1.0);
  PhasePoint m;
  m.phi = random_fn(g, rng, amp);
  m.theta = random_fn(g, rng, amp);
  m.z = nd(rng) * amp;
  m.eta = nd(rng) * amp;
  return project_M0(g, m);
}

PhasePoint random_domL(const CollocationGrid &g, std::mt19937_64 &rng, double amp) {
  std::normal_distribution<double> nd(0.0, 1.0);
  PhasePoint m;
  m.phi = random_fn(g, rng, amp);
  // remove c1 y + c2 y^2 so that phi_y vanishes at both ends
  Vec py = g.D * m.phi;
  double c1 = py(0), c2 = (py(g.n - 1) - c1) / 2.0;
  m.phi -= c1 * g.y + c2 * g.y.cwiseAbs2();
  m.theta = random_fn(g, rng, amp);
  m.z = nd(rng) * amp;
  m.eta = nd(rng) * amp;
  return project_M0(g, m);
}

std::string to_json(const PhasePoint &m) {
  nlohmann::json j;
  j["n"] = m.n();
  j["phi"] = std::vector<double>(m.phi.data(), m.phi.data() + m.n());
  j["theta"] = std::vector<double>(m.theta.data(), m.theta.data() + m.n());
  j["z"] = m.z;
  j["eta"] = m.eta;
  return j.dump();
}

PhasePoint phase_point_from_json(const std::string &text) {
  auto j = nlohmann::json::parse(text);
  int n = j.at("n").get<int>();
  auto phi = j.at("phi").get<std::vector<double>>();
  auto th = j.at("theta").get<std::vector<double>>();
  if (int(phi.size()) != n || int(th.size()) != n)
    throw std::invalid_argument("phase point json: length mismatch");
  return PhasePoint(Eigen::Map<Vec>(phi.data(), n), Eigen::Map<Vec>(th.data(), n),
                    j.at("z").get<double>(), j.at("eta").get<double>());
}

}  // namespace vortwave
