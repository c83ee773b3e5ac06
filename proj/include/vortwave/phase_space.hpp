#pragma once

#include <random>
#include <string>

#include "vortwave/grid.hpp"

namespace vortwave {

struct PhysScale {
  double c = 1.0;  // wave speed
  double d = 1.0;  // depth
};

struct Params {
  double omega0 = 1.0;
  double sigma0 = 0.5;
  double eps1 = 0.0;
  double eps2 = 0.0;
  PhysScale phys;

  double omega() const { return omega0 + eps1; }
  double sigma() const { return sigma0 + eps2; }
};

/// A point (phi, theta, z, eta) sampled on the y grid. Also used for tangent
/// vectors and for the flattened variables (Phi, theta, Z, eta).
template <class S>
struct State {
  using VecS = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  VecS phi, theta;
  S z = S(0), eta = S(0);

  State() = default;
  State(VecS p, VecS t, S z_, S e_) : phi(std::move(p)), theta(std::move(t)), z(z_), eta(e_) {}
  static State zero(int n) { return State(VecS::Zero(n), VecS::Zero(n), S(0), S(0)); }

  int n() const { return int(phi.size()); }

  State &operator+=(const State &o) { phi += o.phi; theta += o.theta; z += o.z; eta += o.eta; return *this; }
  State &operator-=(const State &o) { phi -= o.phi; theta -= o.theta; z -= o.z; eta -= o.eta; return *this; }
  State &operator*=(S a) { phi *= a; theta *= a; z *= a; eta *= a; return *this; }
  friend State operator+(State a, const State &b) { return a += b; }
  friend State operator-(State a, const State &b) { return a -= b; }
  friend State operator*(S a, State b) { return b *= a; }

  /// Flat layout [phi; theta; z; eta], length 2n+2.
  VecS pack() const {
    const int m = n();
    VecS v(2 * m + 2);
    v << phi, theta, z, eta;
    return v;
  }
  static State unpack(const VecS &v) {
    const int m = int(v.size() - 2) / 2;
    return State(v.head(m), v.segment(m, m), v(2 * m), v(2 * m + 1));
  }
};

using PhasePoint = State<double>;
using TangentVec = State<double>;
using FlattenedPoint = State<double>;
using CState = State<cplx>;

inline CState complexify(const PhasePoint &m) {
  return CState(m.phi.cast<cplx>(), m.theta.cast<cplx>(), m.z, m.eta);
}

double max_abs(const PhasePoint &m);

double z_tilde(const CollocationGrid &g, const PhasePoint &m, const Params &p);
PhasePoint reverser(const PhasePoint &m);
PhasePoint project_M0(const CollocationGrid &g, const PhasePoint &raw);

/// Largest violation of the mean-zero and trace constraints.
double m0_violation(const CollocationGrid &g, const PhasePoint &m);
/// max(|phi_y(0)|, |phi_y(1)|), the Neumann condition on the first component.
double neumann_violation(const CollocationGrid &g, const PhasePoint &m);

/// Discrete surrogates of the X^1 and X^2 norms.
double norm_X1(const CollocationGrid &g, const PhasePoint &m);
double norm_X2(const CollocationGrid &g, const PhasePoint &m);

/// Random smooth states for property tests. Each draw sums a few cosine modes
/// with amplitude `amp`, then projects onto M0 (and Neumann for the dom(L) variant).
PhasePoint random_M0(const CollocationGrid &g, std::mt19937_64 &rng, double amp = 0.05);
PhasePoint random_domL(const CollocationGrid &g, std::mt19937_64 &rng, double amp = 0.05);

std::string to_json(const PhasePoint &m);
PhasePoint phase_point_from_json(const std::string &text);

}  // namespace vortwave
