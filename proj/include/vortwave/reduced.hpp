#pragma once

#include <array>
#include <functional>
#include <vector>

#include "vortwave/phase_space.hpp"

namespace vortwave {

// Second and third derivatives of the transformed Hamiltonian at the origin,
// evaluated by quadrature on the diagonal and polarised.
double d2H0_diag(const CollocationGrid &g, const FlattenedPoint &u, const Params &p);
double d3H0_diag(const CollocationGrid &g, const FlattenedPoint &u, const Params &p);
double d2H1_diag(const CollocationGrid &g, const FlattenedPoint &u, const Params &p);

double quad_form_d2H0(const CollocationGrid &g, const FlattenedPoint &v1, const FlattenedPoint &v2,
                      const Params &p);
double cubic_form_d3H0(const CollocationGrid &g, const FlattenedPoint &v1, const FlattenedPoint &v2,
                       const FlattenedPoint &v3, const Params &p);
double quad_form_d2H1(const CollocationGrid &g, const FlattenedPoint &v1, const FlattenedPoint &v2,
                      const Params &p);

using Planar = std::array<double, 2>;
using PlanarField = std::function<Planar(const Planar &)>;

struct PlanarState {
  double q = 0.0, p = 0.0;
};
struct RescaledState {
  double Q = 0.0, P = 0.0, xbar = 0.0;
};

/// Truncated reduced field in (q, p).
PlanarState reduced_field(const PlanarState &s, double eps1, double sigma0);
RescaledState rescale(const PlanarState &s, double x, double eps1, double sigma0);
PlanarState unrescale(const RescaledState &r, double eps1, double sigma0, double *x = nullptr);

/// Stationary KdV field (Q', P') = (P, Q + Q^2/2) as a function of (Q, P).
Planar kdv_field(const Planar &s);
double kdv_energy(const Planar &s);
RescaledState exact_homoclinic(double xbar);

struct Trajectory {
  std::vector<double> x;
  std::vector<double> Q, P;
  double x0 = 0.0;        // abscissa of the symmetric section crossing
  double Q_turn = 0.0;    // Q at the crossing
  int steps = 0;
};

struct ShootOptions {
  double offset = 1e-8;   // launch distance along the unstable direction
  double tol = 1e-12;     // absolute and relative local tolerance
  double dx = 0.01;       // output sampling
  double xmax = 200.0;
  double Q_gate = -1.0;   // accept the first P = 0 crossing with Q below this
};

/// Shoots from the unstable direction of the origin to the reversibility
/// section {P = 0} and reflects with S(Q, P) = (Q, -P). The returned samples
/// are on a uniform grid symmetric about x0 and cover the whole orbit.
Trajectory shoot_homoclinic(const PlanarField &field, const ShootOptions &opt = {});

/// Integrates with the adaptive Dormand-Prince pair on a fixed output grid.
std::vector<Planar> integrate_adaptive(const PlanarField &field, Planar s0, double x0, double x1,
                                       int samples, double tol);

/// Classical RK4 with fixed step; returns the state after each step.
std::vector<Planar> integrate_rk4(const PlanarField &field, Planar s0, double h, int steps);

}  // namespace vortwave
