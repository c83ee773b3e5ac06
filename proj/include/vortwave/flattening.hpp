#pragma once

#include "vortwave/phase_space.hpp"

namespace vortwave {

/// Radius (discrete X^2 norm) of the ball where f is treated as a diffeomorphism.
inline constexpr double kDefaultNeighborhood = 0.1;

double w_of(const CollocationGrid &g, const PhasePoint &m, const Params &p);
Vec theta_p(const CollocationGrid &g, const Vec &theta);
/// R = -(Phi(1) + Z) / (theta_p(1) - 1/3)
double r_of(const CollocationGrid &g, const FlattenedPoint &u);

FlattenedPoint flatten(const CollocationGrid &g, const PhasePoint &m, const Params &p,
                       double radius = kDefaultNeighborhood);
PhasePoint unflatten(const CollocationGrid &g, const FlattenedPoint &u, const Params &p,
                     double radius = kDefaultNeighborhood);

/// df(0) and its inverse at base parameters (omega0, sigma0).
TangentVec df0(const CollocationGrid &g, const TangentVec &v, const Params &p);
TangentVec df0_inv(const CollocationGrid &g, const TangentVec &v, const Params &p);

double transformed_hamiltonian(const CollocationGrid &g, const FlattenedPoint &u, const Params &p);
TangentVec transformed_field(const CollocationGrid &g, const FlattenedPoint &u, const Params &p);

/// Directional derivative of flatten at m along v, central differences.
TangentVec dflatten_fd(const CollocationGrid &g, const PhasePoint &m, const TangentVec &v,
                       const Params &p, double h = 1e-5);

}  // namespace vortwave
