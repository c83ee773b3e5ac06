#pragma once

#include "vortwave/phase_space.hpp"

namespace vortwave {

struct HamiltonianEval {
  double value = 0.0;
  double ztilde = 0.0;
  PhasePoint m;
  Params params;
};

double symplectic_form(const CollocationGrid &g, const TangentVec &v1, const TangentVec &v2);
HamiltonianEval hamiltonian(const CollocationGrid &g, const PhasePoint &m, const Params &p);
inline double H(const CollocationGrid &g, const PhasePoint &m, const Params &p) {
  return hamiltonian(g, m, p).value;
}
TangentVec vector_field(const CollocationGrid &g, const PhasePoint &m, const Params &p);
double check_bc(const CollocationGrid &g, const PhasePoint &m, const Params &p);

/// Central difference of H along v with step h.
double dH_fd(const CollocationGrid &g, const PhasePoint &m, const TangentVec &v, const Params &p,
             double h = 1e-6);

}  // namespace vortwave
