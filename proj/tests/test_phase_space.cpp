#include <doctest.h>

#include "vortwave/phase_space.hpp"

using namespace vortwave;

namespace {

PhasePoint zero_with_z(int n, double z) {
  PhasePoint m = PhasePoint::zero(n);
  m.z = z;
  return m;
}

}  // namespace

TEST_CASE("z~ at simple states") {
  auto g = build_grid(32);
  Params p;
  CHECK(z_tilde(g, PhasePoint::zero(32), p) == 0.0);
  CHECK(std::abs(z_tilde(g, zero_with_z(32, 0.2), p) - 0.2) < 1e-15);
}

TEST_CASE("z~ is resolved on coarse grids") {
  auto g = build_grid(64), gf = build_grid(256);
  Params p;
  p.eps1 = 0.02;
  for (int s = 0; s < 5; ++s) {
    std::mt19937_64 a(77 + s), b(77 + s);
    CHECK(std::abs(z_tilde(g, random_M0(g, a), p) - z_tilde(gf, random_M0(gf, b), p)) < 1e-10);
  }
}

TEST_CASE("z~ rejects eta <= -1") {
  auto g = build_grid(16);
  PhasePoint m = PhasePoint::zero(16);
  m.eta = -1.0;
  CHECK_THROWS_AS(z_tilde(g, m, Params{}), std::domain_error);
}

TEST_CASE("reverser") {
  auto g = build_grid(16);
  std::mt19937_64 rng(3);
  PhasePoint m = random_M0(g, rng);
  PhasePoint s = reverser(m);
  CHECK(max_abs(reverser(s) - m) == 0.0);
  CHECK(max_abs(reverser(PhasePoint::zero(16))) == 0.0);
  CHECK((s.phi + m.phi).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s.theta - m.theta).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.z == -m.z);
  CHECK(s.eta == m.eta);
}

TEST_CASE("projection onto M0") {
  auto g = build_grid(24);
  std::mt19937_64 rng(5);
  PhasePoint m = random_M0(g, rng);
  CHECK(max_abs(project_M0(g, m) - m) < 1e-12);

  PhasePoint c = PhasePoint::zero(24);
  c.phi.setConstant(1.0);
  CHECK(project_M0(g, c).phi.cwiseAbs().maxCoeff() < 1e-14);

  PhasePoint t = PhasePoint::zero(24);
  t.theta = g.y;
  CHECK(project_M0(g, t).theta.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("random states satisfy their constraints") {
  auto g = build_grid(48);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5; ++i) {
    PhasePoint m = random_M0(g, rng), d = random_domL(g, rng);
    CHECK(m0_violation(g, m) < 1e-10);
    CHECK(m0_violation(g, d) < 1e-10);
    CHECK(neumann_violation(g, d) < 1e-8);
    CHECK(std::abs(g.quad(m.phi)) < 1e-10);
  }
}

TEST_CASE("norms are ordered") {
  auto g = build_grid(32);
  std::mt19937_64 rng(1);
  PhasePoint m = random_M0(g, rng);
  CHECK(norm_X1(g, m) > 0.0);
  CHECK(norm_X2(g, m) >= norm_X1(g, m));
}

TEST_CASE("json round trip is exact") {
  auto g = build_grid(16);
  std::mt19937_64 rng(11);
  PhasePoint m = random_M0(g, rng);
  PhasePoint back = phase_point_from_json(to_json(m));
  CHECK(max_abs(back - m) == 0.0);
}
