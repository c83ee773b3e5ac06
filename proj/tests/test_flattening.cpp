#include <doctest.h>

#include "vortwave/flattening.hpp"
#include "vortwave/hamiltonian.hpp"

using namespace vortwave;

namespace {

Params detuned() {
  Params p;
  p.eps1 = 0.04;
  p.eps2 = 0.02;
  return p;
}

PhasePoint small(const CollocationGrid &g, PhasePoint m, double r = 0.05) { return (r / norm_X2(g, m)) * m; }

}  // namespace

TEST_CASE("W at reference values") {
  auto g = build_grid(24);
  Params p;
  PhasePoint m = PhasePoint::zero(24);
  CHECK(w_of(g, m, p) == 0.0);
  m.z = p.sigma() / std::sqrt(2.0);
  CHECK(w_of(g, m, p) == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937_64 rng(1);
  PhasePoint r = random_M0(g, rng);
  CHECK(std::abs(w_of(g, reverser(r), p) + w_of(g, r, p)) < 1e-16);
}

TEST_CASE("theta_p") {
  auto g = build_grid(24);
  CHECK(theta_p(g, Vec::Zero(24)).cwiseAbs().maxCoeff() == 0.0);
  Vec bub = ((1.0 - g.y.array()) * g.y.array()).matrix();
  CHECK(theta_p(g, bub)(23) == doctest::Approx(-1.0 / 6.0).epsilon(1e-13));
  std::mt19937_64 rng(2);
  CHECK(std::abs(g.quad(theta_p(g, random_M0(g, rng).theta))) < 1e-15);
}

TEST_CASE("flatten at simple states") {
  auto g = build_grid(32);
  auto p = detuned();
  CHECK(max_abs(flatten(g, PhasePoint::zero(32), p)) == 0.0);
  CHECK(max_abs(unflatten(g, PhasePoint::zero(32), p)) == 0.0);

  std::mt19937_64 rng(3);
  PhasePoint m = small(g, random_M0(g, rng));
  m.z = 0.0;
  m.z = -z_tilde(g, m, p);
  REQUIRE(std::abs(z_tilde(g, m, p)) < 1e-15);
  FlattenedPoint u = flatten(g, m, p);
  CHECK((u.phi - m.phi).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(u.z + m.phi(31)) < 1e-15);
}

TEST_CASE("flatten round trips and identities") {
  auto g = build_grid(48);
  auto p = detuned();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    PhasePoint m = small(g, random_M0(g, rng));
    FlattenedPoint u = flatten(g, m, p);
    CHECK(max_abs(unflatten(g, u, p) - m) < 1e-9);
    CHECK(std::abs(r_of(g, u) - w_of(g, m, p)) < 1e-10);
    CHECK(max_abs(flatten(g, reverser(m), p) - reverser(u)) < 1e-14);
  }
}

TEST_CASE("flatten refuses states outside the neighborhood") {
  auto g = build_grid(24);
  std::mt19937_64 rng(5);
  PhasePoint m = small(g, random_M0(g, rng), 1.0);
  CHECK_THROWS_AS(flatten(g, m, Params{}), std::domain_error);
  CHECK_THROWS_AS(unflatten(g, m, Params{}), std::domain_error);
}

TEST_CASE("df0 and its inverse") {
  auto g = build_grid(32);
  Params p;
  p.sigma0 = 0.7;
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10; ++i) {
    TangentVec v = random_M0(g, rng);
    CHECK(max_abs(df0_inv(g, df0(g, v, p), p) - v) < 1e-12);
    CHECK(max_abs(dflatten_fd(g, PhasePoint::zero(32), v, p, 1e-6) - df0(g, v, p)) < 1e-6);
  }
  TangentVec z = TangentVec::zero(32);
  z.z = 1.0;
  Vec expect = (g.y.cwiseAbs2().array() - 1.0 / 3.0) / (2.0 * p.sigma0);
  CHECK((df0(g, z, p).phi - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("transformed Hamiltonian and field") {
  auto g = build_grid(48);
  auto p = detuned();
  CHECK(std::abs(transformed_hamiltonian(g, FlattenedPoint::zero(48), p)) < 1e-15);
  CHECK(max_abs(transformed_field(g, FlattenedPoint::zero(48), Params{})) < 1e-15);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    FlattenedPoint u = small(g, random_domL(g, rng), 0.04);
    PhasePoint m = unflatten(g, u, p);
    CHECK(std::abs(transformed_hamiltonian(g, u, p) - H(g, m, p)) < 1e-10);
    CHECK(std::abs(transformed_hamiltonian(g, reverser(u), p) - transformed_hamiltonian(g, u, p)) < 1e-13);
    TangentVec vt = transformed_field(g, u, p);
    CHECK(max_abs(transformed_field(g, reverser(u), p) + reverser(vt)) < 1e-12);
    CHECK(max_abs(vt - dflatten_fd(g, m, vector_field(g, m, p), p)) < 1e-6);
  }
}
