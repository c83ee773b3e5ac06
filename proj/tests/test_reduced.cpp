#include <doctest.h>

#include <cmath>

#include "vortwave/flattening.hpp"
#include "vortwave/linear.hpp"
#include "vortwave/reduced.hpp"

using namespace vortwave;

TEST_CASE("coefficients on the symplectic basis") {
  auto g = build_grid(48);
  for (double s : {0.5, 0.8}) {
    Params p;
    p.sigma0 = s;
    const double c0 = s - 1.0 / 3.0, c = 1.0 / std::sqrt(c0);
    auto j = jordan_chain(g, p);
    const auto &e = j.e, &f = j.f;
    CHECK(std::abs(quad_form_d2H0(g, f, f, p) - 1.0) < 1e-10);
    CHECK(std::abs(quad_form_d2H0(g, e, e, p)) < 1e-10);
    CHECK(std::abs(quad_form_d2H0(g, e, f, p)) < 1e-10);
    CHECK(std::abs(quad_form_d2H1(g, e, e, p) + 1.0 / c0) < 1e-10);
    CHECK(std::abs(quad_form_d2H1(g, f, f, p)) < 1e-10);
    CHECK(std::abs(cubic_form_d3H0(g, e, e, e, p) + c * c * c) < 1e-10);
    CHECK(std::abs(cubic_form_d3H0(g, e, e, f, p)) < 1e-10);
    CHECK(std::abs(cubic_form_d3H0(g, f, f, f, p)) < 1e-10);
    // q p^2 term of the cubic: 3 * T(e, f, f) = c^3 (1 - 3 sigma0) = -3c
    CHECK(std::abs(cubic_form_d3H0(g, e, f, f, p) + c) < 1e-10);
  }
}

TEST_CASE("forms are symmetric and match Psi[L u, v]") {
  auto g = build_grid(48);
  Params p;
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10; ++i) {
    FlattenedPoint a = random_domL(g, rng), b = random_domL(g, rng), c = random_domL(g, rng);
    CHECK(std::abs(quad_form_d2H0(g, a, b, p) - quad_form_d2H0(g, b, a, p)) < 1e-14);
    CHECK(std::abs(quad_form_d2H1(g, a, b, p) - quad_form_d2H1(g, b, a, p)) < 1e-14);
    const double t = cubic_form_d3H0(g, a, b, c, p);
    CHECK(std::abs(t - cubic_form_d3H0(g, b, a, c, p)) < 1e-12);
    CHECK(std::abs(t - cubic_form_d3H0(g, c, b, a, p)) < 1e-12);
    CHECK(std::abs(t - cubic_form_d3H0(g, a, c, b, p)) < 1e-12);
    CHECK(std::abs(quad_form_d2H0(g, a, b, p) - psi_form(g, apply_L(g, a, p), b, p)) < 1e-8);
  }
}

TEST_CASE("second derivative of the transformed H matches the quadratic form") {
  auto g = build_grid(48);
  Params p;
  std::mt19937_64 rng(13);
  FlattenedPoint u = random_domL(g, rng);
  const double h = 1e-4;
  const double d2 = (transformed_hamiltonian(g, h * u, p) + transformed_hamiltonian(g, -h * u, p)) / (h * h);
  CHECK(std::abs(d2 - quad_form_d2H0(g, u, u, p)) < 1e-6);
}

TEST_CASE("reduced planar field") {
  const double e1 = 0.05, s = 0.5, c0 = s - 1.0 / 3.0;
  auto f0 = reduced_field({0.0, 0.0}, e1, s);
  CHECK(f0.q == 0.0);
  CHECK(f0.p == 0.0);
  const double qs = -2.0 * e1 * std::sqrt(c0);
  CHECK(std::abs(reduced_field({qs, 0.0}, e1, s).p) < 1e-16);
  auto r = rescale({qs, 0.0}, 0.0, e1, s);
  CHECK(r.Q == doctest::Approx(-2.0));
  CHECK(r.P == 0.0);
  for (double q : {-0.1, 0.02, 0.3})
    for (double pp : {-0.2, 0.1}) {
      auto a = reduced_field({q, pp}, e1, s), b = reduced_field({q, -pp}, e1, s);
      CHECK(a.q == -b.q);
      CHECK(a.p == b.p);
    }
  CHECK_THROWS_AS(rescale({0.1, 0.1}, 0.0, 0.0, s), std::invalid_argument);
}

TEST_CASE("rescaling conjugates to stationary KdV") {
  const double e1 = 0.02, s = 0.7, c0 = s - 1.0 / 3.0;
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  const double dxdxb = std::sqrt(c0 / e1);
  for (int i = 0; i < 100; ++i) {
    PlanarState st{u(rng), u(rng)};
    const double x = u(rng) * 100.0;
    auto r = rescale(st, x, e1, s);
    double xb;
    auto back = unrescale(r, e1, s, &xb);
    CHECK(std::abs(back.q - st.q) < 1e-15);
    CHECK(std::abs(back.p - st.p) < 1e-15);
    CHECK(std::abs(xb - x) < 1e-12);
    auto fq = reduced_field(st, e1, s);
    auto k = kdv_field({r.Q, r.P});
    CHECK(std::abs(fq.q / (e1 * std::sqrt(c0)) * dxdxb - k[0]) < 1e-12 * (1.0 + std::abs(k[0])));
    CHECK(std::abs(fq.p / std::pow(e1, 1.5) * dxdxb - k[1]) < 1e-12 * (1.0 + std::abs(k[1])));
  }
}

TEST_CASE("KdV field: equilibria, saddle, energy") {
  auto a = kdv_field({0.0, 0.0}), b = kdv_field({-2.0, 0.0});
  CHECK(a[0] == 0.0);
  CHECK(a[1] == 0.0);
  CHECK(b[0] == 0.0);
  CHECK(b[1] == 0.0);
  Eigen::Matrix2d J;
  const double h = 1e-6;
  for (int j = 0; j < 2; ++j) {
    Planar sp{0, 0}, sm{0, 0};
    sp[j] = h;
    sm[j] = -h;
    J(0, j) = (kdv_field(sp)[0] - kdv_field(sm)[0]) / (2 * h);
    J(1, j) = (kdv_field(sp)[1] - kdv_field(sm)[1]) / (2 * h);
  }
  auto ev = J.eigenvalues();
  CHECK(std::abs(std::max(ev(0).real(), ev(1).real()) - 1.0) < 1e-8);
  CHECK(std::abs(std::min(ev(0).real(), ev(1).real()) + 1.0) < 1e-8);

  auto traj = integrate_rk4(kdv_field, {-1.0, 0.3}, 1e-3, 40000);
  const double e0 = kdv_energy(traj.front());
  double drift = 0.0;
  for (const auto &s : traj) drift = std::max(drift, std::abs(kdv_energy(s) - e0));
  CHECK(drift <= 1e-10);
}

TEST_CASE("explicit homoclinic orbit") {
  auto o = exact_homoclinic(0.0);
  CHECK(o.Q == -3.0);
  CHECK(o.P == 0.0);
  for (int i = 0; i < 10; ++i) {
    const double x = -9.0 + 2.0 * i;
    auto s = exact_homoclinic(x);
    CHECK(std::abs(kdv_energy({s.Q, s.P})) < 1e-14);
    const double h = 1e-4;
    const double d = (exact_homoclinic(x + h).Q - exact_homoclinic(x - h).Q) / (2 * h);
    CHECK(std::abs(d - s.P) < 1e-8);
  }
}

TEST_CASE("shooting recovers the sech^2 orbit") {
  auto tr = shoot_homoclinic(kdv_field);
  CHECK(std::abs(tr.Q_turn + 3.0) <= 1e-6);
  double err = 0.0, en = 0.0;
  for (size_t i = 0; i < tr.x.size(); ++i) {
    const double rel = tr.x[i] - tr.x0;
    if (std::abs(rel) <= 20.0) err = std::max(err, std::abs(tr.Q[i] - exact_homoclinic(rel).Q));
    en = std::max(en, std::abs(kdv_energy({tr.Q[i], tr.P[i]})));
  }
  CHECK(err <= 1e-6);
  CHECK(en <= 1e-10);
  // symmetric about the crossing
  const size_t n = tr.x.size();
  for (size_t i = 0; i < n / 2; i += 97) {
    CHECK(tr.Q[i] == tr.Q[n - 1 - i]);
    CHECK(tr.P[i] == -tr.P[n - 1 - i]);
  }
}

TEST_CASE("adaptive integrator follows the exact orbit") {
  auto o = exact_homoclinic(-5.0);
  auto out = integrate_adaptive(kdv_field, {o.Q, o.P}, 0.0, 10.0, 101, 1e-12);
  REQUIRE(out.size() == 101);
  for (int i = 0; i <= 100; i += 10) CHECK(std::abs(out[i][0] - exact_homoclinic(-5.0 + 0.1 * i).Q) < 1e-9);
}

TEST_CASE("shooting rejects a centre") {
  PlanarField rot = [](const Planar &s) { return Planar{s[1], -s[0]}; };
  CHECK_THROWS_AS(shoot_homoclinic(rot), std::domain_error);
}
