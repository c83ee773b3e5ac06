#include <doctest.h>

#include <cmath>

#include "vortwave/wave.hpp"

using namespace vortwave;

TEST_CASE("leading-order profile") {
  CHECK(asymptotic_profile(0.04, 0.5, 1.0, 1.0, 0.0) == doctest::Approx(-0.12).epsilon(1e-15));
  CHECK(std::abs(asymptotic_profile(0.04, 0.5, 1.0, 1.0, 500.0)) < 1e-20);
  CHECK(asymptotic_profile(0.04, 0.5, 1.0, 1.0, 3.0) == asymptotic_profile(0.04, 0.5, 1.0, 1.0, -3.0));
  // eta scales with d; sigma / (c^2 d) = 0.5 here
  CHECK(asymptotic_profile(0.04, 1.0, 1.0, 2.0, 0.0) == doctest::Approx(-0.24));
  const double xh = find_real_root([](double x) { return asymptotic_profile(0.04, 0.5, 1.0, 1.0, x) + 0.06; }, 0.0,
                                   50.0, 1e-15);
  const double xbar = std::sqrt(0.04 / (0.5 - 1.0 / 3.0)) * xh;
  CHECK(std::abs(xbar - 2.0 * std::acosh(std::sqrt(2.0))) < 1e-10);
  CHECK_THROWS_AS(asymptotic_profile(0.04, 0.3, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("flat state solves the discrete problem") {
  for (double eps : {0.0, 0.05}) {
    StripSolver s(eps, 0.5, 24, 10, 30.0);
    Vec z = Vec::Zero(s.unknowns());
    CHECK(s.residual(z).cwiseAbs().maxCoeff() == 0.0);
    auto w = newton_solve(s, z, 1e-10);
    CHECK(w.newton_iters == 0);
    CHECK(w.eta.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("manufactured harmonic field has small Laplace residual") {
  const int M = 64, n = 16;
  const double L = 40.0;
  StripSolver s(0.03, 0.5, M, n, L);
  for (int mode : {0, 2, 5}) {
    const double k = (mode + 0.5) * M_PI / L;
    Vec eta(M + 1);
    for (int j = 0; j <= M; ++j) eta(j) = 0.1 * std::cos(M_PI * s.xi()(j) / L);
    Mat F(M, n);
    for (int j = 1; j <= M; ++j)
      for (int i = 0; i < n; ++i)
        F(j - 1, i) = std::sin(k * s.xi()(j)) * std::cosh(k * (1.0 + eta(j)) * s.sgrid().y(i));
    CHECK(s.residual_parts(s.pack(F, eta)).laplace <= 1e-8);
  }
}

TEST_CASE("pack and evaluation helpers are consistent") {
  StripSolver s(0.04, 0.5, 32, 12);
  Vec u = s.guess();
  CHECK((s.pack(s.F_of(u), s.eta_of(u)) - u).cwiseAbs().maxCoeff() == 0.0);
  Vec xs = s.xi();
  CHECK((s.eta_at(u, xs) - s.eta_of(u)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((s.F_at(u, xs.tail(32)) - s.F_of(u)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("complex-step Jacobian agrees with finite differences") {
  StripSolver s(0.05, 0.5, 16, 8);
  Vec u = s.guess();
  Mat J = s.jacobian(u);
  Vec r0 = s.residual(u);
  for (int c : {0, 37, s.unknowns() - 1}) {
    Vec up = u, um = u;
    const double h = 1e-6;
    up(c) += h;
    um(c) -= h;
    Vec d = (s.residual(up) - s.residual(um)) / (2 * h);
    CHECK((d - J.col(c)).cwiseAbs().maxCoeff() < 1e-6 * (1.0 + J.col(c).cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("Newton from the asymptotic guess at eps = 0.04") {
  StripSolver s(0.04, 0.5, 64, 16);
  auto w = newton_solve(s, s.guess(), 1e-10);
  CHECK(w.newton_iters <= 8);
  CHECK(w.residuals.max() <= 1e-9);
  CHECK(w.eta(0) < 0.0);
  CHECK(w.amplitude == w.eta(0));
  Vec xs = Vec::LinSpaced(7, 0.3, 25.0);
  CHECK((s.eta_at(w.u, xs) - s.eta_at(w.u, -xs)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(w.amplitude / -0.12 - 1.0) < 0.15);
  CHECK(refined_residual(w) <= 1e-9);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(StripSolver(0.04, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(StripSolver(0.0, 0.5), std::invalid_argument);
  StripSolver s(0.04, 0.5, 16, 8);
  CHECK_THROWS_AS(newton_solve(s, s.guess(), 1e-14), std::invalid_argument);
  CHECK_THROWS_AS(continuation_sweep({0.04, 0.02}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(continuation_sweep({0.2}, 0.5), std::invalid_argument);
}

TEST_CASE("too few iterations surface as a numerical failure") {
  StripSolver s(0.04, 0.5, 32, 12);
  CHECK_THROWS_AS(newton_solve(s, s.guess(), 1e-10, 1), NumericalFailure);
}
