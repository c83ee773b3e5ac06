#include <doctest.h>

#include <cmath>

#include "vortwave/grid.hpp"
#include "vortwave/linear.hpp"

using namespace vortwave;

namespace {

// plain bisection, independent of find_real_root
double bisect(const std::function<double(double)> &f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double m = 0.5 * (a + b), fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("grid of 8 nodes covers [0, 1] with unit total weight") {
  auto g = build_grid(8);
  REQUIRE(g.y.size() == 8);
  CHECK(g.y(0) == doctest::Approx(0.0));
  CHECK(g.y(7) == doctest::Approx(1.0));
  for (int i = 1; i < 8; ++i) CHECK(g.y(i) > g.y(i - 1));
  CHECK(std::abs(g.w.sum() - 1.0) < 1e-14);
}

TEST_CASE("grid rejects tiny n") { CHECK_THROWS_AS(build_grid(4), std::invalid_argument); }

TEST_CASE("derivative of a constant vanishes") {
  auto g = build_grid(24);
  CHECK((g.D * Vec::Constant(24, 3.5)).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("quadrature of y^2 is 1/3") {
  for (int n : {8, 16, 64}) {
    auto g = build_grid(n);
    CHECK(std::abs(g.quad(g.y.cwiseAbs2()) - 1.0 / 3.0) < 1e-12);
  }
}

TEST_CASE("differentiation is exact on low-degree monomials") {
  for (int n : {16, 32}) {
    auto g = build_grid(n);
    for (int k = 1; k <= n - 2; ++k) {
      Vec f = g.y.array().pow(k).matrix();
      Vec d = k * g.y.array().pow(k - 1).matrix();
      CHECK((g.D * f - d).cwiseAbs().maxCoeff() <= 1e-10 * n);
    }
  }
}

TEST_CASE("quadrature is exact up to degree n-1") {
  auto g = build_grid(20);
  for (int k = 0; k <= 19; ++k) CHECK(std::abs(g.quad(g.y.array().pow(k).matrix()) - 1.0 / (k + 1)) < 1e-12);
}

TEST_CASE("trace formulas on simple polynomials") {
  auto g = build_grid(16);
  Vec bub = ((1.0 - g.y.array()) * g.y.array()).matrix();
  CHECK(std::abs(trace_bottom(g, bub)) < 1e-13);
  CHECK(std::abs(trace_top(g, bub)) < 1e-13);
  CHECK(std::abs(trace_bottom(g, g.y)) < 1e-13);
  CHECK(std::abs(trace_top(g, g.y) - 1.0) < 1e-13);
  Vec q = g.y.cwiseAbs2().array() - 1.0 / 3.0;
  CHECK(std::abs(trace_top(g, q) - 2.0 / 3.0) < 1e-13);
}

TEST_CASE("barycentric interpolation reproduces smooth functions") {
  auto g = build_grid(32);
  Vec f = (2.0 * g.y.array()).exp().matrix();
  for (double x : {0.0, 0.013, 0.5, 0.77, 1.0}) CHECK(std::abs(g.interp(f, x) - std::exp(2.0 * x)) < 1e-12);
}

TEST_CASE("antiderivative vanishes at the bottom and differentiates back") {
  auto g = build_grid(24);
  Vec f = (3.0 * g.y.array()).cos().matrix();
  Vec F = g.A * f;
  CHECK(std::abs(F(0)) < 1e-14);
  CHECK(std::abs(F(23) - std::sin(3.0) / 3.0) < 1e-12);
  CHECK((g.D * F - f).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("root finder") {
  CHECK(std::abs(find_real_root([](double x) { return x * x - 2.0; }, 1.0, 2.0) - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(find_real_root([](double x) { return x; }, -1.0, 1.0)) < 1e-12);
  CHECK_THROWS(find_real_root([](double x) { return x * x + 1.0; }, -1.0, 1.0));

  auto disp = [](double l) { return l * std::cos(l) - (1.0 - l * l) * std::sin(l); };
  const double oracle = bisect(disp, 2.0, 3.5);
  const double r = find_real_root(disp, 2.0, 3.5);
  CHECK(std::abs(r - oracle) < 1e-12);
  CHECK(std::abs(dispersion_residual(r, 1.0)) < 1e-12);
}
