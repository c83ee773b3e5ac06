#include "vortwave/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vortwave {

namespace {

// T_k(t) for k = 0..kmax at each point of t, one row per point.
Mat cheb_vander(const Vec &t, int kmax) {
  Mat T(t.size(), kmax + 1);
  for (int i = 0; i < t.size(); ++i) {
    T(i, 0) = 1.0;
    if (kmax >= 1) T(i, 1) = t(i);
    for (int k = 2; k <= kmax; ++k) T(i, k) = 2.0 * t(i) * T(i, k - 1) - T(i, k - 2);
  }
  return T;
}

}  // namespace

CollocationGrid build_grid(int n) {
  if (n < 8) throw std::invalid_argument("build_grid: need n >= 8");
  CollocationGrid g;
  g.n = n;
  const int N = n - 1;
  const double pi = M_PI;

  // t_j = -cos(pi j / N) written with sin for symmetric rounding
  Vec t(n);
  for (int j = 0; j < n; ++j) t(j) = std::sin(pi * (2.0 * j - N) / (2.0 * N));
  g.y = (t.array() + 1.0) / 2.0;
  g.y(0) = 0.0;
  g.y(N) = 1.0;

  Vec c(n);
  for (int j = 0; j < n; ++j) c(j) = ((j == 0 || j == N) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
  Mat Dt = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (i != j) Dt(i, j) = c(i) / c(j) / (t(i) - t(j));
    Dt(i, i) = -Dt.row(i).sum();
  }
  g.D = 2.0 * Dt;

  // Clenshaw-Curtis; the node set is symmetric so the descending-order weights apply as is.
  g.w = Vec::Zero(n);
  Vec v = Vec::Ones(N - 1);
  Vec th(n);
  for (int j = 0; j < n; ++j) th(j) = pi * j / N;
  if (N % 2 == 0) {
    g.w(0) = g.w(N) = 1.0 / (N * N - 1.0);
    for (int k = 1; k < N / 2; ++k)
      for (int j = 1; j < N; ++j) v(j - 1) -= 2.0 * std::cos(2.0 * k * th(j)) / (4.0 * k * k - 1.0);
    for (int j = 1; j < N; ++j) v(j - 1) -= std::cos(N * th(j)) / (N * N - 1.0);
  } else {
    g.w(0) = g.w(N) = 1.0 / (double(N) * N);
    for (int k = 1; k <= (N - 1) / 2; ++k)
      for (int j = 1; j < N; ++j) v(j - 1) -= 2.0 * std::cos(2.0 * k * th(j)) / (4.0 * k * k - 1.0);
  }
  g.w.segment(1, N - 1) = 2.0 * v / N;
  g.w /= 2.0;

  // values -> coefficients via the discrete cosine sum
  g.Tinv = Mat::Zero(n, n);
  Mat T = cheb_vander(t, N);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double hj = (j == 0 || j == N) ? 0.5 : 1.0;
      double hk = (k == 0 || k == N) ? 0.5 : 1.0;
      g.Tinv(k, j) = 2.0 / N * hk * hj * T(j, k);
    }

  // coefficient integration: int T0 = T1, int T1 = (T0 + T2)/4,
  // int Tk = T_{k+1}/(2(k+1)) - T_{k-1}/(2(k-1))
  Mat Mi = Mat::Zero(n + 1, n);
  Mi(1, 0) = 1.0;
  Mi(0, 1) = 0.25;
  Mi(2, 1) = 0.25;
  for (int k = 2; k < n; ++k) {
    Mi(k + 1, k) += 1.0 / (2.0 * (k + 1));
    Mi(k - 1, k) -= 1.0 / (2.0 * (k - 1));
  }
  Mat Tn = cheb_vander(t, n);
  Eigen::RowVectorXd Tm1(n + 1);
  for (int k = 0; k <= n; ++k) Tm1(k) = (k % 2) ? -1.0 : 1.0;
  Tn.rowwise() -= Tm1;
  g.A = 0.5 * Tn * Mi * g.Tinv;

  g.bw_.resize(n);
  for (int j = 0; j < n; ++j) g.bw_(j) = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == N) ? 0.5 : 1.0);
  return g;
}

Mat CollocationGrid::interp_matrix(const Vec &x) const {
  Mat P = Mat::Zero(x.size(), n);
  for (int i = 0; i < x.size(); ++i) {
    int hit = -1;
    for (int j = 0; j < n; ++j)
      if (x(i) == y(j)) hit = j;
    if (hit >= 0) {
      P(i, hit) = 1.0;
      continue;
    }
    double den = 0.0;
    for (int j = 0; j < n; ++j) {
      double q = bw_(j) / (x(i) - y(j));
      P(i, j) = q;
      den += q;
    }
    P.row(i) /= den;
  }
  return P;
}

double CollocationGrid::interp(const Vec &f, double x) const {
  Vec xs(1);
  xs(0) = x;
  return (interp_matrix(xs) * f)(0);
}

Vec CollocationGrid::interp(const Vec &f, const Vec &x) const { return interp_matrix(x) * f; }

double find_real_root(const std::function<double(double)> &g, double a, double b, double tol,
                      const std::function<double(double)> &dg) {
  double fa = g(a), fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw std::runtime_error("find_real_root: no sign change on bracket");
  double x = 0.5 * (a + b);
  double fx = g(x);
  for (int it = 0; it < 100; ++it) {
    if (std::abs(fx) <= tol) break;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    double slope = dg ? dg(x) : (fb - fa) / (b - a);
    double xn = (slope != 0.0) ? x - fx / slope : 0.5 * (a + b);
    // fall back to bisection when Newton leaves the bracket
    if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
    if (xn == x || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      x = xn;
      fx = g(x);
      break;
    }
    x = xn;
    fx = g(x);
  }
  // the last few bits: return whichever of x, a, b has the smallest residual
  if (std::abs(fa) < std::abs(fx)) { x = a; fx = fa; }
  if (std::abs(fb) < std::abs(fx)) { x = b; fx = fb; }
  return x;
}

}  // namespace vortwave
