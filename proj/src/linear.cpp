#include "vortwave/linear.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace vortwave {

cplx dispersion_residual(cplx l, double s) { return l * std::cos(l) - (1.0 - s * l * l) * std::sin(l); }

cplx dispersion_derivative(cplx l, double s) {
  return s * l * l * std::cos(l) + (2.0 * s - 1.0) * l * std::sin(l);
}

namespace {

bool newton_complex(cplx &l, double s) {
  for (int it = 0; it < 60; ++it) {
    cplx d = dispersion_derivative(l, s);
    if (d == 0.0) return false;
    cplx step = dispersion_residual(l, s) / d;
    l -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(l))) return true;
  }
  return std::abs(dispersion_residual(l, s)) <= 1e-11;
}

bool root_order(const DispersionRoot &a, const DispersionRoot &b) {
  double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
  if (std::abs(ma - mb) > 1e-9 * std::max(1.0, ma)) return ma < mb;
  if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
  return a.lambda.imag() < b.lambda.imag();
}

}  // namespace

std::vector<DispersionRoot> dispersion_roots(double sigma0, int count, const std::vector<cplx> &seeds) {
  if (sigma0 <= 1.0 / 3.0) throw std::invalid_argument("dispersion_roots: sigma0 must exceed 1/3");
  if (count < 1) return {};
  std::vector<DispersionRoot> out;
  auto add = [&](cplx l, bool ok) {
    if (std::abs(l) < 1e-6) return;
    for (const auto &r : out)
      if (std::abs(r.lambda - l) <= 1e-8 * std::max(1.0, std::abs(l))) return;
    out.push_back({l, std::abs(dispersion_residual(l, sigma0)), ok});
  };

  // real family: scan for sign changes, enough brackets to cover `count` roots with both signs
  auto g = [&](double x) { return dispersion_residual(x, sigma0).real(); };
  auto dg = [&](double x) { return dispersion_derivative(x, sigma0).real(); };
  const double h = 0.01;
  double a = 0.05, ga = g(a);
  int found = 0;
  while (found < count / 2 + 2) {
    double b = a + h, gb = g(b);
    if ((ga > 0) != (gb > 0)) {
      double x = find_real_root(g, a, b, 1e-14, dg);
      add(x, true);
      add(-x, true);
      ++found;
    }
    a = b;
    ga = gb;
  }

  // complex families from the supplied seeds; each seed gives a conjugate/negation quartet
  for (cplx s0 : seeds) {
    if (std::abs(s0.imag()) < 1e-8 || std::abs(s0) < 1e-6) continue;
    cplx l = s0;
    bool ok = newton_complex(l, sigma0);
    if (!ok) continue;
    add(l, ok);
    add(std::conj(l), ok);
    add(-l, ok);
    add(-std::conj(l), ok);
  }

  std::sort(out.begin(), out.end(), root_order);
  if (int(out.size()) > count) out.resize(count);
  return out;
}

CState eigenvector_of(const CollocationGrid &g, cplx l, double s) {
  if (std::abs(l) < 1e-10) throw std::invalid_argument("eigenvector_of: lambda = 0 has the Jordan chain instead");
  if (std::abs(std::sin(l)) < 1e-10) throw std::domain_error("eigenvector_of: sin(lambda) = 0");
  const cplx A = 1.0;
  const cplx c1 = A / (s * l * l * l * std::sin(l));
  const int n = g.n;
  CVec Phi(n), Py(n);
  for (int i = 0; i < n; ++i) {
    const double y = g.y(i);
    Phi(i) = c1 * std::cos(l * y) + A / (2.0 * s * l * l) * (y * y - 1.0 / 3.0) - A / (s * l * l * l * l);
    Py(i) = -c1 * l * std::sin(l * y) + A / (s * l * l) * y;
  }
  const cplx Z = A / (l * l);
  const cplx eta = 3.0 / l * (Phi(n - 1) + A / (l * l));
  CVec theta(n);
  for (int i = 0; i < n; ++i) theta(i) = -Py(i) / l + eta * (1.0 - g.y(i)) * g.y(i);
  CState v(Phi, theta, Z, eta);
  double scale = max_abs(v);
  return CState(v.phi / scale, v.theta / scale, v.z / scale, v.eta / scale);
}

double max_abs(const CState &v) {
  return std::max({v.phi.cwiseAbs().maxCoeff(), v.theta.cwiseAbs().maxCoeff(), std::abs(v.z),
                   std::abs(v.eta)});
}

DiscreteL DiscreteL::build(int n, const Params &p) {
  if (n < 16) throw std::invalid_argument("DiscreteL: need n >= 16");
  DiscreteL op;
  op.g = build_grid(n);
  op.p = p;
  const auto &g = op.g;
  const int N = 2 * n + 2;

  // columns of L are images of unit vectors; apply_L is linear
  op.L = Mat::Zero(N, N);
  for (int j = 0; j < N; ++j) {
    Vec e = Vec::Zero(N);
    e(j) = 1.0;
    op.L.col(j) = apply_L(g, PhasePoint::unpack(e), p).pack();
  }

  op.C = Mat::Zero(6, N);
  op.C.block(0, 0, 1, n) = g.w.transpose();
  op.C.block(1, 0, 1, n) = g.D.row(0);
  op.C.block(2, 0, 1, n) = g.D.row(n - 1);
  op.C(3, n) = 1.0;
  op.C(4, 2 * n - 1) = 1.0;
  // without this row the space has odd dimension and a spurious third zero mode appears
  op.C.block(5, n, 1, n) = g.Tinv.row(n - 1);

  Eigen::HouseholderQR<Mat> qr(op.C.transpose());
  Mat Q = qr.householderQ() * Mat::Identity(N, N);
  op.B = Q.rightCols(N - 6);

  op.Wd.resize(N);
  op.Wd << g.w, g.w, 1.0, 1.0;
  Mat BtW = op.B.transpose() * op.Wd.asDiagonal();
  op.G = BtW * op.B;
  op.Pw = op.G.ldlt().solve(BtW);
  op.Ared = op.Pw * op.L * op.B;
  return op;
}

namespace {

double weighted_norm(const Vec &Wd, const CVec &v) {
  return std::sqrt((Wd.array() * v.array().abs2()).sum());
}

struct Cluster {
  cplx mean;
  int count;
  double residual;
};

// group eigenvalues whose distance is below tol*(1+|lambda|)
std::vector<Cluster> cluster(const CVec &ev, const std::vector<double> &res, double tol) {
  const int m = int(ev.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(ev(i) - ev(j)) <= tol * (1.0 + std::abs(ev(i)))) parent[find(i)] = find(j);
  std::vector<Cluster> out;
  std::vector<int> slot(m, -1);
  for (int i = 0; i < m; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = int(out.size());
      out.push_back({0.0, 0, 0.0});
    }
    auto &c = out[slot[r]];
    c.mean += ev(i);
    c.count += 1;
    c.residual = std::max(c.residual, res[i]);
  }
  for (auto &c : out) c.mean /= double(c.count);
  std::sort(out.begin(), out.end(), [](const Cluster &a, const Cluster &b) {
    double ma = std::abs(a.mean), mb = std::abs(b.mean);
    if (std::abs(ma - mb) > 1e-9 * std::max(1.0, ma)) return ma < mb;
    if (a.mean.real() != b.mean.real()) return a.mean.real() < b.mean.real();
    return a.mean.imag() < b.mean.imag();
  });
  return out;
}

std::vector<Cluster> clustered_spectrum(const DiscreteL &op, double tol) {
  Eigen::EigenSolver<Mat> es(op.Ared, true);
  if (es.info() != Eigen::Success) throw std::runtime_error("collocation_spectrum: eigensolver failed");
  CVec ev = es.eigenvalues();
  CMat V = op.B.cast<cplx>() * es.eigenvectors();
  std::vector<double> res(ev.size());
  for (int i = 0; i < ev.size(); ++i) {
    CVec v = V.col(i);
    CVec r = op.L.cast<cplx>() * v - ev(i) * v;
    res[i] = weighted_norm(op.Wd, r) / weighted_norm(op.Wd, v);
  }
  return cluster(ev, res, tol);
}

int count_small_singular(const Mat &M, double tol) {
  Eigen::JacobiSVD<Mat> svd(M);
  const auto &s = svd.singularValues();
  int k = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) <= tol) ++k;
  return k;
}

}  // namespace

SpectrumReport collocation_spectrum(double sigma0, int n, double cluster_tol) {
  if (sigma0 <= 1.0 / 3.0) throw std::invalid_argument("collocation_spectrum: sigma0 must exceed 1/3");
  if (n < 32) throw std::invalid_argument("collocation_spectrum: need n >= 32");
  Params p;
  p.sigma0 = sigma0;
  DiscreteL op = DiscreteL::build(n, p);
  DiscreteL fine = DiscreteL::build(2 * n, p);

  SpectrumReport rep;
  rep.sigma0 = sigma0;
  rep.n = n;
  Eigen::EigenSolver<Mat> es(op.Ared, false);
  for (int i = 0; i < es.eigenvalues().size(); ++i) rep.raw.push_back(es.eigenvalues()(i));

  auto coarse = clustered_spectrum(op, cluster_tol);
  auto refined = clustered_spectrum(fine, cluster_tol);
  for (const auto &c : coarse) {
    rep.raw_clustered.push_back(c.mean);
    bool agrees = false;
    for (const auto &f : refined)
      if (std::abs(f.mean - c.mean) <= 1e-6 * std::max(1.0, std::abs(c.mean))) agrees = true;
    if (!agrees || c.residual > 1e-6) continue;
    rep.eigenvalues.push_back(c.mean);
    rep.multiplicity.push_back(c.count);
    rep.residuals.push_back(c.residual);
    rep.dispersion_residuals.push_back(std::abs(dispersion_residual(c.mean, sigma0)));
  }

  rep.zero_geometric = count_small_singular(op.Ared, 1e-7);
  rep.zero_algebraic = count_small_singular(op.Ared * op.Ared, 1e-7);
  return rep;
}

double resolvent_gain(double alpha, double sigma0, int n) {
  if (std::abs(alpha) < 1.0) throw std::invalid_argument("resolvent_gain: need |alpha| >= 1");
  Params p;
  p.sigma0 = sigma0;
  DiscreteL op = DiscreteL::build(n, p);
  const auto &g = op.g;
  const int N = 2 * n + 2;

  // X^1 surrogate: values plus first derivatives for both functions, plain scalars
  Mat Gf = Mat::Zero(N, N);
  Mat blk = Mat(g.w.asDiagonal()) + g.D.transpose() * g.w.asDiagonal() * g.D;
  Gf.block(0, 0, n, n) = blk;
  Gf.block(n, n, n, n) = blk;
  Gf(2 * n, 2 * n) = 1.0;
  Gf(2 * n + 1, 2 * n + 1) = 1.0;
  Mat Gx = op.B.transpose() * Gf * op.B;
  Eigen::LLT<Mat> llt(Gx);
  Mat Lc = llt.matrixL();

  const int d = op.dim();
  CMat shifted = op.Ared.cast<cplx>() - cplx(0.0, alpha) * CMat::Identity(d, d);
  CMat LcinvT = Lc.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(d, d)).cast<cplx>();
  Eigen::PartialPivLU<CMat> lu(shifted);
  CMat M = Lc.transpose().cast<cplx>() * lu.solve(LcinvT);
  Eigen::JacobiSVD<CMat> svd(M);
  return std::abs(alpha) * svd.singularValues()(0);
}

SpectralProjector SpectralProjector::build(int n, const Params &p, double radius, int points) {
  SpectralProjector sp;
  sp.op = DiscreteL::build(n, p);
  sp.points = points;
  auto roots = dispersion_roots(p.sigma0, 1);
  const double nearest = std::abs(roots.front().lambda);
  if (radius <= 0.0) radius = std::min(1.0, 0.5 * nearest);
  sp.radius = radius;

  // the circle must enclose the zero cluster only
  auto cl = clustered_spectrum(sp.op, 1e-5);
  for (const auto &c : cl) {
    const double m = std::abs(c.mean);
    if (m > 1e-4 && m <= radius * 1.0000001) throw std::invalid_argument("spectral_projection: contour encloses a nonzero eigenvalue");
    if (std::abs(m - radius) < 1e-3) throw std::invalid_argument("spectral_projection: contour passes through the spectrum");
  }

  const int d = sp.op.dim();
  CMat P = CMat::Zero(d, d);
  const CMat A = sp.op.Ared.cast<cplx>();
  for (int k = 0; k < points; ++k) {
    cplx z = radius * std::exp(cplx(0.0, 2.0 * M_PI * k / points));
    CMat R = (z * CMat::Identity(d, d) - A).partialPivLu().solve(CMat::Identity(d, d));
    P += z * R;
  }
  P /= double(points);
  sp.Pred = P.real();
  return sp;
}

FlattenedPoint SpectralProjector::apply(const FlattenedPoint &v) const {
  Vec c = op.to_reduced(v.pack());
  return FlattenedPoint::unpack(op.B * (Pred * c));
}

CState SpectralProjector::apply(const CState &v) const {
  CVec c = op.to_reduced(v.pack());
  return CState::unpack(op.B.cast<cplx>() * (Pred.cast<cplx>() * c));
}

double psi_form(const CollocationGrid &g, const FlattenedPoint &v1, const FlattenedPoint &v2,
                const Params &p) {
  if (v1.n() != g.n || v2.n() != g.n) throw std::invalid_argument("psi_form: grid mismatch");
  const double om = p.omega0, s = p.sigma0;
  const int e = g.n - 1;
  const double k = 3.0 * s - 1.0 + om / 4.0;
  const double s1 = v1.phi(e) + v1.z, s2 = v2.phi(e) + v2.z;
  const double a2 = k * s2 + v2.phi(e) - 2.0 * om * g.quad(g.y.cwiseProduct(v2.phi));
  const double a1 = k * s1 + v1.phi(e) - 2.0 * om * g.quad(g.y.cwiseProduct(v1.phi));
  Vec shape = 1.5 * (g.y.array().square() - 1.0 / 3.0).matrix();
  Vec t1y = g.D * v1.theta, t2y = g.D * v2.theta;
  return a2 * v1.eta - a1 * v2.eta + g.quad(t2y.cwiseProduct(v1.phi - s1 * shape)) -
         g.quad(t1y.cwiseProduct(v2.phi - s2 * shape));
}

JordanChain jordan_chain(const CollocationGrid &g, const Params &p) {
  JordanChain j;
  const int n = g.n;
  j.Phi1 = FlattenedPoint(Vec::Zero(n), ((1.0 - g.y.array()) * g.y.array()).matrix(), 0.0, 1.0);
  j.Phi2 = FlattenedPoint(Vec::Zero(n), Vec::Zero(n), 1.0 / 3.0, 0.0);
  const double c = 1.0 / std::sqrt(p.sigma0 - 1.0 / 3.0);
  j.e = c * j.Phi1;
  j.f = c * j.Phi2;
  return j;
}

}  // namespace vortwave
