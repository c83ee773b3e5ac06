#include "vortwave/wave.hpp"

#include <chrono>
#include <cmath>

namespace vortwave {

double asymptotic_profile(double eps, double sigma, double c, double d, double xi_phys) {
  if (eps <= 0.0) throw std::invalid_argument("asymptotic_profile: eps must be positive");
  const double s0 = sigma / (c * c * d);
  if (s0 <= 1.0 / 3.0) throw std::invalid_argument("asymptotic_profile: need sigma/(c^2 d) > 1/3");
  const double xb = std::sqrt(eps) / std::sqrt(s0 - 1.0 / 3.0) * xi_phys / d;
  const double sh = 1.0 / std::cosh(xb / 2.0);
  return d * eps * (-3.0 * sh * sh);
}

StripSolver::StripSolver(double eps, double sigma0, int M, int n, double Lambda)
    : eps_(eps), sg_(sigma0), om_(1.0 + eps), M_(M), n_(n), grid_(build_grid(n)) {
  if (sigma0 <= 1.0 / 3.0) throw std::invalid_argument("StripSolver: sigma0 must exceed 1/3");
  if (M < 8) throw std::invalid_argument("StripSolver: need M >= 8");
  if (Lambda <= 0.0) {
    if (eps <= 0.0) throw std::invalid_argument("StripSolver: Lambda required when eps <= 0");
    Lambda = 20.0 * std::sqrt(sigma0 - 1.0 / 3.0) / std::sqrt(eps);
  }
  Lam_ = Lambda;
  x_.resize(M + 1);
  for (int j = 0; j <= M; ++j) x_(j) = j * Lam_ / M;

  const double pi = M_PI;
  Mat Ce(M + 1, M + 1), Se(M + 1, M + 1), Ce2(M + 1, M + 1);
  for (int j = 0; j <= M; ++j)
    for (int k = 0; k <= M; ++k) {
      const double kk = k * pi / Lam_;
      Ce(j, k) = std::cos(kk * x_(j));
      Se(j, k) = -kk * std::sin(kk * x_(j));
      Ce2(j, k) = -kk * kk * std::cos(kk * x_(j));
    }
  Cinv_ = Ce.partialPivLu().inverse();
  De_ = Se * Cinv_;
  D2e_ = Ce2 * Cinv_;

  Mat Sp(M, M), Cp(M + 1, M), Sp2(M, M);
  for (int k = 0; k < M; ++k) {
    const double kp = (k + 0.5) * pi / Lam_;
    for (int j = 0; j <= M; ++j) Cp(j, k) = kp * std::cos(kp * x_(j));
    for (int j = 1; j <= M; ++j) {
      Sp(j - 1, k) = std::sin(kp * x_(j));
      Sp2(j - 1, k) = -kp * kp * std::sin(kp * x_(j));
    }
  }
  Sinv_ = Sp.partialPivLu().inverse();
  Dp_ = Cp * Sinv_;
  D2p_ = Sp2 * Sinv_;
  DyT_ = grid_.D.transpose();
  Dy2T_ = (grid_.D * grid_.D).transpose();
}

Mat StripSolver::F_of(const Vec &u) const {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(u.data(), M_, n_);
}

Vec StripSolver::eta_of(const Vec &u) const { return u.tail(M_ + 1); }

Vec StripSolver::pack(const Mat &F, const Vec &eta) const {
  Vec u(unknowns());
  for (int j = 0; j < M_; ++j)
    for (int i = 0; i < n_; ++i) u(j * n_ + i) = F(j, i);
  u.tail(M_ + 1) = eta;
  return u;
}

template <class S>
Eigen::Matrix<S, Eigen::Dynamic, 1> StripSolver::residual(const Eigen::Matrix<S, Eigen::Dynamic, 1> &u) const {
  using MS = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  using VS = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  const int M = M_, n = n_;
  MS F(M, n);
  for (int j = 0; j < M; ++j)
    for (int i = 0; i < n; ++i) F(j, i) = u(j * n + i);
  VS eta = u.tail(M + 1);
  for (int j = 0; j <= M; ++j)
    if (std::real(eta(j)) <= -1.0) throw std::domain_error("strip residual: eta <= -1");

  VS h = eta.array() + S(1.0);
  VS hp = De_.cast<S>() * eta, hpp = D2e_.cast<S>() * eta;
  MS FX = Dp_.cast<S>() * F;     // rows xi_0..xi_M
  MS FXX = D2p_.cast<S>() * F;   // rows xi_1..xi_M
  MS Fs = F * DyT_.cast<S>();
  MS Fss = F * Dy2T_.cast<S>();
  MS FXs = FX * DyT_.cast<S>();

  VS r(unknowns());
  int k = 0;
  for (int j = 1; j <= M; ++j) {
    const S H = h(j), Hp = hp(j), Hpp = hpp(j);
    for (int i = 1; i < n - 1; ++i) {
      const double s = grid_.y(i);
      r(k++) = H * H * FXX(j - 1, i) - S(2.0 * s) * H * Hp * FXs(j, i) +
               S(s) * (S(2.0) * Hp * Hp - H * Hpp) * Fs(j - 1, i) + (S(1.0) + S(s * s) * Hp * Hp) * Fss(j - 1, i);
    }
  }
  for (int j = 1; j <= M; ++j) r(k++) = Fs(j - 1, 0);
  // surface quantities; F_s at xi = 0 vanishes by oddness
  VS phy(M + 1), phx(M + 1);
  for (int j = 0; j <= M; ++j) {
    const S fs1 = (j == 0) ? S(0.0) : Fs(j - 1, n - 1);
    phy(j) = fs1 / h(j);
    phx(j) = FX(j, n - 1) - hp(j) / h(j) * fs1;
  }
  const S om(om_), sg(sg_);
  for (int j = 1; j <= M; ++j) r(k++) = hp(j) + phy(j) - (phx(j) - om * eta(j)) * hp(j);
  for (int j = 0; j <= M; ++j) {
    const S q = S(1.0) + hp(j) * hp(j);
    r(k++) = -phx(j) + S(0.5) * phx(j) * phx(j) + S(0.5) * phy(j) * phy(j) - om * eta(j) * phx(j) +
             om * eta(j) + S(0.5) * om * om * eta(j) * eta(j) - sg * hpp(j) / (q * std::sqrt(q));
  }
  return r;
}

template Vec StripSolver::residual<double>(const Vec &) const;
template CVec StripSolver::residual<cplx>(const CVec &) const;

WaveResiduals StripSolver::residual_parts(const Vec &u) const {
  Vec r = residual(u);
  const int M = M_, n = n_;
  WaveResiduals w;
  int k = 0;
  const int nl = M * (n - 2);
  w.laplace = r.segment(k, nl).cwiseAbs().maxCoeff();
  k += nl;
  w.bottom = r.segment(k, M).cwiseAbs().maxCoeff();
  k += M;
  w.kinematic = r.segment(k, M).cwiseAbs().maxCoeff();
  k += M;
  w.bernoulli = r.segment(k, M + 1).cwiseAbs().maxCoeff();
  return w;
}

Mat StripSolver::jacobian(const Vec &u) const {
  const int N = unknowns();
  const double h = 1e-30;
  Mat J(N, N);
  CVec uc = u.cast<cplx>();
  for (int c = 0; c < N; ++c) {
    uc(c) += cplx(0.0, h);
    J.col(c) = residual(uc).imag() / h;
    uc(c) = u(c);
  }
  return J;
}

Vec StripSolver::guess() const {
  const double c = std::sqrt(eps_ / (sg_ - 1.0 / 3.0));
  Vec eta(M_ + 1);
  for (int j = 0; j <= M_; ++j) {
    const double sh = 1.0 / std::cosh(c * x_(j) / 2.0);
    eta(j) = -3.0 * eps_ * sh * sh;
  }
  Mat F(M_, n_);
  for (int j = 1; j <= M_; ++j) F.row(j - 1).setConstant(-6.0 * eps_ / c * std::tanh(c * x_(j) / 2.0));
  return pack(F, eta);
}

Vec StripSolver::eta_at(const Vec &u, const Vec &xs) const {
  Vec ce = Cinv_ * eta_of(u);
  Vec out(xs.size());
  for (int i = 0; i < xs.size(); ++i) {
    double v = 0.0;
    for (int k = 0; k <= M_; ++k) v += ce(k) * std::cos(k * M_PI / Lam_ * xs(i));
    out(i) = v;
  }
  return out;
}

Mat StripSolver::F_at(const Vec &u, const Vec &xs) const {
  Mat cf = Sinv_ * F_of(u);
  Mat S(xs.size(), M_);
  for (int i = 0; i < xs.size(); ++i)
    for (int k = 0; k < M_; ++k) S(i, k) = std::sin((k + 0.5) * M_PI / Lam_ * xs(i));
  return S * cf;
}

Vec StripSolver::interpolate_from(const StripSolver &coarse, const Vec &u) const {
  Vec eta = coarse.eta_at(u, x_);
  Mat Fx = coarse.F_at(u, x_.tail(M_));
  Mat P = coarse.sgrid().interp_matrix(grid_.y);
  return pack(Fx * P.transpose(), eta);
}

namespace {

void finish_profile(const StripSolver &s, WaveProfile &w) {
  w.eps = s.eps();
  w.Lambda = s.Lambda();
  w.M = s.M();
  w.n = s.n();
  w.params.omega0 = 1.0;
  w.params.eps1 = s.eps();
  w.params.sigma0 = s.sigma0();
  w.xi = s.xi();
  w.eta = s.eta_of(w.u);
  w.phi = s.F_of(w.u);
  w.residuals = s.residual_parts(w.u);
  w.amplitude = w.eta.minCoeff();
  if (s.eps() > 0.0) {
    const double c = std::sqrt(s.eps() / (s.sigma0() - 1.0 / 3.0));
    double dev = 0.0;
    for (int j = 0; j <= s.M(); ++j) {
      const double sh = 1.0 / std::cosh(c * w.xi(j) / 2.0);
      dev = std::max(dev, std::abs(w.eta(j) + 3.0 * s.eps() * sh * sh));
    }
    w.rho = dev / (s.eps() * s.eps());
    if (w.amplitude < 0.0) {
      auto f = [&](double x) {
        Vec xs(1);
        xs(0) = x;
        return s.eta_at(w.u, xs)(0) - 0.5 * w.amplitude;
      };
      try {
        w.half_width = find_real_root(f, 0.0, s.Lambda(), 1e-13);
      } catch (const std::runtime_error &) {
        w.half_width = 0.0;
      }
    }
  }
}

}  // namespace

WaveProfile newton_solve(const StripSolver &solver, const Vec &u0, double tol, int maxit) {
  if (tol < 1e-12) throw std::invalid_argument("newton_solve: tol must be >= 1e-12");
  auto t0 = std::chrono::steady_clock::now();
  WaveProfile w;
  Vec u = u0;
  Vec r = solver.residual(u);
  double nr = r.cwiseAbs().maxCoeff();
  w.residual_history.push_back(nr);
  int it = 0;
  while (nr > tol) {
    if (it >= maxit)
      throw NumericalFailure("newton_solve: no convergence in " + std::to_string(maxit) +
                             " iterations, residual " + std::to_string(nr));
    Mat J = solver.jacobian(u);
    Eigen::PartialPivLU<Mat> lu(J);
    Vec du = lu.solve(-r);
    if (!du.allFinite() || (J * du + r).cwiseAbs().maxCoeff() > 1e-6 * (1.0 + nr))
      throw NumericalFailure("newton_solve: singular Jacobian (continuation step too large?)");
    // backtrack while the residual grows
    double lam = 1.0;
    Vec un;
    double nn = 0.0;
    for (int k = 0; k < 20; ++k) {
      un = u + lam * du;
      try {
        nn = solver.residual(un).cwiseAbs().maxCoeff();
      } catch (const std::domain_error &) {
        nn = INFINITY;
      }
      if (nn < nr || lam < 1e-3) break;
      lam *= 0.5;
    }
    if (!std::isfinite(nn)) throw NumericalFailure("newton_solve: iterate left the admissible set");
    w.increments.push_back(lam * du.cwiseAbs().maxCoeff());
    u = un;
    r = solver.residual(u);
    nr = r.cwiseAbs().maxCoeff();
    w.residual_history.push_back(nr);
    ++it;
  }
  w.u = u;
  w.newton_iters = it;
  finish_profile(solver, w);
  w.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return w;
}

std::vector<WaveProfile> continuation_sweep(const std::vector<double> &eps_list, double sigma0, int M,
                                            int n, double tol) {
  std::vector<WaveProfile> out;
  for (size_t i = 0; i < eps_list.size(); ++i) {
    const double e = eps_list[i];
    if (!(e > 0.0 && e <= 0.15)) throw std::invalid_argument("continuation_sweep: eps must lie in (0, 0.15]");
    if (i > 0 && e <= eps_list[i - 1]) throw std::invalid_argument("continuation_sweep: eps list must increase");
    StripSolver s(e, sigma0, M, n);
    Vec u0;
    if (i == 0) {
      u0 = s.guess();
    } else {
      // same node index on both grids corresponds to the same long-wave coordinate
      const WaveProfile &prev = out.back();
      const double r = e / prev.eps;
      Mat F = std::sqrt(r) * prev.phi;
      u0 = s.pack(F, r * prev.eta);
    }
    try {
      out.push_back(newton_solve(s, u0, tol));
    } catch (const NumericalFailure &ex) {
      throw NumericalFailure(std::string(ex.what()) + " at eps = " + std::to_string(e));
    }
  }
  return out;
}

double refined_residual(const WaveProfile &w) {
  StripSolver coarse(w.eps, w.params.sigma0, w.M, w.n, w.Lambda);
  StripSolver fine(w.eps, w.params.sigma0, 2 * w.M, 2 * w.n, w.Lambda);
  return fine.residual(fine.interpolate_from(coarse, w.u)).cwiseAbs().maxCoeff();
}

}  // namespace vortwave
