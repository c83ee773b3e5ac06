#pragma once

#include <stdexcept>
#include <vector>

#include "vortwave/phase_space.hpp"

namespace vortwave {

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Leading-order profile d*eps*Q(sqrt(eps)(sigma/(c^2 d) - 1/3)^{-1/2} xi/d), Q = -3 sech^2(./2).
double asymptotic_profile(double eps, double sigma, double c, double d, double xi_phys);

struct WaveResiduals {
  double laplace = 0.0, bottom = 0.0, kinematic = 0.0, bernoulli = 0.0;
  double max() const { return std::max(std::max(laplace, bottom), std::max(kinematic, bernoulli)); }
};

/// Collocation of the steady free-surface problem on the half strip
/// 0 <= xi <= Lambda, 0 <= s <= 1 with s = (y + 1)/(eta + 1).
///
/// eta is even: cosine modes k = 0..M at xi_j = j Lambda / M, j = 0..M.
/// phi is odd and tends to a constant, so it uses quarter-wave sines
/// sin((k + 1/2) pi xi / Lambda), k = 0..M-1, sampled at j = 1..M.
/// In s: Chebyshev nodes of the spectral kernel.
///
/// Unknowns: F(j, i) for j = 1..M, i = 0..n-1 (row-major), then eta_0..eta_M.
/// Equations: Laplace at interior s and j = 1..M, bottom and kinematic at
/// j = 1..M, Bernoulli at j = 0..M.
class StripSolver {
 public:
  StripSolver(double eps, double sigma0, int M = 64, int n = 16, double Lambda = 0.0);

  int unknowns() const { return M_ * n_ + M_ + 1; }
  int M() const { return M_; }
  int n() const { return n_; }
  double eps() const { return eps_; }
  double sigma0() const { return sg_; }
  double omega() const { return om_; }
  double Lambda() const { return Lam_; }
  const Vec &xi() const { return x_; }
  const CollocationGrid &sgrid() const { return grid_; }

  template <class S>
  Eigen::Matrix<S, Eigen::Dynamic, 1> residual(const Eigen::Matrix<S, Eigen::Dynamic, 1> &u) const;
  WaveResiduals residual_parts(const Vec &u) const;
  /// Complex-step derivative of every column.
  Mat jacobian(const Vec &u) const;

  /// KdV-shaped initial guess.
  Vec guess() const;
  Mat F_of(const Vec &u) const;
  Vec eta_of(const Vec &u) const;
  Vec pack(const Mat &F, const Vec &eta) const;

  /// Evaluate the eta cosine series / phi sine series at arbitrary xi.
  Vec eta_at(const Vec &u, const Vec &xs) const;
  Mat F_at(const Vec &u, const Vec &xs) const;

  /// Re-sample a solution of `coarse` on this solver's grid (same Lambda).
  Vec interpolate_from(const StripSolver &coarse, const Vec &u) const;

 private:
  double eps_, sg_, om_, Lam_;
  int M_, n_;
  Vec x_;
  CollocationGrid grid_;
  Mat De_, D2e_, Dp_, D2p_, DyT_, Dy2T_;
  Mat Cinv_, Sinv_;
};

struct WaveProfile {
  Params params;
  double eps = 0.0;
  double Lambda = 0.0;
  int M = 0, n = 0;
  Vec xi, eta;
  Mat phi;  // F at xi_1..xi_M (rows) and s nodes (columns)
  Vec u;    // packed unknowns
  double amplitude = 0.0;
  double half_width = 0.0;  // xi where eta = amplitude / 2
  double rho = 0.0;         // ||eta - eps Q||_inf / eps^2
  WaveResiduals residuals;
  int newton_iters = 0;
  std::vector<double> increments;
  std::vector<double> residual_history;
  double seconds = 0.0;
};

/// Damped Newton from u0; throws NumericalFailure on divergence or singular Jacobian.
WaveProfile newton_solve(const StripSolver &solver, const Vec &u0, double tol = 1e-10, int maxit = 50);

/// Solves the smallest eps from the KdV guess, then warm-starts each next eps by
/// rescaling the previous solution (eta ~ eps, phi ~ sqrt(eps), xi ~ eps^{-1/2}).
std::vector<WaveProfile> continuation_sweep(const std::vector<double> &eps_list, double sigma0,
                                            int M = 64, int n = 16, double tol = 1e-10);

/// Sup-norm residual of a profile re-evaluated on a (2M, 2n) discretisation.
double refined_residual(const WaveProfile &w);

}  // namespace vortwave
