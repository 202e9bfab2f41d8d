#pragma once

// Fundamental free-plate tone of the unit ball from a Rayleigh-Ritz
// discretization of the l = 1 sector. Trial profiles rho(r) = r p(r) with
// p spanned by T_k(2r - 1), k < n. For such rho,
//   rho - r rho' = -r^2 p',   rho'' = 2p' + r p'',   rho/r = p,
// so the quotient integrand
//   rho''^2 + 3(d-1)(p')^2 + tau (rho'^2 + (d-1) p^2)   over   rho^2
// (weight r^(d-1)) is polynomial and Gauss-Legendre integrates it exactly.
// No Bessel function is evaluated.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// n-point Gauss-Legendre rule on [0, 1] by Newton iteration on P_n.
inline GaussRule gauss_legendre01(int n) {
  GaussRule rule;
  rule.x.resize(static_cast<std::size_t>(n));
  rule.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    long double t = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0L);
      const long double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-19L) break;
    }
    rule.x[static_cast<std::size_t>(i)] = static_cast<double>(0.5L * (1.0L - t));
    rule.w[static_cast<std::size_t>(i)] = static_cast<double>(1.0L / ((1.0L - t * t) * dp * dp));
  }
  return rule;
}

// T_k(y), T_k'(y), T_k''(y) for k < n.
inline void chebyshev(int n, double y, std::vector<double>& t, std::vector<double>& dt,
                      std::vector<double>& ddt) {
  t.assign(static_cast<std::size_t>(n), 0.0);
  dt = t;
  ddt = t;
  t[0] = 1.0;
  if (n > 1) {
    t[1] = y;
    dt[1] = 1.0;
  }
  for (int k = 2; k < n; ++k) {
    const auto K = static_cast<std::size_t>(k);
    t[K] = 2 * y * t[K - 1] - t[K - 2];
    dt[K] = 2 * t[K - 1] + 2 * y * dt[K - 1] - dt[K - 2];
    ddt[K] = 4 * dt[K - 1] + 2 * y * ddt[K - 1] - ddt[K - 2];
  }
}

inline double rayleigh_ritz_tone(double tau, int d, int n = 40) {
  const GaussRule rule = gauss_legendre01(2 * n + d + 8);
  // Long double keeps the ill-conditioned Chebyshev Gram matrix accurate.
  using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  Matrix a = Matrix::Zero(n, n);
  Matrix b = Matrix::Zero(n, n);
  std::vector<double> t, dt, ddt;
  Vector p(n), dp(n), ddp(n), rho(n), drho(n), d2rho(n);
  for (std::size_t q = 0; q < rule.x.size(); ++q) {
    const long double r = rule.x[q];
    const long double w = rule.w[q] * std::pow(r, static_cast<long double>(d - 1));
    chebyshev(n, 2 * r - 1, t, dt, ddt);
    for (int k = 0; k < n; ++k) {
      const auto K = static_cast<std::size_t>(k);
      p[k] = t[K];
      dp[k] = 2 * dt[K];
      ddp[k] = 4 * ddt[K];
    }
    rho = r * p;
    drho = p + r * dp;
    d2rho = 2 * dp + r * ddp;
    const long double lt = tau;
    a.noalias() += w * (d2rho * d2rho.transpose() + 3.0L * (d - 1) * dp * dp.transpose() +
                        lt * (drho * drho.transpose() + static_cast<long double>(d - 1) * p * p.transpose()));
    b.noalias() += w * rho * rho.transpose();
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(a, b, Eigen::EigenvaluesOnly);
  return static_cast<double>(solver.eigenvalues().minCoeff());
}

}  // namespace oracle
