#pragma once

#include "freeplate/ball.hpp"
#include "freeplate/report.hpp"

namespace freeplate {

/// Radial profile of the trial functions u_k = x_k rho(r) / r: the ball
/// mode's radial part on [0, R], continued by its tangent line for r > R.
struct TrialProfile {
  BallMode mode;
  /// Below this radius rho/r and (rho - r rho')/r^2 are evaluated from the
  /// series of j_l(z)/z^l instead of dividing by r.
  double small_r_threshold = 1e-3;

  TrialProfile() = default;
  explicit TrialProfile(BallMode m, double threshold = 1e-3)
      : mode(m), small_r_threshold(threshold) {}
};

/// rho and its first two derivatives at r >= 0.
double rho(const TrialProfile& profile, double r, int deriv = 0);

/// rho(r) / r, with the finite limit rho'(0) at r = 0.
double rho_over_r(const TrialProfile& profile, double r);

/// (rho - r rho') / r^2, zero at r = 0.
double shear_term(const TrialProfile& profile, double r);

/// Sums over the d trial functions of |u_k|^2, |D u_k|^2 and |D^2 u_k|^2.
struct TrialSums {
  double value = 0.0;
  double gradient = 0.0;
  double hessian = 0.0;
};
TrialSums trial_sums(const TrialProfile& profile, double r);

/// N[rho] = rho''^2 + 3(d-1)(rho - r rho')^2/r^4 + tau rho'^2 + tau (d-1) rho^2/r^2.
double numerator_integrand(const TrialProfile& profile, double r);

/// rho'' < 0 strictly inside (0, R), rho'' = 0 at both endpoints, and
/// R'''' > 0 on (0, R].
VerificationReport concavity_scan(const TrialProfile& profile, int grid_size = 4096);

/// N[rho] is larger at every inner grid point than at every outer one, with
/// the three ingredients checked separately.
VerificationReport partial_monotonicity_scan(const TrialProfile& profile,
                                             int inner_grid = 4096,
                                             int outer_grid = 4096,
                                             double r_max = 10.0);

/// rho^2 strictly increasing across the inner and outer grids.
VerificationReport denominator_monotonicity_scan(const TrialProfile& profile,
                                                 int inner_grid = 4096,
                                                 int outer_grid = 4096,
                                                 double r_max = 10.0);

/// (6/r^2)(rho - r rho') + 3 rho'' + tau rho > 0 on (0, R].
VerificationReport quantinterest_scan(const TrialProfile& profile, int grid_size = 4096);

}  // namespace freeplate
