#pragma once

#include <string>
#include <vector>

namespace freeplate {

/// Fundamental free-plate mode of the ball of radius R in dimension d:
///   u = (j_1(a r) + gamma i_1(b r)) x_1 / r,   b^2 - a^2 = tau,   omega = a^2 b^2.
struct BallMode {
  int d = 2;
  double tau = 0.0;
  double radius = 1.0;
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double omega = 0.0;
  /// |R''(R)| relative to the size of its two terms.
  double residual_m = 0.0;
  /// |V(a)| relative to the size of its terms.
  double residual_v = 0.0;
};

/// Radial part R(r) = j_1(a r) + gamma i_1(b r) and its derivatives, deriv <= 4.
double radial_mode(const BallMode& mode, double r, int deriv = 0);

/// gamma = -a^2 j_1''(aR) / (b^2 i_1''(bR)), b = sqrt(a^2 + tau); makes R''(R) = 0.
double gamma_of(double a, double tau, int d, double radius = 1.0);

/// Residual of the natural boundary condition V u = 0 at r = R for the l = 1
/// mode, with gamma from gamma_of:
///   V(a) = (tau + (d-1)/R^2) R'(R) - (d-1)/R^3 R(R) + a^3 j_1'(aR) - gamma b^3 i_1'(bR).
double secular_V(double a, double tau, int d, double radius = 1.0);

/// Smallest root a in (0, ainf(d)/R) of secular_V, refined to 1e-12 relative.
/// Throws SolverError with the scan trace if no sign change is found.
BallMode fundamental_tone(double tau, int d, double radius = 1.0);

struct ToneBounds {
  double lower = 0.0;           ///< tau * ainf^2
  double upper_coord = 0.0;     ///< tau * (d + 2)
  double upper_membrane = 0.0;  ///< C(B) + tau * ainf^2
};

/// Linear bounds on the unit-ball tone.
ToneBounds tone_bounds(double tau, int d);

/// Hessian energy quotient C(B) = int |D^2 v|^2 / int v^2 of the free
/// membrane mode v = j_1(ainf r) x_1/r on the unit ball.
double membrane_C(int d);

/// omega_1(tau) / tau for each tau in the list (unit ball).
std::vector<double> infinite_tension_ratio(int d, const std::vector<double>& taus);

}  // namespace freeplate
