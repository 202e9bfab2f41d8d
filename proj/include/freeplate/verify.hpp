#pragma once

#include <vector>

#include "freeplate/polynomial.hpp"
#include "freeplate/report.hpp"

namespace freeplate {

// Auxiliary polynomial inequalities behind the small-tension case, and grid
// checks of the Bessel bounds and sign facts the monotonicity argument uses.

/// P(x, d) = 24d^4 + 60d^3 - 120d^2 - 432d - 40d^3 x - 119d^2 x - 6dx + 432x
///         + 43d^2 x^2 + 113d x^2 + 54x^2 - 15d x^3 - 30x^3.
double poly_P(double x, int d);
/// P(., d) as a cubic in x.
Polynomial poly_P_cubic(int d);
/// The undivided form (2d-3x)(d-x)(6(d+4)-5x)(3+x)(d+2)
///   - 2d(6d(d+4)-24x)(3(d+2)-x(d+5)); equals x P(x, d).
Polynomial poly_P_undivided(int d);
/// Right end 3(d+2)/(d+5) of the interval where P must be nonnegative.
double poly_P_interval_end(int d);

/// g(d) = 24d^4 - 60d^3 - 477d^2 - 855d - 810, a lower bound for P on x in [0, 3].
double poly1_g(double d);
double poly1_g_prime(double d);

struct CriticalValue {
  double x = 0.0;
  double value = 0.0;
};

/// Critical points of P(., d) inside [0, 3(d+2)/(d+5)], in closed form.
std::vector<CriticalValue> poly_P_critical_values(int d);

VerificationReport verify_P_nonneg(int d, int grid_size = 10000);
/// Aggregate over every integer d in [d_lo, d_hi].
VerificationReport verify_P_nonneg(int d_lo, int d_hi, int grid_size);

/// The quartic Q(x) of the two-dimensional case, built with ainf(2)^2.
Polynomial poly_Q_polynomial();
double poly_Q(double x);
/// Q(x)/x as a cubic.
Polynomial poly_Q_over_x();
/// Critical points of Q(x)/x inside [0, 12/7].
std::vector<CriticalValue> poly_Q_critical_values();
VerificationReport verify_Q_positive(int grid_size = 10000);

/// -d1 z + d2 z^3 >= j_1''(z) on [0, sqrt(3(d+2)/(d+5))] and
/// d1 z + (6/5) d2 z^3 >= i_1''(z) on [0, sqrt(3)].
VerificationReport verify_ij_bounds(int d, int grid_size = 10000);

/// The five sign facts on (0, ainf]: j_l > 0 (l = 1..5), j_1' > 0 (open at
/// ainf), j_2' > 0, j_1'' < 0, j_1'''' > 0.
VerificationReport verify_bessel_signs(int d, int grid_size = 10000);

/// gamma* = (3(d+2) - a^2(d+5)) / ((3 + a^2)(d+2)).
double gamma_star(double a, int d);

/// Solved ball modes on log-spaced tau grids: gamma >= gamma* and the
/// small-tension inequality for tau <= 9/(d+5), tau - 3a^2/(d+2) > 0 above
/// it, and the a/b regime bounds throughout.
VerificationReport verify_gamma_chain(int d, int taus_per_regime = 64);

/// 1 - (3/2)x < (1 - x)^(3/2) on (0, 1).
VerificationReport verify_binomial_estimate(int grid_size = 10000);

}  // namespace freeplate
