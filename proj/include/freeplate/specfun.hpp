#pragma once

// Ultraspherical Bessel functions of the first kind in dimension d >= 2:
//
//   j_l(z) = z^-s J_{s+l}(z),   i_l(z) = z^-s I_{s+l}(z),   s = (d-2)/2.
//
// Both are entire in z (even or odd power series of parity l), so the
// functions below are well defined at z = 0.

namespace freeplate {

/// Highest order accepted by the public evaluators.
inline constexpr int kMaxBesselOrder = 8;
/// Highest derivative accepted by the public evaluators.
inline constexpr int kMaxBesselDerivative = 4;
/// Arguments at or below this use the power series directly.
inline constexpr double kSeriesSwitchover = 0.5;
/// Largest argument the kernels accept (i_l overflows beyond ~709).
inline constexpr double kMaxBesselArgument = 700.0;

struct UltraBesselParams {
  int l = 0;
  int d = 2;

  constexpr double s() const noexcept { return (d - 2) / 2.0; }
};

/// deriv-th derivative of j_l at z >= 0.
double ultra_j(int l, int d, double z, int deriv = 0);
/// deriv-th derivative of i_l at z >= 0.
double ultra_i(int l, int d, double z, int deriv = 0);

inline double ultra_j(const UltraBesselParams& p, double z, int deriv = 0) {
  return ultra_j(p.l, p.d, z, deriv);
}
inline double ultra_i(const UltraBesselParams& p, double z, int deriv = 0) {
  return ultra_i(p.l, p.d, z, deriv);
}

/// j_l(z) / z^l, finite and nonzero at z = 0. Avoids the cancellation in
/// quotients such as j_1(ar)/r near the origin.
double ultra_j_scaled(int l, int d, double z);
/// i_l(z) / z^l.
double ultra_i_scaled(int l, int d, double z);

/// Power-series evaluation of the deriv-th derivative, valid for any z but
/// only accurate where cancellation is mild. Exposed for cross-checks.
double ultra_j_series(int l, int d, double z, int deriv = 0);
double ultra_i_series(int l, int d, double z, int deriv = 0);

/// Coefficient d_k in  i_1''(z) = sum_k d_k z^(2k-1)  (and j_1'' with
/// alternating signs):  d_k = (2k+1) / ((k-1)! Gamma(k+1+d/2)) 2^(1-2k-d/2).
double series_coeff_dk(int k, int d);

/// Smallest z > 0 with j_1'(z) = 0. Its square is the first nonzero
/// Neumann eigenvalue of the unit ball. Cached per dimension.
double first_zero_j1prime(int d);

}  // namespace freeplate
