#pragma once

// Reference values for the ultraspherical Bessel functions, independent of
// the library kernels: the defining power series summed in long double with
// termwise differentiation, and the std:: cylindrical Bessel functions.

#include <cmath>

namespace oracle {

// k-th derivative of z^-s J_{s+l}(z) (modified = false) or z^-s I_{s+l}(z).
// Accurate to ~1e-15 relative for z <= 12.
inline long double ultra_series(int l, int d, long double z, int k, bool modified) {
  const long double s = (d - 2) / 2.0L;
  const long double nu = s + l;
  long double sum = 0.0L;
  for (int m = 0; m < 400; ++m) {
    const int power = 2 * m + l;
    if (power < k) continue;
    // c_m = (-1)^m / (2^(2m+nu) m! Gamma(m+nu+1)), in logs to avoid overflow.
    const long double log_c = -(2 * m + nu) * std::log(2.0L) - std::lgamma(m + 1.0L) -
                              std::lgamma(m + nu + 1.0L);
    long double falling = 1.0L;
    for (int j = 0; j < k; ++j) falling *= power - j;
    long double term = falling * std::exp(log_c) * std::pow(z, static_cast<long double>(power - k));
    if (!modified && (m % 2 == 1)) term = -term;
    sum += term;
    if (m > 10 && std::abs(term) < 1e-30L * std::abs(sum)) break;
  }
  return sum;
}

inline double ultra_j(int l, int d, double z, int k = 0) {
  return static_cast<double>(ultra_series(l, d, z, k, false));
}

inline double ultra_i(int l, int d, double z, int k = 0) {
  return static_cast<double>(ultra_series(l, d, z, k, true));
}

// Function values through the standard library (z > 0).
inline double std_ultra_j(int l, int d, double z) {
  const double s = (d - 2) / 2.0;
  return std::pow(z, -s) * std::cyl_bessel_j(s + l, z);
}

inline double std_ultra_i(int l, int d, double z) {
  const double s = (d - 2) / 2.0;
  return std::pow(z, -s) * std::cyl_bessel_i(s + l, z);
}

}  // namespace oracle
