#include "freeplate/specfun.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "freeplate/errors.hpp"

namespace freeplate {
namespace {

// Orders reachable internally: l + deriv with l <= 8, deriv <= 4, plus the
// scaled helpers used by the trial profile.
constexpr int kMaxInternalOrder = 16;
constexpr int kMaxSeriesTerms = 2000;

enum class Kind { kJ, kI };

void check_common(int l, int d, double z, int deriv, int max_order) {
  if (d < 2) throw DomainError("dimension must be >= 2");
  if (l < 0 || l > max_order) {
    throw DomainError("order l=" + std::to_string(l) + " outside [0, " +
                      std::to_string(max_order) + "]");
  }
  if (deriv < 0 || deriv > kMaxBesselDerivative) {
    throw DomainError("derivative order " + std::to_string(deriv) +
                      " outside [0, 4]");
  }
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError("argument must be finite and >= 0");
  }
  if (z > kMaxBesselArgument) {
    throw OverflowError("argument " + std::to_string(z) +
                        " beyond kernel range");
  }
}

// n (n-1) ... (n-k+1); zero when n < k.
double falling_factorial(int n, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= static_cast<double>(n - i);
  return out;
}

// Term-by-term derivative of the power series sum_m c_m z^(2m+l):
//   sum_m c_m ff(2m+l, deriv) z^(2m+l-deriv-shift).
// `shift` divides out a further power of z; only the scaled variants use it,
// always with deriv == 0 and shift == l, so no negative powers arise.
double power_series(Kind kind, int l, int d, double z, int deriv, int shift) {
  const double nu = (d - 2) / 2.0 + l;
  const double sign = kind == Kind::kJ ? -1.0 : 1.0;
  auto next_coef = [&](double c, int m) {
    return c * sign / (4.0 * (m + 1) * (m + 1 + nu));
  };

  // First m whose term survives differentiation.
  const int m_start = deriv > l ? (deriv - l + 1) / 2 : 0;
  double coef = std::pow(2.0, -nu) / std::tgamma(nu + 1.0);
  for (int m = 0; m < m_start; ++m) coef = next_coef(coef, m);

  // term_m = c_m ff(2m+l, deriv) z^(2m+l-deriv-shift); the z power is a
  // running product so large z neither overflows nor underflows early.
  const double z2 = z * z;
  double scaled = coef * std::pow(z, 2 * m_start + l - deriv - shift);
  double sum = 0.0;
  for (int m = m_start; m < m_start + kMaxSeriesTerms; ++m) {
    const double term = scaled * falling_factorial(2 * m + l, deriv);
    sum += term;
    if (m > m_start + 2 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    scaled = next_coef(scaled, m) * z2;
  }
  return sum;
}

// j_0 .. j_nmax at x > 0 by Miller's backward recurrence on
// J_{nu-1} = (2 nu / x) J_nu - J_{nu+1}, normalized with
//   (x/2)^s = sum_k (s + 2k) Gamma(s + k) / k!  J_{s+2k}(x)   (s > 0)
//   1       = J_0 + 2 sum_k J_{2k}                          (s = 0).
std::vector<double> j_sequence(int d, double x, int nmax) {
  const double s = (d - 2) / 2.0;
  const double span = std::max(static_cast<double>(nmax), x);
  int start = nmax + static_cast<int>(x) + 24 +
              static_cast<int>(std::sqrt(40.0 * span));
  if (start % 2 != 0) ++start;

  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[static_cast<std::size_t>(start)] = 1e-300;
  constexpr double kBig = 1e250;
  for (int n = start; n >= 1; --n) {
    const auto un = static_cast<std::size_t>(n);
    f[un - 1] = 2.0 * (s + n) / x * f[un] - f[un + 1];
    if (std::abs(f[un - 1]) > kBig) {
      for (std::size_t k = un - 1; k < f.size(); ++k) f[k] /= kBig;
    }
  }

  double norm = 0.0;
  if (s == 0.0) {
    norm = f[0];
    for (int k = 2; k <= start; k += 2) norm += 2.0 * f[static_cast<std::size_t>(k)];
  } else {
    double g = std::tgamma(s);  // Gamma(s + k) / k!
    for (int k = 0; 2 * k <= start; ++k) {
      if (k > 0) g *= (s + k - 1) / k;
      norm += (s + 2 * k) * g * f[static_cast<std::size_t>(2 * k)];
    }
  }
  const double scale = std::pow(2.0, -s) / norm;
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    out[static_cast<std::size_t>(n)] = f[static_cast<std::size_t>(n)] * scale;
  }
  return out;
}

// i_q(x) for q = 0..nmax by the ascending series (all terms positive).
std::vector<double> i_sequence(int d, double x, int nmax) {
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  for (int q = 0; q <= nmax; ++q) {
    out[static_cast<std::size_t>(q)] = power_series(Kind::kI, q, d, x, 0, 0);
  }
  return out;
}

// One term coef * z^-p * f_q of a derivative expansion.
struct RecurrenceTerm {
  double coef;
  int p;
  int q;
};

// Expands d^k/dz^k f_l as a combination of z^-p f_q using
//   d/dz [z^-p f_q] = (q - p) z^-(p+1) f_q + sigma z^-p f_{q+1},
// with sigma = -1 for j and +1 for i.
std::vector<RecurrenceTerm> derivative_expansion(int l, int deriv, double sigma) {
  std::vector<RecurrenceTerm> terms{{1.0, 0, l}};
  for (int step = 0; step < deriv; ++step) {
    std::vector<RecurrenceTerm> next;
    auto add = [&next](double coef, int p, int q) {
      if (coef == 0.0) return;
      for (auto& t : next) {
        if (t.p == p && t.q == q) {
          t.coef += coef;
          return;
        }
      }
      next.push_back({coef, p, q});
    };
    for (const auto& t : terms) {
      add(t.coef * (t.q - t.p), t.p + 1, t.q);
      add(t.coef * sigma, t.p, t.q + 1);
    }
    terms = std::move(next);
  }
  return terms;
}

double evaluate_above_switchover(Kind kind, int l, int d, double z, int deriv) {
  const int nmax = l + deriv;
  const auto values =
      kind == Kind::kJ ? j_sequence(d, z, nmax) : i_sequence(d, z, nmax);
  if (deriv == 0) return values[static_cast<std::size_t>(l)];
  const double sigma = kind == Kind::kJ ? -1.0 : 1.0;
  double sum = 0.0;
  for (const auto& t : derivative_expansion(l, deriv, sigma)) {
    sum += t.coef * std::pow(z, -t.p) * values[static_cast<std::size_t>(t.q)];
  }
  return sum;
}

double evaluate(Kind kind, int l, int d, double z, int deriv, int max_order) {
  check_common(l, d, z, deriv, max_order);
  if (z <= kSeriesSwitchover) return power_series(kind, l, d, z, deriv, 0);
  return evaluate_above_switchover(kind, l, d, z, deriv);
}

}  // namespace

double ultra_j(int l, int d, double z, int deriv) {
  return evaluate(Kind::kJ, l, d, z, deriv, kMaxBesselOrder);
}

double ultra_i(int l, int d, double z, int deriv) {
  return evaluate(Kind::kI, l, d, z, deriv, kMaxBesselOrder);
}

double ultra_j_series(int l, int d, double z, int deriv) {
  check_common(l, d, z, deriv, kMaxInternalOrder);
  return power_series(Kind::kJ, l, d, z, deriv, 0);
}

double ultra_i_series(int l, int d, double z, int deriv) {
  check_common(l, d, z, deriv, kMaxInternalOrder);
  return power_series(Kind::kI, l, d, z, deriv, 0);
}

double ultra_j_scaled(int l, int d, double z) {
  check_common(l, d, z, 0, kMaxInternalOrder);
  if (z <= kSeriesSwitchover) return power_series(Kind::kJ, l, d, z, 0, l);
  return j_sequence(d, z, l)[static_cast<std::size_t>(l)] / std::pow(z, l);
}

double ultra_i_scaled(int l, int d, double z) {
  check_common(l, d, z, 0, kMaxInternalOrder);
  return power_series(Kind::kI, l, d, z, 0, l);
}

double series_coeff_dk(int k, int d) {
  if (k < 1) throw DomainError("series index k must be >= 1");
  if (d < 2) throw DomainError("dimension must be >= 2");
  const double half_d = d / 2.0;
  return (2.0 * k + 1.0) / (std::tgamma(static_cast<double>(k)) *
                            std::tgamma(k + 1.0 + half_d)) *
         std::pow(2.0, 1.0 - 2.0 * k - half_d);
}

double first_zero_j1prime(int d) {
  if (d < 2) throw DomainError("dimension must be >= 2");
  static std::mutex mutex;
  static std::map<int, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }

  auto slope = [d](double z) { return ultra_j(1, d, z, 1); };
  constexpr double kStep = 0.05;
  constexpr int kSteps = 400;  // scan window (0, 20]
  double lo = kStep;
  double f_lo = slope(lo);
  for (int k = 2; k <= kSteps; ++k) {
    const double hi = k * kStep;
    const double f_hi = slope(hi);
    if (f_lo > 0.0 && f_hi <= 0.0) {
      double root = hi;
      if (f_hi != 0.0) {
        std::uintmax_t iterations = 200;
        const auto bracket = boost::math::tools::toms748_solve(
            slope, lo, hi, f_lo, f_hi,
            boost::math::tools::eps_tolerance<double>(44), iterations);
        root = 0.5 * (bracket.first + bracket.second);
      }
      std::lock_guard lock(mutex);
      cache.emplace(d, root);
      return root;
    }
    lo = hi;
    f_lo = f_hi;
  }
  std::ostringstream trace;
  trace << "j1' scan over (0, 20] step 0.05 in d=" << d
        << " found no sign change; last value " << f_lo;
  throw SolverError("no zero of j1' in scan window", trace.str());
}

}  // namespace freeplate
