#include "freeplate/ball.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "freeplate/errors.hpp"
#include "freeplate/quadrature.hpp"
#include "freeplate/specfun.hpp"

namespace freeplate {
namespace {

void check_wavenumber(double a, double tau, int d, double radius) {
  if (d < 2) throw DomainError("dimension must be >= 2");
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  if (!(a > 0.0)) throw DomainError("wavenumber a must be positive");
  if (a * radius >= first_zero_j1prime(d)) {
    throw DomainError("a*R must lie below the first zero of j1'");
  }
}

// Fractions t = aR/ainf scanned for the first sign change of V: a uniform
// grid plus points accumulating at 1, where the root sits for large tau.
std::vector<double> scan_fractions() {
  std::vector<double> t;
  constexpr int kUniform = 256;
  for (int i = 1; i < kUniform; ++i) t.push_back(static_cast<double>(i) / kUniform);
  for (int k = 9; k <= 44; ++k) t.push_back(1.0 - std::ldexp(1.0, -k));
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

}  // namespace

double radial_mode(const BallMode& mode, double r, int deriv) {
  const double ja = ultra_j(1, mode.d, mode.a * r, deriv);
  const double ib = ultra_i(1, mode.d, mode.b * r, deriv);
  return std::pow(mode.a, deriv) * ja + mode.gamma * std::pow(mode.b, deriv) * ib;
}

double gamma_of(double a, double tau, int d, double radius) {
  check_wavenumber(a, tau, d, radius);
  const double b = std::sqrt(a * a + tau);
  return -a * a * ultra_j(1, d, a * radius, 2) /
         (b * b * ultra_i(1, d, b * radius, 2));
}

double secular_V(double a, double tau, int d, double radius) {
  const double gamma = gamma_of(a, tau, d, radius);
  const double b = std::sqrt(a * a + tau);
  const double za = a * radius;
  const double zb = b * radius;
  const double j1 = ultra_j(1, d, za);
  const double j1p = ultra_j(1, d, za, 1);
  const double i1 = ultra_i(1, d, zb);
  const double i1p = ultra_i(1, d, zb, 1);

  const double value = j1 + gamma * i1;
  const double slope = a * j1p + gamma * b * i1p;
  const double r2 = radius * radius;
  return (tau + (d - 1) / r2) * slope - (d - 1) / (r2 * radius) * value +
         a * a * a * j1p - gamma * b * b * b * i1p;
}

BallMode fundamental_tone(double tau, int d, double radius) {
  if (d < 2) throw DomainError("dimension must be >= 2");
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  if (!(radius > 0.0)) throw DomainError("radius must be positive");

  const double a_max = first_zero_j1prime(d) / radius;
  auto secular = [&](double a) { return secular_V(a, tau, d, radius); };

  std::ostringstream trace;
  trace.precision(17);
  double a_lo = 0.0;
  double v_lo = 0.0;
  bool have_lo = false;
  for (double t : scan_fractions()) {
    const double a_hi = t * a_max;
    const double v_hi = secular(a_hi);
    trace << a_hi << ',' << v_hi << '\n';
    if (have_lo && (v_lo < 0.0) != (v_hi < 0.0)) {
      std::uintmax_t iterations = 200;
      double root = a_hi;
      if (v_hi != 0.0) {
        const auto bracket = boost::math::tools::toms748_solve(
            secular, a_lo, a_hi, v_lo, v_hi,
            boost::math::tools::eps_tolerance<double>(46), iterations);
        root = 0.5 * (bracket.first + bracket.second);
      }

      BallMode mode;
      mode.d = d;
      mode.tau = tau;
      mode.radius = radius;
      mode.a = root;
      mode.b = std::sqrt(root * root + tau);
      mode.gamma = gamma_of(root, tau, d, radius);
      mode.omega = root * root * mode.b * mode.b;

      const double m_terms =
          mode.a * mode.a * std::abs(ultra_j(1, d, mode.a * radius, 2)) +
          mode.gamma * mode.b * mode.b * std::abs(ultra_i(1, d, mode.b * radius, 2));
      mode.residual_m = std::abs(radial_mode(mode, radius, 2)) / m_terms;

      const double r2 = radius * radius;
      const double v_terms =
          (tau + (d - 1) / r2) * std::abs(radial_mode(mode, radius, 1)) +
          (d - 1) / (r2 * radius) * std::abs(radial_mode(mode, radius)) +
          std::pow(mode.a, 3) * std::abs(ultra_j(1, d, mode.a * radius, 1)) +
          mode.gamma * std::pow(mode.b, 3) *
              std::abs(ultra_i(1, d, mode.b * radius, 1));
      mode.residual_v = std::abs(secular(root)) / v_terms;
      return mode;
    }
    a_lo = a_hi;
    v_lo = v_hi;
    have_lo = true;
  }
  throw SolverError("no sign change of the secular function in (0, ainf/R)",
                    trace.str());
}

ToneBounds tone_bounds(double tau, int d) {
  const double ainf = first_zero_j1prime(d);
  ToneBounds bounds;
  bounds.lower = tau * ainf * ainf;
  bounds.upper_coord = tau * (d + 2);
  bounds.upper_membrane = membrane_C(d) + bounds.lower;
  return bounds;
}

double membrane_C(int d) {
  const double ainf = first_zero_j1prime(d);
  const double a2 = ainf * ainf;
  // rho'' = ainf^2 j_1''(z) and (rho - r rho')/r^2 = ainf^2 j_2(z)/z with
  // z = ainf r; the second form has no cancellation near the origin.
  auto hessian = [&](double r) {
    const double z = ainf * r;
    const double second = a2 * ultra_j(1, d, z, 2);
    const double shear = a2 * z * ultra_j_scaled(2, d, z);
    return (second * second + 3.0 * (d - 1) * shear * shear) * std::pow(r, d - 1);
  };
  auto mass = [&](double r) {
    const double v = ultra_j(1, d, ainf * r);
    return v * v * std::pow(r, d - 1);
  };
  return integrate_interval(hessian, 0.0, 1.0, 1e-13).value /
         integrate_interval(mass, 0.0, 1.0, 1e-13).value;
}

std::vector<double> infinite_tension_ratio(int d, const std::vector<double>& taus) {
  std::vector<double> ratios;
  ratios.reserve(taus.size());
  for (double tau : taus) ratios.push_back(fundamental_tone(tau, d).omega / tau);
  return ratios;
}

}  // namespace freeplate
