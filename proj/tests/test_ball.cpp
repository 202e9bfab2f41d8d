#include <doctest.h>

#include <cmath>
#include <vector>

#include "fd_boundary.hpp"
#include "freeplate/ball.hpp"
#include "freeplate/errors.hpp"
#include "freeplate/specfun.hpp"
#include "rayleigh_ritz.hpp"

using namespace freeplate;

TEST_CASE("secular function matches finite differences of the boundary operators") {
  for (int d : {2, 3, 4}) {
    for (double radius : {1.0, 2.0, 0.5}) {
      for (double tau : {0.5, 5.0}) {
        for (double frac : {0.3, 0.7}) {
          BallMode m;
          m.d = d;
          m.tau = tau;
          m.radius = radius;
          m.a = frac * first_zero_j1prime(d) / radius;
          m.b = std::sqrt(m.a * m.a + tau);
          m.gamma = gamma_of(m.a, tau, d, radius);
          const auto ops = oracle::fd_boundary_operators([&](double r) { return radial_mode(m, r); },
                                                         d, radius, tau);
          const double scale = std::abs(std::pow(m.a, 3) * ultra_j(1, d, m.a * radius, 1)) +
                               std::abs(m.gamma * std::pow(m.b, 3) * ultra_i(1, d, m.b * radius, 1)) +
                               std::abs(tau * radial_mode(m, radius, 1));
          CAPTURE(d);
          CAPTURE(radius);
          CAPTURE(tau);
          CHECK(std::abs(secular_V(m.a, tau, d, radius) - ops.v) < 1e-5 * scale);
          CHECK(std::abs(ops.m) < 1e-7 * scale);
        }
      }
    }
  }
}

TEST_CASE("solved tone agrees with Rayleigh-Ritz") {
  for (int d : {2, 3, 5}) {
    for (double tau : {0.1, 1.0, 10.0, 100.0}) {
      const double omega = fundamental_tone(tau, d).omega;
      CHECK(oracle::rayleigh_ritz_tone(tau, d, 40) == doctest::Approx(omega).epsilon(1e-6));
    }
  }
}

TEST_CASE("known values") {
  const BallMode m = fundamental_tone(1.0, 2);
  CHECK(m.a == doctest::Approx(1.245040408782).epsilon(1e-11));
  CHECK(m.omega == doctest::Approx(3.95301505573).epsilon(1e-11));
  CHECK(m.omega > 3.390);
  CHECK(m.omega < 4.0);
}

TEST_CASE("ball mode invariants across the test matrix") {
  for (int d = 2; d <= 7; ++d) {
    for (double tau : {1e-2, 1e-1, 1.0, 10.0, 100.0, 1e3}) {
      const BallMode m = fundamental_tone(tau, d);
      CAPTURE(d);
      CAPTURE(tau);
      CHECK(m.b * m.b - m.a * m.a == doctest::Approx(tau).epsilon(1e-12));
      CHECK(m.omega == doctest::Approx(m.a * m.a * m.b * m.b).epsilon(1e-14));
      CHECK(m.gamma > 0.0);
      CHECK(m.residual_m < 1e-9);
      CHECK(m.residual_v < 1e-9);
      CHECK(m.a > 0.0);
      CHECK(m.a < first_zero_j1prime(d));
      CHECK(std::abs(radial_mode(m, 1.0, 2)) < 1e-9 * (std::abs(m.a * m.a * ultra_j(1, d, m.a, 2)) + 1e-300));
      const ToneBounds bounds = tone_bounds(tau, d);
      CHECK(bounds.lower < m.omega);
      CHECK(m.omega < bounds.upper_coord);
    }
  }
}

TEST_CASE("smallest root is the first sign change of V") {
  for (int d : {2, 3, 6}) {
    for (double tau : {0.05, 2.0, 300.0}) {
      const BallMode m = fundamental_tone(tau, d);
      const double sign = secular_V(m.a * 1e-3, tau, d);
      for (int n = 1; n < 500; ++n) {
        const double a = m.a * (1.0 - 1e-4) * n / 500.0;
        CHECK(secular_V(a, tau, d) * sign > 0.0);
      }
    }
  }
}

TEST_CASE("tone is increasing and concave in tau") {
  std::vector<double> taus, omegas;
  for (int n = 0; n <= 36; ++n) taus.push_back(std::pow(10.0, -2.0 + n / 6.0));
  for (double tau : taus) omegas.push_back(fundamental_tone(tau, 3).omega);
  for (std::size_t i = 1; i < taus.size(); ++i) CHECK(omegas[i] > omegas[i - 1]);
  for (std::size_t i = 2; i < taus.size(); ++i) {
    const double s1 = (omegas[i - 1] - omegas[i - 2]) / (taus[i - 1] - taus[i - 2]);
    const double s2 = (omegas[i] - omegas[i - 1]) / (taus[i] - taus[i - 1]);
    CHECK(s2 < s1);
  }
}

TEST_CASE("scaling law with independent solves at each radius") {
  for (int d : {2, 3}) {
    for (double tau : {0.5, 5.0}) {
      for (double s : {0.5, 2.0}) {
        const double unit = fundamental_tone(tau, d).omega;
        const double scaled = fundamental_tone(tau / (s * s), d, s).omega;
        CHECK(std::abs(unit - std::pow(s, 4) * scaled) / unit < 1e-9);
      }
    }
  }
}

TEST_CASE("regime bounds on a and b") {
  for (int d = 2; d <= 8; ++d) {
    const double tau_c = 9.0 / (d + 5);
    for (int n = 1; n <= 20; ++n) {
      const double tau = tau_c * n / 20.0;
      const BallMode m = fundamental_tone(tau, d);
      CHECK(m.a * m.a < 3.0 * (d + 2) / (d + 5));
      CHECK(m.b * m.b <= 3.0);
    }
    for (double tau : {0.01, 0.3, 2.0, 30.0, 1e3}) {
      const BallMode m = fundamental_tone(tau, d);
      const double x = m.a * m.a;
      CHECK(tau > x * x / (d + 2 - x));
      if (x < d) CHECK(x * x / (d - x) > tau);
    }
  }
}

TEST_CASE("membrane constant and the infinite tension limit") {
  CHECK(membrane_C(2) == doctest::Approx(8.654978432052).epsilon(1e-10));
  const double a2 = std::pow(first_zero_j1prime(2), 2);
  CHECK(a2 == doctest::Approx(3.3899577166718).epsilon(1e-12));
  const std::vector<double> taus{1e2, 1e3, 1e4};
  const auto ratios = infinite_tension_ratio(2, taus);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    CHECK(ratios[i] >= a2);
    CHECK(ratios[i] <= a2 + membrane_C(2) / taus[i]);
  }
  CHECK(ratios[1] < ratios[0]);
  CHECK(ratios[2] < ratios[1]);
  const double a3 = std::pow(first_zero_j1prime(3), 2);
  const double r3 = infinite_tension_ratio(3, {1e5})[0];
  CHECK(r3 - a3 <= membrane_C(3) / 1e5 + 1e-8);
}

TEST_CASE("solver argument checks") {
  CHECK_THROWS_AS(fundamental_tone(-1.0, 2), DomainError);
  CHECK_THROWS_AS(fundamental_tone(0.0, 2), DomainError);
  CHECK_THROWS_AS(fundamental_tone(1.0, 2, -1.0), DomainError);
  CHECK_THROWS_AS(gamma_of(5.0, 1.0, 2), DomainError);
}
