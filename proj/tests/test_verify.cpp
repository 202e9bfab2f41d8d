#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "freeplate/errors.hpp"
#include "freeplate/specfun.hpp"
#include "freeplate/verify.hpp"

using namespace freeplate;

namespace {

std::int64_t p_exact(std::int64_t x, std::int64_t d) {
  return 24 * d * d * d * d + 60 * d * d * d - 120 * d * d - 432 * d - 40 * d * d * d * x -
         119 * d * d * x - 6 * d * x + 432 * x + 43 * d * d * x * x + 113 * d * x * x +
         54 * x * x - 15 * d * x * x * x - 30 * x * x * x;
}

double q_direct(double x) {
  const double a2 = std::pow(first_zero_j1prime(2), 2);
  return (1 - 3 * x / (2 * a2)) * (a2 - x) * (36 - 5 * x) * (12 + 4 * x) -
         (36 * a2 + (6 * a2 - 36) * x) * (12 - 7 * x);
}

}  // namespace

TEST_CASE("P is exact at small integers") {
  for (int d = 3; d <= 30; ++d) {
    for (int x = 0; x <= 3; ++x) {
      CHECK(poly_P(x, d) == static_cast<double>(p_exact(x, d)));
    }
  }
}

TEST_CASE("undivided form equals x P") {
  for (int d = 3; d <= 12; ++d) {
    const Polynomial u = poly_P_undivided(d);
    CHECK(u.coeff(0) == 0.0);
    const Polynomial p = poly_P_cubic(d);
    for (double x : {0.25, 0.5, 1.0, 1.7, 2.4}) {
      CHECK(u(x) == doctest::Approx(x * p(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("g and its derivative") {
  CHECK(poly1_g(7) == 6876.0);
  CHECK(poly1_g_prime(5) == 1875.0);
  CHECK(poly1_g(6) < 0.0);
  for (int d = 5; d <= 40; ++d) CHECK(poly1_g_prime(d) > 0.0);
  // g is a lower bound for P on [0, 3] once it is positive.
  for (int d = 7; d <= 20; ++d) {
    for (int n = 0; n <= 300; ++n) {
      const double x = 3.0 * n / 300;
      CHECK(poly_P(x, d) >= poly1_g(d));
    }
  }
}

TEST_CASE("P stays nonnegative on its interval") {
  for (int d = 3; d <= 30; ++d) {
    const auto report = verify_P_nonneg(d);
    CAPTURE(d);
    CHECK(report.passed);
    CHECK(report.lemma_id == "poly1@d=" + std::to_string(d));
  }
  CHECK(verify_P_nonneg(3, 30, 2000).passed);
  CHECK(verify_P_nonneg(3, 30, 2000).lemma_id == "poly1@d=3..30");
}

TEST_CASE("P at d = 4 decreases on the interval and stays positive at the end") {
  const Polynomial p = poly_P_cubic(4);
  const Polynomial dp = p.derivative();
  const double hi = poly_P_interval_end(4);
  for (int n = 0; n <= 1000; ++n) CHECK(dp(hi * n / 1000) < 0.0);
  CHECK(p(hi) > 0.0);
  CHECK(poly_P_critical_values(4).empty());
}

TEST_CASE("P at d = 3 has an interior minimum") {
  const auto crit = poly_P_critical_values(3);
  REQUIRE(crit.size() == 1);
  CHECK(crit[0].x == doctest::Approx(1.3936).epsilon(1e-4));
  CHECK(crit[0].value == doctest::Approx(79.18).epsilon(1e-4));
  CHECK(poly_P_cubic(3).derivative()(crit[0].x) == doctest::Approx(0.0).scale(1e3));
}

TEST_CASE("Q and its critical value") {
  for (double x : {0.0, 0.3, 1.0, 1.5, 12.0 / 7.0}) {
    CHECK(poly_Q(x) == doctest::Approx(q_direct(x)).epsilon(1e-12).scale(1.0));
  }
  CHECK(std::abs(poly_Q(0.0)) < 1e-9);
  const auto crit = poly_Q_critical_values();
  REQUIRE(crit.size() == 1);
  CHECK(crit[0].x == doctest::Approx(1.4428).epsilon(1e-4));
  CHECK(crit[0].value == doctest::Approx(118.65).epsilon(1e-4));
  const auto report = verify_Q_positive();
  CHECK(report.passed);
  CHECK(report.lemma_id == "poly2@d=2");
}

TEST_CASE("gamma star examples") {
  CHECK(gamma_star(0.0, 2) == doctest::Approx(1.0));
  CHECK(gamma_star(std::sqrt(12.0 / 7.0), 2) == doctest::Approx(0.0).scale(1.0));
  CHECK(gamma_star(1.0, 3) == doctest::Approx((15.0 - 8.0) / 20.0));
}

TEST_CASE("grid lemmas pass for d = 2..6") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const auto signs = verify_bessel_signs(d);
    CHECK(signs.passed);
    CHECK(signs.checks.size() == 5);
    const auto bounds = verify_ij_bounds(d);
    CHECK(bounds.passed);
    CHECK(bounds.checks.size() == 2);
    const auto chain = verify_gamma_chain(d, 24);
    CHECK(chain.passed);
    CHECK(chain.checks.size() == 9);
    CHECK(chain.lemma_id == "gammachain@d=" + std::to_string(d));
  }
  CHECK(verify_binomial_estimate().passed);
}

TEST_CASE("reports are deterministic") {
  const auto a = verify_ij_bounds(3, 5000);
  const auto b = verify_ij_bounds(3, 5000);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.worst_point == b.worst_point);
  CHECK(a.grid_spec == b.grid_spec);
}

TEST_CASE("verify argument checks") {
  CHECK_THROWS_AS(verify_P_nonneg(2), DomainError);
  CHECK_THROWS_AS(verify_Q_positive(1), DomainError);
  CHECK_THROWS_AS(verify_binomial_estimate(1), DomainError);
}
