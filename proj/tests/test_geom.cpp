#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "freeplate/ball.hpp"
#include "freeplate/domain.hpp"
#include "freeplate/errors.hpp"
#include "freeplate/geom.hpp"
#include "freeplate/quadrature.hpp"
#include "freeplate/trial.hpp"

using namespace freeplate;
using Eigen::VectorXd;

namespace {

constexpr double kPi = std::numbers::pi;

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

QuadratureSpec grid(std::int64_t n) { return {QuadratureKind::kGrid, n, 12345}; }
QuadratureSpec mc(std::int64_t n, std::uint64_t seed = 12345) { return {QuadratureKind::kMonteCarlo, n, seed}; }
QuadratureSpec radial() { return {QuadratureKind::kRadial, 0, 0}; }

Domain lshape() {
  BoundingBox box{vec({-1.0, -1.0}), vec({1.0, 1.0})};
  return make_implicit(2, "x < 0 || y < 0", box, 3.0);
}

}  // namespace

TEST_CASE("interval quadrature") {
  const auto r = integrate_interval([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(r.error < 1e-12);
}

TEST_CASE("radial integration on balls") {
  for (int d : {2, 3, 4}) {
    const Domain b = make_ball(d, 1.0);
    const VectorXd c = VectorXd::Zero(d);
    const auto one = integrate_radial(b, [](double) { return 1.0; }, c, radial());
    CHECK(one.value == doctest::Approx(unit_ball_volume(d)).epsilon(1e-12));
    const auto r2 = integrate_radial(b, [](double r) { return r * r; }, c, radial());
    CHECK(r2.value == doctest::Approx(unit_ball_volume(d) * d / (d + 2.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(integrate_radial(make_box(vec({1.0, 1.0})), [](double) { return 1.0; },
                                   VectorXd::Zero(2), radial()),
                  DomainError);
}

TEST_CASE("grid integration error bar covers the truth") {
  const Domain b = make_ball(2, 1.0);
  const auto one = integrate_radial(b, [](double) { return 1.0; }, VectorXd::Zero(2), grid(1024));
  CHECK(std::abs(one.value - kPi) < 3 * one.error + 1e-12);
  CHECK(std::abs(one.value - kPi) < 5e-4);
}

TEST_CASE("Monte Carlo and grid agree on an ellipse") {
  const Domain e = normalize_volume(make_ellipsoid(vec({2.0, 0.5})));
  const TrialProfile p(fundamental_tone(1.0, 2));
  auto f = [&](double r) { return std::pow(rho(p, r), 2); };
  const auto g = integrate_radial(e, f, VectorXd::Zero(2), grid(2048));
  const auto m = integrate_radial(e, f, VectorXd::Zero(2), mc(2000000));
  CHECK(std::abs(g.value - m.value) < 3 * (g.error + m.error));
}

TEST_CASE("Monte Carlo is reproducible and independent of the thread count") {
  const Domain e = make_ellipsoid(vec({1.0, 0.5, 0.7}));
  auto f = [](double r) { return std::cos(r); };
  QuadratureSpec one = mc(300000, 99);
  one.threads = 1;
  QuadratureSpec many = mc(300000, 99);
  many.threads = 5;
  const auto a = integrate_radial(e, f, VectorXd::Zero(3), one);
  const auto b = integrate_radial(e, f, VectorXd::Zero(3), many);
  const auto c = integrate_radial(e, f, VectorXd::Zero(3), mc(300000, 99));
  CHECK(a.value == b.value);
  CHECK(a.error == b.error);
  CHECK(a.value == c.value);
  const auto other = integrate_radial(e, f, VectorXd::Zero(3), mc(300000, 100));
  CHECK(other.value != a.value);
}

TEST_CASE("Monte Carlo error shrinks with more samples") {
  const Domain e = make_ellipsoid(vec({1.0, 0.5, 0.7}));
  auto f = [](double r) { return r; };
  const auto small = integrate_radial(e, f, VectorXd::Zero(3), mc(200000));
  const auto large = integrate_radial(e, f, VectorXd::Zero(3), mc(800000));
  CHECK(small.error / large.error > 1.3);
  const auto volume = integrate_radial(e, [](double) { return 1.0; }, VectorXd::Zero(3), mc(800000));
  CHECK(std::abs(volume.value - 0.35 * unit_ball_volume(3)) < 5 * volume.error);
}

TEST_CASE("radial table tracks the profile") {
  for (double tau : {1.0, 100.0}) {
    const TrialProfile p(fundamental_tone(tau, 3));
    const RadialTable t(p);
    for (double r : {0.0, 1e-4, 0.013, 0.4, 0.77, 0.999, 1.0, 1.3, 4.0}) {
      CHECK(std::abs(t.rho(r) - rho(p, r)) <= 1e-8 * std::abs(rho(p, r)) + 1e-15);
      CHECK(std::abs(t.density(r) - rho(p, r) * rho(p, r)) <= 1e-8 * rho(p, r) * rho(p, r) + 1e-15);
      CHECK(t.numerator(r) == doctest::Approx(numerator_integrand(p, r)).epsilon(1e-7));
    }
  }
}

TEST_CASE("centering") {
  const TrialProfile p(fundamental_tone(1.0, 2));
  for (const Domain& d : {make_ellipsoid(vec({2.0, 0.5})), make_box(vec({1.0, 3.0})),
                          make_annulus(2, 0.6, std::sqrt(1.36))}) {
    const auto c = center_trial(normalize_volume(d), p, grid(256));
    CHECK(c.offset.norm() < 1e-10);
    CHECK(c.residual <= c.tolerance);
  }
  const Domain shifted = make_ball(2, 1.0, vec({0.3, 0.0}));
  const auto c = center_trial(shifted, p, grid(512));
  CHECK(c.offset[0] == doctest::Approx(0.3).epsilon(1e-4));
  CHECK(std::abs(c.offset[1]) < 1e-6);

  const Domain l = normalize_volume(lshape());
  const auto lc = center_trial(l, TrialProfile(fundamental_tone(1.0, 2)), mc(1000000));
  CHECK(lc.residual <= lc.tolerance);
  CHECK(lc.offset[0] < -0.05);
  CHECK(lc.offset[0] == doctest::Approx(lc.offset[1]).epsilon(0.05));
}

TEST_CASE("ball quotient reproduces the tone") {
  for (int d : {2, 3}) {
    for (double tau : {0.5, 2.0}) {
      const auto q = quotient_bound(make_ball(d, 1.0), tau, radial());
      CHECK(q.value == doctest::Approx(fundamental_tone(tau, d).omega).epsilon(1e-10));
    }
  }
  const auto g = quotient_bound(make_ball(2, 1.0), 1.0, grid(1024));
  CHECK(std::abs(g.value - fundamental_tone(1.0, 2).omega) < 3 * g.error);
}

TEST_CASE("quotient scaling law") {
  const Domain e = make_ellipsoid(vec({2.0, 0.5}));
  const double s = 1.7;
  const double tau = 1.3;
  const auto base = quotient_bound(e, tau, grid(512));
  const auto scaled = quotient_bound(e.scaled(s), tau / (s * s), grid(512));
  CHECK(scaled.value * std::pow(s, 4) == doctest::Approx(base.value).epsilon(1e-9));
}

TEST_CASE("non-ball domains stay below the ball tone") {
  const double omega = fundamental_tone(1.0, 2).omega;
  for (const Domain& d : {make_ellipsoid(vec({2.0, 0.5})), make_box(vec({1.0, 1.0})),
                          make_annulus(2, 0.6, std::sqrt(1.36))}) {
    const Domain n = normalize_volume(d);
    const auto q = quotient_bound(n, 1.0, grid(1024));
    CHECK(omega - q.value > 5 * q.error);
  }
  const auto q3 = quotient_bound(normalize_volume(make_ellipsoid(vec({1.5, 1.0, 2.0 / 3.0}))), 1.0,
                                 mc(1000000));
  CHECK(fundamental_tone(1.0, 3).omega - q3.value > 5 * q3.error);
}

TEST_CASE("monotone domain comparison") {
  const TrialProfile p(fundamental_tone(1.0, 2));
  const auto ball = monotone_domain_comparison(make_ball(2, 1.0), p, grid(1024), VectorXd::Zero(2));
  CHECK(ball.passed);
  CHECK(ball.lemma_id == "monint@d=2");
  CHECK(ball.checks.size() == 2);
  for (const Domain& d : {make_annulus(2, 0.6, std::sqrt(1.36)), make_ellipsoid(vec({1.5, 2.0 / 3.0}))}) {
    const auto r = monotone_domain_comparison(normalize_volume(d), p, grid(1024), VectorXd::Zero(2));
    CHECK(r.passed);
    CHECK(r.checks[0].kind == CheckKind::kStrict);
  }
}

TEST_CASE("quadrature names") {
  CHECK(parse_quadrature_kind("mc") == QuadratureKind::kMonteCarlo);
  CHECK(parse_quadrature_kind("grid") == QuadratureKind::kGrid);
  CHECK(to_string(QuadratureKind::kRadial) == "radial");
  CHECK_THROWS(parse_quadrature_kind("simpson"));
  CHECK(default_quadrature(2).kind == QuadratureKind::kGrid);
  CHECK(default_quadrature(2).samples == 1024);
  CHECK(default_quadrature(3).kind == QuadratureKind::kMonteCarlo);
  CHECK(default_quadrature(3).samples == 10000000);
}
