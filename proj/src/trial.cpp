#include "freeplate/trial.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "freeplate/errors.hpp"
#include "freeplate/specfun.hpp"

namespace freeplate {
namespace {

constexpr double kOuterGap = 1e-9;

std::string at_r(double r) { return "r=" + format_double(r); }

std::vector<double> inner_points(double radius, int n) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = radius * (i + 1) / (n + 1.0);
  return r;
}

std::vector<double> outer_points(double radius, int n, double r_max) {
  std::vector<double> r(static_cast<std::size_t>(n));
  const double lo = radius * (1.0 + kOuterGap);
  for (int i = 0; i < n; ++i) {
    r[static_cast<std::size_t>(i)] = lo + (r_max - lo) * i / std::max(1, n - 1);
  }
  return r;
}

std::string inner_spec(double radius, int n) {
  return "inner uniform (0;" + format_double(radius) + ") n=" + std::to_string(n);
}

std::string outer_spec(double radius, int n, double r_max) {
  return "outer uniform [" + format_double(radius) + "(1+1e-9);" +
         format_double(r_max) + "] n=" + std::to_string(n);
}

void check_grids(const TrialProfile& p, int inner, int outer, double r_max) {
  if (inner < 2 || outer < 2) throw DomainError("grids need at least two points");
  if (r_max < 3.0 * p.mode.radius) throw DomainError("r_max must be >= 3R");
}

// Largest strict decrease violation of f along an increasing grid:
// min_i f(r_i) - f(r_{i+1}).
template <class F>
MarginTracker decrease_margin(const std::vector<double>& grid, F&& f) {
  MarginTracker tracker;
  double prev = f(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double next = f(grid[i]);
    tracker.observe(prev - next, grid[i]);
    prev = next;
  }
  return tracker;
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

double rho(const TrialProfile& profile, double r, int deriv) {
  if (deriv < 0 || deriv > 2) throw DomainError("rho derivative must be 0..2");
  if (!(r >= 0.0)) throw DomainError("radius must be >= 0");
  const BallMode& m = profile.mode;
  if (r <= m.radius) return radial_mode(m, r, deriv);
  switch (deriv) {
    case 0:
      return radial_mode(m, m.radius) + (r - m.radius) * radial_mode(m, m.radius, 1);
    case 1:
      return radial_mode(m, m.radius, 1);
    default:
      return 0.0;
  }
}

double rho_over_r(const TrialProfile& profile, double r) {
  const BallMode& m = profile.mode;
  if (r < profile.small_r_threshold && r <= m.radius) {
    return m.a * ultra_j_scaled(1, m.d, m.a * r) +
           m.gamma * m.b * ultra_i_scaled(1, m.d, m.b * r);
  }
  return rho(profile, r) / r;
}

double shear_term(const TrialProfile& profile, double r) {
  const BallMode& m = profile.mode;
  if (r > m.radius) {
    return (radial_mode(m, m.radius) - m.radius * radial_mode(m, m.radius, 1)) / (r * r);
  }
  // rho - r rho' = a r j_2(a r) - gamma b r i_2(b r) by the derivative recurrences.
  if (r < profile.small_r_threshold) {
    return r * (std::pow(m.a, 3) * ultra_j_scaled(2, m.d, m.a * r) -
                m.gamma * std::pow(m.b, 3) * ultra_i_scaled(2, m.d, m.b * r));
  }
  return (m.a * ultra_j(2, m.d, m.a * r) - m.gamma * m.b * ultra_i(2, m.d, m.b * r)) / r;
}

TrialSums trial_sums(const TrialProfile& profile, double r) {
  const int d = profile.mode.d;
  const double value = rho(profile, r);
  const double slope = rho(profile, r, 1);
  const double curvature = rho(profile, r, 2);
  const double over_r = rho_over_r(profile, r);
  const double shear = shear_term(profile, r);
  TrialSums sums;
  sums.value = value * value;
  sums.gradient = (d - 1) * over_r * over_r + slope * slope;
  sums.hessian = curvature * curvature + 3.0 * (d - 1) * shear * shear;
  return sums;
}

double numerator_integrand(const TrialProfile& profile, double r) {
  const TrialSums sums = trial_sums(profile, r);
  return sums.hessian + profile.mode.tau * sums.gradient;
}

VerificationReport concavity_scan(const TrialProfile& profile, int grid_size) {
  if (grid_size < 1000) throw DomainError("concavity scan needs >= 1000 points");
  const BallMode& m = profile.mode;
  const auto grid = inner_points(m.radius, grid_size);
  const std::string spec = inner_spec(m.radius, grid_size);

  MarginTracker interior;
  for (double r : grid) interior.observe(-rho(profile, r, 2), r);

  // Endpoint values relative to the size of the two Bessel contributions.
  const double scale = m.a * m.a * std::abs(ultra_j(1, m.d, m.a * m.radius, 2)) +
                       m.gamma * m.b * m.b * std::abs(ultra_i(1, m.d, m.b * m.radius, 2));
  const double at_zero = rho(profile, 0.0, 2) / scale;
  const double at_edge = radial_mode(m, m.radius, 2) / scale;
  const bool edge_worse = std::abs(at_edge) > std::abs(at_zero);

  MarginTracker fourth;
  for (double r : grid) fourth.observe(radial_mode(m, r, 4), r);
  fourth.observe(radial_mode(m, m.radius, 4), m.radius);

  std::vector<VerificationReport> parts;
  parts.push_back(make_report("gppneg.interior", CheckKind::kStrict, interior.worst(),
                              at_r(interior.point()), spec + " margin=-rho''", 0.0));
  parts.push_back(make_report("gppneg.endpoints", CheckKind::kEquality,
                              edge_worse ? at_edge : at_zero,
                              at_r(edge_worse ? m.radius : 0.0),
                              "r in {0;R} relative to term scale", 1e-10));
  parts.push_back(make_report("gppneg.fourth_derivative", CheckKind::kStrict,
                              fourth.worst(), at_r(fourth.point()),
                              spec + " plus r=R; margin=R''''", 0.0));
  return combine_reports("gppneg", std::move(parts));
}

VerificationReport partial_monotonicity_scan(const TrialProfile& profile,
                                             int inner_grid, int outer_grid,
                                             double r_max) {
  check_grids(profile, inner_grid, outer_grid, r_max);
  const BallMode& m = profile.mode;
  const auto inner = inner_points(m.radius, inner_grid);
  const auto outer = outer_points(m.radius, outer_grid, r_max);
  const auto all = merged(inner, outer);
  const std::string spec = inner_spec(m.radius, inner_grid) + " + " +
                           outer_spec(m.radius, outer_grid, r_max);

  double inner_min = 0.0, inner_at = 0.0, outer_max = 0.0, outer_at = 0.0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const double n = numerator_integrand(profile, inner[i]);
    if (i == 0 || n < inner_min) { inner_min = n; inner_at = inner[i]; }
  }
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double n = numerator_integrand(profile, outer[i]);
    if (i == 0 || n > outer_max) { outer_max = n; outer_at = outer[i]; }
  }

  MarginTracker curvature_inside;
  for (double r : inner) {
    const double c = rho(profile, r, 2);
    curvature_inside.observe(c * c, r);
  }
  double curvature_outside = 0.0;
  double curvature_outside_at = outer.front();
  for (double r : outer) {
    const double c = rho(profile, r, 2);
    if (c * c > curvature_outside) { curvature_outside = c * c; curvature_outside_at = r; }
  }

  auto tension = [&](double r) {
    const double s = rho(profile, r, 1);
    return m.tau * s * s;
  };
  const MarginTracker tension_drop = decrease_margin(all, tension);
  const double tension_tol = 1e-12 * (1.0 + tension(0.0));

  auto h = [&](double r) {
    const double shear = shear_term(profile, r);
    const double over_r = rho_over_r(profile, r);
    return 3.0 * shear * shear + m.tau * over_r * over_r;
  };
  const MarginTracker h_drop = decrease_margin(all, h);

  std::vector<VerificationReport> parts;
  parts.push_back(make_report(
      "monnum.inside_vs_outside", CheckKind::kStrict, inner_min - outer_max,
      "inner r=" + format_double(inner_at) + " outer r=" + format_double(outer_at),
      spec + " margin=min_in N - max_out N", 0.0));
  parts.push_back(make_report("monnum.curvature_inside", CheckKind::kStrict,
                              curvature_inside.worst(), at_r(curvature_inside.point()),
                              inner_spec(m.radius, inner_grid) + " margin=rho''^2", 0.0));
  parts.push_back(make_report("monnum.curvature_outside", CheckKind::kEquality,
                              curvature_outside, at_r(curvature_outside_at),
                              outer_spec(m.radius, outer_grid, r_max), 0.0));
  parts.push_back(make_report("monnum.tension_nonincreasing", CheckKind::kNonNegative,
                              tension_drop.worst(), at_r(tension_drop.point()),
                              spec + " margin=min step decrease of tau rho'^2",
                              tension_tol));
  parts.push_back(make_report("monnum.h_decreasing", CheckKind::kStrict, h_drop.worst(),
                              at_r(h_drop.point()),
                              spec + " margin=min step decrease of h", 0.0));
  return combine_reports("monnum", std::move(parts));
}

VerificationReport denominator_monotonicity_scan(const TrialProfile& profile,
                                                 int inner_grid, int outer_grid,
                                                 double r_max) {
  check_grids(profile, inner_grid, outer_grid, r_max);
  const BallMode& m = profile.mode;
  const auto inner = inner_points(m.radius, inner_grid);
  const auto outer = outer_points(m.radius, outer_grid, r_max);
  const std::string spec = inner_spec(m.radius, inner_grid) + " + " +
                           outer_spec(m.radius, outer_grid, r_max);
  auto square = [&](double r) {
    const double v = rho(profile, r);
    return v * v;
  };
  const MarginTracker rise =
      decrease_margin(merged(inner, outer), [&](double r) { return -square(r); });
  const double gap = square(outer.front()) - square(inner.back());

  std::vector<VerificationReport> parts;
  parts.push_back(make_report("mondenom.increasing", CheckKind::kStrict, rise.worst(),
                              at_r(rise.point()), spec + " margin=min step increase", 0.0));
  parts.push_back(make_report("mondenom.inside_below_outside", CheckKind::kStrict, gap,
                              at_r(m.radius), spec + " margin=min_out - max_in", 0.0));
  return combine_reports("mondenom", std::move(parts));
}

VerificationReport quantinterest_scan(const TrialProfile& profile, int grid_size) {
  if (grid_size < 2) throw DomainError("grid needs at least two points");
  const BallMode& m = profile.mode;
  MarginTracker tracker;
  for (int i = 1; i <= grid_size; ++i) {
    const double r = m.radius * i / grid_size;
    const double q = 6.0 * shear_term(profile, r) + 3.0 * rho(profile, r, 2) +
                     m.tau * rho(profile, r);
    tracker.observe(q / r, r);
  }
  return make_report("quantinterest", CheckKind::kStrict, tracker.worst(),
                     at_r(tracker.point()),
                     "uniform (0;" + format_double(m.radius) + "] n=" +
                         std::to_string(grid_size) + " margin=q(r)/r",
                     0.0);
}

}  // namespace freeplate
