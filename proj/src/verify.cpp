#include "freeplate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "freeplate/ball.hpp"
#include "freeplate/errors.hpp"
#include "freeplate/specfun.hpp"

namespace freeplate {
namespace {

std::string with_d(const std::string& id, int d) { return id + "@d=" + std::to_string(d); }

std::string uniform_spec(double lo, double hi, int n, const std::string& extra = "") {
  std::string spec = "uniform [" + format_double(lo) + ";" + format_double(hi) +
                     "] n=" + std::to_string(n);
  if (!extra.empty()) spec += " " + extra;
  return spec;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
  }
  out.back() = hi;
  return out;
}

double ainf_squared_2d() {
  const double ainf = first_zero_j1prime(2);
  return ainf * ainf;
}

}  // namespace

double poly_P(double x, int d) { return poly_P_cubic(d)(x); }

Polynomial poly_P_cubic(int d) {
  const double t = d;
  return Polynomial{24 * t * t * t * t + 60 * t * t * t - 120 * t * t - 432 * t,
                    -40 * t * t * t - 119 * t * t - 6 * t + 432,
                    43 * t * t + 113 * t + 54,
                    -15 * t - 30};
}

Polynomial poly_P_undivided(int d) {
  const double t = d;
  const Polynomial first = Polynomial{2 * t, -3} * Polynomial{t, -1} *
                           Polynomial{6 * (t + 4), -5} * Polynomial{3, 1} *
                           Polynomial{t + 2};
  const Polynomial second = Polynomial{2 * t} * Polynomial{6 * t * (t + 4), -24} *
                            Polynomial{3 * (t + 2), -(t + 5)};
  return first - second;
}

double poly_P_interval_end(int d) { return 3.0 * (d + 2) / (d + 5); }

double poly1_g(double d) {
  return (((24 * d - 60) * d - 477) * d - 855) * d - 810;
}

double poly1_g_prime(double d) { return ((96 * d - 180) * d - 954) * d - 855; }

std::vector<CriticalValue> poly_P_critical_values(int d) {
  const Polynomial p = poly_P_cubic(d);
  std::vector<CriticalValue> out;
  for (double x : cubic_critical_points(p, 0.0, poly_P_interval_end(d))) {
    out.push_back({x, p(x)});
  }
  return out;
}

VerificationReport verify_P_nonneg(int d, int grid_size) {
  if (d < 3 || d > 100) throw DomainError("P is checked for 3 <= d <= 100");
  if (grid_size < 2) throw DomainError("grid needs at least two points");
  const Polynomial p = poly_P_cubic(d);
  const double hi = poly_P_interval_end(d);
  MarginTracker tracker;
  for (int i = 0; i <= grid_size; ++i) {
    const double x = hi * i / grid_size;
    tracker.observe(p(x), x);
  }
  std::string crit = "none";
  for (const auto& c : poly_P_critical_values(d)) {
    tracker.observe(c.value, c.x);
    crit = "x=" + format_double(c.x) + " P=" + format_double(c.value);
  }
  const double tolerance = 1e-9 * (1.0 + std::abs(p(0.0)));
  return make_report(with_d("poly1", d), CheckKind::kNonNegative, tracker.worst(),
                     "x=" + format_double(tracker.point()) + " d=" + std::to_string(d),
                     uniform_spec(0.0, hi, grid_size + 1, "+ critical points (" + crit + ")"),
                     tolerance);
}

VerificationReport verify_P_nonneg(int d_lo, int d_hi, int grid_size) {
  std::vector<VerificationReport> parts;
  for (int d = d_lo; d <= d_hi; ++d) parts.push_back(verify_P_nonneg(d, grid_size));
  // Report the smallest margin when everything passes.
  auto worst = std::min_element(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    return a.worst_margin < b.worst_margin;
  });
  if (worst != parts.end() && worst->passed) std::iter_swap(parts.begin(), worst);
  return combine_reports("poly1@d=" + std::to_string(d_lo) + ".." + std::to_string(d_hi),
                         std::move(parts));
}

Polynomial poly_Q_polynomial() {
  const double a2 = ainf_squared_2d();
  const Polynomial first = Polynomial{1.0, -3.0 / (2.0 * a2)} * Polynomial{a2, -1.0} *
                           Polynomial{36.0, -5.0} * Polynomial{12.0, 4.0};
  const Polynomial second = Polynomial{36.0 * a2, 6.0 * a2 - 36.0} * Polynomial{12.0, -7.0};
  return first - second;
}

double poly_Q(double x) { return poly_Q_polynomial()(x); }

Polynomial poly_Q_over_x() { return poly_Q_polynomial().divided_by_x(); }

std::vector<CriticalValue> poly_Q_critical_values() {
  const Polynomial g = poly_Q_over_x();
  std::vector<CriticalValue> out;
  for (double x : cubic_critical_points(g, 0.0, 12.0 / 7.0)) out.push_back({x, g(x)});
  return out;
}

VerificationReport verify_Q_positive(int grid_size) {
  if (grid_size < 2) throw DomainError("grid needs at least two points");
  const Polynomial g = poly_Q_over_x();
  const double hi = 12.0 / 7.0;
  MarginTracker tracker;
  for (int i = 1; i <= grid_size; ++i) {
    const double x = hi * i / grid_size;
    tracker.observe(g(x), x);
  }
  std::string crit = "none";
  for (const auto& c : poly_Q_critical_values()) {
    tracker.observe(c.value, c.x);
    crit = "c=" + format_double(c.x) + " g(c)=" + format_double(c.value);
  }
  return make_report("poly2@d=2", CheckKind::kStrict, tracker.worst(),
                     "x=" + format_double(tracker.point()) + " (" + crit + ")",
                     uniform_spec(hi / grid_size, hi, grid_size, "margin=Q(x)/x + critical points"),
                     0.0);
}

VerificationReport verify_ij_bounds(int d, int grid_size) {
  if (grid_size < 2) throw DomainError("grid needs at least two points");
  const double d1 = series_coeff_dk(1, d);
  const double d2 = series_coeff_dk(2, d);

  const double j_hi = std::sqrt(poly_P_interval_end(d));
  MarginTracker j_margin;
  double j_scale = 0.0;
  for (int i = 0; i <= grid_size; ++i) {
    const double z = j_hi * i / grid_size;
    const double bound = -d1 * z + d2 * z * z * z;
    j_margin.observe(bound - ultra_j(1, d, z, 2), z);
    j_scale = std::max(j_scale, std::abs(bound));
  }

  const double i_hi = std::sqrt(3.0);
  MarginTracker i_margin;
  double i_scale = 0.0;
  for (int i = 0; i <= grid_size; ++i) {
    const double z = i_hi * i / grid_size;
    const double bound = d1 * z + 1.2 * d2 * z * z * z;
    i_margin.observe(bound - ultra_i(1, d, z, 2), z);
    i_scale = std::max(i_scale, std::abs(bound));
  }

  std::vector<VerificationReport> parts;
  parts.push_back(make_report("ijbounds.j1pp", CheckKind::kNonNegative, j_margin.worst(),
                              "z=" + format_double(j_margin.point()),
                              uniform_spec(0.0, j_hi, grid_size + 1), 1e-9 * (1.0 + j_scale)));
  parts.push_back(make_report("ijbounds.i1pp", CheckKind::kNonNegative, i_margin.worst(),
                              "z=" + format_double(i_margin.point()),
                              uniform_spec(0.0, i_hi, grid_size + 1), 1e-9 * (1.0 + i_scale)));
  return combine_reports(with_d("ijbounds", d), std::move(parts));
}

VerificationReport verify_bessel_signs(int d, int grid_size) {
  if (grid_size < 2) throw DomainError("grid needs at least two points");
  const double ainf = first_zero_j1prime(d);
  auto z_at = [&](int i) { return ainf * i / grid_size; };
  const std::string closed = uniform_spec(ainf / grid_size, ainf, grid_size);

  // Item 1: j_l(z)/z^l has the sign of j_l and stays O(1) near the origin.
  MarginTracker item1;
  int item1_l = 1;
  for (int l = 1; l <= 5; ++l) {
    for (int i = 1; i <= grid_size; ++i) {
      const double before = item1.worst();
      item1.observe(ultra_j_scaled(l, d, z_at(i)), z_at(i));
      if (item1.worst() != before || (l == 1 && i == 1)) item1_l = l;
    }
  }
  MarginTracker item2;
  for (int i = 1; i < grid_size; ++i) item2.observe(ultra_j(1, d, z_at(i), 1), z_at(i));
  MarginTracker item3;
  for (int i = 1; i <= grid_size; ++i) item3.observe(ultra_j(2, d, z_at(i), 1) / z_at(i), z_at(i));
  MarginTracker item4;
  for (int i = 1; i <= grid_size; ++i) item4.observe(-ultra_j(1, d, z_at(i), 2) / z_at(i), z_at(i));
  MarginTracker item5;
  for (int i = 1; i <= grid_size; ++i) item5.observe(ultra_j(1, d, z_at(i), 4) / z_at(i), z_at(i));

  auto at_z = [](const MarginTracker& t) { return "z=" + format_double(t.point()); };
  std::vector<VerificationReport> parts;
  parts.push_back(make_report("besselsigns.1_jl_positive", CheckKind::kStrict, item1.worst(),
                              at_z(item1) + " l=" + std::to_string(item1_l),
                              closed + " l=1..5 margin=j_l/z^l", 0.0));
  parts.push_back(make_report("besselsigns.2_j1p_positive", CheckKind::kStrict, item2.worst(),
                              at_z(item2),
                              "uniform open (0;" + format_double(ainf) + ") n=" +
                                  std::to_string(grid_size - 1),
                              0.0));
  parts.push_back(make_report("besselsigns.3_j2p_positive", CheckKind::kStrict, item3.worst(),
                              at_z(item3), closed + " margin=j2'/z", 0.0));
  parts.push_back(make_report("besselsigns.4_j1pp_negative", CheckKind::kStrict, item4.worst(),
                              at_z(item4), closed + " margin=-j1''/z", 0.0));
  parts.push_back(make_report("besselsigns.5_j1pppp_positive", CheckKind::kStrict,
                              item5.worst(), at_z(item5), closed + " margin=j1''''/z", 0.0));
  return combine_reports(with_d("besselsigns", d), std::move(parts));
}

double gamma_star(double a, int d) {
  const double x = a * a;
  return (3.0 * (d + 2) - x * (d + 5)) / ((3.0 + x) * (d + 2));
}

VerificationReport verify_gamma_chain(int d, int taus_per_regime) {
  if (taus_per_regime < 2) throw DomainError("need at least two tau values per regime");
  const double tau_c = 9.0 / (d + 5);
  const auto small = log_grid(1e-4 * tau_c, tau_c, taus_per_regime);
  const auto large = log_grid(tau_c * (1.0 + 1e-3), 1e4, taus_per_regime);
  const std::string small_spec = "log tau in [" + format_double(small.front()) + ";" +
                                 format_double(tau_c) + "] n=" + std::to_string(taus_per_regime);
  const std::string large_spec = "log tau in [" + format_double(large.front()) + ";1e4] n=" +
                                 std::to_string(taus_per_regime);

  MarginTracker gamma_gap, small_cond, a_regime, b_regime, b_upper;
  MarginTracker large_cond, b_lower, tau_lower, tau_upper;
  for (double tau : small) {
    const BallMode m = fundamental_tone(tau, d);
    const double x = m.a * m.a;
    const double b2 = m.b * m.b;
    gamma_gap.observe(m.gamma - gamma_star(m.a, d), tau);
    small_cond.observe(tau - 3.0 * x / (d + 2) + m.gamma * (tau + 3.0 * b2 / (d + 2)), tau);
    a_regime.observe(poly_P_interval_end(d) - x, tau);
    b_regime.observe(3.0 - b2, tau);
    b_upper.observe(d * x / (d - x) - b2, tau);
  }
  for (double tau : large) {
    const BallMode m = fundamental_tone(tau, d);
    large_cond.observe(tau - 3.0 * m.a * m.a / (d + 2), tau);
  }
  for (const auto* grid : {&small, &large}) {
    for (double tau : *grid) {
      const BallMode m = fundamental_tone(tau, d);
      const double x = m.a * m.a;
      b_lower.observe(m.b * m.b - (d + 2) * x / (d + 2 - x), tau);
      tau_lower.observe(tau - x * x / (d + 2 - x), tau);
      if (x < d) tau_upper.observe(x * x / (d - x) - tau, tau);
    }
  }

  auto at_tau = [](const MarginTracker& t) { return "tau=" + format_double(t.point()); };
  const std::string both = small_spec + " + " + large_spec;
  std::vector<VerificationReport> parts;
  parts.push_back(make_report("gammachain.gamma_ge_gammastar", CheckKind::kStrict,
                              gamma_gap.worst(), at_tau(gamma_gap), small_spec, 0.0));
  parts.push_back(make_report("gammachain.smalltau", CheckKind::kStrict, small_cond.worst(),
                              at_tau(small_cond), small_spec, 0.0));
  parts.push_back(make_report("gammachain.largetau", CheckKind::kStrict, large_cond.worst(),
                              at_tau(large_cond), large_spec, 0.0));
  parts.push_back(make_report("gammachain.a2_regime", CheckKind::kStrict, a_regime.worst(),
                              at_tau(a_regime), small_spec + " margin=3(d+2)/(d+5)-a^2", 0.0));
  parts.push_back(make_report("gammachain.b2_le_3", CheckKind::kNonNegative, b_regime.worst(),
                              at_tau(b_regime), small_spec + " margin=3-b^2", 1e-12));
  parts.push_back(make_report("gammachain.bbounds_upper", CheckKind::kStrict, b_upper.worst(),
                              at_tau(b_upper), small_spec, 0.0));
  parts.push_back(make_report("gammachain.bbounds_lower", CheckKind::kStrict, b_lower.worst(),
                              at_tau(b_lower), both, 0.0));
  parts.push_back(make_report("gammachain.abounds_lower", CheckKind::kStrict, tau_lower.worst(),
                              at_tau(tau_lower), both, 0.0));
  parts.push_back(make_report("gammachain.abounds_upper", CheckKind::kStrict, tau_upper.worst(),
                              at_tau(tau_upper), both + " where a^2<d", 0.0));
  return combine_reports(with_d("gammachain", d), std::move(parts));
}

VerificationReport verify_binomial_estimate(int grid_size) {
  if (grid_size < 2) throw DomainError("grid needs at least two points");
  MarginTracker tracker;
  for (int i = 1; i < grid_size; ++i) {
    const double x = static_cast<double>(i) / grid_size;
    tracker.observe(std::pow(1.0 - x, 1.5) - (1.0 - 1.5 * x), x);
  }
  return make_report("binomial32", CheckKind::kStrict, tracker.worst(),
                     "x=" + format_double(tracker.point()),
                     "uniform open (0;1) n=" + std::to_string(grid_size - 1), 0.0);
}

}  // namespace freeplate
