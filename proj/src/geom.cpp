#include "freeplate/geom.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "freeplate/errors.hpp"

namespace freeplate {
namespace {

using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

constexpr std::int64_t kChunk = 1 << 16;
constexpr int kCenteringMaxIterations = 200;
constexpr double kCenteringDamping = 0.5;
constexpr double kErrorBars = 3.0;

struct Moments {
  Eigen::VectorXd sum;
  Eigen::MatrixXd cross;
};

Moments pairwise(std::vector<Moments>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  Moments left = pairwise(parts, lo, mid);
  const Moments right = pairwise(parts, mid, hi);
  left.sum += right.sum;
  left.cross += right.cross;
  return left;
}

// Runs chunk(i) for i < count on `threads` threads (0: all hardware threads)
// and reduces with a fixed pairwise tree, so the result does not depend on
// the thread count.
template <class F>
Moments run_chunks(std::int64_t count, unsigned threads, F&& chunk) {
  std::vector<Moments> parts(static_cast<std::size_t>(count));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t i = next++; i < count; i = next++) parts[static_cast<std::size_t>(i)] = chunk(i);
  };
  if (threads == 0) threads = std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return pairwise(parts, 0, parts.size());
}

// G: void(std::span<const double> x, double* out), out has m entries.
template <class G>
Eigen::VectorXd grid_integral(const Domain& domain, std::int64_t n, unsigned threads, int m,
                              const G& g) {
  const int d = domain.dim();
  const BoundingBox box = domain.bbox();
  const Eigen::VectorXd h = (box.hi - box.lo) / static_cast<double>(n);
  const double total = std::pow(static_cast<double>(n), d);
  if (total > 4e9) throw DomainError("grid has too many cells");
  const auto cells = static_cast<std::int64_t>(total);
  const std::int64_t chunks = (cells + kChunk - 1) / kChunk;
  const Moments sums = run_chunks(chunks, threads, [&](std::int64_t c) {
    Moments acc{Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(0, 0)};
    std::array<double, kMaxDomainDim> x{};
    std::vector<double> out(static_cast<std::size_t>(m));
    const std::int64_t end = std::min(cells, (c + 1) * kChunk);
    for (std::int64_t cell = c * kChunk; cell < end; ++cell) {
      std::int64_t rest = cell;
      for (int k = 0; k < d; ++k) {
        x[static_cast<std::size_t>(k)] = box.lo[k] + (static_cast<double>(rest % n) + 0.5) * h[k];
        rest /= n;
      }
      const std::span<const double> xs(x.data(), static_cast<std::size_t>(d));
      if (!domain.contains(xs)) continue;
      g(xs, out.data());
      for (int j = 0; j < m; ++j) acc.sum[j] += out[static_cast<std::size_t>(j)];
    }
    return acc;
  });
  return sums.sum * h.prod();
}

struct MonteCarloResult {
  Eigen::VectorXd value;
  Eigen::MatrixXd covariance;
};

template <class G>
MonteCarloResult mc_integral(const Domain& domain, const QuadratureSpec& quad, int m, const G& g) {
  const std::int64_t samples = quad.samples;
  const std::uint64_t seed = quad.seed;
  if (samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  const int d = domain.dim();
  const BoundingBox box = domain.bbox();
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  const Moments sums = run_chunks(chunks, quad.threads, [&](std::int64_t c) {
    Moments acc{Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m)};
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::array<double, kMaxDomainDim> x{};
    Eigen::VectorXd out(m);
    const std::int64_t count = std::min(samples, (c + 1) * kChunk) - c * kChunk;
    for (std::int64_t i = 0; i < count; ++i) {
      for (int k = 0; k < d; ++k) {
        x[static_cast<std::size_t>(k)] = box.lo[k] + (box.hi[k] - box.lo[k]) * unit(rng);
      }
      const std::span<const double> xs(x.data(), static_cast<std::size_t>(d));
      if (!domain.contains(xs)) continue;
      g(xs, out.data());
      acc.sum += out;
      acc.cross.noalias() += out * out.transpose();
    }
    return acc;
  });
  const double n = static_cast<double>(samples);
  const double vol = box.volume();
  const Eigen::VectorXd mean = sums.sum / n;
  const Eigen::MatrixXd cov = (sums.cross / n - mean * mean.transpose()) * (n / (n - 1.0));
  return {vol * mean, vol * vol * cov / n};
}

void check_center(const Domain& domain, const Eigen::VectorXd& center) {
  if (center.size() != domain.dim()) throw DomainError("center has the wrong dimension");
}

BallInfo centered_ball(const Domain& domain, const Eigen::VectorXd& center) {
  const auto ball = domain.ball();
  if (!ball) throw DomainError("radial quadrature needs a ball domain");
  if ((ball->center - center).norm() > 1e-12 * (1.0 + ball->radius)) {
    throw DomainError("radial quadrature needs the ball centered at the trial center");
  }
  return *ball;
}

double radial_weight(int d, double r) { return d * unit_ball_volume(d) * std::pow(r, d - 1); }

IntegralEstimate radial_integral(int d, double radius, const std::function<double(double)>& f) {
  const IntegralEstimate e = integrate_interval(
      [&](double r) { return f(r) * radial_weight(d, r); }, 0.0, radius, 1e-12);
  return e;
}

double distance(std::span<const double> x, const Eigen::VectorXd& c) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double t = x[static_cast<std::size_t>(k)] - c[k];
    s += t * t;
  }
  return std::sqrt(s);
}

std::int64_t grid_cells(const QuadratureSpec& quad) {
  if (quad.samples < 4) throw DomainError("grid quadrature needs at least 4 cells per axis");
  return quad.samples;
}

}  // namespace

QuadratureSpec default_quadrature(int d) {
  if (d == 2) return {QuadratureKind::kGrid, 1024, 12345};
  return {QuadratureKind::kMonteCarlo, 10000000, 12345};
}

std::string to_string(QuadratureKind kind) {
  switch (kind) {
    case QuadratureKind::kRadial: return "radial";
    case QuadratureKind::kGrid: return "grid";
    case QuadratureKind::kMonteCarlo: return "mc";
  }
  return "?";
}

QuadratureKind parse_quadrature_kind(const std::string& name) {
  if (name == "radial") return QuadratureKind::kRadial;
  if (name == "grid") return QuadratureKind::kGrid;
  if (name == "mc") return QuadratureKind::kMonteCarlo;
  throw DomainError("unknown quadrature '" + name + "' (radial, grid, mc)");
}

struct RadialTable::Splines {
  Spline rho;
  Spline slope;
  Spline over_r;
  Spline numerator;
};

RadialTable::RadialTable(const TrialProfile& profile, int intervals) : profile_(profile) {
  if (intervals < 16) throw DomainError("radial table needs at least 16 intervals");
  const double radius = profile.mode.radius;
  const double h = radius / intervals;
  std::vector<double> v(static_cast<std::size_t>(intervals) + 1), s(v.size()), q(v.size()), n(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = std::min(radius, static_cast<double>(i) * h);
    v[i] = freeplate::rho(profile, r);
    s[i] = freeplate::rho(profile, r, 1);
    q[i] = freeplate::rho_over_r(profile, r);
    n[i] = numerator_integrand(profile, r);
  }
  // rho is odd in r and N, rho/r are even, which fixes the slopes at 0.
  auto numerator_slope = [&](double r) {
    const double e = 1e-5 * radius;
    return (numerator_integrand(profile, r - 2 * e) - 8 * numerator_integrand(profile, r - e) +
            8 * numerator_integrand(profile, r + e) - numerator_integrand(profile, r + 2 * e)) /
           (12 * e);
  };
  const double rr = radius * (1.0 - 1e-4);
  splines_ = std::make_shared<const Splines>(Splines{
      Spline(v.data(), v.size(), 0.0, h, freeplate::rho(profile, 0.0, 1), freeplate::rho(profile, radius, 1)),
      Spline(s.data(), s.size(), 0.0, h, 0.0, freeplate::rho(profile, radius, 2)),
      Spline(q.data(), q.size(), 0.0, h, 0.0, -shear_term(profile, radius)),
      Spline(n.data(), n.size(), 0.0, h, 0.0, numerator_slope(rr))});
  edge_value_ = freeplate::rho(profile, radius);
  edge_slope_ = freeplate::rho(profile, radius, 1);
}

double RadialTable::rho(double r) const {
  const double radius = profile_.mode.radius;
  return r <= radius ? splines_->rho(r) : edge_value_ + (r - radius) * edge_slope_;
}

double RadialTable::slope(double r) const {
  return r <= profile_.mode.radius ? splines_->slope(r) : edge_slope_;
}

double RadialTable::rho_over_r(double r) const {
  return r <= profile_.mode.radius ? splines_->over_r(r) : rho(r) / r;
}

double RadialTable::density(double r) const {
  const double v = rho(r);
  return v * v;
}

double RadialTable::numerator(double r) const {
  const double radius = profile_.mode.radius;
  if (r <= radius) return splines_->numerator(r);
  const int d = profile_.mode.d;
  const double shear = (edge_value_ - radius * edge_slope_) / (r * r);
  const double over_r = rho(r) / r;
  return 3.0 * (d - 1) * shear * shear +
         profile_.mode.tau * (edge_slope_ * edge_slope_ + (d - 1) * over_r * over_r);
}

Domain normalize_volume(const Domain& domain, double target) {
  if (target <= 0.0) target = unit_ball_volume(domain.dim());
  const VolumeEstimate v = domain.volume();
  if (!(v.value > 0.0)) throw DomainError("domain volume must be positive");
  if (!v.exact && !(v.error < 1e-4 * v.value)) {
    std::ostringstream msg;
    msg << "volume estimate too noisy to normalize: " << format_double(v.value) << " +- "
        << format_double(v.error);
    throw DomainError(msg.str());
  }
  return domain.scaled(std::pow(target / v.value, 1.0 / domain.dim()));
}

IntegralEstimate integrate_radial(const Domain& domain, const std::function<double(double)>& f,
                                  const Eigen::VectorXd& center, const QuadratureSpec& quad) {
  check_center(domain, center);
  auto g = [&](std::span<const double> x, double* out) { out[0] = f(distance(x, center)); };
  switch (quad.kind) {
    case QuadratureKind::kRadial:
      return radial_integral(domain.dim(), centered_ball(domain, center).radius, f);
    case QuadratureKind::kGrid: {
      const std::int64_t n = grid_cells(quad);
      const double fine = grid_integral(domain, n, quad.threads, 1, g)[0];
      const double coarse = grid_integral(domain, n / 2, quad.threads, 1, g)[0];
      return {fine, std::abs(fine - coarse)};
    }
    case QuadratureKind::kMonteCarlo: {
      const MonteCarloResult mc = mc_integral(domain, quad, 1, g);
      return {mc.value[0], std::sqrt(mc.covariance(0, 0))};
    }
  }
  throw DomainError("unknown quadrature kind");
}

CenteringResult center_trial(const Domain& domain, const TrialProfile& profile,
                             const QuadratureSpec& quad) {
  const int d = domain.dim();
  if (profile.mode.d != d) throw DomainError("profile and domain dimensions differ");
  CenteringResult result;
  if (quad.kind == QuadratureKind::kRadial) {
    const auto ball = domain.ball();
    if (!ball) throw DomainError("radial quadrature needs a ball domain");
    result.offset = ball->center;
    return result;
  }

  const RadialTable table(profile);
  const BoundingBox box = domain.bbox();
  result.tolerance = 1e-6 * domain.volume().value * std::abs(table.rho(box.diameter()));

  // Components 0..d-1: X(v); component d: the mean radial derivative of X,
  // used as the step scale.
  auto field = [&](const Eigen::VectorXd& v) {
    auto g = [&](std::span<const double> x, double* out) {
      const double r = distance(x, v);
      const double q = table.rho_over_r(r);
      for (int k = 0; k < d; ++k) out[k] = q * (x[static_cast<std::size_t>(k)] - v[k]);
      out[d] = (table.slope(r) + (d - 1) * q) / d;
    };
    if (quad.kind == QuadratureKind::kGrid) return grid_integral(domain, grid_cells(quad), quad.threads, d + 1, g);
    return mc_integral(domain, quad, d + 1, g).value;
  };

  Eigen::VectorXd v = box.center();
  for (int it = 0; it < kCenteringMaxIterations; ++it) {
    const Eigen::VectorXd f = field(v);
    const double residual = f.head(d).norm();
    result.trace.push_back(residual);
    result.iterations = it + 1;
    if (residual <= result.tolerance) {
      result.offset = v;
      result.residual = residual;
      return result;
    }
    if (!(f[d] > 0.0)) break;
    v += kCenteringDamping * f.head(d) / f[d];
  }

  // Coordinate bisection: X_k is decreasing in v_k and changes sign across the bbox.
  result.bisection = true;
  v = box.center();
  for (int sweep = 0; sweep < 20; ++sweep) {
    for (int k = 0; k < d; ++k) {
      auto component = [&](double t) {
        Eigen::VectorXd w = v;
        w[k] = t;
        return field(w)[k];
      };
      const double flo = component(box.lo[k]);
      const double fhi = component(box.hi[k]);
      if (flo * fhi > 0.0) continue;
      std::uintmax_t max_iter = 100;
      const auto bracket = boost::math::tools::toms748_solve(
          component, box.lo[k], box.hi[k], flo, fhi, boost::math::tools::eps_tolerance<double>(40),
          max_iter);
      v[k] = 0.5 * (bracket.first + bracket.second);
    }
    const double residual = field(v).head(d).norm();
    result.trace.push_back(residual);
    if (residual <= result.tolerance) {
      result.offset = v;
      result.residual = residual;
      return result;
    }
  }

  std::ostringstream trace;
  trace << "centering residuals (tolerance " << format_double(result.tolerance) << "):";
  for (double r : result.trace) trace << ' ' << format_double(r);
  throw SolverError("centering did not converge for domain '" + domain.name() + "'", trace.str());
}

QuotientEstimate quotient_bound(const Domain& domain, const TrialProfile& profile,
                                const QuadratureSpec& quad, const Eigen::VectorXd& center) {
  check_center(domain, center);
  const int d = domain.dim();
  if (profile.mode.d != d) throw DomainError("profile and domain dimensions differ");
  QuotientEstimate q;
  q.center = center;

  if (quad.kind == QuadratureKind::kRadial) {
    const double radius = centered_ball(domain, center).radius;
    q.numerator = radial_integral(d, radius, [&](double r) { return numerator_integrand(profile, r); });
    q.denominator = radial_integral(d, radius, [&](double r) {
      const double v = rho(profile, r);
      return v * v;
    });
    q.value = q.numerator.value / q.denominator.value;
    q.error = std::abs(q.value) * (q.numerator.error / std::abs(q.numerator.value) +
                                   q.denominator.error / std::abs(q.denominator.value));
    return q;
  }

  const RadialTable table(profile);
  auto g = [&](std::span<const double> x, double* out) {
    const double r = distance(x, center);
    out[0] = table.numerator(r);
    out[1] = table.density(r);
  };
  if (quad.kind == QuadratureKind::kGrid) {
    const std::int64_t n = grid_cells(quad);
    const Eigen::VectorXd fine = grid_integral(domain, n, quad.threads, 2, g);
    const Eigen::VectorXd coarse = grid_integral(domain, n / 2, quad.threads, 2, g);
    q.numerator = {fine[0], std::abs(fine[0] - coarse[0])};
    q.denominator = {fine[1], std::abs(fine[1] - coarse[1])};
    q.value = fine[0] / fine[1];
    q.error = std::abs(q.value - coarse[0] / coarse[1]);
    return q;
  }
  const MonteCarloResult mc = mc_integral(domain, quad, 2, g);
  const Eigen::MatrixXd& c = mc.covariance;
  q.numerator = {mc.value[0], std::sqrt(c(0, 0))};
  q.denominator = {mc.value[1], std::sqrt(c(1, 1))};
  q.value = mc.value[0] / mc.value[1];
  // Delta method for the ratio of two correlated means.
  const double var = (c(0, 0) - 2.0 * q.value * c(0, 1) + q.value * q.value * c(1, 1)) /
                     (mc.value[1] * mc.value[1]);
  q.error = std::sqrt(std::max(0.0, var));
  return q;
}

QuotientEstimate quotient_bound(const Domain& domain, double tau, const QuadratureSpec& quad) {
  const int d = domain.dim();
  const double radius = std::pow(domain.volume().value / unit_ball_volume(d), 1.0 / d);
  const TrialProfile profile(fundamental_tone(tau, d, radius));
  const CenteringResult centering = center_trial(domain, profile, quad);
  return quotient_bound(domain, profile, quad, centering.offset);
}

VerificationReport monotone_domain_comparison(const Domain& domain, const TrialProfile& profile,
                                              const QuadratureSpec& quad,
                                              const Eigen::VectorXd& center) {
  check_center(domain, center);
  const int d = domain.dim();
  const double radius = profile.mode.radius;
  const double ball_volume = unit_ball_volume(d) * std::pow(radius, d);
  if (std::abs(domain.volume().value - ball_volume) > 1e-4 * ball_volume) {
    throw DomainError("domain volume differs from the profile's ball volume");
  }
  const QuotientEstimate omega = quotient_bound(domain, profile, quad, center);
  const IntegralEstimate ref_num =
      radial_integral(d, radius, [&](double r) { return numerator_integrand(profile, r); });
  const IntegralEstimate ref_den = radial_integral(d, radius, [&](double r) {
    const double v = rho(profile, r);
    return v * v;
  });

  const bool same = domain.ball().has_value();
  const CheckKind kind = same ? CheckKind::kEquality : CheckKind::kStrict;
  const std::string grid = to_string(quad.kind) + " samples=" + std::to_string(quad.samples) +
                           " seed=" + std::to_string(quad.seed) + " vs radial ball";
  const std::string where = domain.name() + " center=(" + [&] {
    std::string s;
    for (int k = 0; k < d; ++k) s += (k ? ";" : "") + format_double(center[k]);
    return s;
  }() + ")";

  std::vector<VerificationReport> parts;
  parts.push_back(make_report("monint.numerator", kind, ref_num.value - omega.numerator.value,
                              where, grid + " margin=int_B N - int_Omega N",
                              kErrorBars * (omega.numerator.error + ref_num.error)));
  parts.push_back(make_report("monint.denominator", kind, omega.denominator.value - ref_den.value,
                              where, grid + " margin=int_Omega rho^2 - int_B rho^2",
                              kErrorBars * (omega.denominator.error + ref_den.error)));
  return combine_reports("monint@d=" + std::to_string(d), std::move(parts));
}

}  // namespace freeplate
