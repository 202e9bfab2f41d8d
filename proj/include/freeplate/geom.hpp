#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "freeplate/domain.hpp"
#include "freeplate/quadrature.hpp"
#include "freeplate/report.hpp"
#include "freeplate/trial.hpp"

namespace freeplate {

enum class QuadratureKind { kRadial, kGrid, kMonteCarlo };

/// kGrid: `samples` cells per axis over the bbox (midpoint rule), error
/// |I_n - I_(n/2)|. kMonteCarlo: `samples` uniform points in the bbox,
/// error = sample standard error. kRadial: 1D adaptive quadrature, only for
/// balls centered at the trial center.
struct QuadratureSpec {
  QuadratureKind kind = QuadratureKind::kGrid;
  std::int64_t samples = 1024;
  std::uint64_t seed = 12345;
  /// Worker threads; 0 uses all hardware threads. Results do not depend on it.
  unsigned threads = 0;
};

/// Grid 1024^2 for d = 2, Monte Carlo with 10^7 samples for d >= 3.
QuadratureSpec default_quadrature(int d);
std::string to_string(QuadratureKind kind);
/// "radial", "grid" or "mc".
QuadratureKind parse_quadrature_kind(const std::string& name);

/// rho, rho', rho/r, rho^2 and N[rho] for one profile, tabulated as cubic
/// B-splines on [0, R] and in closed form on the linear extension.
class RadialTable {
 public:
  explicit RadialTable(const TrialProfile& profile, int intervals = 4096);

  const TrialProfile& profile() const noexcept { return profile_; }
  double rho(double r) const;
  double slope(double r) const;
  double rho_over_r(double r) const;
  double density(double r) const;    ///< rho^2
  double numerator(double r) const;  ///< N[rho]

 private:
  struct Splines;
  TrialProfile profile_;
  std::shared_ptr<const Splines> splines_;
  double edge_value_ = 0.0;
  double edge_slope_ = 0.0;
};

/// Scales the domain to the target volume (default |B_1|). The scale is
/// domain.scale() of the result. Throws DomainError if the volume estimate
/// has relative error >= 1e-4.
Domain normalize_volume(const Domain& domain, double target = 0.0);

struct CenteringResult {
  Eigen::VectorXd offset;
  double residual = 0.0;   ///< |X(v)|
  double tolerance = 0.0;  ///< 1e-6 |Omega| rho(diam)
  int iterations = 0;
  bool bisection = false;
  std::vector<double> trace;  ///< |X| per iteration
};

/// Zero of X(v) = int_Omega rho(|x-v|)/|x-v| (x-v) dx by damped fixed-point
/// iteration (lambda = 0.5, at most 200 steps), then coordinate bisection.
/// The residual is measured with the same quadrature points. Throws
/// SolverError with the residual trace on failure.
CenteringResult center_trial(const Domain& domain, const TrialProfile& profile,
                             const QuadratureSpec& quad);

/// int_Omega f(|x - center|) dx.
IntegralEstimate integrate_radial(const Domain& domain, const std::function<double(double)>& f,
                                  const Eigen::VectorXd& center, const QuadratureSpec& quad);

struct QuotientEstimate {
  double value = 0.0;
  double error = 0.0;
  IntegralEstimate numerator;
  IntegralEstimate denominator;
  Eigen::VectorXd center;
};

/// int_Omega N[rho] / int_Omega rho^2 with rho centered at `center`.
QuotientEstimate quotient_bound(const Domain& domain, const TrialProfile& profile,
                                const QuadratureSpec& quad, const Eigen::VectorXd& center);

/// Solves the ball mode for (tau, d, R) with |B_R| = |Omega|, centers the
/// trial functions and evaluates the quotient.
QuotientEstimate quotient_bound(const Domain& domain, double tau, const QuadratureSpec& quad);

/// int_Omega N <= int_B N and int_Omega rho^2 >= int_B rho^2 for the ball B
/// of the same volume, each beyond three combined error bars. For a ball
/// domain both are equality checks within the same bars.
VerificationReport monotone_domain_comparison(const Domain& domain, const TrialProfile& profile,
                                              const QuadratureSpec& quad,
                                              const Eigen::VectorXd& center);

}  // namespace freeplate
