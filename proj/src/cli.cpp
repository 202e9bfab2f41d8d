#include "freeplate/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "freeplate/ball.hpp"
#include "freeplate/domain_config.hpp"
#include "freeplate/errors.hpp"
#include "freeplate/geom.hpp"
#include "freeplate/report.hpp"
#include "freeplate/trial.hpp"
#include "freeplate/verify.hpp"

namespace freeplate::cli {
namespace {

struct RunConfig {
  int dim = 2;
  double tau = 1.0;
  double radius = 1.0;
  double tau_min = 0.01;
  double tau_max = 100.0;
  int tau_steps = 50;
  bool log_spacing = false;
  std::vector<int> dims{2, 3, 4, 5};
  std::string domain;
  std::string quad;
  std::int64_t samples = 0;
  std::uint64_t seed = 12345;
  std::string out;
  std::optional<double> tol;
};

// Trial-scan tensions used by `verify`.
const std::vector<double> kVerifyTaus{0.1, 1.0, 10.0};

void require_positive_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
}

void require_dim(int d) {
  if (d < 2 || d > 30) throw DomainError("dimension must be in [2, 30]");
}

// Writes to --out when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_tone(const RunConfig& cfg, std::ostream& out) {
  require_positive_tau(cfg.tau);
  require_dim(cfg.dim);
  if (!(cfg.radius > 0.0)) throw DomainError("radius must be positive");
  const BallMode m = fundamental_tone(cfg.tau, cfg.dim, cfg.radius);
  const double tol = cfg.tol.value_or(1e-9);
  if (m.residual_m > tol || m.residual_v > tol) {
    throw SolverError("boundary residuals above " + format_double(tol),
                      "residual_m=" + format_double(m.residual_m) +
                          " residual_v=" + format_double(m.residual_v));
  }
  Sink sink(cfg.out, out);
  *sink << "d,tau,radius,a,b,gamma,omega,residual_m,residual_v\n"
        << m.d << ',' << format_double(m.tau) << ',' << format_double(m.radius) << ','
        << format_double(m.a) << ',' << format_double(m.b) << ',' << format_double(m.gamma) << ','
        << format_double(m.omega) << ',' << format_double(m.residual_m) << ','
        << format_double(m.residual_v) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_dim(cfg.dim);
  require_positive_tau(cfg.tau_min);
  require_positive_tau(cfg.tau_max);
  if (cfg.tau_steps < 2) throw DomainError("tau-steps must be >= 2");
  if (!(cfg.tau_max > cfg.tau_min)) throw DomainError("tau-max must exceed tau-min");

  Sink sink(cfg.out, out);
  *sink << "tau,omega,lower,upper_coord,upper_membrane,ratio\n";
  int code = kExitOk;
  for (int i = 0; i < cfg.tau_steps; ++i) {
    const double t = static_cast<double>(i) / (cfg.tau_steps - 1);
    double tau = cfg.log_spacing
                     ? cfg.tau_min * std::pow(10.0, t * std::log10(cfg.tau_max / cfg.tau_min))
                     : cfg.tau_min + t * (cfg.tau_max - cfg.tau_min);
    if (i == 0) tau = cfg.tau_min;
    if (i == cfg.tau_steps - 1) tau = cfg.tau_max;
    const ToneBounds bounds = tone_bounds(tau, cfg.dim);
    std::string omega;
    std::string ratio;
    try {
      const BallMode m = fundamental_tone(tau, cfg.dim);
      omega = format_double(m.omega);
      ratio = format_double(m.omega / tau);
    } catch (const SolverError& e) {
      err << "tau=" << format_double(tau) << ": " << e.what() << '\n' << e.trace() << '\n';
      code = kExitInputError;
    }
    *sink << format_double(tau) << ',' << omega << ',' << format_double(bounds.lower) << ','
          << format_double(bounds.upper_coord) << ',' << format_double(bounds.upper_membrane) << ','
          << ratio << '\n';
  }
  return code;
}

std::vector<VerificationReport> verification_suite(const std::vector<int>& dims) {
  std::vector<VerificationReport> reports;
  for (int d : dims) {
    require_dim(d);
    reports.push_back(verify_bessel_signs(d));
    reports.push_back(verify_ij_bounds(d));
    reports.push_back(verify_gamma_chain(d));
    if (d == 2) reports.push_back(verify_Q_positive());
    if (d >= 3) reports.push_back(verify_P_nonneg(d));
    for (double tau : kVerifyTaus) {
      const TrialProfile profile(fundamental_tone(tau, d));
      const std::string suffix = "@d=" + std::to_string(d) + ":tau=" + format_double(tau);
      for (VerificationReport r : {concavity_scan(profile), denominator_monotonicity_scan(profile),
                                   partial_monotonicity_scan(profile), quantinterest_scan(profile)}) {
        r.lemma_id += suffix;
        reports.push_back(std::move(r));
      }
    }
  }
  reports.push_back(verify_binomial_estimate());
  return reports;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.dims.empty()) throw DomainError("no dimensions given");
  const auto reports = verification_suite(cfg.dims);
  Sink sink(cfg.out, out);
  write_csv(*sink, reports);
  std::vector<std::string> failed;
  for (const auto& r : reports) {
    if (!r.passed) failed.push_back(r.lemma_id);
  }
  if (failed.empty()) return kExitOk;
  err << "failed:";
  for (const auto& id : failed) err << ' ' << id;
  err << '\n';
  return kExitVerificationFailed;
}

int cmd_quotient(const RunConfig& cfg, std::ostream& out) {
  require_positive_tau(cfg.tau);
  const Domain raw = load_domain_config(cfg.domain);
  if (cfg.dim != 0 && cfg.dim != raw.dim()) {
    throw DomainError("--dim " + std::to_string(cfg.dim) + " disagrees with the domain dimension " +
                      std::to_string(raw.dim()));
  }
  const int d = raw.dim();
  require_dim(d);
  QuadratureSpec quad = default_quadrature(d);
  if (!cfg.quad.empty()) {
    quad.kind = parse_quadrature_kind(cfg.quad);
    if (quad.kind == QuadratureKind::kGrid && d != 2) quad.samples = 256;
    if (quad.kind == QuadratureKind::kMonteCarlo) quad.samples = 10000000;
  }
  if (cfg.samples > 0) quad.samples = cfg.samples;
  quad.seed = cfg.seed;

  const Domain domain = normalize_volume(raw);
  const TrialProfile profile(fundamental_tone(cfg.tau, d));
  const CenteringResult centering = center_trial(domain, profile, quad);
  const QuotientEstimate q = quotient_bound(domain, profile, quad, centering.offset);
  const double omega = profile.mode.omega;
  const double margin = omega - q.value;
  const double sigmas = q.error > 0.0 ? margin / q.error : (margin > 0.0 ? INFINITY : 0.0);
  const double required = cfg.tol.value_or(5.0);

  std::string center;
  for (int k = 0; k < d; ++k) center += (k ? ";" : "") + format_double(centering.offset[k]);
  Sink sink(cfg.out, out);
  *sink << "domain,d,tau,scale,center,quadrature,Q,error,omega,margin,sigmas,strict\n"
        << domain.name() << ',' << d << ',' << format_double(cfg.tau) << ','
        << format_double(domain.scale()) << ',' << center << ',' << to_string(quad.kind) << ','
        << format_double(q.value) << ',' << format_double(q.error) << ',' << format_double(omega)
        << ',' << format_double(margin) << ',' << format_double(sigmas) << ','
        << (sigmas > required ? "true" : "false") << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Free plate fundamental tones and the isoperimetric quotient checks", "freeplate"};
  app.require_subcommand(1);

  auto* tone = app.add_subcommand("tone", "Solve the fundamental mode of a ball");
  tone->add_option("--dim", cfg.dim, "Dimension")->capture_default_str();
  tone->add_option("--tau", cfg.tau, "Tension")->required();
  tone->add_option("--radius", cfg.radius, "Ball radius")->capture_default_str();
  tone->add_option("--tol", cfg.tol, "Residual acceptance (default 1e-9)");
  tone->add_option("--out", cfg.out, "Write CSV here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Tone and bounds over a tension range (unit ball)");
  sweep->add_option("--dim", cfg.dim, "Dimension")->capture_default_str();
  sweep->add_option("--tau-min", cfg.tau_min)->capture_default_str();
  sweep->add_option("--tau-max", cfg.tau_max)->capture_default_str();
  sweep->add_option("--tau-steps", cfg.tau_steps)->capture_default_str();
  sweep->add_flag("--log", cfg.log_spacing, "Logarithmic spacing");
  sweep->add_option("--out", cfg.out, "Write CSV here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run the lemma verification suite");
  verify->add_option("--dims", cfg.dims, "Comma separated dimensions")->delimiter(',')->capture_default_str();
  verify->add_option("--out", cfg.out, "Write CSV here instead of stdout");

  auto* quotient = app.add_subcommand("quotient", "Quotient bound on a configured domain");
  quotient->add_option("--domain", cfg.domain, "Domain config file")->required();
  quotient->add_option("--dim", cfg.dim, "Expected dimension");
  quotient->add_option("--tau", cfg.tau)->capture_default_str();
  quotient->add_option("--quad", cfg.quad, "radial, grid or mc")
      ->check(CLI::IsMember({"radial", "grid", "mc"}));
  quotient->add_option("--samples", cfg.samples, "Cells per axis (grid) or sample count (mc)");
  quotient->add_option("--seed", cfg.seed)->capture_default_str();
  quotient->add_option("--tol", cfg.tol, "Required margin in error bars (default 5)");
  quotient->add_option("--out", cfg.out, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*tone) return cmd_tone(cfg, out);
    if (*sweep) return cmd_sweep(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    if (quotient->count("--dim") == 0) cfg.dim = 0;
    return cmd_quotient(cfg, out);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n' << e.trace() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace freeplate::cli
