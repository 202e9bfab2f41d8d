#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace freeplate {

/// How worst_margin is compared with tolerance.
enum class CheckKind {
  kStrict,       ///< passes iff worst_margin > tolerance
  kNonNegative,  ///< passes iff worst_margin >= -tolerance
  kEquality,     ///< passes iff |worst_margin| <= tolerance
};

/// Outcome of one grid-based inequality check.
///
/// Composite reports (several sub-checks behind one lemma) list the parts in
/// `checks`; the parent mirrors the first failing part, or the first part
/// when all pass.
struct VerificationReport {
  std::string lemma_id;
  bool passed = false;
  double worst_margin = 0.0;
  std::string worst_point;
  std::string grid_spec;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::kStrict;
  std::vector<VerificationReport> checks;
};

bool margin_passes(CheckKind kind, double margin, double tolerance);

VerificationReport make_report(std::string lemma_id, CheckKind kind,
                               double worst_margin, std::string worst_point,
                               std::string grid_spec, double tolerance);

VerificationReport combine_reports(std::string lemma_id,
                                   std::vector<VerificationReport> parts);

/// Tracks the smallest margin seen on a grid and where it occurred.
class MarginTracker {
 public:
  void observe(double margin, double point) {
    if (!seen_ || margin < worst_) {
      worst_ = margin;
      point_ = point;
      seen_ = true;
    }
  }
  double worst() const noexcept { return worst_; }
  double point() const noexcept { return point_; }

 private:
  double worst_ = 0.0;
  double point_ = 0.0;
  bool seen_ = false;
};

/// "%.17g": round-trips every double.
std::string format_double(double value);

inline constexpr const char* kReportCsvHeader =
    "lemma_id,passed,worst_margin,worst_point,grid,tolerance";

std::string to_csv_row(const VerificationReport& report);
void write_csv(std::ostream& out, std::span<const VerificationReport> reports);

}  // namespace freeplate
