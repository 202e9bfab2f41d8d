#include "freeplate/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace freeplate {
namespace {

// CSV fields are never quoted; keep free text comma-free.
std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

bool margin_passes(CheckKind kind, double margin, double tolerance) {
  switch (kind) {
    case CheckKind::kStrict:
      return margin > tolerance;
    case CheckKind::kNonNegative:
      return margin >= -tolerance;
    case CheckKind::kEquality:
      return std::abs(margin) <= tolerance;
  }
  return false;
}

VerificationReport make_report(std::string lemma_id, CheckKind kind,
                               double worst_margin, std::string worst_point,
                               std::string grid_spec, double tolerance) {
  VerificationReport report;
  report.lemma_id = std::move(lemma_id);
  report.kind = kind;
  report.worst_margin = worst_margin;
  report.worst_point = std::move(worst_point);
  report.grid_spec = std::move(grid_spec);
  report.tolerance = tolerance;
  report.passed = std::isfinite(worst_margin) &&
                  margin_passes(kind, worst_margin, tolerance);
  return report;
}

VerificationReport combine_reports(std::string lemma_id,
                                   std::vector<VerificationReport> parts) {
  VerificationReport report;
  report.lemma_id = std::move(lemma_id);
  if (parts.empty()) return report;
  auto failing = std::find_if(parts.begin(), parts.end(),
                              [](const auto& p) { return !p.passed; });
  const VerificationReport& shown = failing != parts.end() ? *failing : parts.front();
  report.passed = failing == parts.end();
  report.worst_margin = shown.worst_margin;
  report.worst_point = shown.lemma_id + ": " + shown.worst_point;
  report.grid_spec = shown.grid_spec;
  report.tolerance = shown.tolerance;
  report.kind = shown.kind;
  report.checks = std::move(parts);
  return report;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string to_csv_row(const VerificationReport& report) {
  return sanitize(report.lemma_id) + ',' + (report.passed ? "true" : "false") +
         ',' + format_double(report.worst_margin) + ',' +
         sanitize(report.worst_point) + ',' + sanitize(report.grid_spec) + ',' +
         format_double(report.tolerance);
}

void write_csv(std::ostream& out, std::span<const VerificationReport> reports) {
  out << kReportCsvHeader << '\n';
  for (const auto& report : reports) out << to_csv_row(report) << '\n';
}

}  // namespace freeplate
