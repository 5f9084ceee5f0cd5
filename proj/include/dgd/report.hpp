#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dgd {

/// Relative slack on every inequality check. Excess within the slack is
/// counted as a warning, not a violation.
inline constexpr double kRelativeSlack = 1e-9;

enum class CheckStatus { pass, fail, not_applicable };

std::string_view to_string(CheckStatus status);

struct Violation {
  std::size_t t = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // (lhs - rhs) / scale
  double at = std::numeric_limits<double>::quiet_NaN();  // continuous location, if any
};

/// Outcome of checking one inequality along a sequence. The violation list
/// is empty exactly when the check passed.
struct ViolationReport {
  std::string id;
  CheckStatus status = CheckStatus::pass;
  std::size_t checked = 0;
  std::size_t warnings = 0;
  std::vector<Violation> violations;
  /// Largest (lhs - rhs) / scale seen; NaN when nothing was checked.
  double worst_margin = 0.0;
  std::string note;

  bool passed() const { return status != CheckStatus::fail; }
  bool applicable() const { return status != CheckStatus::not_applicable; }
};

/// Accumulates comparisons lhs <= rhs. scale is the magnitude against which
/// the slack is measured; it is raised to at least max(|lhs|, |rhs|).
class ReportBuilder {
 public:
  explicit ReportBuilder(std::string id, double relative_slack = kRelativeSlack);

  /// Returns true if the comparison is a violation.
  bool compare(std::size_t t, double lhs, double rhs, double scale = 0.0);
  /// As compare(), recording a continuous location (for grid sweeps).
  bool compare_at(std::size_t t, double at, double lhs, double rhs, double scale = 0.0);

  ViolationReport finish() &&;

 private:
  ViolationReport report_;
  double slack_;
};

ViolationReport not_applicable(std::string id, std::string note);

/// One aligned line per report: id, status, checked, violations, worst margin.
std::string format_reports_text(std::span<const ViolationReport> reports);

/// Machine-readable "<id>.<key>=<value>" lines, including the first
/// violation's location when there is one.
std::string format_reports_kv(std::span<const ViolationReport> reports);

}  // namespace dgd
