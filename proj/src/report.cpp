#include "dgd/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dgd/text_format.hpp"

namespace dgd {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::not_applicable:
      return "not_applicable";
  }
  return "unknown";
}

ReportBuilder::ReportBuilder(std::string id, double relative_slack) : slack_(relative_slack) {
  report_.id = std::move(id);
  report_.worst_margin = -std::numeric_limits<double>::infinity();
}

bool ReportBuilder::compare(std::size_t t, double lhs, double rhs, double scale) {
  return compare_at(t, std::numeric_limits<double>::quiet_NaN(), lhs, rhs, scale);
}

bool ReportBuilder::compare_at(std::size_t t, double at, double lhs, double rhs, double scale) {
  ++report_.checked;
  scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double diff = lhs - rhs;
  double margin = 0.0;
  if (std::isnan(diff) || std::isnan(scale)) {
    margin = inf;  // NaN or inf - inf: nothing certifies the inequality
  } else if (std::isinf(diff)) {
    margin = diff;
  } else if (diff != 0.0) {
    margin = std::isinf(scale) ? 0.0 : diff / scale;
  }
  report_.worst_margin = std::max(report_.worst_margin, margin);
  if (margin > slack_) {
    report_.violations.push_back(Violation{t, lhs, rhs, margin, at});
    return true;
  }
  if (margin > 0.0) ++report_.warnings;
  return false;
}

ViolationReport ReportBuilder::finish() && {
  if (report_.checked == 0) report_.worst_margin = std::numeric_limits<double>::quiet_NaN();
  report_.status = report_.violations.empty() ? CheckStatus::pass : CheckStatus::fail;
  return std::move(report_);
}

ViolationReport not_applicable(std::string id, std::string note) {
  ViolationReport r;
  r.id = std::move(id);
  r.status = CheckStatus::not_applicable;
  r.worst_margin = std::numeric_limits<double>::quiet_NaN();
  r.note = std::move(note);
  return r;
}

std::string format_reports_text(std::span<const ViolationReport> reports) {
  std::size_t width = 2;
  for (const auto& r : reports) width = std::max(width, r.id.size());
  std::ostringstream out;
  for (const auto& r : reports) {
    out << r.id << std::string(width - r.id.size() + 2, ' ') << to_string(r.status)
        << "  checked=" << r.checked << "  violations=" << r.violations.size()
        << "  warnings=" << r.warnings << "  worst_margin=" << format_double(r.worst_margin);
    if (!r.violations.empty()) {
      const Violation& v = r.violations.front();
      out << "  first_at=" << v.t;
      if (!std::isnan(v.at)) out << "@" << format_double(v.at);
    }
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << '\n';
  }
  return out.str();
}

std::string format_reports_kv(std::span<const ViolationReport> reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    const std::string p = r.id + ".";
    out << p << "status=" << to_string(r.status) << '\n'
        << p << "checked=" << r.checked << '\n'
        << p << "violations=" << r.violations.size() << '\n'
        << p << "warnings=" << r.warnings << '\n'
        << p << "worst_margin=" << format_double(r.worst_margin) << '\n';
    if (!r.violations.empty()) {
      const Violation& v = r.violations.front();
      out << p << "first_violation.t=" << v.t << '\n';
      if (!std::isnan(v.at)) out << p << "first_violation.at=" << format_double(v.at) << '\n';
      out
          << p << "first_violation.lhs=" << format_double(v.lhs) << '\n'
          << p << "first_violation.rhs=" << format_double(v.rhs) << '\n';
    }
    if (!r.note.empty()) out << p << "note=" << r.note << '\n';
  }
  return out.str();
}

}  // namespace dgd
