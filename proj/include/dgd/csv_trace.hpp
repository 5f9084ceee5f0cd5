#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dgd/core.hpp"

namespace dgd {

/// A run trace plus its derived plotting columns, as written to disk.
///
///   # key=value            metadata, one per line (extras as extra.<key>)
///   t,dist,cost_gap,grad_sq,dev_sq,shadow_sq,E_t,e_t,bound
///   one row per iteration
///
/// E_t and e_t are NaN where undefined (truncated, or before the e_t
/// anchor); bound is NaN where no bound applies.
struct CsvTrace {
  RunTrace trace;
  std::vector<double> log_dist;  // E_t
  std::vector<double> log_gap;   // e_t
  std::vector<double> bound;

  friend bool operator==(const CsvTrace& a, const CsvTrace& b);
};

inline constexpr std::string_view kCsvHeader =
    "t,dist,cost_gap,grad_sq,dev_sq,shadow_sq,E_t,e_t,bound";

/// Derived columns are padded with NaN to the trace length.
CsvTrace make_csv_trace(RunTrace trace, const std::vector<double>& log_dist,
                        const std::vector<double>& log_gap, std::size_t gap_anchor,
                        std::vector<double> bound);

std::string serialize_csv(const CsvTrace& csv);
/// Throws std::invalid_argument on malformed input.
CsvTrace parse_csv(std::string_view text);

void save_csv(const std::filesystem::path& path, const CsvTrace& csv);
CsvTrace load_csv(const std::filesystem::path& path);

}  // namespace dgd
