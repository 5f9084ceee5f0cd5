#include "dgd/csv_trace.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dgd/text_format.hpp"

namespace dgd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kColumns = 9;

bool same_column(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_double(a[i], b[i])) return false;
  }
  return true;
}

bool same_row(const TraceRow& a, const TraceRow& b) {
  return a.t == b.t && same_double(a.dist, b.dist) && same_double(a.cost_gap, b.cost_gap) &&
         same_double(a.grad_sq, b.grad_sq) && same_double(a.dev_sq, b.dev_sq) &&
         same_double(a.shadow_sq, b.shadow_sq);
}

bool same_meta(const TraceMeta& a, const TraceMeta& b) {
  return a.problem == b.problem && same_double(a.eta, b.eta) && a.tau == b.tau &&
         a.seed == b.seed && same_double(a.x_star_radius, b.x_star_radius) &&
         same_double(a.f_star_radius, b.f_star_radius) &&
         same_double(a.distance_resolution, b.distance_resolution) &&
         same_double(a.value_resolution, b.value_resolution) && a.extras == b.extras;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t end = line.find(sep, pos);
    if (end == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
}

void check_meta_value(std::string_view key, std::string_view value) {
  if (key.empty() || key.find_first_of("=\n\r") != std::string_view::npos ||
      value.find_first_of("\n\r") != std::string_view::npos) {
    throw std::invalid_argument("csv metadata '" + std::string(key) +
                                "' contains a reserved character");
  }
}

std::vector<double> padded(const std::vector<double>& v, std::size_t offset, std::size_t n) {
  std::vector<double> out(n, kNaN);
  for (std::size_t i = 0; i < v.size() && offset + i < n; ++i) out[offset + i] = v[i];
  return out;
}

}  // namespace

bool operator==(const CsvTrace& a, const CsvTrace& b) {
  if (!same_meta(a.trace.meta, b.trace.meta)) return false;
  if (a.trace.rows.size() != b.trace.rows.size()) return false;
  for (std::size_t i = 0; i < a.trace.rows.size(); ++i) {
    if (!same_row(a.trace.rows[i], b.trace.rows[i])) return false;
  }
  return same_column(a.log_dist, b.log_dist) && same_column(a.log_gap, b.log_gap) &&
         same_column(a.bound, b.bound);
}

CsvTrace make_csv_trace(RunTrace trace, const std::vector<double>& log_dist,
                        const std::vector<double>& log_gap, std::size_t gap_anchor,
                        std::vector<double> bound) {
  const std::size_t n = trace.rows.size();
  if (bound.size() != n) throw std::invalid_argument("make_csv_trace: bound column length");
  CsvTrace out;
  out.log_dist = padded(log_dist, 0, n);
  out.log_gap = padded(log_gap, gap_anchor, n);
  out.bound = std::move(bound);
  out.trace = std::move(trace);
  return out;
}

std::string serialize_csv(const CsvTrace& csv) {
  const TraceMeta& m = csv.trace.meta;
  const std::size_t n = csv.trace.rows.size();
  if (csv.log_dist.size() != n || csv.log_gap.size() != n || csv.bound.size() != n) {
    throw std::invalid_argument("serialize_csv: derived columns do not match the trace length");
  }
  std::string out;
  auto meta = [&out](std::string_view key, const std::string& value) {
    check_meta_value(key, value);
    out.append("# ").append(key).append("=").append(value).append("\n");
  };
  meta("problem", m.problem);
  meta("eta", format_double(m.eta));
  meta("tau", std::to_string(m.tau));
  meta("seed", std::to_string(m.seed));
  meta("x_star_radius", format_double(m.x_star_radius));
  meta("f_star_radius", format_double(m.f_star_radius));
  meta("distance_resolution", format_double(m.distance_resolution));
  meta("value_resolution", format_double(m.value_resolution));
  for (const auto& [key, value] : m.extras) meta("extra." + key, value);
  out.append(kCsvHeader).append("\n");
  for (std::size_t i = 0; i < n; ++i) {
    const TraceRow& r = csv.trace.rows[i];
    out.append(std::to_string(r.t));
    for (double v : {r.dist, r.cost_gap, r.grad_sq, r.dev_sq, r.shadow_sq, csv.log_dist[i],
                     csv.log_gap[i], csv.bound[i]}) {
      out.push_back(',');
      out.append(format_double(v));
    }
    out.push_back('\n');
  }
  return out;
}

CsvTrace parse_csv(std::string_view text) {
  CsvTrace out;
  TraceMeta& m = out.trace.meta;
  bool header_seen = false;
  std::size_t line_no = 0;
  auto fail = [&line_no](const std::string& what) {
    throw std::invalid_argument("csv line " + std::to_string(line_no) + ": " + what);
  };
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen && line.starts_with("# ")) {
      line.remove_prefix(2);
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) fail("metadata line without '='");
      const std::string_view key = line.substr(0, eq);
      const std::string_view value = line.substr(eq + 1);
      if (key == "problem") m.problem = value;
      else if (key == "eta") m.eta = parse_double(value);
      else if (key == "tau") m.tau = parse_uint(value);
      else if (key == "seed") m.seed = parse_uint(value);
      else if (key == "x_star_radius") m.x_star_radius = parse_double(value);
      else if (key == "f_star_radius") m.f_star_radius = parse_double(value);
      else if (key == "distance_resolution") m.distance_resolution = parse_double(value);
      else if (key == "value_resolution") m.value_resolution = parse_double(value);
      else if (key.starts_with("extra.")) m.extras[std::string(key.substr(6))] = value;
      else fail("unknown metadata key '" + std::string(key) + "'");
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) fail("expected header '" + std::string(kCsvHeader) + "'");
      header_seen = true;
      continue;
    }
    const std::vector<std::string_view> cells = split(line, ',');
    if (cells.size() != kColumns) fail("expected " + std::to_string(kColumns) + " columns");
    try {
      TraceRow r;
      r.t = parse_uint(cells[0]);
      r.dist = parse_double(cells[1]);
      r.cost_gap = parse_double(cells[2]);
      r.grad_sq = parse_double(cells[3]);
      r.dev_sq = parse_double(cells[4]);
      r.shadow_sq = parse_double(cells[5]);
      out.trace.rows.push_back(r);
      out.log_dist.push_back(parse_double(cells[6]));
      out.log_gap.push_back(parse_double(cells[7]));
      out.bound.push_back(parse_double(cells[8]));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (!header_seen) throw std::invalid_argument("csv: missing header");
  return out;
}

void save_csv(const std::filesystem::path& path, const CsvTrace& csv) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << serialize_csv(csv);
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

CsvTrace load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

}  // namespace dgd
