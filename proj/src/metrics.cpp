#include <cmath>
#include <stdexcept>

#include "dgd/verify.hpp"

namespace dgd {

ResolutionFloors resolution_floors(const RunTrace& trace) {
  const TraceMeta& m = trace.meta;
  return {kFloorMultiple * (m.x_star_radius + m.distance_resolution),
          kFloorMultiple * (m.f_star_radius + m.value_resolution)};
}

LogErrorMetrics log_error_metrics(const RunTrace& trace, std::size_t anchor,
                                  ResolutionFloors floors) {
  if (trace.rows.size() <= anchor) {
    throw std::invalid_argument("log_error_metrics: trace ends before the anchor row");
  }
  const double d0 = trace.rows.front().dist;
  if (!(d0 > 0.0)) throw std::domain_error("log_error_metrics: x_0 equals x_*");

  LogErrorMetrics out;
  out.anchor = anchor;
  for (const TraceRow& row : trace.rows) {
    if (row.t > 0 && !(row.dist > floors.dist)) break;
    out.log_dist.push_back(std::log(row.dist / d0));
  }
  const double g0 = trace.rows[anchor].cost_gap;
  if (g0 > floors.gap) {
    for (std::size_t t = anchor; t < trace.rows.size(); ++t) {
      const double g = trace.rows[t].cost_gap;
      if (!(g > floors.gap)) break;
      out.log_gap.push_back(std::log(g / g0));
    }
  }
  return out;
}

SlopeFit slope_fit(std::span<const double> values, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw std::invalid_argument("slope_fit: tail fraction must be in (0, 1]");
  }
  const auto n = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(values.size())));
  if (n < 10) throw std::invalid_argument("slope_fit: fewer than 10 points in the tail");

  SlopeFit fit;
  fit.points = n;
  fit.first_index = values.size() - n;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = fit.first_index; i < values.size(); ++i) {
    mx += static_cast<double>(i);
    my += values[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = fit.first_index; i < values.size(); ++i) {
    const double dx = static_cast<double>(i) - mx;
    const double dy = values[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double sse = 0.0;
    for (std::size_t i = fit.first_index; i < values.size(); ++i) {
      const double e = values[i] - (fit.intercept + fit.slope * static_cast<double>(i));
      sse += e * e;
    }
    fit.r_squared = 1.0 - sse / syy;
  }
  return fit;
}

}  // namespace dgd
