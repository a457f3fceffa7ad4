#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "heatrisk/calendar.hpp"

namespace heatrisk {

enum class Unit { mwh, celsius, fraction, currency, persons };

std::string unit_name(Unit unit);

/// A contiguous hourly sequence of one quantity. The grid is implicit:
/// hour i sits at `start + i`. Ingestion guarantees contiguity; gaps are
/// interpolated or rejected before an HourlySeries exists.
struct HourlySeries {
  UtcHour start = 0;
  std::vector<double> values;
  Unit unit = Unit::mwh;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }

  /// One past the last hour.
  UtcHour end() const { return start + static_cast<std::int64_t>(values.size()); }

  bool covers(UtcHour from, UtcHour to) const {
    return from >= start && to <= end() && from <= to;
  }

  bool contains(UtcHour t) const { return t >= start && t < end(); }

  double at(UtcHour t) const;  // ContractError when t outside the series

  /// Copy of [from, to). ContractError when not covered.
  HourlySeries slice(UtcHour from, UtcHour to) const;

  bool same_grid(const HourlySeries& other) const {
    return start == other.start && values.size() == other.values.size();
  }
};

/// Largest [from, to) covered by every series; from == to when disjoint.
struct HourRange {
  UtcHour from = 0;
  UtcHour to = 0;
  std::size_t size() const {
    return to > from ? static_cast<std::size_t>(to - from) : 0;
  }
};

HourRange common_range(const std::vector<const HourlySeries*>& series);

}  // namespace heatrisk
