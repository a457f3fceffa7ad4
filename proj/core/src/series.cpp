#include "heatrisk/series.hpp"

#include <algorithm>

#include "heatrisk/errors.hpp"

namespace heatrisk {

std::string unit_name(Unit unit) {
  switch (unit) {
    case Unit::mwh: return "MWh";
    case Unit::celsius: return "degC";
    case Unit::fraction: return "fraction";
    case Unit::currency: return "currency";
    case Unit::persons: return "persons";
  }
  return "?";
}

double HourlySeries::at(UtcHour t) const {
  if (!contains(t)) {
    throw ContractError("hour " + format_iso_hour(t) + " outside series [" +
                        format_iso_hour(start) + ", " + format_iso_hour(end()) +
                        ")");
  }
  return values[static_cast<std::size_t>(t - start)];
}

HourlySeries HourlySeries::slice(UtcHour from, UtcHour to) const {
  if (!covers(from, to)) {
    throw ContractError("slice [" + format_iso_hour(from) + ", " +
                        format_iso_hour(to) + ") not covered by series");
  }
  HourlySeries out;
  out.start = from;
  out.unit = unit;
  out.values.assign(values.begin() + static_cast<std::ptrdiff_t>(from - start),
                    values.begin() + static_cast<std::ptrdiff_t>(to - start));
  return out;
}

HourRange common_range(const std::vector<const HourlySeries*>& series) {
  if (series.empty()) return {};
  UtcHour from = series.front()->start;
  UtcHour to = series.front()->end();
  for (const auto* s : series) {
    from = std::max(from, s->start);
    to = std::min(to, s->end());
  }
  if (to < from) to = from;
  return HourRange{from, to};
}

}  // namespace heatrisk
