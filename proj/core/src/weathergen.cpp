#include "heatrisk/weathergen.hpp"

#include <algorithm>
#include <cstdio>

#include "heatrisk/errors.hpp"

namespace heatrisk {

namespace {

UtcHour year_start_hour(int year) {
  return hour_number(CivilHour{CivilDate{year, 1, 1}, 0});
}

}  // namespace

WeatherArchive make_archive(std::vector<CountryWeather> countries) {
  if (countries.empty()) throw DataError("weather archive is empty");

  std::vector<const HourlySeries*> all;
  for (const auto& cw : countries) {
    if (cw.stations.size() != static_cast<std::size_t>(kStationCount)) {
      throw DataError("country '" + cw.country + "' has " +
                      std::to_string(cw.stations.size()) +
                      " stations, expected 5");
    }
    for (const auto& st : cw.stations) all.push_back(&st.series);
    all.push_back(&cw.wind_cf);
    all.push_back(&cw.solar_cf);
  }
  const HourRange range = common_range(all);
  if (range.size() == 0) {
    throw DataError("weather series have no common time range");
  }

  WeatherArchive archive;
  archive.start = range.from;
  archive.end = range.to;
  for (auto& cw : countries) {
    CountryWeather trimmed;
    trimmed.country = cw.country;
    for (auto& st : cw.stations) {
      trimmed.stations.push_back(
          {st.station_id, st.series.slice(range.from, range.to)});
    }
    trimmed.wind_cf = cw.wind_cf.slice(range.from, range.to);
    trimmed.solar_cf = cw.solar_cf.slice(range.from, range.to);
    archive.countries.push_back(std::move(trimmed));
  }

  int first = civil_from_hour(archive.start).date.year;
  if (year_start_hour(first) < archive.start) ++first;
  int last = civil_from_hour(archive.end - 1).date.year;
  if (year_start_hour(last + 1) > archive.end) --last;
  if (last < first) {
    throw DataError("weather archive does not cover a full calendar year");
  }
  archive.first_year = first;
  archive.last_year = last;
  return archive;
}

UtcHour source_hour_for(const GridHour& target_hour, int source_year) {
  int month = target_hour.month;
  int day = target_hour.day_of_month;
  if (month == 2 && day == 29 && !is_leap_year(source_year)) {
    day = 28;  // synthesize Feb 29 from Feb 28
  }
  return hour_number(
      CivilHour{CivilDate{source_year, month, day}, target_hour.hour});
}

std::vector<ScenarioPlan> scenario_plans(const WeatherArchive& archive,
                                         [[maybe_unused]] int target_year,
                                         std::span<const int> shift_days) {
  // Feasibility depends only on the source span: the mapped lookups for any
  // target year run from Jan 1 00:00 to Dec 31 23:00 of the source year.
  if (archive.empty()) throw DataError("weather archive is empty");
  std::vector<int> shifts(shift_days.begin(), shift_days.end());
  if (shifts.empty()) shifts.push_back(0);
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());

  std::vector<ScenarioPlan> plans;
  char id[32];
  for (int year = archive.first_year; year <= archive.last_year; ++year) {
    // The month/day/hour mapping is monotone, so coverage of the first and
    // last lookup hours implies coverage of the whole year.
    const UtcHour first_lookup = year_start_hour(year);
    const UtcHour last_lookup = year_start_hour(year + 1) - 1;
    for (int shift : shifts) {
      const UtcHour lo = first_lookup - shift * 24;
      const UtcHour hi = last_lookup - shift * 24;
      if (lo < archive.start || hi >= archive.end) continue;
      std::snprintf(id, sizeof id, "y%04d_s%+03d", year, shift);
      plans.push_back(ScenarioPlan{year, shift, id});
    }
  }
  return plans;
}

WeatherScenario materialize_scenario(const WeatherArchive& archive,
                                     const ScenarioPlan& plan,
                                     int target_year) {
  const CalendarGrid grid = CalendarGrid::target_year(target_year);
  const std::size_t n = grid.size();

  WeatherScenario scenario;
  scenario.scenario_id = plan.id;
  scenario.source_year = plan.source_year;
  scenario.shift_days = plan.shift_days;
  scenario.target_year = target_year;
  scenario.source_hours.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    scenario.source_hours[i] =
        source_hour_for(grid[i], plan.source_year) - plan.shift_days * 24;
  }
  if (scenario.source_hours.front() < archive.start ||
      scenario.source_hours.back() >= archive.end) {
    throw ContractError("scenario plan " + plan.id +
                        " reads outside the archive");
  }

  for (const auto& cw : archive.countries) {
    CountryScenarioWeather out;
    out.country = cw.country;
    out.station_temps.resize(cw.stations.size());
    for (std::size_t s = 0; s < cw.stations.size(); ++s) {
      const HourlySeries& src = cw.stations[s].series;
      auto& dst = out.station_temps[s];
      dst.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        dst[i] = src.values[static_cast<std::size_t>(scenario.source_hours[i] -
                                                     src.start)];
      }
    }
    out.wind_cf.resize(n);
    out.solar_cf.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(scenario.source_hours[i] -
                                              cw.wind_cf.start);
      out.wind_cf[i] = cw.wind_cf.values[k];
      out.solar_cf[i] = cw.solar_cf.values[k];
    }
    scenario.countries.push_back(std::move(out));
  }
  return scenario;
}

std::vector<WeatherScenario> shifted_date_scenarios(
    const WeatherArchive& archive, int target_year,
    std::span<const int> shift_days) {
  const auto plans = scenario_plans(archive, target_year, shift_days);
  if (plans.empty()) {
    throw ConfigError(
        "no feasible (source year, shift) pairs; widen the archive or "
        "shrink the shift set");
  }
  std::vector<WeatherScenario> scenarios;
  scenarios.reserve(plans.size());
  for (const auto& plan : plans) {
    scenarios.push_back(materialize_scenario(archive, plan, target_year));
  }
  return scenarios;
}

HourlySeries map_to_target_calendar(const HourlySeries& source_year_series,
                                    int target_year) {
  const CivilHour first = civil_from_hour(source_year_series.start);
  const int source_year = first.date.year;
  if (first.date.month != 1 || first.date.day != 1 || first.hour != 0 ||
      source_year_series.size() !=
          static_cast<std::size_t>(hours_in_year(source_year))) {
    throw DataError("source series must cover exactly one calendar year");
  }

  HourlySeries out;
  out.unit = source_year_series.unit;
  out.start = year_start_hour(target_year);
  const int n = hours_in_year(target_year);
  out.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const CivilHour civil = civil_from_hour(out.start + i);
    int day = civil.date.day;
    if (civil.date.month == 2 && day == 29 && !is_leap_year(source_year)) {
      day = 28;
    }
    const UtcHour src = hour_number(
        CivilHour{CivilDate{source_year, civil.date.month, day}, civil.hour});
    out.values[static_cast<std::size_t>(i)] = source_year_series.at(src);
  }
  return out;
}

}  // namespace heatrisk
