#include "heatrisk/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "heatrisk/errors.hpp"
#include "heatrisk/notices.hpp"

namespace heatrisk::io {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void parse_fail(const fs::path& path, std::size_t line,
                             const std::string& message) {
  throw DataError(path.string() + ":" + std::to_string(line) + ": " + message);
}

double parse_number(std::string_view field, const fs::path& path,
                    std::size_t line) {
  double value = 0.0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    parse_fail(path, line, "not a number: '" + std::string(field) + "'");
  }
  return value;
}

/// Reads a CSV, validates the header, and hands each data row's fields to
/// the callback. Tolerates CRLF; skips blank trailing lines.
template <typename RowFn>
void for_each_row(const fs::path& path, const std::string& expected_header,
                  std::size_t n_fields, RowFn&& row_fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != expected_header) {
        parse_fail(path, 1,
                   "expected header '" + expected_header + "', got '" + line +
                       "'");
      }
      continue;
    }
    fields.clear();
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.emplace_back(line.data() + begin, i - begin);
        begin = i + 1;
      }
    }
    if (fields.size() != n_fields) {
      parse_fail(path, line_no,
                 "expected " + std::to_string(n_fields) + " fields, got " +
                     std::to_string(fields.size()));
    }
    row_fn(fields, line_no);
  }
  if (line_no == 0) parse_fail(path, 1, "file is empty");
}

UtcHour parse_timestamp(std::string_view field, const fs::path& path,
                        std::size_t line) {
  try {
    return parse_iso_hour(std::string(field));
  } catch (const DataError& e) {
    parse_fail(path, line, e.what());
  }
}

/// Turns (hour, value) rows into a contiguous series, applying the gap
/// policy. Rows must be strictly increasing.
LoadedSeries finalize_series(
    const std::vector<std::pair<UtcHour, double>>& rows, Unit unit,
    const fs::path& path, const std::string& label) {
  if (rows.empty()) throw DataError(path.string() + ": no data rows");
  LoadedSeries out;
  out.series.unit = unit;
  out.series.start = rows.front().first;
  out.series.values.reserve(rows.size());

  std::size_t interpolated = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      const UtcHour prev = rows[i - 1].first;
      const UtcHour cur = rows[i].first;
      if (cur <= prev) {
        throw DataError(path.string() + ": duplicate or decreasing timestamp " +
                        format_iso_hour(cur) + (label.empty() ? "" : " (" + label + ")"));
      }
      const auto missing = static_cast<int>(cur - prev - 1);
      if (missing > 0) {
        if (missing > kMaxGapHours) {
          throw DataError(path.string() + ": gap of " +
                          std::to_string(missing) + " hours after " +
                          format_iso_hour(prev) + " exceeds the " +
                          std::to_string(kMaxGapHours) + "-hour policy" +
                          (label.empty() ? "" : " (" + label + ")"));
        }
        const double a = rows[i - 1].second;
        const double b = rows[i].second;
        for (int k = 1; k <= missing; ++k) {
          const double frac =
              static_cast<double>(k) / static_cast<double>(missing + 1);
          out.series.values.push_back(a + (b - a) * frac);
        }
        out.gaps.push_back(Gap{prev + 1, missing});
        interpolated += static_cast<std::size_t>(missing);
        emit_warning(path.string() + ": interpolated " +
                     std::to_string(missing) + " missing hour(s) after " +
                     format_iso_hour(prev) +
                     (label.empty() ? "" : " (" + label + ")"));
      }
    }
    out.series.values.push_back(rows[i].second);
  }

  const double frac = static_cast<double>(interpolated) /
                      static_cast<double>(out.series.values.size());
  if (frac > kMaxGapFraction) {
    std::ostringstream msg;
    msg << path.string() << ": " << interpolated << " of "
        << out.series.values.size() << " hours missing ("
        << frac * 100.0 << "%), above the 1% limit";
    throw DataError(msg.str());
  }
  return out;
}

}  // namespace

LoadedSeries load_hourly_csv(const fs::path& path,
                             const std::string& value_header, Unit unit) {
  std::vector<std::pair<UtcHour, double>> rows;
  for_each_row(path, "timestamp," + value_header, 2,
               [&](const std::vector<std::string_view>& f, std::size_t line) {
                 rows.emplace_back(parse_timestamp(f[0], path, line),
                                   parse_number(f[1], path, line));
               });
  return finalize_series(rows, unit, path, "");
}

LoadedSeries load_consumption_csv(const fs::path& path) {
  return load_hourly_csv(path, "mwh", Unit::mwh);
}

void write_hourly_csv(const fs::path& path, const HourlySeries& series,
                      const std::string& value_header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "timestamp," << value_header << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_iso_hour(series.start + static_cast<std::int64_t>(i)) << ','
        << format_double(series.values[i]) << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

std::vector<StationTemperature> load_weather_csv(const fs::path& path) {
  std::vector<std::string> order;
  std::vector<std::vector<std::pair<UtcHour, double>>> rows_by_station;
  for_each_row(
      path, "timestamp,station_id,temp_c", 3,
      [&](const std::vector<std::string_view>& f, std::size_t line) {
        const UtcHour t = parse_timestamp(f[0], path, line);
        const std::string station(f[1]);
        if (station.empty()) parse_fail(path, line, "empty station_id");
        const double temp = parse_number(f[2], path, line);
        auto it = std::find(order.begin(), order.end(), station);
        std::size_t idx;
        if (it == order.end()) {
          idx = order.size();
          order.push_back(station);
          rows_by_station.emplace_back();
        } else {
          idx = static_cast<std::size_t>(it - order.begin());
        }
        rows_by_station[idx].emplace_back(t, temp);
      });

  if (order.size() != static_cast<std::size_t>(kStationCount)) {
    throw DataError(path.string() + ": expected 5 stations, found " +
                    std::to_string(order.size()));
  }
  std::vector<StationTemperature> stations;
  for (std::size_t i = 0; i < order.size(); ++i) {
    LoadedSeries loaded =
        finalize_series(rows_by_station[i], Unit::celsius, path, order[i]);
    stations.push_back({order[i], std::move(loaded.series)});
  }
  for (const auto& st : stations) {
    if (!st.series.same_grid(stations.front().series)) {
      throw DataError(path.string() + ": station '" + st.station_id +
                      "' is not on the common hourly grid");
    }
  }
  return stations;
}

std::vector<CapacityFactors> load_capacity_factors_csv(const fs::path& path) {
  std::vector<std::string> order;
  std::vector<std::vector<std::pair<UtcHour, double>>> wind_rows, solar_rows;
  for_each_row(
      path, "timestamp,country,wind_cf,solar_cf", 4,
      [&](const std::vector<std::string_view>& f, std::size_t line) {
        const UtcHour t = parse_timestamp(f[0], path, line);
        const std::string country(f[1]);
        if (country.empty()) parse_fail(path, line, "empty country");
        const double wind = parse_number(f[2], path, line);
        const double solar = parse_number(f[3], path, line);
        if (wind < 0.0 || wind > 1.0 || solar < 0.0 || solar > 1.0) {
          parse_fail(path, line, "capacity factor outside [0, 1]");
        }
        auto it = std::find(order.begin(), order.end(), country);
        std::size_t idx;
        if (it == order.end()) {
          idx = order.size();
          order.push_back(country);
          wind_rows.emplace_back();
          solar_rows.emplace_back();
        } else {
          idx = static_cast<std::size_t>(it - order.begin());
        }
        wind_rows[idx].emplace_back(t, wind);
        solar_rows[idx].emplace_back(t, solar);
      });

  std::vector<CapacityFactors> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    CapacityFactors cf;
    cf.country = order[i];
    cf.wind = finalize_series(wind_rows[i], Unit::fraction, path,
                              order[i] + " wind").series;
    cf.solar = finalize_series(solar_rows[i], Unit::fraction, path,
                               order[i] + " solar").series;
    out.push_back(std::move(cf));
  }
  return out;
}

MacroTable::MacroTable(std::vector<int> years, std::vector<double> gdp,
                       std::vector<double> pop)
    : gdp_(std::move(gdp)), pop_(std::move(pop)) {
  if (years.size() < 2) {
    throw DataError("macro table needs at least two annual anchors");
  }
  if (years.size() != gdp_.size() || years.size() != pop_.size()) {
    throw ContractError("macro table column lengths differ");
  }
  anchors_.reserve(years.size());
  for (std::size_t i = 0; i < years.size(); ++i) {
    if (i > 0 && years[i] <= years[i - 1]) {
      throw DataError("macro years must be strictly increasing");
    }
    if (!(gdp_[i] > 0.0) || !(pop_[i] > 0.0)) {
      throw DataError("macro values must be positive (year " +
                      std::to_string(years[i]) + ")");
    }
    anchors_.push_back(hour_number(CivilHour{CivilDate{years[i], 1, 1}, 0}));
  }
}

double MacroTable::interpolate(UtcHour t, const std::vector<double>& values) const {
  if (t < anchors_.front() || t > anchors_.back()) {
    throw DataError("hour " + format_iso_hour(t) +
                    " outside macro coverage [" +
                    format_iso_hour(anchors_.front()) + ", " +
                    format_iso_hour(anchors_.back()) + "]");
  }
  const auto upper =
      std::upper_bound(anchors_.begin(), anchors_.end(), t);
  if (upper == anchors_.end()) return values.back();
  const auto hi = static_cast<std::size_t>(upper - anchors_.begin());
  const std::size_t lo = hi - 1;
  const double frac = static_cast<double>(t - anchors_[lo]) /
                      static_cast<double>(anchors_[hi] - anchors_[lo]);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

double MacroTable::gdp_at(UtcHour t) const { return interpolate(t, gdp_); }
double MacroTable::pop_at(UtcHour t) const { return interpolate(t, pop_); }

HourlySeries MacroTable::materialize(const std::vector<double>& values,
                                     Unit unit) const {
  HourlySeries s;
  s.unit = unit;
  s.start = anchors_.front();
  const auto n = static_cast<std::size_t>(anchors_.back() - anchors_.front()) + 1;
  s.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.values[i] = interpolate(anchors_.front() + static_cast<std::int64_t>(i),
                              values);
  }
  return s;
}

HourlySeries MacroTable::gdp_hourly() const {
  return materialize(gdp_, Unit::currency);
}

HourlySeries MacroTable::pop_hourly() const {
  return materialize(pop_, Unit::persons);
}

MacroTable load_macro_csv(const fs::path& path) {
  std::vector<int> years;
  std::vector<double> gdp, pop;
  for_each_row(path, "year,gdp,pop", 3,
               [&](const std::vector<std::string_view>& f, std::size_t line) {
                 int year = 0;
                 const auto res = std::from_chars(
                     f[0].data(), f[0].data() + f[0].size(), year);
                 if (res.ec != std::errc{} ||
                     res.ptr != f[0].data() + f[0].size()) {
                   parse_fail(path, line, "not a year: '" + std::string(f[0]) + "'");
                 }
                 years.push_back(year);
                 gdp.push_back(parse_number(f[1], path, line));
                 pop.push_back(parse_number(f[2], path, line));
               });
  try {
    return MacroTable(std::move(years), std::move(gdp), std::move(pop));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::pair<HourlySeries, HourlySeries> load_macro(const fs::path& path) {
  const MacroTable table = load_macro_csv(path);
  return {table.gdp_hourly(), table.pop_hourly()};
}

HolidayCalendar load_holidays_csv(const fs::path& path) {
  HolidayCalendar calendar;
  for_each_row(path, "date", 1,
               [&](const std::vector<std::string_view>& f, std::size_t line) {
                 try {
                   calendar.add(parse_iso_date(std::string(f[0])));
                 } catch (const DataError& e) {
                   parse_fail(path, line, e.what());
                 }
               });
  return calendar;
}

}  // namespace heatrisk::io
