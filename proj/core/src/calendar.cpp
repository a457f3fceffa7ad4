#include "heatrisk/calendar.hpp"

#include <array>
#include <cstdio>

#include "heatrisk/errors.hpp"

namespace heatrisk {

bool is_leap_year(int year) {
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return lengths[static_cast<std::size_t>(month - 1)];
}

int hours_in_year(int year) { return is_leap_year(year) ? 8784 : 8760; }

// Civil-from-days and days-from-civil follow the classic era decomposition
// of the proleptic Gregorian calendar.
std::int64_t day_number(const CivilDate& date) {
  std::int64_t y = date.year;
  const std::int64_t m = date.month;
  const std::int64_t d = date.day;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const std::int64_t yoe = y - era * 400;
  const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

CivilDate date_from_day_number(std::int64_t days) {
  std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = yoe + era * 400;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
  const std::int64_t m = mp + (mp < 10 ? 3 : -9);
  return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
                   static_cast<int>(d)};
}

int weekday_mon0(std::int64_t days) {
  // 1970-01-01 was a Thursday.
  const std::int64_t w = (days % 7 + 7 + 3) % 7;
  return static_cast<int>(w);
}

UtcHour hour_number(const CivilHour& civil) {
  return day_number(civil.date) * 24 + civil.hour;
}

CivilHour civil_from_hour(UtcHour hour) {
  std::int64_t days = hour / 24;
  int h = static_cast<int>(hour % 24);
  if (h < 0) {
    h += 24;
    days -= 1;
  }
  return CivilHour{date_from_day_number(days), h};
}

namespace {

bool parse_fixed_int(const std::string& s, std::size_t pos, std::size_t len,
                     int& out) {
  int value = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (i >= s.size() || s[i] < '0' || s[i] > '9') return false;
    value = value * 10 + (s[i] - '0');
  }
  out = value;
  return true;
}

CivilDate parse_date_fields(const std::string& text, std::size_t pos) {
  int y = 0, m = 0, d = 0;
  if (!parse_fixed_int(text, pos, 4, y) || text[pos + 4] != '-' ||
      !parse_fixed_int(text, pos + 5, 2, m) || text[pos + 7] != '-' ||
      !parse_fixed_int(text, pos + 8, 2, d)) {
    throw DataError("malformed date in '" + text + "'");
  }
  if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) {
    throw DataError("date out of range: '" + text + "'");
  }
  return CivilDate{y, m, d};
}

}  // namespace

UtcHour parse_iso_hour(const std::string& text) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20 || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z') {
    throw DataError("timestamp must match YYYY-MM-DDTHH:MM:SSZ, got '" + text +
                    "'");
  }
  const CivilDate date = parse_date_fields(text, 0);
  int hh = 0, mm = 0, ss = 0;
  if (!parse_fixed_int(text, 11, 2, hh) || !parse_fixed_int(text, 14, 2, mm) ||
      !parse_fixed_int(text, 17, 2, ss)) {
    throw DataError("malformed time in '" + text + "'");
  }
  if (hh > 23) throw DataError("hour out of range: '" + text + "'");
  if (mm != 0 || ss != 0) {
    throw DataError("timestamp not on a whole hour: '" + text + "'");
  }
  return hour_number(CivilHour{date, hh});
}

std::string format_iso_hour(UtcHour hour) {
  const CivilHour civil = civil_from_hour(hour);
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:00:00Z", civil.date.year,
                civil.date.month, civil.date.day, civil.hour);
  return buf;
}

std::int64_t parse_iso_date(const std::string& text) {
  if (text.size() != 10) {
    throw DataError("date must match YYYY-MM-DD, got '" + text + "'");
  }
  return day_number(parse_date_fields(text, 0));
}

std::string format_iso_date(std::int64_t days) {
  const CivilDate date = date_from_day_number(days);
  char buf[12];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", date.year, date.month,
                date.day);
  return buf;
}

namespace {

GridHour make_grid_hour(UtcHour t) {
  const std::int64_t day = t >= 0 ? t / 24 : (t - 23) / 24;
  const CivilDate date = date_from_day_number(day);
  return GridHour{t,
                  day,
                  static_cast<std::int16_t>(date.year),
                  static_cast<std::int8_t>(date.month),
                  static_cast<std::int8_t>(date.day),
                  static_cast<std::int8_t>(t - day * 24),
                  static_cast<std::int8_t>(weekday_mon0(day))};
}

}  // namespace

CalendarGrid CalendarGrid::contiguous(UtcHour first, std::size_t count) {
  std::vector<GridHour> hours;
  hours.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    hours.push_back(make_grid_hour(first + static_cast<std::int64_t>(i)));
  }
  return CalendarGrid(std::move(hours));
}

CalendarGrid CalendarGrid::target_year(int year) {
  std::vector<GridHour> hours;
  hours.reserve(8760);
  const UtcHour first = hour_number(CivilHour{CivilDate{year, 1, 1}, 0});
  const int n = hours_in_year(year);
  for (int i = 0; i < n; ++i) {
    GridHour gh = make_grid_hour(first + i);
    if (gh.month == 2 && gh.day_of_month == 29) continue;
    hours.push_back(gh);
  }
  return CalendarGrid(std::move(hours));
}

bool CalendarGrid::same_grid(const CalendarGrid& other) const {
  if (hours_.size() != other.hours_.size()) return false;
  for (std::size_t i = 0; i < hours_.size(); ++i) {
    if (hours_[i].t != other.hours_[i].t) return false;
  }
  return true;
}

}  // namespace heatrisk
