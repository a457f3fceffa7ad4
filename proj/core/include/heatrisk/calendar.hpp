#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace heatrisk {

/// Whole hours since 1970-01-01T00:00:00Z. All internal time handling is UTC.
using UtcHour = std::int64_t;

struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
};

struct CivilHour {
  CivilDate date;
  int hour = 0;  // 0..23
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
int hours_in_year(int year);  // 8760 or 8784

/// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t day_number(const CivilDate& date);
CivilDate date_from_day_number(std::int64_t days);

/// 0 = Monday ... 6 = Sunday.
int weekday_mon0(std::int64_t day_number);

UtcHour hour_number(const CivilHour& civil);
CivilHour civil_from_hour(UtcHour hour);

/// Strict `YYYY-MM-DDTHH:MM:SSZ`; minutes and seconds must be zero.
/// Throws DataError on any malformation.
UtcHour parse_iso_hour(const std::string& text);
std::string format_iso_hour(UtcHour hour);

/// Strict `YYYY-MM-DD`.
std::int64_t parse_iso_date(const std::string& text);
std::string format_iso_date(std::int64_t day_number);

/// One hour of a calendar grid with the civil fields the feature builder
/// needs. `day` is the day number (for holiday lookup), `weekday` Mon=0.
struct GridHour {
  UtcHour t;
  std::int64_t day;
  std::int16_t year;
  std::int8_t month;
  std::int8_t day_of_month;
  std::int8_t hour;
  std::int8_t weekday;
};

/// Ordered hour timeline used to build design matrices. Contiguous for
/// historical data; scenario timelines for leap target years skip Feb 29 so
/// that every simulated year is 8760 hours long.
class CalendarGrid {
public:
  CalendarGrid() = default;
  explicit CalendarGrid(std::vector<GridHour> hours) : hours_(std::move(hours)) {}

  /// Contiguous grid covering [first, first + count).
  static CalendarGrid contiguous(UtcHour first, std::size_t count);

  /// The simulation timeline for one target year: every hour of that year in
  /// order, with Feb 29 dropped when the year is leap. Always 8760 entries.
  static CalendarGrid target_year(int year);

  std::size_t size() const { return hours_.size(); }
  bool empty() const { return hours_.empty(); }
  const GridHour& operator[](std::size_t i) const { return hours_[i]; }
  const std::vector<GridHour>& hours() const { return hours_; }

  bool same_grid(const CalendarGrid& other) const;

private:
  std::vector<GridHour> hours_;
};

/// Set of holiday dates, keyed by day number.
class HolidayCalendar {
public:
  HolidayCalendar() = default;
  explicit HolidayCalendar(std::vector<std::int64_t> days)
      : days_(days.begin(), days.end()) {}

  void add(std::int64_t day) { days_.insert(day); }
  bool contains(std::int64_t day) const { return days_.count(day) != 0; }
  std::size_t size() const { return days_.size(); }

private:
  std::unordered_set<std::int64_t> days_;
};

}  // namespace heatrisk
