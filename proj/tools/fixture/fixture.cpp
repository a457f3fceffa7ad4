#include "fixture.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "heatrisk/errors.hpp"

namespace heatrisk::fixture {

namespace fs = std::filesystem;

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

constexpr double kTau = 2.0 * M_PI;

double round_to(double v, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(v * scale) / scale;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
  return a;
}

UtcHour year_start(int year) {
  return hour_number(CivilHour{CivilDate{year, 1, 1}, 0});
}

/// Year-to-year winter severity shared across the region; the driver of
/// inter-annual weather risk in the fixture.
double year_severity(const FixtureSpec& spec, int year) {
  Rng rng(mix(spec.seed, 0x5eedULL + static_cast<std::uint64_t>(year)));
  return 2.4 * rng.normal();
}

struct CountryParams {
  double base_temp;
  double season_amp;
  double level_mwh;   // typical hourly consumption
  double hdh_scale;   // relative heating sensitivity
  double gdp0;
  double pop0;
  HeatingInventory inventory;
  VreCapacity vre;
};

CountryParams params_for(const std::string& id, std::size_t index) {
  // Inventories and 2040 VRE capacities follow the published Nordic figures;
  // everything else is synthetic but scaled to look like the region.
  if (id == "NO") {
    return {5.5, 10.5, 12000.0, 1.00, 310.0, 4.9e6,
            {"NO", 9.7, 0.9, 29.0, 17.6}, {"NO", 7.2, 0.03}};
  }
  if (id == "SE") {
    return {6.5, 11.0, 15000.0, 1.05, 430.0, 9.4e6,
            {"SE", 11.0, 0.0, 21.5, 25.4}, {"SE", 21.8, 7.1}};
  }
  if (id == "DK") {
    return {8.5, 9.0, 4500.0, 0.50, 260.0, 5.6e6,
            {"DK", 16.9, 18.1, 2.7, 11.9}, {"DK", 20.0, 9.1}};
  }
  if (id == "FI") {
    return {4.0, 12.5, 9500.0, 1.10, 210.0, 5.4e6,
            {"FI", 17.9, 36.4, 20.0, 24.9}, {"FI", 7.4, 7.5}};
  }
  // Generic profile for extra synthetic countries.
  const double k = static_cast<double>(index + 1);
  return {6.0, 10.0, 8000.0, 0.9, 250.0 + 20.0 * k, 5e6,
          {id, 10.0, 5.0, 15.0, 12.0}, {id, 10.0, 3.0}};
}

Eigen::VectorXd make_true_beta(const CountryParams& p, double ln_gdp_ref,
                               double ln_pop_ref) {
  const auto& schema = feature_schema();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(kFeatureCount);
  auto idx = [&](const std::string& name) {
    return std::find(schema.begin(), schema.end(), name) - schema.begin();
  };
  const double a = 0.55, b = 0.25;
  beta[idx("ln_gdp")] = a;
  beta[idx("ln_pop")] = b;
  beta[idx("intercept")] = std::log(p.level_mwh) - a * ln_gdp_ref - b * ln_pop_ref;
  const double hdh_base[kStationCount] = {0.0045, 0.0038, 0.0031, 0.0026, 0.0021};
  for (int s = 0; s < kStationCount; ++s) {
    beta[idx("hdh_" + std::to_string(s + 1))] = p.hdh_scale * hdh_base[s];
    beta[idx("cdh_" + std::to_string(s + 1))] = 0.0008;
  }
  for (int h = 1; h <= 23; ++h) {
    const double day = 0.15 * std::exp(-(h - 12.0) * (h - 12.0) / 40.0);
    const double night = 0.05 * std::exp(-(h - 3.0) * (h - 3.0) / 8.0);
    beta[idx("hour_" + std::to_string(h))] = day - night;
  }
  for (int m = 2; m <= 12; ++m) {
    const double phase = std::sin(M_PI * (m - 1) / 12.0);
    beta[idx("month_" + std::to_string(m))] = -0.25 * phase * phase;
  }
  const double wd[6] = {0.0, 0.0, 0.0, -0.01, -0.07, -0.09};
  for (int w = 2; w <= 7; ++w) {
    beta[idx("weekday_" + std::to_string(w))] = wd[w - 2];
  }
  beta[idx("holiday")] = -0.10;
  beta[idx("trend")] = 2.0e-6;
  return beta;
}

std::vector<std::int64_t> make_holidays(const FixtureSpec& spec,
                                        std::size_t country_index) {
  std::vector<std::int64_t> days;
  for (int y = spec.first_macro_year; y <= spec.last_macro_year; ++y) {
    days.push_back(day_number(CivilDate{y, 1, 1}));
    days.push_back(day_number(CivilDate{y, 5, 1}));
    days.push_back(day_number(CivilDate{y, 12, 24}));
    days.push_back(day_number(CivilDate{y, 12, 25}));
    days.push_back(day_number(CivilDate{y, 12, 26}));
    // One national day per country, so calendars differ.
    const int month = 5 + static_cast<int>(country_index % 2);
    const int dom = 17 + static_cast<int>(country_index * 3 % 10);
    days.push_back(day_number(CivilDate{y, month, dom}));
  }
  return days;
}

}  // namespace

SyntheticCountry make_country(const FixtureSpec& spec, std::size_t index) {
  if (index >= spec.countries.size()) {
    throw ContractError("fixture country index out of range");
  }
  SyntheticCountry out;
  out.id = spec.countries[index];
  const CountryParams p = params_for(out.id, index);
  out.inventory = p.inventory;
  out.vre = p.vre;
  out.holiday_days = make_holidays(spec, index);

  // Macro anchors with smooth growth.
  for (int y = spec.first_macro_year; y <= spec.last_macro_year; ++y) {
    out.macro_years.push_back(y);
    const double age = static_cast<double>(y - spec.first_macro_year);
    out.gdp.push_back(round_to(p.gdp0 * std::pow(1.02, age), 3));
    out.pop.push_back(std::round(p.pop0 * std::pow(1.005, age)));
  }

  // Weather: five stations, shared seasonal/severity signal plus
  // station-level AR(1) noise.
  const UtcHour w_start = year_start(spec.first_weather_year);
  const UtcHour w_end = year_start(spec.last_weather_year + 1);
  const auto n_weather = static_cast<std::size_t>(w_end - w_start);
  std::vector<double> severity_by_year;
  for (int y = spec.first_weather_year; y <= spec.last_weather_year; ++y) {
    severity_by_year.push_back(year_severity(spec, y));
  }
  for (int s = 0; s < kStationCount; ++s) {
    Rng rng(mix(spec.seed, mix(index * 131ULL, 0x7eefULL + static_cast<std::uint64_t>(s))));
    HourlySeries series;
    series.unit = Unit::celsius;
    series.start = w_start;
    series.values.reserve(n_weather);
    const double station_offset = -2.0 + s;
    double ar = 0.0;
    for (std::size_t i = 0; i < n_weather; ++i) {
      const CivilHour civil = civil_from_hour(w_start + static_cast<std::int64_t>(i));
      const std::int64_t day = day_number(civil.date);
      const std::int64_t doy = day - day_number(CivilDate{civil.date.year, 1, 1});
      const double seasonal =
          -p.season_amp * std::cos(kTau * (static_cast<double>(doy) - 15.0) / 365.25);
      const double diurnal = 2.5 * std::sin(kTau * (civil.hour - 9.0) / 24.0);
      const double severity =
          severity_by_year[static_cast<std::size_t>(civil.date.year -
                                                    spec.first_weather_year)];
      ar = 0.985 * ar + 0.45 * rng.normal();
      series.values.push_back(round_to(
          p.base_temp + seasonal + diurnal + severity + station_offset + ar, 2));
    }
    out.stations.push_back({out.id + "_st" + std::to_string(s + 1), std::move(series)});
  }

  // Capacity factors coupled to the same hours (windier, darker winters).
  {
    Rng rng(mix(spec.seed, mix(index * 977ULL, 0xca1fULL)));
    out.wind_cf.unit = Unit::fraction;
    out.wind_cf.start = w_start;
    out.solar_cf.unit = Unit::fraction;
    out.solar_cf.start = w_start;
    double wind_ar = 0.0, cloud_ar = 0.0;
    for (std::size_t i = 0; i < n_weather; ++i) {
      const CivilHour civil = civil_from_hour(w_start + static_cast<std::int64_t>(i));
      const std::int64_t day = day_number(civil.date);
      const std::int64_t doy = day - day_number(CivilDate{civil.date.year, 1, 1});
      wind_ar = 0.96 * wind_ar + 0.32 * rng.normal();
      cloud_ar = 0.9 * cloud_ar + 0.4 * rng.normal();
      const double wind_season =
          0.35 * std::cos(kTau * (static_cast<double>(doy) - 15.0) / 365.25);
      double wind = 1.0 / (1.0 + std::exp(-(wind_ar + wind_season - 0.25)));
      wind = std::min(0.98, std::max(0.01, wind));
      const double sun =
          civil.hour >= 6 && civil.hour <= 18
              ? std::sin(M_PI * (civil.hour - 6.0) / 12.0)
              : 0.0;
      const double season =
          0.2 + 0.8 * 0.5 * (1.0 + std::cos(kTau * (static_cast<double>(doy) - 172.0) / 365.25));
      const double cloud = 1.0 / (1.0 + std::exp(-cloud_ar));
      double solar = sun * season * (1.0 - 0.6 * cloud);
      solar = std::min(1.0, std::max(0.0, solar));
      out.wind_cf.values.push_back(round_to(wind, 4));
      out.solar_cf.values.push_back(round_to(solar, 4));
    }
  }

  // Consumption from the true log-linear model over the calibration years.
  {
    const UtcHour c_start = year_start(spec.first_consumption_year);
    const UtcHour c_end = year_start(spec.last_consumption_year + 1);
    out.trend_origin = c_start;
    const auto n = static_cast<std::size_t>(c_end - c_start);
    const CalendarGrid grid = CalendarGrid::contiguous(c_start, n);

    io::MacroTable macro(out.macro_years, out.gdp, out.pop);
    std::vector<double> gdp(n), pop(n);
    for (std::size_t i = 0; i < n; ++i) {
      const UtcHour t = c_start + static_cast<std::int64_t>(i);
      gdp[i] = macro.gdp_at(t);
      pop[i] = macro.pop_at(t);
    }
    out.true_beta = make_true_beta(
        p, std::log(macro.gdp_at(c_start)), std::log(macro.pop_at(c_start)));

    std::vector<std::vector<double>> temps;
    for (const auto& st : out.stations) {
      temps.push_back(st.series.slice(c_start, c_end).values);
    }
    const HolidayCalendar holidays{out.holiday_days};
    const FeatureMatrix X =
        build_design_matrix(grid, temps, gdp, pop, holidays, c_start);
    const Eigen::VectorXd log_level = X.values * out.true_beta;

    Rng rng(mix(spec.seed, mix(index * 389ULL, 0xc0fefeULL)));
    out.consumption.unit = Unit::mwh;
    out.consumption.start = c_start;
    out.consumption.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double noise = spec.noise_sigma * rng.normal();
      out.consumption.values.push_back(round_to(
          std::exp(log_level[static_cast<Eigen::Index>(i)] + noise), 3));
    }
  }
  return out;
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path.string());
  f << text;
  if (!f) throw DataError("write failed: " + path.string());
}

}  // namespace

fs::path write_fixture(const FixtureSpec& spec, const fs::path& dir) {
  fs::create_directories(dir / "data");
  std::vector<SyntheticCountry> countries;
  for (std::size_t i = 0; i < spec.countries.size(); ++i) {
    countries.push_back(make_country(spec, i));
  }

  std::ostringstream cf;
  cf << "timestamp,country,wind_cf,solar_cf\n";
  for (const auto& c : countries) {
    for (std::size_t i = 0; i < c.wind_cf.size(); ++i) {
      cf << format_iso_hour(c.wind_cf.start + static_cast<std::int64_t>(i))
         << ',' << c.id << ',' << io::format_double(c.wind_cf.values[i]) << ','
         << io::format_double(c.solar_cf.values[i]) << '\n';
    }
  }
  write_file(dir / "data" / "capacity_factors.csv", cf.str());

  nlohmann::json config;
  nlohmann::json country_list = nlohmann::json::array();
  for (const auto& c : countries) {
    const fs::path cdir = dir / "data" / c.id;

    std::ostringstream cons;
    cons << "timestamp,mwh\n";
    for (std::size_t i = 0; i < c.consumption.size(); ++i) {
      cons << format_iso_hour(c.consumption.start + static_cast<std::int64_t>(i))
           << ',' << io::format_double(c.consumption.values[i]) << '\n';
    }
    write_file(cdir / "consumption.csv", cons.str());

    std::ostringstream weather;
    weather << "timestamp,station_id,temp_c\n";
    for (const auto& st : c.stations) {
      for (std::size_t i = 0; i < st.series.size(); ++i) {
        weather << format_iso_hour(st.series.start + static_cast<std::int64_t>(i))
                << ',' << st.station_id << ','
                << io::format_double(st.series.values[i]) << '\n';
      }
    }
    write_file(cdir / "weather.csv", weather.str());

    std::ostringstream holidays;
    holidays << "date\n";
    for (std::int64_t day : c.holiday_days) {
      holidays << format_iso_date(day) << '\n';
    }
    write_file(cdir / "holidays.csv", holidays.str());

    std::ostringstream macro;
    macro << "year,gdp,pop\n";
    for (std::size_t i = 0; i < c.macro_years.size(); ++i) {
      macro << c.macro_years[i] << ',' << io::format_double(c.gdp[i]) << ','
            << io::format_double(c.pop[i]) << '\n';
    }
    write_file(cdir / "macro.csv", macro.str());

    country_list.push_back(
        {{"id", c.id},
         {"consumption_csv", "data/" + c.id + "/consumption.csv"},
         {"weather_csv", "data/" + c.id + "/weather.csv"},
         {"holidays_csv", "data/" + c.id + "/holidays.csv"},
         {"macro_csv", "data/" + c.id + "/macro.csv"},
         {"inventory",
          {{"fossil_space_water_twh", c.inventory.fossil_space_water_twh},
           {"fossil_district_twh", c.inventory.fossil_district_twh},
           {"direct_electric_sw_twh", c.inventory.direct_electric_sw_twh},
           {"fossil_process_twh", c.inventory.fossil_process_twh}}},
         {"wind_gw", c.vre.wind_gw},
         {"solar_gw", c.vre.solar_gw}});
  }

  config["countries"] = country_list;
  config["capacity_factors_csv"] = "data/capacity_factors.csv";
  config["shares"] = {0.0, 0.5, 1.0};
  config["target_year"] = spec.target_year;
  config["output_dir"] = "out";
  config["hourly_output"] = "nordic";
  write_file(dir / "config.json", config.dump(2) + "\n");
  return dir / "config.json";
}

}  // namespace heatrisk::fixture
