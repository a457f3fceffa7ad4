#include "heatrisk/pipeline.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "heatrisk/errors.hpp"
#include "heatrisk/io/csv.hpp"
#include "heatrisk/io/model_json.hpp"
#include "heatrisk/risk.hpp"
#include "heatrisk/workflow.hpp"

namespace heatrisk {

namespace fs = std::filesystem;
using io::format_double;

namespace {

template <class Fn>
auto run_stage(const char* stage, Fn&& fn) {
  const auto tag = [stage](const char* what) {
    return "[" + std::string(stage) + "] " + what;
  };
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(tag(e.what()));
  } catch (const DataError& e) {
    throw DataError(tag(e.what()));
  } catch (const NumericError& e) {
    throw NumericError(tag(e.what()));
  } catch (const ContractError& e) {
    throw ContractError(tag(e.what()));
  }
}

/// Removes this run's outputs unless commit() was reached.
class OutputTracker {
public:
  ~OutputTracker() {
    if (committed_) return;
    for (auto it = files_.rbegin(); it != files_.rend(); ++it) {
      std::error_code ec;
      fs::remove(*it, ec);
    }
  }

  void track(const fs::path& p) { files_.push_back(p); }
  void commit() { committed_ = true; }
  const std::vector<fs::path>& files() const { return files_; }

private:
  std::vector<fs::path> files_;
  bool committed_ = false;
};

void write_text(OutputTracker& tracker, const fs::path& path,
                const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed: " + path.string());
  tracker.track(path);
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        break;
      }
    }
  };
  std::vector<std::thread> threads;
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

struct CountryData {
  CountryInputs inputs;
  HourlySeries wind_cf;
  HourlySeries solar_cf;
};

std::string share_label(double share) { return format_double(share); }

std::string metrics_csv_header() {
  return "scenario_id,share,region,total_twh,peak_consumption_gwh,"
         "peak_residual_gwh\n";
}

const char* kMetricNames[3] = {"total_twh", "peak_consumption_gwh",
                               "peak_residual_gwh"};

double metric_value(const ScenarioMetrics& m, int which) {
  switch (which) {
    case 0: return m.total_twh;
    case 1: return m.peak_consumption_gwh;
    default: return m.peak_residual_gwh;
  }
}

struct ShareOutcome {
  std::vector<ScenarioMetrics> metrics;  // countries in config order + nordic
  DurationCurve nordic_duration;         // consumption
  std::string hourly_csv;                // empty when disabled
};

struct PlanResult {
  std::vector<ShareOutcome> by_share;
};

std::string hourly_csv_text(const io::RunConfig& config,
                            const CalendarGrid& grid,
                            const std::vector<RegionSeries>& countries,
                            const RegionSeries& nordic) {
  std::ostringstream out;
  out << "timestamp";
  if (config.hourly_output == io::HourlyOutput::full) {
    for (const auto& c : countries) {
      out << ',' << c.region << "_consumption_mwh" << ',' << c.region
          << "_wind_mwh" << ',' << c.region << "_solar_mwh" << ',' << c.region
          << "_residual_mwh";
    }
  }
  out << ",consumption_mwh,wind_mwh,solar_mwh,residual_mwh\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_iso_hour(grid[i].t);
    if (config.hourly_output == io::HourlyOutput::full) {
      for (const auto& c : countries) {
        out << ',' << format_double(c.consumption[i]) << ','
            << format_double(c.wind[i]) << ',' << format_double(c.solar[i])
            << ',' << format_double(c.residual[i]);
      }
    }
    out << ',' << format_double(nordic.consumption[i]) << ','
        << format_double(nordic.wind[i]) << ',' << format_double(nordic.solar[i])
        << ',' << format_double(nordic.residual[i]) << '\n';
  }
  return out.str();
}

std::string density_csv_text(const DensityCurve& curve) {
  std::ostringstream out;
  out << "value,density\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_double(curve.grid[i]) << ',' << format_double(curve.density[i])
        << '\n';
  }
  return out.str();
}

std::string duration_csv_text(const DurationCurve& curve) {
  std::ostringstream out;
  out << "hours,fraction,mwh\n";
  const auto n = static_cast<double>(curve.values.size());
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    out << (i + 1) << ',' << format_double(static_cast<double>(i + 1) / n)
        << ',' << format_double(curve.values[i]) << '\n';
  }
  return out.str();
}

struct MetricsTable {
  // metrics.csv rows plus the per-(share, region, metric) vectors the risk
  // stage needs, kept in plan order.
  std::string csv = metrics_csv_header();
  // values[share_idx][region_idx][metric_idx][plan_idx]
  std::vector<std::vector<std::array<std::vector<double>, 3>>> values;
};

}  // namespace

io::RunManifest run_pipeline(const io::RunConfig& config) {
  io::validate(config);

  const fs::path out_dir = config.output_dir;
  fs::create_directories(out_dir);
  OutputTracker tracker;

  // --- ingest ---------------------------------------------------------
  std::vector<CountryData> data = run_stage("ingest", [&] {
    auto cfs = io::load_capacity_factors_csv(config.capacity_factors_csv);
    std::vector<CountryData> out;
    for (const auto& cc : config.countries) {
      const auto cf = std::find_if(cfs.begin(), cfs.end(), [&](const auto& c) {
        return c.country == cc.id;
      });
      if (cf == cfs.end()) {
        throw DataError("capacity factor file has no rows for '" + cc.id + "'");
      }
      out.push_back(CountryData{load_country_inputs(cc), cf->wind, cf->solar});
    }
    return out;
  });

  // --- calibrate --------------------------------------------------------
  std::vector<CalibratedModel> models;
  std::map<std::string, std::string> input_coverage;
  run_stage("calibrate", [&] {
    std::ostringstream acc;
    acc << "country,sample,n_hours,rmse_mwh,mae_mwh,mape_pct,smape_pct\n";
    for (const auto& cd : data) {
      const CalibrationDataset dataset = build_calibration_dataset(cd.inputs);
      CountryCalibration calibration =
          calibrate_country(dataset, cd.inputs.id, config.train_fraction);
      for (const auto& row : calibration.accuracy) {
        acc << cd.inputs.id << ',' << row.sample << ',' << row.n_hours << ','
            << format_double(row.metrics.rmse) << ','
            << format_double(row.metrics.mae) << ','
            << format_double(row.metrics.mape) << ','
            << format_double(row.metrics.smape) << '\n';
      }
      input_coverage["consumption_" + cd.inputs.id] =
          format_iso_hour(dataset.grid[0].t) + "/" +
          format_iso_hour(dataset.grid[dataset.grid.size() - 1].t + 1);
      models.push_back(std::move(calibration.model));
    }
    write_text(tracker, out_dir / "accuracy.csv", acc.str());

    fs::create_directories(out_dir / "models");
    for (const auto& model : models) {
      const fs::path p = out_dir / "models" / (model.country + ".json");
      write_text(tracker, p, io::model_to_json(model));
    }
  });

  // --- scenario ---------------------------------------------------------
  // models_by_share[share_idx][country_idx]
  std::vector<std::vector<ScenarioModel>> models_by_share;
  run_stage("scenario", [&] {
    std::vector<HeatingInventory> inventories;
    for (const auto& cc : config.countries) inventories.push_back(cc.inventory);
    const auto rows =
        scenario_table(inventories, config.shares, config.replacement_factor);
    std::ostringstream table;
    table << "country,share,temp_sensitive_fossil_twh,replacement_twh,"
             "direct_electric_sw_twh,implied_increase_pct,"
             "sensitivity_increase_pct,baseload_twh\n";
    for (const auto& r : rows) {
      table << r.country << ',' << format_double(r.share) << ','
            << format_double(r.temp_sensitive_fossil_twh) << ','
            << format_double(r.replacement_twh) << ','
            << format_double(r.direct_electric_sw_twh) << ','
            << format_double(r.implied_increase * 100.0) << ','
            << format_double(r.sensitivity_increase * 100.0) << ','
            << format_double(r.baseload_twh) << '\n';
    }
    write_text(tracker, out_dir / "scenario_table.csv", table.str());

    for (double share : config.shares) {
      std::vector<ScenarioModel> per_country;
      for (std::size_t c = 0; c < config.countries.size(); ++c) {
        const ScenarioSpec spec = build_scenario(
            config.countries[c].inventory, share, config.replacement_factor);
        per_country.push_back(apply_electrification(models[c], spec));
      }
      models_by_share.push_back(std::move(per_country));
    }
  });

  // --- weather ----------------------------------------------------------
  WeatherArchive archive;
  std::vector<ScenarioPlan> plans;
  run_stage("weather", [&] {
    std::vector<CountryWeather> cw;
    for (const auto& cd : data) {
      cw.push_back({cd.inputs.id, cd.inputs.stations, cd.wind_cf, cd.solar_cf});
    }
    archive = make_archive(std::move(cw));
    plans = scenario_plans(archive, config.target_year, config.shift_days);
    if (plans.empty()) {
      throw ConfigError("no feasible (source year, shift) pairs in the archive");
    }
    if (config.min_scenarios > 0 &&
        plans.size() < static_cast<std::size_t>(config.min_scenarios)) {
      throw ConfigError(
          "archive yields only " + std::to_string(plans.size()) +
          " scenarios; " + std::to_string(config.min_scenarios) +
          " requested. Extend the shift set or the archive.");
    }
    input_coverage["weather_archive"] = format_iso_hour(archive.start) + "/" +
                                        format_iso_hour(archive.end);
  });

  // --- simulate ---------------------------------------------------------
  MetricsTable metrics;
  std::vector<std::vector<DurationCurve>> duration_by_share(
      config.shares.size());
  run_stage("simulate", [&] {
    const CalendarGrid grid = CalendarGrid::target_year(config.target_year);
    const UtcHour grid_end = grid[grid.size() - 1].t + 1;

    std::vector<std::vector<double>> gdp_by_country, pop_by_country;
    for (const auto& cd : data) {
      if (!cd.inputs.macro.covers(grid[0].t, grid_end)) {
        throw DataError("country '" + cd.inputs.id +
                        "': macro projections do not reach the target year");
      }
      std::vector<double> gdp(grid.size()), pop(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        gdp[i] = cd.inputs.macro.gdp_at(grid[i].t);
        pop[i] = cd.inputs.macro.pop_at(grid[i].t);
      }
      gdp_by_country.push_back(std::move(gdp));
      pop_by_country.push_back(std::move(pop));
    }

    metrics.values.assign(
        config.shares.size(),
        std::vector<std::array<std::vector<double>, 3>>(
            config.countries.size() + 1));

    const std::size_t chunk_size =
        std::max<std::size_t>(static_cast<std::size_t>(config.jobs), 4);
    std::vector<PlanResult> results;
    for (std::size_t chunk_begin = 0; chunk_begin < plans.size();
         chunk_begin += chunk_size) {
      const std::size_t chunk_end =
          std::min(chunk_begin + chunk_size, plans.size());
      results.assign(chunk_end - chunk_begin, PlanResult{});

      parallel_for(chunk_end - chunk_begin, config.jobs, [&](std::size_t k) {
        const ScenarioPlan& plan = plans[chunk_begin + k];
        const WeatherScenario weather =
            materialize_scenario(archive, plan, config.target_year);

        // Feature matrices and VRE generation are share-independent.
        std::vector<FeatureMatrix> design;
        std::vector<std::vector<double>> wind, solar;
        for (std::size_t c = 0; c < data.size(); ++c) {
          design.push_back(build_design_matrix(
              grid, weather.countries[c].station_temps, gdp_by_country[c],
              pop_by_country[c], data[c].inputs.holidays, models[c].trend_origin));
          wind.push_back(vre_generation(weather.countries[c].wind_cf,
                                        config.countries[c].vre.wind_gw));
          solar.push_back(vre_generation(weather.countries[c].solar_cf,
                                         config.countries[c].vre.solar_gw));
        }

        PlanResult& result = results[k];
        result.by_share.resize(config.shares.size());
        for (std::size_t s = 0; s < config.shares.size(); ++s) {
          std::vector<RegionSeries> countries;
          for (std::size_t c = 0; c < data.size(); ++c) {
            countries.push_back(make_region_series(
                data[c].inputs.id,
                predict_scenario(models_by_share[s][c], design[c]), wind[c],
                solar[c]));
          }
          const RegionSeries nordic = aggregate_nordic(countries);

          ShareOutcome& outcome = result.by_share[s];
          for (const auto& region : countries) {
            outcome.metrics.push_back(metrics_for(region, plan.id));
          }
          outcome.metrics.push_back(metrics_for(nordic, plan.id));
          outcome.nordic_duration = load_duration(nordic.consumption);
          if (config.hourly_output != io::HourlyOutput::none) {
            outcome.hourly_csv = hourly_csv_text(config, grid, countries, nordic);
          }
        }
      });

      // Single writer: fold the chunk in plan order.
      for (std::size_t k = 0; k < results.size(); ++k) {
        const ScenarioPlan& plan = plans[chunk_begin + k];
        PlanResult& result = results[k];
        for (std::size_t s = 0; s < config.shares.size(); ++s) {
          ShareOutcome& outcome = result.by_share[s];
          for (std::size_t r = 0; r < outcome.metrics.size(); ++r) {
            const ScenarioMetrics& m = outcome.metrics[r];
            metrics.csv += m.scenario_id;
            metrics.csv += ',';
            metrics.csv += share_label(config.shares[s]);
            metrics.csv += ',';
            metrics.csv += m.region;
            metrics.csv += ',';
            metrics.csv += format_double(m.total_twh);
            metrics.csv += ',';
            metrics.csv += format_double(m.peak_consumption_gwh);
            metrics.csv += ',';
            metrics.csv += format_double(m.peak_residual_gwh);
            metrics.csv += '\n';
            for (int which = 0; which < 3; ++which) {
              metrics.values[s][r][static_cast<std::size_t>(which)].push_back(
                  metric_value(m, which));
            }
          }
          duration_by_share[s].push_back(std::move(outcome.nordic_duration));
          if (!outcome.hourly_csv.empty()) {
            const fs::path p = out_dir / "hourly" /
                               ("share" + share_label(config.shares[s])) /
                               (plan.id + ".csv");
            write_text(tracker, p, outcome.hourly_csv);
          }
        }
      }
    }
    write_text(tracker, out_dir / "metrics.csv", metrics.csv);
  });

  // --- risk -------------------------------------------------------------
  run_stage("risk", [&] {
    std::vector<std::string> regions;
    for (const auto& cc : config.countries) regions.push_back(cc.id);
    regions.emplace_back(kNordicRegion);

    std::ostringstream summary;
    summary << "share,region,metric,mean,std_dev,cvar_upper_5pct,n_scenarios\n";
    nlohmann::json summary_json;
    summary_json["cvar_tail"] = "upper";
    summary_json["cvar_level"] = kCvarAlpha;

    for (std::size_t s = 0; s < config.shares.size(); ++s) {
      for (std::size_t r = 0; r < regions.size(); ++r) {
        for (int which = 0; which < 3; ++which) {
          const auto& values = metrics.values[s][r][static_cast<std::size_t>(which)];
          const RiskSummary rs = scenario_statistics(values, kMetricNames[which]);
          summary << share_label(config.shares[s]) << ',' << regions[r] << ','
                  << rs.metric << ',' << format_double(rs.mean) << ','
                  << format_double(rs.std_dev) << ',' << format_double(rs.cvar5)
                  << ',' << rs.n_scenarios << '\n';
          auto& node = summary_json["shares"][share_label(config.shares[s])]
                                   [regions[r]][rs.metric];
          node["mean"] = rs.mean;
          node["std_dev"] = rs.std_dev;
          node["cvar_upper_5pct"] = rs.cvar5;
          node["n_scenarios"] = rs.n_scenarios;
        }
      }
    }
    write_text(tracker, out_dir / "summary.csv", summary.str());
    write_text(tracker, out_dir / "summary.json", summary_json.dump(2) + "\n");

    // Densities and representative duration curves for the Nordic aggregate.
    const std::size_t nordic_idx = regions.size() - 1;
    for (std::size_t s = 0; s < config.shares.size(); ++s) {
      const std::string label = "share" + share_label(config.shares[s]);
      for (int which = 0; which < 3; ++which) {
        const auto& values =
            metrics.values[s][nordic_idx][static_cast<std::size_t>(which)];
        const DensityCurve density = kde_density(values);
        write_text(tracker,
                   out_dir / "densities" /
                       (std::string(kMetricNames[which]) + "_" + label + ".csv"),
                   density_csv_text(density));
      }
      const RepresentativeCurves curves =
          representative_duration_curves(duration_by_share[s]);
      write_text(tracker, out_dir / "duration" / (label + "_mean.csv"),
                 duration_csv_text(curves.mean));
      write_text(tracker, out_dir / "duration" / (label + "_1in20.csv"),
                 duration_csv_text(curves.one_in_twenty));
    }
  });

  // --- manifest -----------------------------------------------------------
  return run_stage("manifest", [&] {
    io::RunManifest manifest;
    manifest.config_hash = io::config_hash(config);
    manifest.scenario_count = static_cast<int>(plans.size());
    manifest.target_year = config.target_year;
    manifest.input_coverage = input_coverage;
    for (const auto& model : models) {
      manifest.model_hashes[model.country] = io::hex64(io::fnv1a64_file(
          out_dir / "models" / (model.country + ".json")));
    }
    for (const auto& file : tracker.files()) {
      io::OutputEntry entry;
      entry.path = fs::relative(file, out_dir).generic_string();
      entry.checksum = io::hex64(io::fnv1a64_file(file));
      entry.bytes = fs::file_size(file);
      manifest.outputs.push_back(std::move(entry));
    }
    io::save_manifest(out_dir / "manifest.json", manifest);
    tracker.track(out_dir / "manifest.json");
    tracker.commit();
    return io::load_manifest(out_dir / "manifest.json");
  });
}

void rebuild_reports(const fs::path& run_dir) {
  run_stage("report", [&] {
    const fs::path metrics_path = run_dir / "metrics.csv";
    std::ifstream in(metrics_path, std::ios::binary);
    if (!in) throw DataError("cannot open " + metrics_path.string());

    struct Key {
      std::string share, region;
      bool operator<(const Key& o) const {
        return share != o.share ? share < o.share : region < o.region;
      }
    };
    std::map<Key, std::array<std::vector<double>, 3>> groups;
    std::vector<Key> order;  // first-appearance order
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line_no == 1) {
        if (line != std::string(metrics_csv_header()).substr(
                        0, metrics_csv_header().size() - 1)) {
          throw DataError(metrics_path.string() + ": unexpected header");
        }
        continue;
      }
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, ',')) fields.push_back(field);
      if (fields.size() != 6) {
        throw DataError(metrics_path.string() + ":" + std::to_string(line_no) +
                        ": expected 6 fields");
      }
      const Key key{fields[1], fields[2]};
      auto [it, inserted] = groups.try_emplace(key);
      if (inserted) order.push_back(key);
      for (int which = 0; which < 3; ++which) {
        it->second[static_cast<std::size_t>(which)].push_back(
            std::stod(fields[static_cast<std::size_t>(3 + which)]));
      }
    }
    if (groups.empty()) {
      throw DataError(metrics_path.string() + ": no metric rows");
    }

    OutputTracker tracker;
    std::ostringstream summary;
    summary << "share,region,metric,mean,std_dev,cvar_upper_5pct,n_scenarios\n";
    nlohmann::json summary_json;
    summary_json["cvar_tail"] = "upper";
    summary_json["cvar_level"] = kCvarAlpha;
    for (const Key& key : order) {
      const auto& vals = groups.at(key);
      for (int which = 0; which < 3; ++which) {
        const RiskSummary rs = scenario_statistics(
            vals[static_cast<std::size_t>(which)], kMetricNames[which]);
        summary << key.share << ',' << key.region << ',' << rs.metric << ','
                << format_double(rs.mean) << ',' << format_double(rs.std_dev)
                << ',' << format_double(rs.cvar5) << ',' << rs.n_scenarios
                << '\n';
        auto& node = summary_json["shares"][key.share][key.region][rs.metric];
        node["mean"] = rs.mean;
        node["std_dev"] = rs.std_dev;
        node["cvar_upper_5pct"] = rs.cvar5;
        node["n_scenarios"] = rs.n_scenarios;
        if (key.region == kNordicRegion) {
          const DensityCurve density =
              kde_density(vals[static_cast<std::size_t>(which)]);
          write_text(tracker,
                     run_dir / "densities" /
                         (std::string(kMetricNames[which]) + "_share" +
                          key.share + ".csv"),
                     density_csv_text(density));
        }
      }
    }
    write_text(tracker, run_dir / "summary.csv", summary.str());
    write_text(tracker, run_dir / "summary.json", summary_json.dump(2) + "\n");
    tracker.commit();
  });
}

}  // namespace heatrisk
