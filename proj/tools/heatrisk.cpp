#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "heatrisk/errors.hpp"
#include "heatrisk/io/model_json.hpp"
#include "heatrisk/pipeline.hpp"
#include "heatrisk/workflow.hpp"

namespace fs = std::filesystem;
using namespace heatrisk;

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> countries;
  std::vector<double> shares;
  int jobs = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "Run config (JSON)");
  if (config_required) c->required();
  cmd->add_option("--country", opts.countries,
                  "Restrict to these countries (repeatable)");
  cmd->add_option("--share", opts.shares,
                  "Override electrification shares (repeatable)");
  cmd->add_option("--jobs", opts.jobs, "Parallel scenario workers");
  cmd->add_option("--seed", opts.seed, "Reserved for future stochastic modes")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--out", opts.out, "Output directory");
}

io::RunConfig effective_config(const CommonOpts& opts) {
  io::RunConfig config = io::load_config(opts.config_path);
  if (!opts.countries.empty()) {
    std::vector<io::CountryConfig> keep;
    for (const auto& id : opts.countries) {
      const auto it = std::find_if(
          config.countries.begin(), config.countries.end(),
          [&](const io::CountryConfig& c) { return c.id == id; });
      if (it == config.countries.end()) {
        throw ConfigError("--country " + id + " is not in the config");
      }
      keep.push_back(*it);
    }
    config.countries = std::move(keep);
  }
  if (!opts.shares.empty()) config.shares = opts.shares;
  if (opts.jobs > 0) config.jobs = opts.jobs;
  if (opts.seed_set) config.seed = opts.seed;
  if (!opts.out.empty()) config.output_dir = opts.out;
  io::validate(config);
  return config;
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path.string());
  f << text;
}

int cmd_calibrate(const CommonOpts& opts) {
  const io::RunConfig config = effective_config(opts);
  const fs::path out_dir = config.output_dir;
  fs::create_directories(out_dir / "models");
  std::ostringstream acc;
  acc << "country,sample,n_hours,rmse_mwh,mae_mwh,mape_pct,smape_pct\n";
  for (const auto& cc : config.countries) {
    const CalibrationDataset ds =
        build_calibration_dataset(load_country_inputs(cc));
    const CountryCalibration result =
        calibrate_country(ds, cc.id, config.train_fraction);
    io::save_model(out_dir / "models" / (cc.id + ".json"), result.model);
    for (const auto& row : result.accuracy) {
      acc << cc.id << ',' << row.sample << ',' << row.n_hours << ','
          << io::format_double(row.metrics.rmse) << ','
          << io::format_double(row.metrics.mae) << ','
          << io::format_double(row.metrics.mape) << ','
          << io::format_double(row.metrics.smape) << '\n';
      std::printf("%-4s %-6s n=%-7zu RMSE %8.1f MWh  MAE %8.1f MWh  "
                  "MAPE %5.2f%%  sMAPE %5.2f%%\n",
                  cc.id.c_str(), row.sample.c_str(), row.n_hours,
                  row.metrics.rmse, row.metrics.mae, row.metrics.mape,
                  row.metrics.smape);
    }
  }
  write_file(out_dir / "accuracy.csv", acc.str());
  std::cout << "models and accuracy table written to " << out_dir.string()
            << '\n';
  return 0;
}

int cmd_evaluate(const CommonOpts& opts) {
  const io::RunConfig config = effective_config(opts);
  const fs::path out_dir = config.output_dir;
  for (const auto& cc : config.countries) {
    const fs::path model_path = out_dir / "models" / (cc.id + ".json");
    const CalibratedModel model = io::load_model(model_path);
    const CalibrationDataset ds =
        build_calibration_dataset(load_country_inputs(cc));
    const ErrorMetrics m = evaluate_model(model, ds);
    std::printf("%-4s n=%-7zu RMSE %8.1f MWh  MAE %8.1f MWh  MAPE %5.2f%%  "
                "sMAPE %5.2f%%\n",
                cc.id.c_str(), ds.y.size(), m.rmse, m.mae, m.mape, m.smape);
  }
  return 0;
}

int cmd_effects(const CommonOpts& opts) {
  const io::RunConfig config = effective_config(opts);
  std::ostringstream csv;
  csv << "country,group,f_squared\n";
  for (const auto& cc : config.countries) {
    const CalibrationDataset ds =
        build_calibration_dataset(load_country_inputs(cc));
    const CountryCalibration result =
        calibrate_country(ds, cc.id, config.train_fraction);
    std::cout << cc.id << " effect sizes (Cohen's f^2, full sample):\n";
    for (const auto& row : effect_sizes(result.model, ds)) {
      std::printf("  %-8s %.4f\n", row.group.c_str(), row.f_squared);
      csv << cc.id << ',' << row.group << ','
          << io::format_double(row.f_squared) << '\n';
    }
  }
  write_file(fs::path(config.output_dir) / "effects.csv", csv.str());
  return 0;
}

int cmd_scenario_table(const CommonOpts& opts) {
  const io::RunConfig config = effective_config(opts);
  std::vector<HeatingInventory> inventories;
  for (const auto& cc : config.countries) inventories.push_back(cc.inventory);
  const auto rows =
      scenario_table(inventories, config.shares, config.replacement_factor);
  // One decimal, matching how such tables are usually reported.
  std::printf("%-8s %6s %12s %12s %12s %10s %10s %10s\n", "country", "share",
              "fossil_twh", "replace_twh", "elec_sw_twh", "implied_%",
              "increase_%", "const_twh");
  for (const auto& r : rows) {
    std::printf("%-8s %6.2f %12.1f %12.1f %12.1f %10.1f %10.1f %10.1f\n",
                r.country.c_str(), r.share, r.temp_sensitive_fossil_twh,
                r.replacement_twh, r.direct_electric_sw_twh,
                r.implied_increase * 100.0, r.sensitivity_increase * 100.0,
                r.baseload_twh);
  }
  return 0;
}

int cmd_simulate(const CommonOpts& opts) {
  const io::RunConfig config = effective_config(opts);
  const io::RunManifest manifest = run_pipeline(config);
  std::cout << "run complete: " << manifest.scenario_count
            << " weather scenarios x " << config.shares.size()
            << " shares -> " << (fs::path(config.output_dir) / "manifest.json").string()
            << '\n';
  return 0;
}

int cmd_report(const CommonOpts& opts) {
  fs::path run_dir;
  if (!opts.out.empty()) {
    run_dir = opts.out;
  } else if (!opts.config_path.empty()) {
    run_dir = io::load_config(opts.config_path).output_dir;
  } else {
    throw ConfigError("report needs --out <run_dir> or --config");
  }
  rebuild_reports(run_dir);
  std::cout << "summary and densities rebuilt under " << run_dir.string()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weather-risk toolkit for Nordic heating electrification"};
  app.require_subcommand(1);

  CommonOpts calibrate_opts, evaluate_opts, effects_opts, table_opts,
      simulate_opts, report_opts;

  add_common(app.add_subcommand("calibrate",
                                "Fit per-country consumption models"),
             calibrate_opts);
  add_common(app.add_subcommand(
                 "evaluate", "Accuracy of persisted models against the data"),
             evaluate_opts);
  add_common(app.add_subcommand("effects",
                                "Cohen's f^2 per regressor group"),
             effects_opts);
  add_common(app.add_subcommand("scenario-table",
                                "Electrification arithmetic per country"),
             table_opts);
  add_common(app.add_subcommand(
                 "simulate",
                 "Full pipeline: calibrate, simulate weather years, report"),
             simulate_opts);
  add_common(app.add_subcommand(
                 "report", "Rebuild summary/densities from a run directory"),
             report_opts, /*config_required=*/false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("calibrate")) return cmd_calibrate(calibrate_opts);
    if (app.got_subcommand("evaluate")) return cmd_evaluate(evaluate_opts);
    if (app.got_subcommand("effects")) return cmd_effects(effects_opts);
    if (app.got_subcommand("scenario-table")) return cmd_scenario_table(table_opts);
    if (app.got_subcommand("simulate")) return cmd_simulate(simulate_opts);
    if (app.got_subcommand("report")) return cmd_report(report_opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 4;
  } catch (const ContractError& e) {
    std::cerr << "contract error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
