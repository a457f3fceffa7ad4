#pragma once

#include <filesystem>

#include "heatrisk/io/config.hpp"
#include "heatrisk/io/manifest.hpp"

namespace heatrisk {

/// Runs the whole study: ingest, per-country calibration, scenario tables,
/// shifted-date weather scenarios, simulation across all shares, risk
/// reports, manifest. Returns the manifest that was written to
/// `<output_dir>/manifest.json`.
///
/// The run is a pure function of the config and the input files: reruns
/// with an identical config produce byte-identical outputs. On error the
/// files created by this run are removed and the error is rethrown with a
/// stage tag.
io::RunManifest run_pipeline(const io::RunConfig& config);

/// Recomputes summary.csv/summary.json and the density curves from an
/// existing run directory's metrics.csv (duration curves need the hourly
/// simulation and are produced by run_pipeline only).
void rebuild_reports(const std::filesystem::path& run_dir);

}  // namespace heatrisk
