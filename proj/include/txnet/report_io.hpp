#pragma once

// JSON/CSV serialization of report types: MetricReport and FidelityScore to
// JSON documents, plot series to CSV, SamplerConfig to the manifest form
// used by the CLI. Output is deterministic (sorted keys, shortest
// round-trip float formatting).

#include <filesystem>

#include <json.hpp>

#include "txnet/evaluation.hpp"
#include "txnet/metrics.hpp"
#include "txnet/sampling.hpp"

namespace txnet {

nlohmann::json to_json(const metrics::MetricReport& report);
nlohmann::json to_json(const eval::FidelityScore& score);
nlohmann::json to_json(const sampling::SamplerConfig& config);

// One x,y CSV per series; file name is "<name>.csv" under dir.
void write_series_csv(const std::filesystem::path& dir,
                      const std::map<std::string, std::vector<metrics::SeriesPoint>>& series);

}  // namespace txnet
