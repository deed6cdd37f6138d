#include "txnet/report_io.hpp"

#include <cstdio>
#include <fstream>

namespace txnet {

namespace {

nlohmann::json series_to_json(const std::vector<metrics::SeriesPoint>& series) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& pt : series) arr.push_back(nlohmann::json::array({pt.x, pt.y}));
  return arr;
}

}  // namespace

nlohmann::json to_json(const metrics::MetricReport& report) {
  nlohmann::json doc;
  doc["scalars"] = report.scalars;
  doc["notes"] = report.notes;
  nlohmann::json series = nlohmann::json::object();
  for (const auto& [name, pts] : report.series) series[name] = series_to_json(pts);
  doc["series"] = series;
  nlohmann::json per_node = nlohmann::json::object();
  for (const auto& [name, values] : report.per_node) per_node[name] = values;
  doc["per_node"] = per_node;
  return doc;
}

nlohmann::json to_json(const eval::FidelityScore& score) {
  nlohmann::json doc{{"d_degree", score.d_degree},
                     {"d_clustering", score.d_clustering},
                     {"d_betweenness", score.d_betweenness},
                     {"d_closeness", score.d_closeness},
                     {"d_avg", score.d_avg}};
  if (score.kernel) {
    doc["kernel"] = *score.kernel;
    doc["kernel_cap"] = score.kernel_cap;
    doc["kernel_ref_seed"] = score.kernel_ref_seed;
  }
  return doc;
}

nlohmann::json to_json(const sampling::SamplerConfig& config) {
  return nlohmann::json{
      {"method", sampling::method_name(config.method)},
      {"target_nodes", config.target_nodes},
      {"p", config.p},
      {"ff_forward_prob", config.ff_forward_prob},
      {"sb_depth", config.sb_depth},
      {"seed", config.seed},
      {"restart_policy", config.restart_policy == sampling::RestartPolicy::RestartToStart
                             ? "restart_to_start"
                             : "stay_at_current"},
      {"subgraph", config.subgraph_mode == sampling::SubgraphMode::Induced ? "induced"
                                                                           : "traversed"}};
}

void write_series_csv(const std::filesystem::path& dir,
                      const std::map<std::string, std::vector<metrics::SeriesPoint>>& series) {
  std::filesystem::create_directories(dir);
  char buf[64];
  for (const auto& [name, pts] : series) {
    std::ofstream csv(dir / (name + ".csv"), std::ios::trunc);
    if (!csv) throw IoError("cannot write series CSV for '" + name + "'");
    csv << "x,y\n";
    for (const auto& pt : pts) {
      std::snprintf(buf, sizeof(buf), "%.9g", pt.x);
      csv << buf << ',';
      std::snprintf(buf, sizeof(buf), "%.9g", pt.y);
      csv << buf << '\n';
    }
  }
}

}  // namespace txnet
