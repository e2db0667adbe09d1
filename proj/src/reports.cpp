#include "qemcq/reports.hpp"

namespace qemcq {

namespace {

using nlohmann::json;

json tool_json() {
  return json{{"name", "qemcq"}, {"version", kToolVersion}};
}

json runs_json(const std::vector<RunSummary>& runs, const char* objective) {
  json out = json::array();
  for (const RunSummary& r : runs) {
    out.push_back(json{{"run", r.run_index},
                       {"seed", r.seed},
                       {objective, r.objective},
                       {"evaluations", r.evaluations},
                       {"wall_ms", r.wall_ms}});
  }
  return out;
}

json stats_json(const CampaignStats& stats, const char* objective,
                const char* direction, int best_run) {
  return json{{"objective", objective}, {"direction", direction},
              {"best", stats.best},     {"worst", stats.worst},
              {"mean", stats.mean},     {"stddev", stats.stddev},
              {"best_run", best_run}};
}

json trace_json(const MeanTrace& trace) {
  return json{{"evaluation", trace.evaluation}, {"mean_best", trace.best}};
}

const char* selector_name(SelectorKind selector) {
  return selector == SelectorKind::kQEMCQ ? "qemcq" : "emcq";
}

}  // namespace

json campaign_config_json(const CampaignConfig& config) {
  return json{{"runs", config.runs},
              {"base_seed", config.base_seed},
              {"selector", selector_name(config.run.selector)},
              {"population", config.run.population_size},
              {"max_iterations", config.run.max_iterations},
              {"max_evaluations", config.run.max_evaluations},
              {"discount", config.run.discount},
              {"threads", config.threads}};
}

json generate_report(const ParameterModel& model,
                     const CampaignConfig& config,
                     const GenerateCampaignResult& result) {
  json report{{"schema_version", kReportSchemaVersion},
              {"tool", tool_json()},
              {"command", "generate"},
              {"model", format_model(model)},
              {"interactions", interaction_count(model)},
              {"size_lower_bound", size_lower_bound(model)},
              {"config", campaign_config_json(config)},
              {"runs", runs_json(result.runs, "size")},
              {"summary",
               stats_json(result.stats, "size", "min", result.best_run)}};
  if (!result.trace.evaluation.empty()) {
    report["trace"] = trace_json(result.trace);
  }
  return report;
}

json cluster_report(const ModuleGraph& graph, const CampaignConfig& config,
                    const ClusterCampaignResult& result) {
  json report{{"schema_version", kReportSchemaVersion},
              {"tool", tool_json()},
              {"command", "cluster"},
              {"modules", graph.module_count()},
              {"edges", static_cast<int>(graph.edges.size())},
              {"config", campaign_config_json(config)},
              {"runs", runs_json(result.runs, "mq")},
              {"summary",
               stats_json(result.stats, "mq", "max", result.best_run)}};
  if (!result.trace.evaluation.empty()) {
    report["trace"] = trace_json(result.trace);
  }
  return report;
}

json clustering_json(const ModuleGraph& graph, const ClusterResult& result) {
  const int cluster_count =
      static_cast<int>(result.score.per_cluster.size());
  json clusters = json::array();
  for (int c = 0; c < cluster_count; ++c) {
    json members = json::array();
    for (std::size_t i = 0; i < result.clustering.labels.size(); ++i) {
      if (result.clustering.labels[i] == c) {
        members.push_back(graph.module_names[i]);
      }
    }
    clusters.push_back(json{{"id", c},
                            {"members", members},
                            {"mf", result.score.per_cluster[c]}});
  }
  return json{{"schema_version", kReportSchemaVersion},
              {"mq", result.score.value},
              {"cluster_count", cluster_count},
              {"modules", graph.module_names},
              {"labels", result.clustering.labels},
              {"clusters", clusters}};
}

json compare_report(const std::string& instance, const json& qemcq_side,
                    const json& emcq_side) {
  json delta;
  if (qemcq_side.contains("summary") && emcq_side.contains("summary")) {
    const json& q = qemcq_side["summary"];
    const json& e = emcq_side["summary"];
    delta = json{{"objective", q["objective"]},
                 {"mean", q["mean"].get<double>() - e["mean"].get<double>()},
                 {"best", q["best"].get<double>() - e["best"].get<double>()}};
  }
  return json{{"schema_version", kReportSchemaVersion},
              {"tool", tool_json()},
              {"command", "compare"},
              {"instance", instance},
              {"qemcq", qemcq_side},
              {"emcq", emcq_side},
              {"delta", delta}};
}

}  // namespace qemcq
