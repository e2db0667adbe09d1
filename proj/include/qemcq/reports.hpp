#pragma once

#include <string>

#include "json.hpp"
#include "qemcq/campaign.hpp"
#include "qemcq/clustering.hpp"
#include "qemcq/model_spec.hpp"

namespace qemcq {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json campaign_config_json(const CampaignConfig& config);

// Campaign report for `generate`: per-run table, summary stats over array
// sizes, best run, and the mean round-1 trace when recorded.
nlohmann::json generate_report(const ParameterModel& model,
                               const CampaignConfig& config,
                               const GenerateCampaignResult& result);

// Campaign report for `cluster`: per-run table and stats over MQ.
nlohmann::json cluster_report(const ModuleGraph& graph,
                              const CampaignConfig& config,
                              const ClusterCampaignResult& result);

// Best clustering as labels, member lists, per-cluster factors, and MQ.
nlohmann::json clustering_json(const ModuleGraph& graph,
                               const ClusterResult& result);

// Side-by-side report for `compare`; `qemcq_side`/`emcq_side` are the two
// campaign reports.
nlohmann::json compare_report(const std::string& instance,
                              const nlohmann::json& qemcq_side,
                              const nlohmann::json& emcq_side);

}  // namespace qemcq
