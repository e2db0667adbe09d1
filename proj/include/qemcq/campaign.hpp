#pragma once

#include <cstdint>
#include <vector>

#include "qemcq/clustering.hpp"
#include "qemcq/covering_array.hpp"
#include "qemcq/search.hpp"

namespace qemcq {

// A campaign repeats independent runs with per-run seed = base_seed + run
// index and aggregates the results. Runs execute in parallel (OpenMP);
// everything except wall-clock times is independent of the thread count.
struct CampaignConfig {
  int runs = 20;
  std::uint64_t base_seed = 1;
  RunConfig run;                // per-run settings; run.seed is overridden
  CoverageKernel kernel = CoverageKernel::kAuto;
  int threads = 0;              // 0 = OpenMP default
  bool record_traces = false;   // collect mean best-so-far trace
};

struct RunSummary {
  int run_index = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;       // array size (min) or MQ (max)
  long long evaluations = 0;
  double wall_ms = 0.0;
};

struct CampaignStats {
  double best = 0.0;
  double worst = 0.0;
  double mean = 0.0;
  double stddev = 0.0;          // population standard deviation
};

CampaignStats summarize(const std::vector<double>& values, bool minimize);

// Best-so-far trace averaged across runs on a common evaluation grid
// (each run's trace padded with its final value), downsampled to at most
// `max_points` points.
struct MeanTrace {
  std::vector<int> evaluation;  // 1-based evaluation indices
  std::vector<double> best;
};

MeanTrace mean_trace(const std::vector<std::vector<double>>& traces,
                     int budget, int max_points = 500);

struct GenerateCampaignResult {
  std::vector<RunSummary> runs;
  CoveringArray best_array;     // smallest array; earliest run wins ties
  int best_run = 0;
  CampaignStats stats;          // over array sizes
  MeanTrace trace;              // round-1 traces, if recorded
};

GenerateCampaignResult run_generate_campaign(const ParameterModel& model,
                                             const CampaignConfig& config);

struct ClusterCampaignResult {
  std::vector<RunSummary> runs;
  ClusterResult best;           // highest MQ; earliest run wins ties
  int best_run = 0;
  CampaignStats stats;          // over MQ values
  MeanTrace trace;
};

ClusterCampaignResult run_cluster_campaign(const ModuleGraph& graph,
                                           const CampaignConfig& config);

}  // namespace qemcq
