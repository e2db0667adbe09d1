#include "qemcq/campaign.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qemcq {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

int campaign_threads(const CampaignConfig& config) {
#ifdef _OPENMP
  return config.threads > 0 ? config.threads : omp_get_max_threads();
#else
  (void)config;
  return 1;
#endif
}

void validate_campaign(const CampaignConfig& config) {
  if (config.runs < 1) throw std::invalid_argument("campaign needs >= 1 run");
}

}  // namespace

CampaignStats summarize(const std::vector<double>& values, bool minimize) {
  if (values.empty()) {
    throw std::invalid_argument("summarize: no values");
  }
  CampaignStats stats;
  stats.best = values[0];
  stats.worst = values[0];
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    if (minimize ? v < stats.best : v > stats.best) stats.best = v;
    if (minimize ? v > stats.worst : v < stats.worst) stats.worst = v;
  }
  stats.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - stats.mean) * (v - stats.mean);
  stats.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return stats;
}

MeanTrace mean_trace(const std::vector<std::vector<double>>& traces,
                     int budget, int max_points) {
  MeanTrace out;
  if (traces.empty() || budget < 1 || max_points < 1) return out;
  std::vector<double> acc(budget, 0.0);
  int counted = 0;
  for (const std::vector<double>& trace : traces) {
    if (trace.empty()) continue;
    ++counted;
    for (int i = 0; i < budget; ++i) {
      // Pad short traces with their final best-so-far value.
      const std::size_t j = std::min<std::size_t>(i, trace.size() - 1);
      acc[i] += trace[j];
    }
  }
  if (counted == 0) return out;
  const int points = std::min(budget, max_points);
  out.evaluation.reserve(points);
  out.best.reserve(points);
  for (int i = 1; i <= points; ++i) {
    const int eval_index = static_cast<int>(
        static_cast<long long>(i) * budget / points);  // 1-based, ends at budget
    out.evaluation.push_back(eval_index);
    out.best.push_back(acc[eval_index - 1] / counted);
  }
  return out;
}

GenerateCampaignResult run_generate_campaign(const ParameterModel& model,
                                             const CampaignConfig& config) {
  validate_campaign(config);
  validate_model(model);

  const int runs = config.runs;
  std::vector<GenerateResult> outputs(runs);
  std::vector<RunSummary> summaries(runs);
  const int threads = campaign_threads(config);
  (void)threads;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (int r = 0; r < runs; ++r) {
    const auto start = std::chrono::steady_clock::now();
    GenerateConfig gen;
    gen.run = config.run;
    gen.seed = config.base_seed + static_cast<std::uint64_t>(r);
    gen.kernel = config.kernel;
    gen.record_first_round_trace = config.record_traces;
    outputs[r] = generate(model, gen);
    summaries[r] = RunSummary{
        r, gen.seed, static_cast<double>(outputs[r].array.size()),
        outputs[r].evaluations_used, elapsed_ms(start)};
  }

  GenerateCampaignResult result;
  result.runs = std::move(summaries);
  int best = 0;
  std::vector<double> sizes(runs);
  for (int r = 0; r < runs; ++r) {
    sizes[r] = static_cast<double>(outputs[r].array.size());
    if (outputs[r].array.size() < outputs[best].array.size()) best = r;
  }
  result.best_run = best;
  result.best_array = std::move(outputs[best].array);
  result.stats = summarize(sizes, /*minimize=*/true);
  if (config.record_traces) {
    std::vector<std::vector<double>> traces(runs);
    for (int r = 0; r < runs; ++r) {
      traces[r] = std::move(outputs[r].first_round_trace);
    }
    result.trace = mean_trace(traces, config.run.max_evaluations);
  }
  return result;
}

ClusterCampaignResult run_cluster_campaign(const ModuleGraph& graph,
                                           const CampaignConfig& config) {
  validate_campaign(config);
  validate_graph(graph);

  const int runs = config.runs;
  std::vector<ClusterResult> outputs(runs);
  std::vector<RunSummary> summaries(runs);
  const int threads = campaign_threads(config);
  (void)threads;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (int r = 0; r < runs; ++r) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig run = config.run;
    run.seed = config.base_seed + static_cast<std::uint64_t>(r);
    run.record_trace = config.record_traces;
    outputs[r] = maximize_mq(graph, run);
    summaries[r] = RunSummary{r, run.seed, outputs[r].score.value,
                              outputs[r].evaluations_used, elapsed_ms(start)};
  }

  ClusterCampaignResult result;
  result.runs = std::move(summaries);
  int best = 0;
  std::vector<double> scores(runs);
  for (int r = 0; r < runs; ++r) {
    scores[r] = outputs[r].score.value;
    if (outputs[r].score.value > outputs[best].score.value) best = r;
  }
  result.best_run = best;
  result.stats = summarize(scores, /*minimize=*/false);
  if (config.record_traces) {
    std::vector<std::vector<double>> traces(runs);
    for (int r = 0; r < runs; ++r) traces[r] = std::move(outputs[r].trace);
    result.trace = mean_trace(traces, config.run.max_evaluations);
  }
  result.best = std::move(outputs[best]);
  return result;
}

}  // namespace qemcq
