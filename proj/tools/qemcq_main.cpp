#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qemcq/campaign.hpp"
#include "qemcq/clustering.hpp"
#include "qemcq/covering_array.hpp"
#include "qemcq/model_spec.hpp"
#include "qemcq/reports.hpp"
#include "qemcq/verify.hpp"

// Exit codes: 0 success (verify: fully covered), 1 verification found
// missing interactions, 2 usage or input errors.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
  int runs = 20;
  std::uint64_t seed = 1;
  std::string selector = "qemcq";
  int population = 20;
  int max_iter = 2500;
  int max_evals = 1500;
  double gamma = 0.8;
  int threads = 0;
  std::string out_dir = ".";
};

void add_common_options(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--runs", opts->runs, "Independent runs in the campaign")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts->seed,
                  "Base seed; run r uses seed base + r");
  cmd->add_option("--selector", opts->selector,
                  "Operator selection policy: qemcq or emcq")
      ->check(CLI::IsMember({"qemcq", "emcq"}));
  cmd->add_option("--population", opts->population, "Population size")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", opts->max_iter,
                  "Operator applications per run")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-evals", opts->max_evals,
                  "Fitness evaluation budget per run")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", opts->gamma, "Q-learning discount factor")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--threads", opts->threads,
                  "Campaign worker threads (0 = library default)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", opts->out_dir, "Output directory");
}

qemcq::CampaignConfig campaign_config(const CommonOptions& opts,
                                      bool record_traces) {
  qemcq::CampaignConfig config;
  config.runs = opts.runs;
  config.base_seed = opts.seed;
  config.threads = opts.threads;
  config.record_traces = record_traces;
  config.run.selector = opts.selector == "emcq"
                            ? qemcq::SelectorKind::kEMCQ
                            : qemcq::SelectorKind::kQEMCQ;
  config.run.population_size = opts.population;
  config.run.max_iterations = opts.max_iter;
  config.run.max_evaluations = opts.max_evals;
  config.run.discount = opts.gamma;
  return config;
}

qemcq::ParameterModel load_model(const std::string& spec,
                                 std::optional<int> strength) {
  qemcq::ParameterModel model = qemcq::parse_model(spec);
  if (strength) {
    model.strength = *strength;
    qemcq::validate_model(model);
  }
  return model;
}

qemcq::ModuleGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return qemcq::parse_graph(in);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << text;
}

void write_json(const fs::path& path, const json& value) {
  write_text(path, value.dump(2) + "\n");
}

int cmd_generate(const std::string& model_spec, std::optional<int> strength,
                 const CommonOptions& opts) {
  const qemcq::ParameterModel model = load_model(model_spec, strength);
  const qemcq::CampaignConfig config = campaign_config(opts, false);
  const qemcq::GenerateCampaignResult result =
      qemcq::run_generate_campaign(model, config);

  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  std::ofstream csv(dir / "array.csv", std::ios::binary);
  qemcq::write_csv(csv, result.best_array);
  csv.close();
  write_json(dir / "report.json",
             qemcq::generate_report(model, config, result));

  std::cout << "model " << qemcq::format_model(model) << ": best size "
            << result.best_array.size() << " (lower bound "
            << qemcq::size_lower_bound(model) << ", mean "
            << result.stats.mean << " over " << config.runs << " runs)\n";
  return 0;
}

int cmd_verify(const std::string& array_path, const std::string& model_spec,
               std::optional<int> strength) {
  const qemcq::ParameterModel model = load_model(model_spec, strength);
  std::ifstream in(array_path);
  if (!in) {
    throw std::runtime_error("cannot open array file '" + array_path + "'");
  }
  const qemcq::CoveringArray array = qemcq::read_csv(in, model);
  const qemcq::VerifyReport report = qemcq::verify_coverage(array);
  if (report.covered) {
    std::cout << "covered: " << array.size() << " rows cover all "
              << qemcq::interaction_count(model) << " interactions\n";
    return 0;
  }
  std::cout << "missing " << report.missing.size() << " interaction(s):\n";
  for (const qemcq::InteractionTuple& tuple : report.missing) {
    std::cout << " ";
    for (std::size_t j = 0; j < tuple.columns.size(); ++j) {
      std::cout << " p" << (tuple.columns[j] + 1) << '=' << tuple.values[j];
    }
    std::cout << '\n';
  }
  return 1;
}

int cmd_cluster(const std::string& graph_path, const CommonOptions& opts) {
  const qemcq::ModuleGraph graph = load_graph(graph_path);
  const qemcq::CampaignConfig config = campaign_config(opts, false);
  const qemcq::ClusterCampaignResult result =
      qemcq::run_cluster_campaign(graph, config);

  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  write_json(dir / "clustering.json",
             qemcq::clustering_json(graph, result.best));
  write_json(dir / "report.json",
             qemcq::cluster_report(graph, config, result));

  std::cout << "graph with " << graph.module_count() << " modules: best MQ "
            << result.best.score.value << " in "
            << result.best.score.per_cluster.size() << " clusters (mean "
            << result.stats.mean << " over " << config.runs << " runs)\n";
  return 0;
}

int cmd_compare(const std::string& model_spec, std::optional<int> strength,
                const std::string& graph_path, const CommonOptions& opts) {
  qemcq::CampaignConfig q_config = campaign_config(opts, true);
  q_config.run.selector = qemcq::SelectorKind::kQEMCQ;
  qemcq::CampaignConfig e_config = q_config;
  e_config.run.selector = qemcq::SelectorKind::kEMCQ;

  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);

  std::string instance;
  json q_side, e_side;
  if (!model_spec.empty()) {
    const qemcq::ParameterModel model = load_model(model_spec, strength);
    instance = qemcq::format_model(model);
    const qemcq::GenerateCampaignResult q_result =
        qemcq::run_generate_campaign(model, q_config);
    const qemcq::GenerateCampaignResult e_result =
        qemcq::run_generate_campaign(model, e_config);
    q_side = qemcq::generate_report(model, q_config, q_result);
    e_side = qemcq::generate_report(model, e_config, e_result);
    std::ofstream q_csv(dir / "best_qemcq.csv", std::ios::binary);
    qemcq::write_csv(q_csv, q_result.best_array);
    std::ofstream e_csv(dir / "best_emcq.csv", std::ios::binary);
    qemcq::write_csv(e_csv, e_result.best_array);
    std::cout << "qemcq best " << q_result.stats.best << " mean "
              << q_result.stats.mean << " | emcq best " << e_result.stats.best
              << " mean " << e_result.stats.mean << '\n';
  } else {
    const qemcq::ModuleGraph graph = load_graph(graph_path);
    instance = "graph:" + graph_path;
    const qemcq::ClusterCampaignResult q_result =
        qemcq::run_cluster_campaign(graph, q_config);
    const qemcq::ClusterCampaignResult e_result =
        qemcq::run_cluster_campaign(graph, e_config);
    q_side = qemcq::cluster_report(graph, q_config, q_result);
    e_side = qemcq::cluster_report(graph, e_config, e_result);
    write_json(dir / "best_qemcq.json",
               qemcq::clustering_json(graph, q_result.best));
    write_json(dir / "best_emcq.json",
               qemcq::clustering_json(graph, e_result.best));
    std::cout << "qemcq best " << q_result.stats.best << " mean "
              << q_result.stats.mean << " | emcq best " << e_result.stats.best
              << " mean " << e_result.stats.mean << '\n';
  }
  write_json(dir / "compare.json",
             qemcq::compare_report(instance, q_side, e_side));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Covering array generation and software module clustering via "
      "Q-learning over exponential Monte Carlo operator selection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qemcq::kToolVersion);

  std::string model_spec;
  std::string graph_path;
  std::string array_path;
  std::optional<int> strength;
  CommonOptions opts;

  CLI::App* generate =
      app.add_subcommand("generate", "Construct a covering array");
  generate->add_option("--model", model_spec,
                       "Model spec, e.g. \"t=2 3^4\" or \"t=3 5^1 3^3 2^2\"")
      ->required();
  generate->add_option("--strength", strength,
                       "Override the interaction strength t");
  add_common_options(generate, &opts);

  CLI::App* verify =
      app.add_subcommand("verify", "Check an array CSV for full coverage");
  verify->add_option("array", array_path, "Array CSV path")->required();
  verify->add_option("--model", model_spec, "Model spec")->required();
  verify->add_option("--strength", strength,
                     "Override the interaction strength t");

  CLI::App* cluster =
      app.add_subcommand("cluster", "Cluster a module dependency graph");
  cluster->add_option("--graph", graph_path, "Graph file path")->required();
  add_common_options(cluster, &opts);

  CLI::App* compare = app.add_subcommand(
      "compare", "Run both selectors side by side on one instance");
  CLI::Option* compare_model =
      compare->add_option("--model", model_spec, "Model spec");
  compare->add_option("--strength", strength,
                      "Override the interaction strength t");
  CLI::Option* compare_graph =
      compare->add_option("--graph", graph_path, "Graph file path");
  compare_model->excludes(compare_graph);
  add_common_options(compare, &opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) return cmd_generate(model_spec, strength, opts);
    if (verify->parsed()) return cmd_verify(array_path, model_spec, strength);
    if (cluster->parsed()) return cmd_cluster(graph_path, opts);
    if (compare->parsed()) {
      if (model_spec.empty() && graph_path.empty()) {
        std::cerr << "compare: provide --model or --graph\n";
        return 2;
      }
      return cmd_compare(model_spec, strength, graph_path, opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
