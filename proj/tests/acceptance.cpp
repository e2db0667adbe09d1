// Acceptance gate: nine end-to-end criteria, one PASS/FAIL line each.
// Usage: acceptance --cli <path-to-cli-binary>
// Exit code 0 only if every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qemcq/campaign.hpp"
#include "qemcq/clustering.hpp"
#include "qemcq/covering_array.hpp"
#include "qemcq/model_spec.hpp"
#include "qemcq/qtable.hpp"
#include "qemcq/search.hpp"
#include "qemcq/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qemcq;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name
            << " (" << detail << ")\n";
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

ParameterModel model_of(int strength, std::vector<int> levels) {
  ParameterModel model;
  model.strength = strength;
  model.levels = std::move(levels);
  return model;
}

// ---- criterion 1: interaction totals ----------------------------------

void criterion_interaction_counts() {
  const auto start = std::chrono::steady_clock::now();
  const long long uniform = interaction_count(model_of(2, {3, 3, 3, 3}));
  const long long mixed = interaction_count(model_of(2, {3, 3, 2, 2}));
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "t=2 3^4 -> " << uniform << ", t=2 3^2 2^2 -> " << mixed << ", "
         << elapsed << "s";
  report(1, "interaction totals are exact", uniform == 54 && mixed == 37 &&
             elapsed < 1.0, detail.str());
}

// ---- criterion 2: worked q-update episodes ----------------------------

void criterion_q_update_episodes() {
  constexpr OperatorId kS = OperatorId::kLevyPerturbation;
  constexpr OperatorId kA = OperatorId::kLocalPollination;
  constexpr OperatorId kB = OperatorId::kGlobalPollination;
  bool pass = true;
  std::ostringstream detail;

  {
    QTable table(0.10);
    table.set(kS, kA, 1.25);
    table.set(kA, kB, 1.00);
    table.update(kS, kA, -1.0, 0.70);
    pass = pass && std::fabs(table.at(kS, kA) - (-0.255)) < 0.005;
    detail << table.at(kS, kA);
  }
  {
    QTable table(0.10);
    table.set(kS, kA, 1.00);
    table.set(kA, kB, 1.00);
    table.update(kS, kA, -1.0, 0.70);
    pass = pass && std::fabs(table.at(kS, kA) - (-0.33)) < 0.005;
    detail << ", " << table.at(kS, kA);
  }
  {
    QTable table(0.10);
    table.set(kS, kA, 1.00);
    table.set(kA, kB, 0.95);
    table.update(kS, kA, 1.0, 0.70);
    pass = pass && std::fabs(table.at(kS, kA) - 1.0665) < 0.005;
    detail << ", " << table.at(kS, kA);
  }
  report(2, "q-updates reproduce the worked episodes", pass, detail.str());
}

// ---- criteria 3 and 4: benchmark campaigns + verification -------------

struct CampaignOutcome {
  int best_size = 0;
  bool all_verified = true;
  bool all_in_envelope = true;
  double elapsed = 0.0;
};

CampaignOutcome run_benchmark(const ParameterModel& model,
                              std::uint64_t base_seed, int runs) {
  const auto start = std::chrono::steady_clock::now();
  CampaignOutcome outcome;
  outcome.best_size = 1 << 30;
  long long full_factorial = 1;
  for (int v : model.levels) full_factorial *= v;
  for (int r = 0; r < runs; ++r) {
    GenerateConfig config;
    config.seed = base_seed + static_cast<std::uint64_t>(r);
    const GenerateResult result = generate(model, config);
    const int size = result.array.size();
    if (size < outcome.best_size) outcome.best_size = size;
    if (!verify_coverage(result.array).covered) outcome.all_verified = false;
    if (size < size_lower_bound(model) || size > full_factorial) {
      outcome.all_in_envelope = false;
    }
  }
  outcome.elapsed = seconds_since(start);
  return outcome;
}

void criteria_benchmarks(CampaignOutcome& uniform, CampaignOutcome& mixed) {
  uniform = run_benchmark(model_of(2, {3, 3, 3, 3}), 1, 20);
  mixed = run_benchmark(model_of(3, {3, 2, 2, 2}), 1, 20);
  std::ostringstream detail;
  detail << "t=2 3^4 best " << uniform.best_size << " in " << uniform.elapsed
         << "s; t=3 3^1 2^3 best " << mixed.best_size << " in "
         << mixed.elapsed << "s";
  report(3, "20-run campaigns reach the reference sizes",
         uniform.best_size == 9 && mixed.best_size == 12 &&
             uniform.elapsed < 120.0 && mixed.elapsed < 120.0,
         detail.str());

  const bool verified = uniform.all_verified && mixed.all_verified &&
                        uniform.all_in_envelope && mixed.all_in_envelope;
  report(4, "every generated array passes the independent verifier",
         verified, verified ? "40/40 arrays covered and inside the size envelope"
                            : "at least one array failed");
}

// ---- criterion 5: paired selector comparison --------------------------

void criterion_selector_comparison() {
  const ParameterModel model = model_of(2, {5, 3, 3, 3, 2, 2});
  const auto start = std::chrono::steady_clock::now();
  double qemcq_total = 0.0;
  double emcq_total = 0.0;
  const int runs = 20;
  for (int r = 0; r < runs; ++r) {
    GenerateConfig config;
    config.seed = 1 + static_cast<std::uint64_t>(r);
    config.run.selector = SelectorKind::kQEMCQ;
    qemcq_total += generate(model, config).array.size();
    config.run.selector = SelectorKind::kEMCQ;
    emcq_total += generate(model, config).array.size();
  }
  const double qemcq_mean = qemcq_total / runs;
  const double emcq_mean = emcq_total / runs;
  std::ostringstream detail;
  detail << "qemcq mean " << qemcq_mean << ", emcq mean " << emcq_mean << ", "
         << seconds_since(start) << "s";
  report(5, "learned selection is no worse than random re-selection",
         qemcq_mean <= emcq_mean + 0.5, detail.str());
}

// ---- criterion 6: operator fuzz ----------------------------------------

void criterion_operator_fuzz() {
  const auto start = std::chrono::steady_clock::now();
  Rng master(424242);
  long long violations = 0;
  const int invocations = 100000;
  for (int op = 0; op < kOperatorCount; ++op) {
    for (int trial = 0; trial < invocations; ++trial) {
      const int dim = master.uniform_int(1, 6);
      Bounds bounds(dim);
      std::vector<double> weights(dim);
      for (int d = 0; d < dim; ++d) {
        bounds[d] = ValueRange{0, master.uniform_int(1, 4)};
        weights[d] = (master.uniform01() - 0.5) * 4.0;
      }
      SearchProblem problem;
      problem.bounds = bounds;
      problem.fitness = [&weights](const SolutionVector& v) {
        double f = 0.0;
        for (std::size_t d = 0; d < v.size(); ++d) f += weights[d] * v[d];
        return f;
      };
      const int size = master.uniform_int(1, 5);
      Population pop;
      double pre_best = 0.0;
      for (int i = 0; i < size; ++i) {
        SolutionVector v(dim);
        for (int d = 0; d < dim; ++d) {
          v[d] = master.uniform_int(bounds[d].lo, bounds[d].hi);
        }
        pop.fitness.push_back(problem.fitness(v));
        pop.members.push_back(std::move(v));
        if (i == 0 || pop.fitness.back() > pre_best) {
          pre_best = pop.fitness.back();
        }
      }

      Evaluator eval(problem, 1 << 20);
      Rng rng(master.next_u64());
      const OperatorOutcome out = apply_operator(
          static_cast<OperatorId>(op), pop, eval, LevyParams{}, bounds, rng);

      bool ok = in_bounds(out.best, bounds);
      for (int i = 0; i < size; ++i) {
        ok = ok && in_bounds(pop.members[i], bounds);
        ok = ok && out.best_fitness >= pop.fitness[i];
      }
      ok = ok && out.best_fitness >= pre_best;
      ok = ok && out.best_fitness == problem.fitness(out.best);
      if (!ok) ++violations;
    }
  }
  std::ostringstream detail;
  detail << 4 * invocations << " invocations, " << violations
         << " violations, " << seconds_since(start) << "s";
  report(6, "operators never leave bounds or lose the best", violations == 0,
         detail.str());
}

// ---- criterion 7: clustering against the exact oracle ------------------

void criterion_clustering_vs_oracle() {
  const auto start = std::chrono::steady_clock::now();
  Rng graph_rng(20240815);
  int matches = 0;
  bool within_five_percent = true;
  double brute_seconds = 0.0;
  const int graphs = 20;
  for (int g = 0; g < graphs; ++g) {
    const int n = 5 + g % 4;  // 5..8 modules
    ModuleGraph graph;
    for (int i = 0; i < n; ++i) {
      graph.module_names.push_back("m" + std::to_string(i));
    }
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (graph_rng.uniform01() < 0.4) graph.edges.push_back({u, v, 1.0});
      }
    }

    const auto brute_start = std::chrono::steady_clock::now();
    const ClusterResult oracle = brute_force_mq(graph, 10);
    brute_seconds += seconds_since(brute_start);

    RunConfig config;
    config.seed = 1000 + static_cast<std::uint64_t>(g);
    const ClusterResult found = maximize_mq(graph, config);

    if (std::fabs(found.score.value - oracle.score.value) < 1e-9) {
      ++matches;
    } else if (oracle.score.value > 0.0 &&
               found.score.value < 0.95 * oracle.score.value) {
      within_five_percent = false;
    }
  }
  std::ostringstream detail;
  detail << matches << "/" << graphs << " optima matched, brute force "
         << brute_seconds << "s, total " << seconds_since(start) << "s";
  report(7, "the search tracks the exact clustering oracle",
         matches >= 19 && within_five_percent && brute_seconds < 60.0,
         detail.str());
}

// ---- criterion 8: mq reference values ----------------------------------

void criterion_mq_values() {
  ModuleGraph graph;
  graph.module_names = {"A", "B", "C", "D"};
  graph.edges = {{0, 1, 1.0}, {2, 3, 1.0}, {1, 2, 1.0}};

  const double one =
      modularization_quality(Clustering{{0, 0, 0, 0}}, graph).value;
  const double zero =
      modularization_quality(Clustering{{0, 1, 2, 3}}, graph).value;
  const double pairs =
      modularization_quality(Clustering{{0, 0, 1, 1}}, graph).value;

  const bool pass = std::fabs(one - 1.0) < 1e-12 && zero == 0.0 &&
                    std::fabs(pairs - 4.0 / 3.0) < 1e-12;
  std::ostringstream detail;
  detail << "single cluster " << one << ", singletons " << zero
         << ", two pairs " << pairs;
  report(8, "mq reference values are exact", pass, detail.str());
}

// ---- criterion 9: CLI determinism ---------------------------------------

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void strip_wall_fields(json& value) {
  if (value.is_object()) {
    value.erase("wall_ms");
    for (auto& [key, child] : value.items()) strip_wall_fields(child);
  } else if (value.is_array()) {
    for (auto& child : value) strip_wall_fields(child);
  }
}

bool reports_equal_modulo_timing(const fs::path& a, const fs::path& b) {
  json ja = json::parse(read_file(a));
  json jb = json::parse(read_file(b));
  strip_wall_fields(ja);
  strip_wall_fields(jb);
  return ja == jb;
}

void criterion_cli_determinism(const std::string& cli) {
  if (cli.empty()) {
    report(9, "CLI runs are reproducible", false, "no --cli path given");
    return;
  }
  const fs::path base =
      fs::temp_directory_path() / "qemcq_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);

  auto run = [&cli](const std::string& args) {
    const std::string command = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    return std::system(command.c_str());
  };

  bool pass = true;
  std::ostringstream detail;

  const std::string generate_args =
      " --model \"t=2 3^3 2^1\" --runs 3 --seed 77 --population 10"
      " --max-iter 300 --max-evals 400";
  const fs::path gen_a = base / "gen_a";
  const fs::path gen_b = base / "gen_b";
  if (run("generate" + generate_args + " --out " + gen_a.string()) != 0 ||
      run("generate" + generate_args + " --out " + gen_b.string()) != 0) {
    pass = false;
    detail << "generate invocation failed";
  } else {
    const bool arrays_equal =
        read_file(gen_a / "array.csv") == read_file(gen_b / "array.csv");
    const bool reports_equal = reports_equal_modulo_timing(
        gen_a / "report.json", gen_b / "report.json");
    if (!arrays_equal) detail << "array.csv differs; ";
    if (!reports_equal) detail << "report.json differs; ";
    pass = pass && arrays_equal && reports_equal;

    const int verify_rc =
        run("verify " + (gen_a / "array.csv").string() +
            " --model \"t=2 3^3 2^1\"");
    if (verify_rc != 0) {
      pass = false;
      detail << "verify exit " << verify_rc << "; ";
    }
  }

  const fs::path graph_path = base / "graph.txt";
  {
    std::ofstream out(graph_path);
    out << "modules: A,B,C,D,E,F\n"
           "edge: A B\nedge: B C\nedge: A C\nedge: D E\nedge: E F\n"
           "edge: C D 0.5\n";
  }
  const std::string cluster_args = " --graph " + graph_path.string() +
                                   " --runs 3 --seed 5 --population 10"
                                   " --max-iter 300 --max-evals 400";
  const fs::path clu_a = base / "clu_a";
  const fs::path clu_b = base / "clu_b";
  if (run("cluster" + cluster_args + " --out " + clu_a.string()) != 0 ||
      run("cluster" + cluster_args + " --out " + clu_b.string()) != 0) {
    pass = false;
    detail << "cluster invocation failed";
  } else {
    const bool clusterings_equal = read_file(clu_a / "clustering.json") ==
                                   read_file(clu_b / "clustering.json");
    const bool reports_equal = reports_equal_modulo_timing(
        clu_a / "report.json", clu_b / "report.json");
    if (!clusterings_equal) detail << "clustering.json differs; ";
    if (!reports_equal) detail << "cluster report differs; ";
    pass = pass && clusterings_equal && reports_equal;
  }

  if (pass) detail << "generate, verify, and cluster all reproducible";
  report(9, "CLI runs are reproducible", pass, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  criterion_interaction_counts();
  criterion_q_update_episodes();
  CampaignOutcome uniform, mixed;
  criteria_benchmarks(uniform, mixed);
  criterion_selector_comparison();
  criterion_operator_fuzz();
  criterion_clustering_vs_oracle();
  criterion_mq_values();
  criterion_cli_determinism(cli);

  std::cout << (g_failures == 0 ? "ACCEPTANCE PASSED"
                                : "ACCEPTANCE FAILED")
            << " (" << (9 - g_failures) << "/9)\n";
  return g_failures == 0 ? 0 : 1;
}
