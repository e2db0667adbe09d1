#include "qemcq/clustering.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace qemcq {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

void check_labels(const Clustering& clustering, const ModuleGraph& graph) {
  if (clustering.labels.size() != graph.module_names.size()) {
    throw std::invalid_argument("clustering labels / module count mismatch");
  }
}

// MQ for a normalized label vector; intra/inter are zeroed scratch arrays of
// at least cluster_count entries.
double mq_of_normalized(const std::vector<int>& labels, int cluster_count,
                        const ModuleGraph& graph, std::vector<double>& intra,
                        std::vector<double>& inter) {
  std::fill(intra.begin(), intra.begin() + cluster_count, 0.0);
  std::fill(inter.begin(), inter.begin() + cluster_count, 0.0);
  for (const ModuleGraph::Edge& e : graph.edges) {
    const int lu = labels[e.u];
    const int lv = labels[e.v];
    if (lu == lv) {
      intra[lu] += e.weight;
    } else {
      inter[lu] += e.weight;
      inter[lv] += e.weight;
    }
  }
  double mq = 0.0;
  for (int c = 0; c < cluster_count; ++c) {
    if (intra[c] > 0.0) mq += intra[c] / (intra[c] + inter[c] / 2.0);
  }
  return mq;
}

}  // namespace

void validate_graph(const ModuleGraph& graph) {
  const int n = graph.module_count();
  if (n < 1) throw std::invalid_argument("graph has no modules");
  std::unordered_set<std::string> seen;
  for (const std::string& name : graph.module_names) {
    if (name.empty()) throw std::invalid_argument("empty module name");
    if (!seen.insert(name).second) {
      throw std::invalid_argument("duplicate module name '" + name + "'");
    }
  }
  std::unordered_set<long long> pairs;
  for (const ModuleGraph::Edge& e : graph.edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop on module '" +
                                  graph.module_names[e.u] + "'");
    }
    if (e.weight <= 0.0) {
      throw std::invalid_argument("edge weight must be positive");
    }
    const long long key =
        static_cast<long long>(std::min(e.u, e.v)) * n + std::max(e.u, e.v);
    if (!pairs.insert(key).second) {
      throw std::invalid_argument("duplicate edge between '" +
                                  graph.module_names[e.u] + "' and '" +
                                  graph.module_names[e.v] + "'");
    }
  }
}

ModuleGraph parse_graph(std::istream& in) {
  ModuleGraph graph;
  std::unordered_map<std::string, int> index;
  bool have_modules = false;
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "graph line " + std::to_string(line_number);
    if (line.rfind("modules:", 0) == 0) {
      if (have_modules) {
        throw std::runtime_error(where + ": repeated modules line");
      }
      have_modules = true;
      std::stringstream names(line.substr(8));
      std::string name;
      while (std::getline(names, name, ',')) {
        name = trim(name);
        if (name.empty()) {
          throw std::runtime_error(where + ": empty module name");
        }
        if (name.find_first_of(" \t") != std::string::npos) {
          throw std::runtime_error(where + ": module name '" + name +
                                   "' contains whitespace");
        }
        if (!index.emplace(name, graph.module_count()).second) {
          throw std::runtime_error(where + ": duplicate module '" + name +
                                   "'");
        }
        graph.module_names.push_back(name);
      }
      if (graph.module_names.empty()) {
        throw std::runtime_error(where + ": no modules listed");
      }
    } else if (line.rfind("edge:", 0) == 0) {
      if (!have_modules) {
        throw std::runtime_error(where + ": edge before modules line");
      }
      std::stringstream tokens(line.substr(5));
      std::string u, v, w, extra;
      if (!(tokens >> u >> v)) {
        throw std::runtime_error(where + ": edge needs two module names");
      }
      ModuleGraph::Edge edge;
      const auto u_it = index.find(u);
      const auto v_it = index.find(v);
      if (u_it == index.end()) {
        throw std::runtime_error(where + ": unknown module '" + u + "'");
      }
      if (v_it == index.end()) {
        throw std::runtime_error(where + ": unknown module '" + v + "'");
      }
      edge.u = u_it->second;
      edge.v = v_it->second;
      if (tokens >> w) {
        std::size_t pos = 0;
        try {
          edge.weight = std::stod(w, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos != w.size()) {
          throw std::runtime_error(where + ": bad weight '" + w + "'");
        }
      }
      if (tokens >> extra) {
        throw std::runtime_error(where + ": unexpected token '" + extra +
                                 "'");
      }
      graph.edges.push_back(edge);
    } else {
      throw std::runtime_error(where + ": unrecognized line '" + line + "'");
    }
  }
  if (!have_modules) throw std::runtime_error("graph: missing modules line");
  // Surface semantic defects (duplicate edges, bad weights) as parse errors.
  try {
    validate_graph(graph);
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(std::string("graph: ") + err.what());
  }
  return graph;
}

Clustering normalize_labels(const Clustering& clustering) {
  Clustering out;
  out.labels.reserve(clustering.labels.size());
  std::unordered_map<int, int> remap;
  for (int label : clustering.labels) {
    const auto [it, inserted] =
        remap.emplace(label, static_cast<int>(remap.size()));
    out.labels.push_back(it->second);
    (void)inserted;
  }
  return out;
}

double modularization_factor(int cluster, const Clustering& clustering,
                             const ModuleGraph& graph) {
  check_labels(clustering, graph);
  double internal = 0.0;
  double boundary = 0.0;
  for (const ModuleGraph::Edge& e : graph.edges) {
    const bool u_in = clustering.labels[e.u] == cluster;
    const bool v_in = clustering.labels[e.v] == cluster;
    if (u_in && v_in) {
      internal += e.weight;
    } else if (u_in || v_in) {
      boundary += e.weight;
    }
  }
  if (internal == 0.0) return 0.0;
  return internal / (internal + boundary / 2.0);
}

MQScore modularization_quality(const Clustering& clustering,
                               const ModuleGraph& graph) {
  check_labels(clustering, graph);
  const Clustering norm = normalize_labels(clustering);
  const int cluster_count =
      norm.labels.empty()
          ? 0
          : *std::max_element(norm.labels.begin(), norm.labels.end()) + 1;
  MQScore score;
  score.per_cluster.resize(cluster_count, 0.0);
  std::vector<double> intra(cluster_count, 0.0);
  std::vector<double> inter(cluster_count, 0.0);
  for (const ModuleGraph::Edge& e : graph.edges) {
    const int lu = norm.labels[e.u];
    const int lv = norm.labels[e.v];
    if (lu == lv) {
      intra[lu] += e.weight;
    } else {
      inter[lu] += e.weight;
      inter[lv] += e.weight;
    }
  }
  for (int c = 0; c < cluster_count; ++c) {
    if (intra[c] > 0.0) {
      score.per_cluster[c] = intra[c] / (intra[c] + inter[c] / 2.0);
    }
    score.value += score.per_cluster[c];
  }
  return score;
}

ClusterResult maximize_mq(const ModuleGraph& graph, const RunConfig& config) {
  validate_graph(graph);
  const int n = graph.module_count();

  SearchProblem problem;
  problem.bounds.assign(n, ValueRange{0, n - 1});
  // Scratch buffers shared across evaluations; run_search is sequential.
  std::vector<double> intra(n, 0.0);
  std::vector<double> inter(n, 0.0);
  std::vector<int> norm(n, 0);
  std::vector<int> remap(n, -1);
  problem.fitness = [&](const SolutionVector& labels) {
    std::fill(remap.begin(), remap.end(), -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
      int& slot = remap[labels[i]];
      if (slot < 0) slot = next++;
      norm[i] = slot;
    }
    return mq_of_normalized(norm, next, graph, intra, inter);
  };

  const RunResult run = run_search(problem, config);
  ClusterResult result;
  result.clustering = normalize_labels(Clustering{run.best});
  result.score = modularization_quality(result.clustering, graph);
  result.evaluations_used = run.evaluations_used;
  result.trace = run.trace;
  return result;
}

namespace {

struct PartitionBest {
  double mq = -std::numeric_limits<double>::infinity();
  std::vector<int> labels;
  long long evaluated = 0;
};

// Enumerates restricted growth strings a[] with positions [from, n) free,
// where prefix a[0..from) is fixed with maximum label prefix_max; calls
// visit(labels, cluster_count) for each completion in lexicographic order.
template <typename Visit>
void enumerate_completions(std::vector<int>& a, int from, int prefix_max,
                           const Visit& visit) {
  const int n = static_cast<int>(a.size());
  if (from == n) {
    visit(a, prefix_max + 1);
    return;
  }
  for (int value = 0; value <= prefix_max + 1; ++value) {
    a[from] = value;
    enumerate_completions(a, from + 1, std::max(prefix_max, value), visit);
  }
}

}  // namespace

ClusterResult brute_force_mq(const ModuleGraph& graph, int max_modules) {
  validate_graph(graph);
  const int n = graph.module_count();
  if (n > max_modules) {
    throw std::invalid_argument(
        "brute_force_mq: module count exceeds the enumeration cap");
  }

  PartitionBest best;
  std::vector<double> intra(n, 0.0);
  std::vector<double> inter(n, 0.0);
  std::vector<int> a(n, 0);
  enumerate_completions(a, 1, 0, [&](const std::vector<int>& labels,
                                     int cluster_count) {
    const double mq =
        mq_of_normalized(labels, cluster_count, graph, intra, inter);
    ++best.evaluated;
    if (mq > best.mq) {
      best.mq = mq;
      best.labels = labels;
    }
  });

  ClusterResult result;
  result.clustering.labels = best.labels;
  result.score = modularization_quality(result.clustering, graph);
  result.evaluations_used = static_cast<int>(best.evaluated);
  return result;
}

ClusterResult brute_force_mq_parallel(const ModuleGraph& graph,
                                      int max_modules) {
  validate_graph(graph);
  const int n = graph.module_count();
  if (n > max_modules) {
    throw std::invalid_argument(
        "brute_force_mq_parallel: module count exceeds the enumeration cap");
  }

  // Split the enumeration by label-string prefix; each prefix's completions
  // form a contiguous block of the lexicographic order, so taking the first
  // maximum per block and then the first block achieving the global maximum
  // reproduces the serial tie-breaking exactly.
  const int prefix_len = std::min(n, 5);
  std::vector<std::pair<std::vector<int>, int>> prefixes;  // labels, max
  {
    std::vector<int> a(prefix_len, 0);
    enumerate_completions(a, 1, 0,
                          [&](const std::vector<int>& labels, int count) {
                            prefixes.emplace_back(labels, count - 1);
                          });
  }

  std::vector<PartitionBest> locals(prefixes.size());
  const int prefix_count = static_cast<int>(prefixes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int p = 0; p < prefix_count; ++p) {
    PartitionBest local;
    std::vector<double> intra(n, 0.0);
    std::vector<double> inter(n, 0.0);
    std::vector<int> a(n, 0);
    std::copy(prefixes[p].first.begin(), prefixes[p].first.end(), a.begin());
    enumerate_completions(a, prefix_len, prefixes[p].second,
                          [&](const std::vector<int>& labels,
                              int cluster_count) {
                            const double mq = mq_of_normalized(
                                labels, cluster_count, graph, intra, inter);
                            ++local.evaluated;
                            if (mq > local.mq) {
                              local.mq = mq;
                              local.labels = labels;
                            }
                          });
    locals[p] = std::move(local);
  }

  PartitionBest best;
  for (const PartitionBest& local : locals) {
    best.evaluated += local.evaluated;
    if (local.mq > best.mq) {
      best.mq = local.mq;
      best.labels = local.labels;
    }
  }

  ClusterResult result;
  result.clustering.labels = best.labels;
  result.score = modularization_quality(result.clustering, graph);
  result.evaluations_used = static_cast<int>(best.evaluated);
  return result;
}

}  // namespace qemcq
