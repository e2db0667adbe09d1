#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qemcq/search.hpp"

namespace qemcq {

// Weighted undirected module dependency graph. No self-loops, no duplicate
// edges, positive weights.
struct ModuleGraph {
  std::vector<std::string> module_names;
  struct Edge {
    int u = 0;
    int v = 0;
    double weight = 1.0;
  };
  std::vector<Edge> edges;

  int module_count() const { return static_cast<int>(module_names.size()); }
};

void validate_graph(const ModuleGraph& graph);

// Text format:
//   modules: A,B,C
//   edge: A B [weight]
// Blank lines and lines starting with '#' are ignored; default weight 1.
ModuleGraph parse_graph(std::istream& in);

// labels[i] is the cluster of module i.
struct Clustering {
  std::vector<int> labels;
};

// Canonical labeling: clusters renumbered 0,1,2,... by first appearance.
Clustering normalize_labels(const Clustering& clustering);

// Modularization factor of one cluster: 0 when it has no internal edge
// weight, else i / (i + j/2) with i the internal and j the boundary weight.
double modularization_factor(int cluster, const Clustering& clustering,
                             const ModuleGraph& graph);

struct MQScore {
  double value = 0.0;
  // Per-cluster factors of the normalized labeling, indexed by cluster id.
  std::vector<double> per_cluster;
};

// Modularization quality: sum of per-cluster factors. Invariant under
// relabeling; scale-free in the edge weights.
MQScore modularization_quality(const Clustering& clustering,
                               const ModuleGraph& graph);

struct ClusterResult {
  Clustering clustering;  // normalized
  MQScore score;
  int evaluations_used = 0;
  std::vector<double> trace;
};

// MQ maximization over label vectors via the hyper-heuristic search.
ClusterResult maximize_mq(const ModuleGraph& graph, const RunConfig& config);

// Exact optimum by enumerating all set partitions (restricted growth
// strings); first partition in enumeration order wins ties. The parallel
// variant splits the enumeration by label-string prefix across OpenMP
// threads and returns the identical partition. Guarded by `max_modules`
// (Bell numbers grow fast).
ClusterResult brute_force_mq(const ModuleGraph& graph, int max_modules = 10);
ClusterResult brute_force_mq_parallel(const ModuleGraph& graph,
                                      int max_modules = 10);

}  // namespace qemcq
