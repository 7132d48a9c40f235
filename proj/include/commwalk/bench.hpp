#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "commwalk/detector.hpp"
#include "commwalk/graph.hpp"

namespace commwalk {

// Planted-partition model: within-block pairs joined with probability p,
// cross-block pairs with q.
struct SbmParams {
  std::vector<int> cluster_sizes;
  double p = 0.9;
  double q = 0.05;
  std::uint64_t seed = 1;

  void validate() const;
};

// Power-law benchmark, simplified: community sizes ~ tau1 power law summing
// to n, degrees ~ tau2 power law scaled toward avg_deg, a fraction 1-mu of
// each node's stubs wired inside its community configuration-model style and
// the rest across, with self-loops and multi-edges repaired by rewiring
// passes (leftover defects dropped).
struct LfrParams {
  int n = 200;
  double tau1 = 2.0;
  double tau2 = 3.0;
  double mu = 0.25;
  double avg_deg = 30.0;
  int min_deg = 0;   // 0: derived from avg_deg
  int max_deg = 0;   // 0: derived from avg_deg and n
  int min_comm = 0;  // 0: derived from n
  int max_comm = 0;  // 0: derived from n

  void validate() const;
  LfrParams with_defaults() const;  // fills the derived bounds
};

std::pair<Graph, Partition> gen_sbm(const SbmParams& params);
std::pair<Graph, Partition> gen_lfr_lite(const LfrParams& params);

// Random-pivot correlation clustering: repeatedly pick a uniformly random
// unclustered node, cluster it with its unclustered neighbors, remove them.
Partition cc_pivot(const Graph& g, std::uint64_t seed);

// Exhaustive minimum of cluster_editing_cost over all set partitions;
// n <= 10. Ties resolve to the canonical-form lexicographic minimum.
std::pair<Partition, long long> brute_force_optimal(const Graph& g);

struct BenchRun {
  int run = 0;
  long long our_cost = 0;
  long long pivot_cost = 0;
};

struct BenchReport {
  std::string model;   // parameter echo
  std::vector<BenchRun> runs;
  double our_mean = 0.0;
  double pivot_mean = 0.0;
};

using BenchModel = std::variant<SbmParams, LfrParams>;

// Per run: generate a graph with a run-derived seed, score the detector and
// CC-PIVOT partitions, report per-run costs and their means.
BenchReport compare_costs(const BenchModel& model, int runs,
                          const DetectorConfig& detector_cfg, std::uint64_t seed);

std::string bench_report_csv(const BenchReport& report);

}  // namespace commwalk
