#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "commwalk/cftp.hpp"
#include "commwalk/graph.hpp"
#include "commwalk/markov.hpp"

namespace commwalk {

// Cost assigned to a partition of a graph; lower is better. Evaluated per
// connected component on the induced subgraph, so it should be additive
// across components (cluster-editing cost is).
using CostFunction = std::function<long long(const Graph&, const Partition&)>;

struct DetectorConfig {
  WalkConfig walk;
  CostFunction cost;  // defaults to cluster_editing_cost when empty
  std::optional<double> delta_t_factor;  // > 1; gap-based early stop when set
  int n_max = 100000;
  std::uint64_t seed = 1;

  void validate() const;
};

// Cluster merges accepted at one backward depth. `merged` holds groups of
// indices into the canonical partition as it stood before this event.
struct CriticalEvent {
  int time = 0;
  std::vector<std::vector<int>> merged;
};

enum class StopReason { kCoalesced, kDeltaT, kDepthCap };

// Trace of one connected component's run.
struct ComponentTrace {
  std::vector<int> nodes;  // global node ids, ascending
  std::vector<CriticalEvent> events;
  StopReason stop = StopReason::kCoalesced;
  int depth_reached = 0;

  bool fully_coalesced() const { return stop == StopReason::kCoalesced; }
};

struct DetectionResult {
  Partition best_partition;
  long long best_cost = 0;
  std::vector<ComponentTrace> components;
  bool fully_coalesced = false;  // every component coalesced
  bool depth_capped = false;     // some component hit n_max
  int depth_reached = 0;         // max over components
};

// Groups of clusters eligible to merge at the flow's current depth: clusters
// whose members all share one time-0 value are bucketed by that value; inside
// a bucket, pairs are merged greedily in ascending minimum-node order, a pair
// being accepted iff every state of the candidate union has the same visit
// count summed over the union. Runs to a fixed point. Returns groups of
// partition indices (each of size >= 2).
std::vector<std::vector<int>> find_critical_merges(const FlowState& flow,
                                                   const Partition& current);

// Gap-based stopping rule: fires iff at least two events were recorded and
// (current_depth - last event time) > factor * max previous gap.
bool stop_by_delta_t(const std::vector<int>& event_times, int current_depth,
                     double factor);

// Runs one backward coupling per connected component, merging clusters at
// critical times, scoring each merged partition, and keeping the cheapest
// (ties keep the earlier, finer partition). Deterministic given the seed.
DetectionResult detect_communities(const Graph& g, const DetectorConfig& cfg = {});

}  // namespace commwalk
