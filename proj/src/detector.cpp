#include "commwalk/detector.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "commwalk/rng.hpp"

namespace commwalk {

void DetectorConfig::validate() const {
  walk.validate();
  if (delta_t_factor && *delta_t_factor <= 1.0) {
    throw std::invalid_argument("delta_t_factor must be > 1");
  }
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
}

namespace {

// Candidate merge group under construction: original partition indices plus
// the union of member positions, keyed by its minimum node for ordering.
struct MergeGroup {
  int min_node;
  std::vector<int> indices;
  std::vector<int> members;
};

bool counts_match(const FlowState& flow, const std::vector<int>& members) {
  std::int64_t expected = flow.visits_to(members[0], members);
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (flow.visits_to(members[i], members) != expected) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<int>> find_critical_merges(const FlowState& flow,
                                                   const Partition& current) {
  if (flow.state_count() != current.node_count()) {
    throw std::invalid_argument("flow and partition cover different state sets");
  }
  // Bucket clusters whose members all share one time-0 value.
  std::map<int, std::vector<int>> buckets;
  for (int ci = 0; ci < current.cluster_count(); ++ci) {
    const auto& c = current.cluster(ci);
    int e = flow.endpoint(c[0]);
    bool uniform = std::all_of(c.begin(), c.end(),
                               [&](int v) { return flow.endpoint(v) == e; });
    if (uniform) buckets[e].push_back(ci);
  }
  std::vector<std::vector<int>> groups;
  for (auto& [endpoint, cluster_ids] : buckets) {
    if (cluster_ids.size() < 2) continue;
    std::vector<MergeGroup> work;
    for (int ci : cluster_ids) {
      const auto& c = current.cluster(ci);
      work.push_back(MergeGroup{c.front(), {ci}, c});
    }
    std::sort(work.begin(), work.end(),
              [](const MergeGroup& a, const MergeGroup& b) {
                return a.min_node < b.min_node;
              });
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < work.size() && !changed; ++i) {
        for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
          std::vector<int> candidate;
          candidate.reserve(work[i].members.size() + work[j].members.size());
          std::merge(work[i].members.begin(), work[i].members.end(),
                     work[j].members.begin(), work[j].members.end(),
                     std::back_inserter(candidate));
          if (!counts_match(flow, candidate)) continue;
          work[i].members = std::move(candidate);
          work[i].indices.insert(work[i].indices.end(),
                                 work[j].indices.begin(), work[j].indices.end());
          work.erase(work.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
    for (auto& grp : work) {
      if (grp.indices.size() >= 2) {
        std::sort(grp.indices.begin(), grp.indices.end());
        groups.push_back(std::move(grp.indices));
      }
    }
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

bool stop_by_delta_t(const std::vector<int>& event_times, int current_depth,
                     double factor) {
  if (factor <= 1.0) throw std::invalid_argument("delta-t factor must be > 1");
  if (event_times.size() < 2) return false;
  int max_gap = 0;
  for (std::size_t i = 1; i < event_times.size(); ++i) {
    max_gap = std::max(max_gap, event_times[i] - event_times[i - 1]);
  }
  return static_cast<double>(current_depth - event_times.back()) >
         factor * static_cast<double>(max_gap);
}

namespace {

Partition apply_merges(const Partition& p,
                       const std::vector<std::vector<int>>& groups) {
  // Map every index through the union of its group; groups are disjoint.
  std::vector<int> target(static_cast<std::size_t>(p.cluster_count()));
  for (int i = 0; i < p.cluster_count(); ++i) target[i] = i;
  for (const auto& g : groups) {
    for (int idx : g) target[idx] = g[0];
  }
  std::map<int, std::vector<int>> merged;
  for (int ci = 0; ci < p.cluster_count(); ++ci) {
    const auto& c = p.cluster(ci);
    auto& dst = merged[target[ci]];
    dst.insert(dst.end(), c.begin(), c.end());
  }
  std::vector<std::vector<int>> clusters;
  clusters.reserve(merged.size());
  for (auto& [key, c] : merged) clusters.push_back(std::move(c));
  return Partition(p.node_count(), std::move(clusters));
}

struct ComponentResult {
  Partition best;
  long long best_cost;
  ComponentTrace trace;
};

ComponentResult run_component(const Graph& sub, const std::vector<int>& nodes,
                              const DetectorConfig& cfg, const CostFunction& cost,
                              std::uint64_t comp_seed) {
  const int m = sub.node_count();
  ComponentTrace trace;
  trace.nodes = nodes;
  Partition partition = Partition::singletons(m);
  Partition best = partition;
  long long best_cost = cost(sub, partition);
  if (m == 1) {
    trace.stop = StopReason::kCoalesced;
    trace.depth_reached = 0;
    return ComponentResult{std::move(best), best_cost, std::move(trace)};
  }
  MarkovChain chain = build_community_walk(sub, cfg.walk);
  FlowState flow(m);
  std::vector<int> event_times;
  trace.stop = StopReason::kDepthCap;
  for (int k = 1; k <= cfg.n_max; ++k) {
    trace.depth_reached = k;
    flow = extend_backward(flow, step_map(chain, comp_seed, -k));
    if (flow.all_coalesced()) {
      // Final critical time: the union of everything always has uniform
      // counts (each start visits exactly k states), so all clusters merge.
      if (partition.cluster_count() > 1) {
        std::vector<int> all(static_cast<std::size_t>(partition.cluster_count()));
        for (int i = 0; i < partition.cluster_count(); ++i) all[i] = i;
        partition = apply_merges(partition, {all});
        trace.events.push_back(CriticalEvent{k, {all}});
        long long c = cost(sub, partition);
        if (c < best_cost) {
          best_cost = c;
          best = partition;
        }
      }
      trace.stop = StopReason::kCoalesced;
      break;
    }
    auto groups = find_critical_merges(flow, partition);
    if (!groups.empty()) {
      partition = apply_merges(partition, groups);
      trace.events.push_back(CriticalEvent{k, groups});
      event_times.push_back(k);
      long long c = cost(sub, partition);
      if (c < best_cost) {
        best_cost = c;
        best = partition;
      }
    }
    if (cfg.delta_t_factor &&
        stop_by_delta_t(event_times, k, *cfg.delta_t_factor)) {
      trace.stop = StopReason::kDeltaT;
      break;
    }
  }
  return ComponentResult{std::move(best), best_cost, std::move(trace)};
}

}  // namespace

DetectionResult detect_communities(const Graph& g, const DetectorConfig& cfg) {
  cfg.validate();
  if (g.node_count() == 0) throw std::invalid_argument("empty graph");
  CostFunction cost = cfg.cost ? cfg.cost : CostFunction(&cluster_editing_cost);

  auto comps = connected_components(g);
  std::vector<std::vector<int>> global_clusters;
  long long total_cost = 0;
  DetectionResult result{Partition::singletons(g.node_count())};
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& nodes = comps[ci];
    Graph sub = induced_subgraph(g, nodes);
    std::uint64_t comp_seed = derive_seed(cfg.seed, 0x12C0'0000ULL + ci);
    ComponentResult cr = run_component(sub, nodes, cfg, cost, comp_seed);
    for (const auto& local : cr.best.clusters()) {
      std::vector<int> cluster;
      cluster.reserve(local.size());
      for (int v : local) cluster.push_back(nodes[static_cast<std::size_t>(v)]);
      global_clusters.push_back(std::move(cluster));
    }
    total_cost += cr.best_cost;
    result.components.push_back(std::move(cr.trace));
  }
  result.best_partition = Partition(g.node_count(), std::move(global_clusters));
  result.best_cost = total_cost;
  result.fully_coalesced = std::all_of(
      result.components.begin(), result.components.end(),
      [](const ComponentTrace& t) { return t.fully_coalesced(); });
  result.depth_capped = std::any_of(
      result.components.begin(), result.components.end(),
      [](const ComponentTrace& t) { return t.stop == StopReason::kDepthCap; });
  result.depth_reached = 0;
  for (const auto& t : result.components) {
    result.depth_reached = std::max(result.depth_reached, t.depth_reached);
  }
  return result;
}

}  // namespace commwalk
