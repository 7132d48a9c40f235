#include "commwalk/json_io.hpp"

#include <stdexcept>

namespace commwalk {

using nlohmann::json;

json partition_to_json(const Partition& p) {
  json clusters = json::array();
  for (const auto& c : p.clusters()) clusters.push_back(c);
  return json{{"clusters", clusters}};
}

Partition partition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("clusters") || !j["clusters"].is_array()) {
    throw std::runtime_error("partition JSON needs a \"clusters\" array");
  }
  std::vector<std::vector<int>> clusters;
  int n = 0;
  for (const auto& c : j["clusters"]) {
    std::vector<int> cluster = c.get<std::vector<int>>();
    for (int v : cluster) n = std::max(n, v + 1);
    clusters.push_back(std::move(cluster));
  }
  return Partition(n, std::move(clusters));
}

json chain_to_json(const MarkovChain& chain) {
  json rows = json::array();
  for (int i = 0; i < chain.size(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < chain.size(); ++j2) row.push_back(chain.matrix()(i, j2));
    rows.push_back(std::move(row));
  }
  return json{{"states", chain.states()}, {"rows", rows}};
}

MarkovChain chain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("states") || !j.contains("rows")) {
    throw std::runtime_error("chain JSON needs \"states\" and \"rows\"");
  }
  auto states = j["states"].get<std::vector<int>>();
  const auto& rows = j["rows"];
  const int r = static_cast<int>(states.size());
  Eigen::MatrixXd m(r, r);
  if (static_cast<int>(rows.size()) != r) {
    throw std::runtime_error("chain JSON: row count does not match states");
  }
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != r) {
      throw std::runtime_error("chain JSON: row " + std::to_string(i) +
                               " has wrong length");
    }
    for (int k = 0; k < r; ++k) m(i, k) = rows[i][k].get<double>();
  }
  return MarkovChain(std::move(states), std::move(m));
}

json detection_result_to_json(const DetectionResult& r) {
  json events = json::array();
  json components = json::array();
  for (std::size_t ci = 0; ci < r.components.size(); ++ci) {
    const auto& t = r.components[ci];
    for (const auto& e : t.events) {
      events.push_back(json{{"component", ci}, {"time", e.time}, {"merged", e.merged}});
    }
    const char* stop = t.stop == StopReason::kCoalesced  ? "coalesced"
                       : t.stop == StopReason::kDeltaT   ? "delta_t"
                                                         : "depth_cap";
    components.push_back(json{{"nodes", t.nodes},
                              {"stop", stop},
                              {"fully_coalesced", t.fully_coalesced()},
                              {"depth_reached", t.depth_reached}});
  }
  return json{{"format", 1},
              {"partition", partition_to_json(r.best_partition)},
              {"cost", r.best_cost},
              {"fully_coalesced", r.fully_coalesced},
              {"depth_reached", r.depth_reached},
              {"events", events},
              {"components", components}};
}

json bench_report_to_json(const BenchReport& r) {
  json runs = json::array();
  for (const auto& row : r.runs) {
    runs.push_back(json{{"run", row.run},
                        {"our_cost", row.our_cost},
                        {"ccpivot_cost", row.pivot_cost}});
  }
  return json{{"model", r.model},
              {"runs", runs},
              {"our_mean", r.our_mean},
              {"ccpivot_mean", r.pivot_mean}};
}

}  // namespace commwalk
