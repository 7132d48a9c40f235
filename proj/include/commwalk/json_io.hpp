#pragma once

#include <json.hpp>

#include "commwalk/bench.hpp"
#include "commwalk/detector.hpp"
#include "commwalk/graph.hpp"
#include "commwalk/markov.hpp"

namespace commwalk {

// {"clusters": [[ids]...]} in canonical order (ascending ids, clusters by
// minimum id); the canonical form makes equal partitions byte-identical.
nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

// {"states": [...], "rows": [[...]]}; a debugging format, not stable.
nlohmann::json chain_to_json(const MarkovChain& chain);
MarkovChain chain_from_json(const nlohmann::json& j);

// Stable result format, versioned with "format": 1.
nlohmann::json detection_result_to_json(const DetectionResult& r);

nlohmann::json bench_report_to_json(const BenchReport& r);

}  // namespace commwalk
