#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "commwalk/markov.hpp"

namespace commwalk {

// Thrown when a sampler exhausts its depth cap without coalescing.
struct NotCoalesced : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One grand-coupling update function: the step from time t to t+1, applied
// to every state. image[] is indexed by matrix position. Reproducible from
// (master_seed, t) alone.
struct RandomMap {
  std::int64_t t = 0;
  std::vector<int> image;
};

// Update function induced by a single shared uniform u: per matrix row the
// inverse CDF at u, with cumulative sums over columns in ascending state-id
// order.
std::vector<int> map_from_uniform(const MarkovChain& chain, double u);

// The reusable random map for backward time t < 0, keyed by (master_seed, t).
RandomMap step_map(const MarkovChain& chain, std::uint64_t master_seed,
                   std::int64_t t);

// Composed backward flow at depth k: for every start position s, the time-0
// value of the chain started at time -k from s, plus per-state visit counts
// over times -(k-1)..0 (the start state itself is not counted).
// Indices are matrix positions of the owning chain.
class FlowState {
 public:
  explicit FlowState(int state_count);

  int depth() const { return depth_; }
  int state_count() const { return static_cast<int>(endpoint_.size()); }
  int endpoint(int s) const { return endpoint_[static_cast<std::size_t>(s)]; }
  const std::vector<int>& endpoints() const { return endpoint_; }
  std::int64_t visits(int s, int j) const {
    return visits_[static_cast<std::size_t>(s) * endpoint_.size() +
                   static_cast<std::size_t>(j)];
  }
  // Sum of visits from start s to the given positions.
  std::int64_t visits_to(int s, const std::vector<int>& positions) const;

  bool all_coalesced() const;

  friend FlowState extend_backward(const FlowState& flow, const RandomMap& map);

 private:
  int depth_ = 0;
  std::vector<int> endpoint_;
  std::vector<std::int64_t> visits_;
};

// One deeper start time: requires map.t == -(flow.depth() + 1). Equivalent to
// re-simulating every copy from the deeper start with reused randomness.
FlowState extend_backward(const FlowState& flow, const RandomMap& map);

struct CoalescenceReport {
  bool coalesced = false;
  int depth = 0;
  std::optional<int> sample;  // common time-0 state id, present iff coalesced
};

// Coupling-from-the-past sampler: extends the backward flow until every
// start shares one time-0 value, then returns it; its law is the stationary
// distribution. With `doubling` the coalescence test runs only at depths
// 1, 2, 4, ... (the sample is unchanged, the reported depth may be larger).
CoalescenceReport run_cftp(const MarkovChain& chain, std::uint64_t master_seed,
                           int n_max = 100000, bool doubling = false);

// Partial-coalescence sampler w.r.t. the states in `subset`: extends until
// all starts in the subset share their time-0 value and their visit count to
// the subset, then walks forward with fresh randomness (keys t = 1, 2, ...)
// until the chain sits in the subset, immediately if it already does.
// Returns that state id; its law is pi(w) / pi(subset).
// Throws NotCoalesced if n_max is exhausted.
int run_partial_cftp(const MarkovChain& chain, const std::vector<int>& subset,
                     std::uint64_t master_seed, int n_max = 100000);

}  // namespace commwalk
