#include "commwalk/cftp.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "commwalk/rng.hpp"

namespace commwalk {

namespace {

// Inverse CDF of row s at u, columns visited in ascending state-id order.
int row_inverse_cdf(const MarkovChain& chain, int s, double u) {
  const auto& q = chain.matrix();
  double acc = 0.0;
  int last_positive = -1;
  for (int pos : chain.ascending_positions()) {
    double p = q(s, pos);
    if (p > 0.0) {
      acc += p;
      last_positive = pos;
      if (u < acc) break;
    }
  }
  return last_positive;  // cumsum may fall short of u by rounding
}

}  // namespace

std::vector<int> map_from_uniform(const MarkovChain& chain, double u) {
  std::vector<int> image(static_cast<std::size_t>(chain.size()));
  for (int s = 0; s < chain.size(); ++s) {
    image[static_cast<std::size_t>(s)] = row_inverse_cdf(chain, s, u);
  }
  return image;
}

RandomMap step_map(const MarkovChain& chain, std::uint64_t master_seed,
                   std::int64_t t) {
  if (t >= 0) {
    throw std::invalid_argument("step_map time index must be negative");
  }
  return RandomMap{t, map_from_uniform(chain, uniform_at(master_seed, t))};
}

FlowState::FlowState(int state_count) {
  if (state_count <= 0) {
    throw std::invalid_argument("flow needs at least one state");
  }
  endpoint_.resize(static_cast<std::size_t>(state_count));
  std::iota(endpoint_.begin(), endpoint_.end(), 0);
  visits_.assign(static_cast<std::size_t>(state_count) *
                     static_cast<std::size_t>(state_count),
                 0);
}

std::int64_t FlowState::visits_to(int s, const std::vector<int>& positions) const {
  std::int64_t total = 0;
  for (int j : positions) total += visits(s, j);
  return total;
}

bool FlowState::all_coalesced() const {
  return std::all_of(endpoint_.begin(), endpoint_.end(),
                     [&](int e) { return e == endpoint_[0]; });
}

FlowState extend_backward(const FlowState& flow, const RandomMap& map) {
  const int r = flow.state_count();
  if (static_cast<int>(map.image.size()) != r) {
    throw std::invalid_argument("map size does not match flow");
  }
  if (map.t != -static_cast<std::int64_t>(flow.depth_) - 1) {
    throw std::invalid_argument(
        "extend_backward expects the map for t = " +
        std::to_string(-static_cast<std::int64_t>(flow.depth_) - 1) +
        ", got t = " + std::to_string(map.t));
  }
  FlowState next(r);
  next.depth_ = flow.depth_ + 1;
  const std::size_t rr = static_cast<std::size_t>(r);
  for (int s = 0; s < r; ++s) {
    int first = map.image[static_cast<std::size_t>(s)];
    next.endpoint_[static_cast<std::size_t>(s)] = flow.endpoint_[first];
    const std::int64_t* src = flow.visits_.data() + static_cast<std::size_t>(first) * rr;
    std::int64_t* dst = next.visits_.data() + static_cast<std::size_t>(s) * rr;
    std::copy(src, src + rr, dst);
    dst[first] += 1;
  }
  return next;
}

CoalescenceReport run_cftp(const MarkovChain& chain, std::uint64_t master_seed,
                           int n_max, bool doubling) {
  const int r = chain.size();
  std::vector<int> endpoint(static_cast<std::size_t>(r));
  std::iota(endpoint.begin(), endpoint.end(), 0);
  std::vector<int> composed(static_cast<std::size_t>(r));
  int next_check = 1;
  for (int k = 1; k <= n_max; ++k) {
    RandomMap map = step_map(chain, master_seed, -k);
    for (int s = 0; s < r; ++s) {
      composed[s] = endpoint[map.image[static_cast<std::size_t>(s)]];
    }
    endpoint.swap(composed);
    if (doubling && k != next_check) continue;
    if (doubling) next_check *= 2;
    if (std::all_of(endpoint.begin(), endpoint.end(),
                    [&](int e) { return e == endpoint[0]; })) {
      return CoalescenceReport{true, k, chain.states()[endpoint[0]]};
    }
  }
  return CoalescenceReport{false, n_max, std::nullopt};
}

int run_partial_cftp(const MarkovChain& chain, const std::vector<int>& subset,
                     std::uint64_t master_seed, int n_max) {
  if (subset.empty()) {
    throw std::invalid_argument("partial CFTP subset is empty");
  }
  std::vector<int> gpos;
  gpos.reserve(subset.size());
  for (int s : subset) gpos.push_back(chain.index_of(s));
  std::sort(gpos.begin(), gpos.end());
  if (std::adjacent_find(gpos.begin(), gpos.end()) != gpos.end()) {
    throw std::invalid_argument("partial CFTP subset repeats a state");
  }
  std::vector<bool> in_g(static_cast<std::size_t>(chain.size()), false);
  for (int p : gpos) in_g[static_cast<std::size_t>(p)] = true;

  FlowState flow(chain.size());
  int common = -1;
  for (int k = 1; k <= n_max; ++k) {
    flow = extend_backward(flow, step_map(chain, master_seed, -k));
    int e0 = flow.endpoint(gpos[0]);
    bool same_endpoint = std::all_of(gpos.begin(), gpos.end(),
                                     [&](int p) { return flow.endpoint(p) == e0; });
    if (!same_endpoint) continue;
    std::int64_t n0 = flow.visits_to(gpos[0], gpos);
    bool same_count = std::all_of(gpos.begin(), gpos.end(), [&](int p) {
      return flow.visits_to(p, gpos) == n0;
    });
    if (same_count) {
      common = e0;
      break;
    }
  }
  if (common < 0) {
    throw NotCoalesced("no partial coalescence within " + std::to_string(n_max) +
                       " backward steps");
  }
  // Continue forward with fresh randomness until the chain sits in the subset.
  int pos = common;
  for (std::int64_t t = 1; !in_g[static_cast<std::size_t>(pos)]; ++t) {
    pos = row_inverse_cdf(chain, pos, uniform_at(master_seed, t));
  }
  return chain.states()[pos];
}

}  // namespace commwalk
