#include "commwalk/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "commwalk/rng.hpp"

namespace commwalk {

namespace {

[[noreturn]] void bad_arg(const std::string& msg) {
  throw std::invalid_argument(msg);
}

constexpr std::uint64_t kSbmStream = 0x5B31;
constexpr std::uint64_t kLfrStream = 0x1F52;
constexpr std::uint64_t kPivotStream = 0xC1B0;

}  // namespace

void SbmParams::validate() const {
  if (cluster_sizes.empty()) bad_arg("cluster_sizes is empty");
  for (int s : cluster_sizes) {
    if (s <= 0) bad_arg("cluster sizes must be positive");
  }
  if (!(0.0 <= q && q < p && p <= 1.0)) {
    bad_arg("need 0 <= q < p <= 1 (assortative regime)");
  }
}

std::pair<Graph, Partition> gen_sbm(const SbmParams& params) {
  params.validate();
  int n = std::accumulate(params.cluster_sizes.begin(),
                          params.cluster_sizes.end(), 0);
  std::vector<int> block(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> truth;
  int at = 0;
  for (std::size_t b = 0; b < params.cluster_sizes.size(); ++b) {
    std::vector<int> cluster;
    for (int i = 0; i < params.cluster_sizes[b]; ++i) {
      block[at] = static_cast<int>(b);
      cluster.push_back(at);
      ++at;
    }
    truth.push_back(std::move(cluster));
  }
  CounterRng rng(derive_seed(params.seed, kSbmStream));
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double pr = block[u] == block[v] ? params.p : params.q;
      if (rng.next_unit() < pr) edges.emplace_back(u, v);
    }
  }
  return {Graph(n, edges), Partition(n, std::move(truth))};
}

void LfrParams::validate() const {
  LfrParams d = with_defaults();
  if (d.n < 2) bad_arg("n must be >= 2");
  if (d.tau1 <= 1.0 || d.tau2 <= 1.0) bad_arg("tau1 and tau2 must be > 1");
  if (d.mu < 0.0 || d.mu >= 1.0) bad_arg("mu must be in [0, 1)");
  if (d.avg_deg <= 0.0) bad_arg("avg_deg must be positive");
  if (!(1 <= d.min_deg && d.min_deg <= d.max_deg && d.max_deg <= d.n - 1)) {
    bad_arg("need 1 <= min_deg <= max_deg <= n-1");
  }
  if (!(1 <= d.min_comm && d.min_comm <= d.max_comm && d.max_comm <= d.n)) {
    bad_arg("need 1 <= min_comm <= max_comm <= n");
  }
}

LfrParams LfrParams::with_defaults() const {
  LfrParams d = *this;
  if (d.min_deg == 0) d.min_deg = std::max(1, static_cast<int>(d.avg_deg / 3.0));
  if (d.max_deg == 0) {
    d.max_deg = std::min(d.n - 1, std::max(d.min_deg,
                                           static_cast<int>(d.avg_deg * 5.0 / 3.0)));
  }
  if (d.min_comm == 0) d.min_comm = std::max(2, d.n * 3 / 20);
  if (d.max_comm == 0) d.max_comm = std::max(d.min_comm, std::min(d.n, d.n * 7 / 20));
  return d;
}

namespace {

// Inverse transform on the truncated discrete power law p(k) ~ k^-expo.
int power_law_sample(CounterRng& rng, double expo, int lo, int hi) {
  double total = 0.0;
  for (int k = lo; k <= hi; ++k) total += std::pow(k, -expo);
  double u = rng.next_unit() * total;
  double acc = 0.0;
  for (int k = lo; k < hi; ++k) {
    acc += std::pow(k, -expo);
    if (u < acc) return k;
  }
  return hi;
}

// Configuration-model pairing of `stubs` with <= 100 rewiring passes against
// self-loops and duplicates (of each other or of already-present edges).
// Commits the surviving edges into `edges`/`present`; leftover defects drop.
void wire_stubs(std::vector<int> stubs, CounterRng& rng,
                std::set<std::pair<int, int>>& present,
                std::vector<std::pair<int, int>>& edges) {
  if (stubs.size() % 2 == 1) {
    stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(
                                    rng.next_below(stubs.size())));
  }
  rng.shuffle(stubs);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    pairs.emplace_back(stubs[i], stubs[i + 1]);
  }
  for (int pass = 0; pass < 100; ++pass) {
    std::vector<std::pair<int, int>> good;
    std::vector<int> defective;
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : pairs) {
      std::pair<int, int> key{std::min(u, v), std::max(u, v)};
      if (u == v || present.count(key) || seen.count(key)) {
        defective.push_back(u);
        defective.push_back(v);
      } else {
        seen.insert(key);
        good.emplace_back(u, v);
      }
    }
    pairs = std::move(good);
    if (defective.empty()) break;
    rng.shuffle(defective);
    for (std::size_t i = 0; i + 1 < defective.size(); i += 2) {
      pairs.emplace_back(defective[i], defective[i + 1]);
    }
  }
  for (auto [u, v] : pairs) {
    std::pair<int, int> key{std::min(u, v), std::max(u, v)};
    if (u != v && !present.count(key)) {
      present.insert(key);
      edges.push_back(key);
    }
  }
}

}  // namespace

std::pair<Graph, Partition> gen_lfr_lite(const LfrParams& params) {
  params.validate();
  LfrParams d = params.with_defaults();
  CounterRng rng(derive_seed(params.seed, kLfrStream));

  // Community sizes: power law, final community adjusted so they sum to n.
  std::vector<int> sizes;
  int total = 0;
  while (total < d.n) {
    int s = power_law_sample(rng, d.tau1, d.min_comm, d.max_comm);
    sizes.push_back(s);
    total += s;
  }
  sizes.back() -= total - d.n;
  if (sizes.back() == 0) sizes.pop_back();

  std::vector<int> comm_of(static_cast<std::size_t>(d.n));
  std::vector<std::vector<int>> truth;
  int at = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    std::vector<int> cluster;
    for (int i = 0; i < sizes[c]; ++i) {
      comm_of[at] = static_cast<int>(c);
      cluster.push_back(at);
      ++at;
    }
    truth.push_back(std::move(cluster));
  }

  // Degrees: truncated power law, multiplicatively scaled toward avg_deg.
  std::vector<int> degree(static_cast<std::size_t>(d.n));
  double mean = 0.0;
  for (int v = 0; v < d.n; ++v) {
    degree[v] = power_law_sample(rng, d.tau2, d.min_deg, d.max_deg);
    mean += degree[v];
  }
  mean /= d.n;
  double scale = d.avg_deg / mean;
  for (int v = 0; v < d.n; ++v) {
    int scaled = static_cast<int>(std::lround(degree[v] * scale));
    degree[v] = std::clamp(scaled, 1, d.n - 1);
  }

  std::set<std::pair<int, int>> present;
  std::vector<std::pair<int, int>> edges;

  // ceil((1-mu) * deg) internal stubs, the rest external. Internal stubs in
  // excess of what the community can host are unpairable and drop.
  std::vector<int> internal(static_cast<std::size_t>(d.n));
  for (int v = 0; v < d.n; ++v) {
    internal[v] = static_cast<int>(std::ceil((1.0 - d.mu) * degree[v]));
  }
  at = 0;
  for (int s : sizes) {
    std::vector<int> stubs;
    for (int v = at; v < at + s; ++v) {
      stubs.insert(stubs.end(),
                   static_cast<std::size_t>(std::min(internal[v], s - 1)), v);
    }
    wire_stubs(std::move(stubs), rng, present, edges);
    at += s;
  }

  std::vector<int> stubs;
  for (int v = 0; v < d.n; ++v) {
    int external = degree[v] - internal[v];
    stubs.insert(stubs.end(), static_cast<std::size_t>(std::max(0, external)), v);
  }
  wire_stubs(std::move(stubs), rng, present, edges);

  return {Graph(d.n, edges), Partition(d.n, std::move(truth))};
}

Partition cc_pivot(const Graph& g, std::uint64_t seed) {
  const int n = g.node_count();
  if (n == 0) bad_arg("empty graph");
  CounterRng rng(derive_seed(seed, kPivotStream));
  std::vector<bool> clustered(static_cast<std::size_t>(n), false);
  std::vector<int> unclustered(static_cast<std::size_t>(n));
  std::iota(unclustered.begin(), unclustered.end(), 0);
  std::vector<std::vector<int>> clusters;
  while (!unclustered.empty()) {
    int pivot = unclustered[static_cast<std::size_t>(
        rng.next_below(unclustered.size()))];
    std::vector<int> cluster{pivot};
    for (int u : g.neighbors(pivot)) {
      if (!clustered[u]) cluster.push_back(u);
    }
    for (int v : cluster) clustered[v] = true;
    std::erase_if(unclustered, [&](int v) { return clustered[v]; });
    clusters.push_back(std::move(cluster));
  }
  return Partition(n, std::move(clusters));
}

std::pair<Partition, long long> brute_force_optimal(const Graph& g) {
  const int n = g.node_count();
  if (n < 1) bad_arg("empty graph");
  if (n > 10) bad_arg("brute force limited to n <= 10, got " + std::to_string(n));
  // Enumerate set partitions via restricted growth strings.
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::optional<Partition> best;
  long long best_cost = 0;
  auto evaluate = [&]() {
    int blocks = 1 + *std::max_element(rgs.begin(), rgs.end());
    std::vector<std::vector<int>> clusters(static_cast<std::size_t>(blocks));
    for (int v = 0; v < n; ++v) clusters[rgs[v]].push_back(v);
    Partition p(n, std::move(clusters));
    long long c = cluster_editing_cost(g, p);
    if (!best || c < best_cost ||
        (c == best_cost && p.clusters() < best->clusters())) {
      best = std::move(p);
      best_cost = c;
    }
  };
  // Iterative RGS successor: rgs[i] may be at most max(rgs[0..i-1]) + 1.
  while (true) {
    evaluate();
    int i = n - 1;
    for (; i > 0; --i) {
      int cap = 0;
      for (int j = 0; j < i; ++j) cap = std::max(cap, rgs[j]);
      if (rgs[i] <= cap) break;
    }
    if (i == 0) break;
    ++rgs[i];
    std::fill(rgs.begin() + i + 1, rgs.end(), 0);
  }
  return {*best, best_cost};
}

BenchReport compare_costs(const BenchModel& model, int runs,
                          const DetectorConfig& detector_cfg, std::uint64_t seed) {
  if (runs < 1) bad_arg("runs must be >= 1");
  detector_cfg.validate();
  BenchReport report;
  char buf[160];
  if (const auto* sbm = std::get_if<SbmParams>(&model)) {
    sbm->validate();
    std::string sizes;
    for (std::size_t i = 0; i < sbm->cluster_sizes.size(); ++i) {
      if (i) sizes += "+";
      sizes += std::to_string(sbm->cluster_sizes[i]);
    }
    std::snprintf(buf, sizeof buf, "sbm sizes=%s p=%g q=%g", sizes.c_str(),
                  sbm->p, sbm->q);
  } else {
    const auto& lfr = std::get<LfrParams>(model).with_defaults();
    std::snprintf(buf, sizeof buf,
                  "lfr n=%d tau1=%g tau2=%g mu=%g avg_deg=%g deg=[%d,%d] comm=[%d,%d]",
                  lfr.n, lfr.tau1, lfr.tau2, lfr.mu, lfr.avg_deg, lfr.min_deg,
                  lfr.max_deg, lfr.min_comm, lfr.max_comm);
  }
  report.model = buf;
  double our_sum = 0.0;
  double pivot_sum = 0.0;
  for (int run = 0; run < runs; ++run) {
    std::uint64_t run_seed = derive_seed(seed, static_cast<std::uint64_t>(run));
    Graph g = [&] {
      if (const auto* sbm = std::get_if<SbmParams>(&model)) {
        SbmParams p = *sbm;
        p.seed = derive_seed(run_seed, 1);
        return gen_sbm(p).first;
      }
      LfrParams p = std::get<LfrParams>(model);
      p.seed = derive_seed(run_seed, 1);
      return gen_lfr_lite(p).first;
    }();
    DetectorConfig cfg = detector_cfg;
    cfg.seed = derive_seed(run_seed, 2);
    DetectionResult det = detect_communities(g, cfg);
    Partition pivot = cc_pivot(g, derive_seed(run_seed, 3));
    BenchRun row{run, det.best_cost, cluster_editing_cost(g, pivot)};
    our_sum += static_cast<double>(row.our_cost);
    pivot_sum += static_cast<double>(row.pivot_cost);
    report.runs.push_back(row);
  }
  report.our_mean = our_sum / runs;
  report.pivot_mean = pivot_sum / runs;
  return report;
}

std::string bench_report_csv(const BenchReport& report) {
  std::string out = "run,our_cost,ccpivot_cost\n";
  for (const auto& r : report.runs) {
    out += std::to_string(r.run);
    out += ',';
    out += std::to_string(r.our_cost);
    out += ',';
    out += std::to_string(r.pivot_cost);
    out += '\n';
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "mean,%.4f,%.4f\n", report.our_mean,
                report.pivot_mean);
  out += buf;
  return out;
}

}  // namespace commwalk
