#include "commwalk/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace commwalk {

namespace {

[[noreturn]] void bad_arg(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void check_node(const char* what, int v, int n) {
  if (v < 0 || v >= n) {
    bad_arg(std::string(what) + " node id " + std::to_string(v) +
            " out of range [0, " + std::to_string(n) + ")");
  }
}

}  // namespace

Graph::Graph(int node_count, const std::vector<std::pair<int, int>>& edges) {
  if (node_count < 0) bad_arg("node count must be non-negative");
  adj_.resize(static_cast<std::size_t>(node_count));
  for (const auto& [u, v] : edges) {
    check_node("edge", u, node_count);
    check_node("edge", v, node_count);
    if (u == v) bad_arg("self-loop at node " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nbrs : adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    edge_count_ += static_cast<int>(nbrs.size());
  }
  edge_count_ /= 2;
}

const std::vector<int>& Graph::neighbors(int v) const {
  check_node("", v, node_count());
  return adj_[v];
}

bool Graph::has_edge(int u, int v) const {
  check_node("", u, node_count());
  check_node("", v, node_count());
  const auto& nbrs = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  int other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(nbrs.begin(), nbrs.end(), other);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int u = 0; u < node_count(); ++u) {
    for (int v : adj_[u]) {
      if (v > u) out.emplace_back(u, v);
    }
  }
  return out;
}

Partition::Partition(int node_count, std::vector<std::vector<int>> clusters) {
  if (node_count < 0) bad_arg("node count must be non-negative");
  cluster_of_.assign(static_cast<std::size_t>(node_count), -1);
  for (auto& c : clusters) {
    if (c.empty()) bad_arg("partition contains an empty cluster");
    std::sort(c.begin(), c.end());
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  clusters_ = std::move(clusters);
  for (int ci = 0; ci < static_cast<int>(clusters_.size()); ++ci) {
    for (int v : clusters_[ci]) {
      check_node("partition", v, node_count);
      if (cluster_of_[v] != -1) {
        bad_arg("node " + std::to_string(v) + " appears in two clusters");
      }
      cluster_of_[v] = ci;
    }
  }
  for (int v = 0; v < node_count; ++v) {
    if (cluster_of_[v] == -1) {
      bad_arg("node " + std::to_string(v) + " missing from partition");
    }
  }
}

Partition Partition::singletons(int node_count) {
  std::vector<std::vector<int>> cs;
  cs.reserve(static_cast<std::size_t>(node_count));
  for (int v = 0; v < node_count; ++v) cs.push_back({v});
  return Partition(node_count, std::move(cs));
}

Partition Partition::one_cluster(int node_count) {
  std::vector<int> all(static_cast<std::size_t>(node_count));
  std::iota(all.begin(), all.end(), 0);
  return Partition(node_count, {std::move(all)});
}

const std::vector<int>& Partition::cluster(int i) const {
  if (i < 0 || i >= cluster_count()) {
    bad_arg("cluster index " + std::to_string(i) + " out of range");
  }
  return clusters_[i];
}

int Partition::cluster_of(int v) const {
  check_node("", v, node_count());
  return cluster_of_[v];
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw std::runtime_error("edge list parse error at line " +
                           std::to_string(line) + ": " + msg);
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_id = -1;
  long long declared_nodes = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (first[0] == '#') {
      std::string word;
      long long n = 0;
      if (first == "#" && ls >> word && word == "nodes" && ls >> n && n >= 0) {
        declared_nodes = std::max(declared_nodes, n);
      }
      continue;
    }
    long long u = 0, v = 0;
    std::istringstream es(line);
    if (!(es >> u >> v) || u < 0 || v < 0) {
      parse_fail(lineno, "expected two non-negative integers, got \"" + line + "\"");
    }
    std::string extra;
    if (es >> extra) {
      parse_fail(lineno, "trailing token \"" + extra + "\"");
    }
    if (u == v) parse_fail(lineno, "self-loop " + std::to_string(u));
    if (u > 1000000000 || v > 1000000000) parse_fail(lineno, "node id too large");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  long long n = std::max<long long>(max_id + 1, std::max<long long>(declared_nodes, 0));
  return Graph(static_cast<int>(n), edges);
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string serialize_edge_list(const Graph& g) {
  std::string out = "# nodes " + std::to_string(g.node_count()) + "\n";
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

int common_neighbor_count(const Graph& g, int u, int v) {
  check_node("", u, g.node_count());
  check_node("", v, g.node_count());
  if (u == v) bad_arg("common_neighbor_count requires distinct nodes");
  const auto& a = g.neighbors(u);
  const auto& b = g.neighbors(v);
  int count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) {
      ++count;
      ++ia;
      ++ib;
    } else if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return count;
}

long long cluster_editing_cost(const Graph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    bad_arg("partition covers " + std::to_string(p.node_count()) +
            " nodes but graph has " + std::to_string(g.node_count()));
  }
  long long within = 0;
  for (const auto& [u, v] : g.edges()) {
    if (p.cluster_of(u) == p.cluster_of(v)) ++within;
  }
  long long possible_within = 0;
  for (const auto& c : p.clusters()) {
    long long s = static_cast<long long>(c.size());
    possible_within += s * (s - 1) / 2;
  }
  long long missing = possible_within - within;
  long long cross = g.edge_count() - within;
  return missing + cross;
}

Partition merge_clusters(const Partition& p, const std::vector<int>& group) {
  if (group.empty()) bad_arg("merge group is empty");
  std::vector<bool> in_group(static_cast<std::size_t>(p.cluster_count()), false);
  for (int i : group) {
    if (i < 0 || i >= p.cluster_count()) {
      bad_arg("merge index " + std::to_string(i) + " out of range");
    }
    if (in_group[i]) bad_arg("merge index " + std::to_string(i) + " repeated");
    in_group[i] = true;
  }
  std::vector<std::vector<int>> next;
  std::vector<int> merged;
  for (int ci = 0; ci < p.cluster_count(); ++ci) {
    const auto& c = p.cluster(ci);
    if (in_group[ci]) {
      merged.insert(merged.end(), c.begin(), c.end());
    } else {
      next.push_back(c);
    }
  }
  next.push_back(std::move(merged));
  return Partition(p.node_count(), std::move(next));
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  int n = g.node_count();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> comps;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    stack.assign(1, s);
    std::vector<int> comp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int u : g.neighbors(v)) {
        if (!seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
  std::vector<int> local(static_cast<std::size_t>(g.node_count()), -1);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    check_node("subgraph", nodes[i], g.node_count());
    if (local[nodes[i]] != -1) bad_arg("subgraph node list has duplicates");
    local[nodes[i]] = i;
  }
  std::vector<std::pair<int, int>> edges;
  for (int v : nodes) {
    for (int u : g.neighbors(v)) {
      if (u > v && local[u] != -1) edges.emplace_back(local[v], local[u]);
    }
  }
  return Graph(static_cast<int>(nodes.size()), edges);
}

}  // namespace commwalk
