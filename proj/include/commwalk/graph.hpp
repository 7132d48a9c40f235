#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace commwalk {

// Undirected simple graph over dense node ids 0..n-1. Adjacency lists are
// kept sorted; neighbors are unique and never equal to the node itself.
// Immutable after construction. Isolated nodes are legal.
class Graph {
 public:
  Graph() = default;
  Graph(int node_count, const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return edge_count_; }
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int u, int v) const;

  // Edges as (u, v) pairs with u < v, ascending.
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::vector<int>> adj_;
  int edge_count_ = 0;
};

// Disjoint non-empty clusters covering {0..n-1}, stored canonically:
// ids ascending inside each cluster, clusters ordered by their minimum id.
// Immutable after construction.
class Partition {
 public:
  Partition(int node_count, std::vector<std::vector<int>> clusters);

  static Partition singletons(int node_count);
  static Partition one_cluster(int node_count);

  int node_count() const { return static_cast<int>(cluster_of_.size()); }
  int cluster_count() const { return static_cast<int>(clusters_.size()); }
  const std::vector<std::vector<int>>& clusters() const { return clusters_; }
  const std::vector<int>& cluster(int i) const;
  int cluster_of(int v) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::vector<int>> clusters_;
  std::vector<int> cluster_of_;
};

// Reads "u v" edge lines; '#' lines are comments, except the optional
// "# nodes N" directive written by serialize_edge_list so that trailing
// isolated nodes survive a round trip. Node ids run 0..max-id.
// Throws std::runtime_error with a line number on malformed or self-loop
// lines.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
std::string serialize_edge_list(const Graph& g);

// |N(u) ∩ N(v)| for distinct in-range nodes.
int common_neighbor_count(const Graph& g, int u, int v);

// Edge additions plus deletions needed to turn g into the disjoint cliques
// induced by p: missing within-cluster edges + existing cross-cluster edges.
long long cluster_editing_cost(const Graph& g, const Partition& p);

// Replaces the named clusters by their union; indices must be valid and
// distinct, group non-empty.
Partition merge_clusters(const Partition& p, const std::vector<int>& group);

// Node sets of connected components, each sorted, ordered by smallest node.
std::vector<std::vector<int>> connected_components(const Graph& g);

// Subgraph induced by `nodes` (sorted, distinct), relabeled to 0..m-1 in the
// order given.
Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes);

}  // namespace commwalk
