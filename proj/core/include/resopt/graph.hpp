#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace resopt {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;

// Bit set over node indices; exact combinatorial checks are limited to
// graphs that fit in one word.
using NodeMask = std::uint64_t;
inline constexpr int kMaxMaskNodes = 63;

std::vector<NodeId> mask_to_nodes(NodeMask mask);
NodeMask nodes_to_mask(std::span<const NodeId> nodes);

// Immutable directed graph over dense node ids 0..n-1. An edge (u, v) means
// v receives from u. Undirected graphs store both orientations.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on self-loops or out-of-range endpoints.
  // Duplicate edges are collapsed.
  Graph(int n, std::span<const Edge> edges, bool directed = true,
        std::vector<std::string> names = {});

  static Graph undirected(int n, std::span<const Edge> edges,
                          std::vector<std::string> names = {});

  int size() const { return n_; }
  bool directed() const { return directed_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Sorted, duplicate-free (u, v) pairs.
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(NodeId from, NodeId to) const;

  std::span<const NodeId> in_neighbors(NodeId i) const;
  std::span<const NodeId> out_neighbors(NodeId i) const;
  int in_degree(NodeId i) const;
  int out_degree(NodeId i) const;
  int max_in_degree() const;

  // Only meaningful when size() <= kMaxMaskNodes.
  NodeMask in_mask(NodeId i) const;

  // True when every edge has its reverse.
  bool is_symmetric() const;

  const std::vector<std::string>& names() const { return names_; }
  std::string name(NodeId i) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void check_node(NodeId i) const;

  int n_ = 0;
  bool directed_ = true;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> in_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<NodeMask> in_masks_;
  std::vector<std::string> names_;
};

std::vector<NodeId> in_neighbors(const Graph& g, NodeId i);

// Returns a root (a vertex reaching every other vertex) if one exists. The
// smallest such vertex id is reported.
std::optional<NodeId> find_root(const Graph& g);
inline bool is_rooted(const Graph& g) { return find_root(g).has_value(); }

bool is_strongly_connected(const Graph& g);

// Graph restricted to an edge subset; keeps node count, names, directedness
// flag forced to directed (removal is per in-edge, so symmetry is lost).
Graph with_edges(const Graph& g, std::vector<Edge> edges);

// Per node, removes min(k, in-degree) uniformly chosen incoming edges.
Graph remove_random_in_edges(const Graph& g, int k, std::uint64_t seed);

std::string to_dot(const Graph& g);

}  // namespace resopt
