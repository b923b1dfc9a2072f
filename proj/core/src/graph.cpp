#include "resopt/graph.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>
#include <stdexcept>

namespace resopt {

std::vector<NodeId> mask_to_nodes(NodeMask mask) {
  std::vector<NodeId> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

NodeMask nodes_to_mask(std::span<const NodeId> nodes) {
  NodeMask m = 0;
  for (NodeId v : nodes) {
    if (v < 0 || v >= kMaxMaskNodes) {
      throw std::out_of_range("node id does not fit in a node mask");
    }
    m |= NodeMask{1} << v;
  }
  return m;
}

Graph::Graph(int n, std::span<const Edge> edges, bool directed,
             std::vector<std::string> names)
    : n_(n), directed_(directed), names_(std::move(names)) {
  if (n < 0) throw std::invalid_argument("graph: negative node count");
  if (!names_.empty() && static_cast<int>(names_.size()) != n) {
    throw std::invalid_argument("graph: names must match node count");
  }
  edges_.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("graph: self-loops are not stored");
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  in_.assign(n, {});
  out_.assign(n, {});
  for (const auto& [u, v] : edges_) {
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  for (auto& list : in_) std::sort(list.begin(), list.end());
  if (n <= kMaxMaskNodes) {
    in_masks_.assign(n, 0);
    for (const auto& [u, v] : edges_) in_masks_[v] |= NodeMask{1} << u;
  }
}

Graph Graph::undirected(int n, std::span<const Edge> edges,
                        std::vector<std::string> names) {
  std::vector<Edge> both;
  both.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    both.emplace_back(u, v);
    both.emplace_back(v, u);
  }
  return Graph(n, both, /*directed=*/false, std::move(names));
}

void Graph::check_node(NodeId i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("graph: node out of range");
}

bool Graph::has_edge(NodeId from, NodeId to) const {
  check_node(from);
  check_node(to);
  return std::binary_search(out_[from].begin(), out_[from].end(), to);
}

std::span<const NodeId> Graph::in_neighbors(NodeId i) const {
  check_node(i);
  return in_[i];
}

std::span<const NodeId> Graph::out_neighbors(NodeId i) const {
  check_node(i);
  return out_[i];
}

int Graph::in_degree(NodeId i) const {
  return static_cast<int>(in_neighbors(i).size());
}

int Graph::out_degree(NodeId i) const {
  return static_cast<int>(out_neighbors(i).size());
}

int Graph::max_in_degree() const {
  int d = 0;
  for (const auto& list : in_) d = std::max(d, static_cast<int>(list.size()));
  return d;
}

NodeMask Graph::in_mask(NodeId i) const {
  check_node(i);
  if (in_masks_.empty()) {
    throw std::length_error("graph too large for mask-based analysis");
  }
  return in_masks_[i];
}

bool Graph::is_symmetric() const {
  return std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return std::binary_search(edges_.begin(), edges_.end(),
                              Edge{e.second, e.first});
  });
}

std::string Graph::name(NodeId i) const {
  check_node(i);
  if (names_.empty()) return std::to_string(i);
  return names_[i];
}

std::vector<NodeId> in_neighbors(const Graph& g, NodeId i) {
  auto s = g.in_neighbors(i);
  return {s.begin(), s.end()};
}

namespace {

std::vector<bool> reachable_from(const Graph& g, NodeId src) {
  std::vector<bool> seen(g.size(), false);
  std::vector<NodeId> stack{src};
  seen[src] = true;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.out_neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

std::optional<NodeId> find_root(const Graph& g) {
  for (NodeId r = 0; r < g.size(); ++r) {
    auto seen = reachable_from(g, r);
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
      return r;
    }
  }
  return std::nullopt;
}

bool is_strongly_connected(const Graph& g) {
  if (g.size() == 0) return true;
  auto fwd = reachable_from(g, 0);
  if (!std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; })) {
    return false;
  }
  std::vector<Edge> rev;
  rev.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) rev.emplace_back(v, u);
  auto back = reachable_from(Graph(g.size(), rev), 0);
  return std::all_of(back.begin(), back.end(), [](bool b) { return b; });
}

Graph with_edges(const Graph& g, std::vector<Edge> edges) {
  return Graph(g.size(), edges, /*directed=*/true, g.names());
}

Graph remove_random_in_edges(const Graph& g, int k, std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("remove_random_in_edges: k < 0");
  std::mt19937_64 rng(seed);
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (NodeId v = 0; v < g.size(); ++v) {
    std::vector<NodeId> in(g.in_neighbors(v).begin(), g.in_neighbors(v).end());
    std::shuffle(in.begin(), in.end(), rng);
    const auto drop = std::min<std::size_t>(k, in.size());
    for (std::size_t j = drop; j < in.size(); ++j) kept.emplace_back(in[j], v);
  }
  return with_edges(g, std::move(kept));
}

std::string to_dot(const Graph& g) {
  std::ostringstream os;
  const bool und = !g.directed() && g.is_symmetric();
  os << (und ? "graph" : "digraph") << " G {\n";
  for (NodeId i = 0; i < g.size(); ++i) {
    os << "  " << i << " [label=\"" << g.name(i) << "\"];\n";
  }
  for (const auto& [u, v] : g.edges()) {
    if (und && u > v) continue;
    os << "  " << u << (und ? " -- " : " -> ") << v << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace resopt
