#pragma once

#include <cstdint>

#include "resopt/graph.hpp"

namespace resopt::gen {

Graph complete(int n);
Graph empty(int n);
Graph path(int n);             // undirected 0-1-...-(n-1)
Graph directed_path(int n);    // 0->1->...->(n-1)
Graph ring(int n);             // undirected cycle

// Five-node example network; node i is labelled n{i+1}. Edges n1n2, n1n3,
// n1n4, n1n5, n2n3, n2n4, n3n5 (undirected).
Graph fig1();

// Complete graph on W = {w1..w3K} plus K vertices u1..uK, where uj is joined
// to w(3j-2), w(3j-1), w(3j). W occupies ids [0, 3K), U occupies [3K, 4K).
Graph fig3(int k);

// Undirected G(n, p).
Graph erdos_renyi(int n, double p, std::uint64_t seed);

// Starts from the complete graph on 2r+1 nodes and attaches each further
// node to r+1 distinct existing nodes (undirected). Requires n >= 2r+1.
Graph grow_r_robust(int n, int r, std::uint64_t seed);

}  // namespace resopt::gen
