#include "resopt/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace resopt::gen {

Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Graph::undirected(n, e);
}

Graph empty(int n) { return Graph::undirected(n, {}); }

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::undirected(n, e);
}

Graph directed_path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph ring(int n) {
  if (n < 3) return path(n);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::undirected(n, e);
}

Graph fig1() {
  const std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}, {0, 4},
                            {1, 2}, {1, 3}, {2, 4}};
  return Graph::undirected(5, e, {"n1", "n2", "n3", "n4", "n5"});
}

Graph fig3(int k) {
  if (k < 1) throw std::invalid_argument("fig3: K must be >= 1");
  const int w = 3 * k;
  std::vector<Edge> e;
  for (int i = 0; i < w; ++i) {
    for (int j = i + 1; j < w; ++j) e.emplace_back(i, j);
  }
  std::vector<std::string> names;
  for (int i = 0; i < w; ++i) names.push_back("w" + std::to_string(i + 1));
  for (int j = 0; j < k; ++j) {
    names.push_back("u" + std::to_string(j + 1));
    for (int t = 0; t < 3; ++t) e.emplace_back(w + j, 3 * j + t);
  }
  return Graph::undirected(w + k, e, std::move(names));
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("erdos_renyi: n < 0");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("erdos_renyi: p must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) e.emplace_back(i, j);
    }
  }
  return Graph::undirected(n, e);
}

Graph grow_r_robust(int n, int r, std::uint64_t seed) {
  if (r < 1) throw std::invalid_argument("grow_r_robust: r must be >= 1");
  const int core = 2 * r + 1;
  if (n < core) {
    throw std::invalid_argument("grow_r_robust: n must be >= 2r+1");
  }
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (int i = 0; i < core; ++i) {
    for (int j = i + 1; j < core; ++j) e.emplace_back(i, j);
  }
  std::vector<int> pool(core);
  std::iota(pool.begin(), pool.end(), 0);
  for (int v = core; v < n; ++v) {
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int t = 0; t <= r; ++t) e.emplace_back(pool[t], v);
    pool.push_back(v);
  }
  return Graph::undirected(n, e);
}

}  // namespace resopt::gen
