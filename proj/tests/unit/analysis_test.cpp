#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "resopt/adversary.hpp"
#include "resopt/analysis.hpp"
#include "resopt/generators.hpp"
#include "resopt/reproduce.hpp"

namespace resopt {
namespace {

Trace constant_trace(int rounds, double value, int n) {
  Trace t;
  t.adversarial.assign(n, 0);
  t.states.assign(rounds + 1, std::vector<double>(n, value));
  t.rounds.assign(rounds, RoundRecord{});
  return t;
}

TEST(ConsensusReport, ConstantTrace) {
  const auto rep = consensus_report(constant_trace(50, 1.5, 4));
  EXPECT_TRUE(rep.consensus);
  ASSERT_TRUE(rep.value.has_value());
  EXPECT_DOUBLE_EQ(*rep.value, 1.5);
  for (double d : rep.width) EXPECT_EQ(d, 0.0);
}

TEST(ConsensusReport, IgnoresAdversaries) {
  Trace t = constant_trace(10, 0.0, 3);
  t.adversarial[2] = 1;
  for (auto& row : t.states) row[2] = 100.0;
  EXPECT_TRUE(consensus_report(t).consensus);
}

TEST(ConsensusReport, TailWindow) {
  Trace t = constant_trace(99, 0.0, 2);
  EXPECT_EQ(tail_start(t, 0.1), 90);
  t.states[95][1] = 1.0;
  EXPECT_FALSE(consensus_report(t).consensus);
  EXPECT_TRUE(consensus_report(t, 1e-3, 0.04).consensus);
}

TEST(ConsensusReport, ExampleNetworkReachesConsensus) {
  const Trace t = run(scenarios::fig1(4000));
  EXPECT_TRUE(consensus_report(t).consensus);
}

TEST(Contraction, TrivialTraces) {
  EXPECT_TRUE(check_contraction(constant_trace(40, 2.0, 4), 0.2).empty());
}

TEST(Contraction, ExampleNetworkWithMaliciousNode) {
  const Trace t = run(scenarios::fig1(2000, 4, 5.0));
  EXPECT_TRUE(check_contraction(t, t.eta).empty());
}

TEST(Contraction, DetectsStalledWidth) {
  Trace t = constant_trace(20, 0.0, 2);
  for (auto& row : t.states) row[1] = 1.0;
  EXPECT_EQ(check_contraction(t, 0.5).size(), 19u);
}

TEST(Safety, Basics) {
  EXPECT_TRUE(check_safety(constant_trace(10, 4.5, 3), {0.0, 9.0}).safe);
  const auto out = check_safety(constant_trace(10, 9.5, 3), {0.0, 9.0});
  EXPECT_FALSE(out.safe);
  EXPECT_DOUBLE_EQ(out.max_excursion, 0.5);
}

TEST(Safety, HugeMaliciousValueIsFiltered) {
  const Trace t = run(scenarios::fig1(5000, 2, 1e6));
  EXPECT_TRUE(check_safety(t, {0.0, 0.0}).safe);
}

TEST(LocalSets, ExampleGadget) {
  for (int k = 1; k <= 3; ++k) {
    const Graph g = gen::fig3(k);
    const auto res = max_r_local_set(g, 1);
    EXPECT_TRUE(res.exhaustive);
    EXPECT_TRUE(res.certified);
    EXPECT_EQ(res.size(), k);
    if (k >= 2) {
      std::vector<NodeId> u;
      for (int j = 0; j < k; ++j) u.push_back(3 * k + j);
      EXPECT_EQ(res.set, u);
    }
  }
}

TEST(LocalSets, CompleteGraphs) {
  for (int n = 2; n <= 9; ++n) {
    for (int r = 0; r < n; ++r) {
      EXPECT_EQ(max_r_local_set(gen::complete(n), r).size(), r) << n << " " << r;
    }
  }
}

TEST(LocalSets, EdgelessGraphKeepsOneOut) {
  EXPECT_EQ(max_r_local_set(gen::empty(6), 1).size(), 5);
}

TEST(LocalSets, MatchesSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    Graph g = gen::erdos_renyi(n, 0.25 + 0.05 * (seed % 9), seed);
    if (seed % 3 == 0) g = remove_random_in_edges(g, 1, seed);
    for (int r = 0; r <= 2; ++r) {
      const auto res = max_r_local_set(g, r);
      ASSERT_TRUE(res.exhaustive);
      EXPECT_TRUE(res.certified);
      EXPECT_EQ(res.size(), oracle::max_r_local(g, r)) << "seed " << seed << " r " << r;
    }
  }
}

TEST(LocalSets, BudgetExhaustion) {
  const auto res = max_r_local_set(gen::erdos_renyi(30, 0.3, 1), 2, 10);
  EXPECT_FALSE(res.exhaustive);
  EXPECT_TRUE(res.certified);
  EXPECT_THROW(performance_bound(gen::erdos_renyi(30, 0.3, 1), 2, 0, 1, 10),
               std::runtime_error);
}

TEST(PerformanceBound, ClosedForms) {
  for (double b : {4.0, 8.0, -12.0}) {
    const auto pb = performance_bound(gen::fig3(3), 1, 0.0, b);
    EXPECT_DOUBLE_EQ(pb.x_error, std::abs(b) / 4);
    EXPECT_DOUBLE_EQ(pb.f_gap, b * b / 16);
    EXPECT_DOUBLE_EQ(pb.x_star, b / 4);
  }
  const auto same = performance_bound(gen::fig3(2), 1, 3.0, 3.0);
  EXPECT_EQ(same.x_error, 0.0);
  EXPECT_EQ(same.f_gap, 0.0);
  EXPECT_EQ(same.x_star, 3.0);
  const auto k5 = performance_bound(gen::complete(5), 1, 0.0, 10.0);
  EXPECT_EQ(k5.local_set, 1);
  EXPECT_DOUBLE_EQ(k5.x_error, 2.0);
  EXPECT_DOUBLE_EQ(k5.f_gap, 4.0);
}

TEST(PerformanceBound, XStarIsTheAverageMinimizer) {
  // |T| nodes carry (x-b)^2, the rest (x-a)^2
  const Graph g = gen::fig3(3);
  const auto pb = performance_bound(g, 1, -1.0, 7.0);
  std::vector<ConvexFunction> fs;
  for (NodeId v = 0; v < g.size(); ++v) {
    fs.push_back(ConvexFunction::quadratic(v >= 9 ? 7.0 : -1.0));
  }
  EXPECT_NEAR(average_minimizer(fs), pb.x_star, 1e-10);
}

TEST(SetPacking, Construction) {
  const SetPackingInstance one{2, {{0}}, 0};
  const Graph g = set_packing_to_graph(one);
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_FALSE(g.has_edge(2, 1));
  EXPECT_EQ(g.name(2), "s1");
  EXPECT_EQ(set_packing_to_graph({4, {}, 0}), gen::complete(4));
  EXPECT_THROW(set_packing_to_graph({2, {{2}}, 0}), std::invalid_argument);
}

TEST(SetPacking, DisjointSingletonsGiveLargeLocalSet) {
  const SetPackingInstance inst{2, {{0}, {1}}, 0};
  EXPECT_GE(max_r_local_set(set_packing_to_graph(inst), 1).size(), 2);
}

// Largest independent set in the intersection graph, by subset enumeration.
int independent_set_oracle(const SetPackingInstance& inst) {
  const int m = static_cast<int>(inst.subsets.size());
  int best = 0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    bool ok = true;
    for (int a = 0; a < m && ok; ++a) {
      for (int b = a + 1; b < m && ok; ++b) {
        if (!((mask >> a) & 1) || !((mask >> b) & 1)) continue;
        for (int x : inst.subsets[a]) {
          if (std::find(inst.subsets[b].begin(), inst.subsets[b].end(), x) !=
              inst.subsets[b].end()) {
            ok = false;
          }
        }
      }
    }
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

SetPackingInstance random_instance(std::mt19937_64& rng, int min_subset) {
  SetPackingInstance inst;
  inst.universe = std::uniform_int_distribution<int>(std::max(2, min_subset), 8)(rng);
  const int m = std::uniform_int_distribution<int>(1, 6)(rng);
  for (int i = 0; i < m; ++i) {
    const int size =
        std::uniform_int_distribution<int>(min_subset, std::min(inst.universe, 4))(rng);
    std::vector<int> all(inst.universe);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    std::sort(all.begin(), all.end());
    inst.subsets.push_back(all);
  }
  return inst;
}

TEST(SetPacking, BruteForceAgainstIndependentSets) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng, 0);
    EXPECT_EQ(brute_force_set_packing(inst), independent_set_oracle(inst));
  }
  EXPECT_EQ(brute_force_set_packing({6, {{0, 1}, {2, 3}, {4, 5}}, 0}), 3);
  EXPECT_EQ(brute_force_set_packing({3, {{0, 1}, {0, 1}, {0, 1}}, 0}), 1);
  SetPackingInstance big{2, std::vector<std::vector<int>>(21, {0}), 0};
  EXPECT_THROW(brute_force_set_packing(big), std::invalid_argument);
}

TEST(SetPacking, ReductionPreservesOptimum) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(rng, 2);
    const int packing = brute_force_set_packing(inst);
    const Graph g = set_packing_to_graph(inst);
    const auto local = max_r_local_set(g, 1);
    ASSERT_TRUE(local.exhaustive);
    if (packing >= 2) {
      EXPECT_EQ(local.size(), packing);
      // the set consists of s-vertices with pairwise disjoint subsets
      SetPackingInstance chosen{inst.universe, {}, 0};
      for (NodeId v : local.set) {
        ASSERT_GE(v, inst.universe);
        chosen.subsets.push_back(inst.subsets[v - inst.universe]);
      }
      EXPECT_EQ(brute_force_set_packing(chosen), local.size());
    } else {
      EXPECT_LE(local.size(), std::max(packing, 1));
    }
  }
}

TEST(Necessity, BuildsPinnedScenario) {
  const Graph g = scenarios::two_cliques();
  const auto res = is_rs_robust(g, 2, 2);
  ASSERT_FALSE(res.holds);
  const SimConfig cfg = build_necessity_scenario(g, *res.witness, 1, 10.0, 3000);
  EXPECT_LE(cfg.adversarial_nodes().size(), 1u);
  const Trace t = run(cfg);
  const auto rep = consensus_report(t);
  EXPECT_FALSE(rep.consensus);
  for (double d : rep.width) EXPECT_GE(d, 10.0 - 1e-12);
  for (const auto& row : t.states) {
    for (NodeId v : res.witness->first) {
      if (!cfg.is_adversarial(v)) EXPECT_EQ(row[v], 0.0);
    }
    for (NodeId v : res.witness->second) {
      if (!cfg.is_adversarial(v)) EXPECT_EQ(row[v], 10.0);
    }
  }
}

TEST(Necessity, RejectsNonWitness) {
  const SubsetPair pair{{0}, {1}};
  EXPECT_THROW(build_necessity_scenario(gen::complete(5), pair, 1, 10.0, 10),
               std::invalid_argument);
}

TEST(Necessity, WitnessesFromRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen::erdos_renyi(8, 0.45, seed);
    const auto res = is_rs_robust(g, 2, 2);
    if (res.holds) continue;
    const SimConfig cfg = build_necessity_scenario(g, *res.witness, 1, 4.0, 500);
    const auto rep = consensus_report(run(cfg));
    EXPECT_GE(*std::min_element(rep.width.begin(), rep.width.end()), 4.0 - 1e-12);
  }
}

TEST(RootedAfterRemoval, Cases) {
  EXPECT_TRUE(verify_rooted_after_removal(gen::complete(5), 2, 50, 1));
  EXPECT_TRUE(verify_rooted_after_removal(gen::path(4), 1, 5, 1));
  EXPECT_THROW(verify_rooted_after_removal(gen::path(4), 2, 5, 1), std::invalid_argument);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_TRUE(verify_rooted_after_removal(gen::grow_r_robust(10, 2, seed), 2, 200, seed));
  }
}

}  // namespace
}  // namespace resopt
