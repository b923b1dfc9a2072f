#include <gtest/gtest.h>

#include "random_scenarios.hpp"
#include "resopt/equivalent.hpp"
#include "resopt/generators.hpp"

namespace resopt {
namespace {

using testing_support::random_lf_config;

TEST(EquivalentWeights, NoAdversariesGivesActualWeights) {
  SimConfig cfg;
  cfg.graph = gen::complete(5);
  cfg.functions.assign(5, ConvexFunction::abs(0.0));
  cfg.initial = {4, -1, 2, 0, 3};
  cfg.filter_f = 1;
  cfg.rounds = 3;
  const Trace t = run(cfg);
  for (int k = 0; k < t.horizon(); ++k) {
    const auto w = equivalent_weights(cfg.graph, t, k);
    for (const NodeRound& u : t.rounds[k].updates) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(5);
      row[u.node] = u.weights[0];
      for (std::size_t j = 0; j < u.retained.size(); ++j) {
        row[u.retained[j]] = u.weights[j + 1];
      }
      EXPECT_LT((w.matrix.row(u.node).transpose() - row).cwiseAbs().maxCoeff(), 1e-15);
    }
    EXPECT_TRUE(check_equivalent_weights(cfg.graph, t, k, w).ok());
  }
}

TEST(EquivalentWeights, AdversaryEqualToBracketValue) {
  // Adversary 4 repeats node 0's value exactly, giving a degenerate split.
  SimConfig cfg;
  cfg.graph = gen::complete(5);
  cfg.functions.assign(5, ConvexFunction::abs(0.0));
  cfg.initial = {3, 1, 2, 0, 3};
  cfg.adversaries = {nullptr, nullptr, nullptr, nullptr, fixed_value(3.0)};
  cfg.filter_f = 1;
  cfg.rounds = 1;
  cfg.schedule = StepSchedule::constant(0.0);
  const Trace t = run(cfg);
  const auto w = equivalent_weights(cfg.graph, t, 0);
  const auto check = check_equivalent_weights(cfg.graph, t, 0, w);
  EXPECT_TRUE(check.ok()) << check.max_residual;
}

TEST(EquivalentWeights, PreconditionsEnforced) {
  SimConfig cfg;
  cfg.graph = gen::complete(3);
  cfg.functions.assign(3, ConvexFunction::abs(0.0));
  cfg.initial = {0, 1, 2};
  cfg.filter_f = 1;
  cfg.rounds = 1;
  const Trace t = run(cfg);
  EXPECT_THROW(equivalent_weights(cfg.graph, t, 0), std::invalid_argument);

  cfg.graph = gen::complete(6);
  cfg.functions.assign(6, ConvexFunction::abs(0.0));
  cfg.initial = {0, 1, 2, 3, 4, 5};
  cfg.adversaries = {fixed_value(9), fixed_value(9), nullptr, nullptr, nullptr, nullptr};
  const Trace t2 = run(cfg);
  EXPECT_THROW(equivalent_weights(cfg.graph, t2, 0), std::invalid_argument);
}

class EquivalentRandom : public ::testing::TestWithParam<int> {};

TEST_P(EquivalentRandom, AllPropertiesEveryRound) {
  const auto seed = static_cast<std::uint64_t>(GetParam()) * 7919 + 3;
  const int f = GetParam() % 4 == 3 ? 2 : 1;
  const Graph g = gen::grow_r_robust(12, 2 * f + 1, seed);
  const SimConfig cfg = random_lf_config(g, f, 100, seed, true, 3);
  const Trace t = run(cfg);
  for (int k = 0; k < t.horizon(); ++k) {
    const auto w = equivalent_weights(g, t, k);
    const auto c = check_equivalent_weights(g, t, k, w);
    ASSERT_TRUE(c.ok()) << "round " << k << " residual " << c.max_residual
                        << " stoch " << c.stochastic << " diag " << c.diagonal
                        << " spread " << c.spread;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, EquivalentRandom, ::testing::Range(0, 16));

// Left eigenvector for eigenvalue 1 by power iteration on A'.
Eigen::VectorXd left_eigenvector(const Eigen::MatrixXd& a) {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(a.rows(), 1.0 / a.rows());
  for (int k = 0; k < 20000; ++k) v = a.transpose() * v;
  return v / v.sum();
}

TEST(LimitVector, DoublyStochasticGivesUniform) {
  const auto a = metropolis_weights(gen::ring(6));
  const std::vector<Eigen::MatrixXd> mats(300, a);
  const auto lv = limit_vector_estimate(mats, 0, 299);
  EXPECT_LT((lv.q.array() - 1.0 / 6).abs().maxCoeff(), 1e-9);
  EXPECT_LT(lv.disagreement, 1e-9);
}

TEST(LimitVector, RootedMatrixGivesLeftEigenvector) {
  Eigen::MatrixXd a(4, 4);
  a << 1.0, 0.0, 0.0, 0.0,
       0.5, 0.5, 0.0, 0.0,
       0.0, 0.3, 0.7, 0.0,
       0.2, 0.0, 0.4, 0.4;
  const std::vector<Eigen::MatrixXd> mats(400, a);
  const auto lv = limit_vector_estimate(mats, 0, 399);
  EXPECT_LT((lv.q - left_eigenvector(a)).cwiseAbs().maxCoeff(), 1e-9);
  // q_s' = q_{s+1}' A(s)
  const auto next = limit_vector_estimate(mats, 1, 399);
  EXPECT_LT((lv.q.transpose() - next.q.transpose() * a).cwiseAbs().maxCoeff(),
            std::max(1e-12, lv.disagreement));

  Eigen::MatrixXd b(3, 3);
  b << 0.5, 0.25, 0.25,
       0.1, 0.8, 0.1,
       0.0, 0.6, 0.4;
  const auto lb = limit_vector_estimate(std::vector<Eigen::MatrixXd>(500, b), 0, 499);
  EXPECT_LT((lb.q - left_eigenvector(b)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LimitVector, IdentityNeverMixes) {
  const std::vector<Eigen::MatrixXd> mats(50, Eigen::MatrixXd::Identity(4, 4));
  EXPECT_DOUBLE_EQ(limit_vector_estimate(mats, 0, 49).disagreement, 1.0);
  EXPECT_THROW(limit_vector_estimate(mats, 3, 60), std::out_of_range);
}

}  // namespace
}  // namespace resopt
