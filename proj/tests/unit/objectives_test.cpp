#include <random>

#include <gtest/gtest.h>

#include "resopt/objectives.hpp"

namespace resopt {
namespace {

// Minimizer of the weighted sum by a dense grid scan and local refinement.
double grid_minimizer(const std::vector<ConvexFunction>& fs,
                      const std::vector<double>& q, double lo, double hi) {
  auto total = [&](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) s += q[i] * fs[i].eval(x);
    return s;
  };
  for (int pass = 0; pass < 6; ++pass) {
    const int steps = 2000;
    double best_x = lo, best = total(lo);
    for (int k = 1; k <= steps; ++k) {
      const double x = lo + (hi - lo) * k / steps;
      const double v = total(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    const double h = (hi - lo) / steps;
    lo = best_x - 2 * h;
    hi = best_x + 2 * h;
  }
  return 0.5 * (lo + hi);
}

TEST(Objectives, Evaluation) {
  EXPECT_DOUBLE_EQ(ConvexFunction::quadratic(0.0).eval(3.0), 9.0);
  EXPECT_DOUBLE_EQ(ConvexFunction::abs(0.0, 1.0).eval(-2.0), 2.0);
  EXPECT_DOUBLE_EQ(ConvexFunction::quadratic(9.0, 100.0).eval(9.0), 0.0);
}

TEST(Objectives, CappedQuadraticIsIntegralOfClampedSlope) {
  const auto f = ConvexFunction::quadratic(0.0, 10.0);
  // slope reaches the cap at x = 5; beyond it the function is linear
  EXPECT_DOUBLE_EQ(f.eval(5.0), 25.0);
  EXPECT_DOUBLE_EQ(f.eval(8.0), 25.0 + 30.0);
  EXPECT_DOUBLE_EQ(f.eval(-8.0), 55.0);
}

TEST(Objectives, Subgradients) {
  EXPECT_DOUBLE_EQ(ConvexFunction::abs(0.0).subgradient(0.0), 0.0);
  EXPECT_DOUBLE_EQ(ConvexFunction::quadratic(0.0, 100.0).subgradient(2.0), 4.0);
  EXPECT_DOUBLE_EQ(ConvexFunction::quadratic(0.0, 10.0).subgradient(100.0), 10.0);
  const auto kink = ConvexFunction::abs(1.0, 2.0).subdifferential(1.0);
  EXPECT_DOUBLE_EQ(kink.lo, -2.0);
  EXPECT_DOUBLE_EQ(kink.hi, 2.0);
}

TEST(Objectives, FlatBand) {
  const auto f = ConvexFunction::flat_band(0.0, 10.0);
  EXPECT_EQ(f.minimizers(), (Interval{0.0, 10.0}));
  EXPECT_DOUBLE_EQ(f.subgradient(5.0), 0.0);
  EXPECT_DOUBLE_EQ(f.subgradient(12.0), 2.0);
  EXPECT_DOUBLE_EQ(f.subgradient(-3.0), -3.0);
}

TEST(Objectives, MinimizerHull) {
  const std::vector<ConvexFunction> two = {ConvexFunction::quadratic(0.0),
                                           ConvexFunction::quadratic(9.0)};
  EXPECT_EQ(minimizer_hull(two), (Interval{0.0, 9.0}));
  const std::vector<ConvexFunction> one = {ConvexFunction::flat_band(-1.0, 2.0)};
  EXPECT_EQ(minimizer_hull(one), (Interval{-1.0, 2.0}));
  const std::vector<ConvexFunction> common = {ConvexFunction::abs(1.0),
                                              ConvexFunction::quadratic(1.0)};
  EXPECT_EQ(minimizer_hull(common), (Interval{1.0, 1.0}));
  EXPECT_THROW(minimizer_hull(std::vector<ConvexFunction>{}), std::invalid_argument);
}

TEST(Objectives, AverageMinimizer) {
  const auto a = ConvexFunction::quadratic(0.0);
  const std::vector<ConvexFunction> fs = {a, a, a, ConvexFunction::quadratic(9.0)};
  const double x = average_minimizer(fs);
  EXPECT_NEAR(x, 2.25, 1e-10);
  EXPECT_NEAR(x, grid_minimizer(fs, {0.25, 0.25, 0.25, 0.25}, -20, 20), 1e-6);
  const std::vector<ConvexFunction> single = {ConvexFunction::flat_band(1.0, 3.0)};
  EXPECT_NEAR(average_minimizer(single), 2.0, 1e-10);
}

TEST(Objectives, AverageMinimizerPerformanceAllocation) {
  // |T| nodes with (x-b)^2, the rest with (x-a)^2
  const double a = -1.5, b = 6.0;
  for (int n = 2; n <= 12; ++n) {
    for (int t = 0; t <= n; ++t) {
      std::vector<ConvexFunction> fs;
      for (int i = 0; i < n; ++i) {
        fs.push_back(ConvexFunction::quadratic(i < t ? b : a));
      }
      EXPECT_NEAR(average_minimizer(fs), a + t * (b - a) / n, 1e-9);
    }
  }
}

TEST(Objectives, DegenerateFunctionsRejected) {
  EXPECT_THROW(ConvexFunction::abs(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(ConvexFunction::flat_band(0.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(ConvexFunction::flat_band(2.0, 1.0), std::invalid_argument);
}

TEST(Objectives, UnboundedFlatFailsToBracket) {
  const std::vector<ConvexFunction> fs = {
      ConvexFunction::flat_band(-1e305, 1e305)};
  EXPECT_THROW(average_minimizer(fs), std::runtime_error);
}

std::vector<ConvexFunction> random_functions(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> center(-10, 10);
  std::uniform_real_distribution<double> scale(0.2, 3.0);
  std::vector<ConvexFunction> fs;
  for (int k = 0; k < count; ++k) {
    const double c = center(rng);
    switch (k % 4) {
      case 0: fs.push_back(ConvexFunction::quadratic(c, 50.0, scale(rng))); break;
      case 1: fs.push_back(ConvexFunction::abs(c, scale(rng), 50.0)); break;
      case 2: fs.push_back(ConvexFunction::flat_band(c, c + scale(rng), scale(rng), 20.0)); break;
      default:
        fs.push_back(ConvexFunction::combination(
            {0.3, 0.7}, {ConvexFunction::quadratic(c, 10.0),
                         ConvexFunction::abs(center(rng), 2.0)}));
    }
  }
  return fs;
}

TEST(Objectives, FiniteDifferencesMatchSubgradient) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> xs(-40, 40);
  const auto fs = random_functions(rng, 40);
  const double h = 1e-6;
  for (const auto& f : fs) {
    for (int k = 0; k < 50; ++k) {
      const double x = xs(rng);
      const auto lo = f.subdifferential(x - 1e-6 - h);
      const auto hi = f.subdifferential(x + 1e-6 + h);
      // only smooth points: derivative constant-ish across the window
      if (lo.lo != lo.hi || hi.lo != hi.hi) continue;
      if (std::abs(hi.hi - lo.lo) > 1e-3) continue;
      const double fd = (f.eval(x + h) - f.eval(x - h)) / (2 * h);
      EXPECT_NEAR(fd, f.subgradient(x), 1e-5);
    }
  }
}

TEST(Objectives, SubgradientsMonotoneAndCapped) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xs(-200, 200);
  for (const auto& f : random_functions(rng, 40)) {
    for (int k = 0; k < 100; ++k) {
      double x = xs(rng), y = xs(rng);
      if (x > y) std::swap(x, y);
      EXPECT_LE(f.subdifferential(x).hi, f.subdifferential(y).lo + 1e-12);
      EXPECT_LE(std::abs(f.subgradient(x)), f.cap() + 1e-12);
      EXPECT_LE(std::abs(f.subgradient(x)), f.lipschitz() + 1e-12);
    }
  }
}

TEST(Objectives, MinimizerIntervalIsZeroSet) {
  std::mt19937_64 rng(9);
  for (const auto& f : random_functions(rng, 40)) {
    const auto m = f.minimizers();
    EXPECT_TRUE(f.subdifferential(m.lo).contains(0.0, 1e-9));
    EXPECT_TRUE(f.subdifferential(m.hi).contains(0.0, 1e-9));
    EXPECT_FALSE(f.subdifferential(m.lo - 1e-3).contains(0.0));
    EXPECT_FALSE(f.subdifferential(m.hi + 1e-3).contains(0.0));
  }
}

TEST(Objectives, WeightedMinimizerInsideHull) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto fs = random_functions(rng, 2 + trial % 6);
    std::vector<double> q;
    double sum = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      q.push_back(u(rng) + 1e-3);
      sum += q.back();
    }
    for (double& w : q) w /= sum;
    const double x = average_minimizer(fs, q);
    EXPECT_TRUE(minimizer_hull(fs).contains(x, 1e-9));
    if (trial % 25 == 0) {
      const auto hull = minimizer_hull(fs);
      const double g = grid_minimizer(fs, q, hull.lo - 1, hull.hi + 1);
      auto total = [&](double y) {
        double s = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) s += q[i] * fs[i].eval(y);
        return s;
      };
      EXPECT_LE(total(x), total(g) + 1e-8);
    }
  }
}

TEST(Objectives, SpoofExamples) {
  const auto a = ConvexFunction::quadratic(0.0, 1000.0);
  const std::vector<ConvexFunction> others = {a, a};
  const auto g = spoof_function(others, 3.0, 1000.0);
  EXPECT_DOUBLE_EQ(g.subgradient(3.0), -12.0);
  std::vector<ConvexFunction> all = others;
  all.push_back(g);
  EXPECT_NEAR(average_minimizer(all), 3.0, 1e-9);

  const std::vector<ConvexFunction> far = {ConvexFunction::quadratic(9.0)};
  const auto h = spoof_function(far, 0.0);
  EXPECT_DOUBLE_EQ(h.subgradient(0.0), 18.0);
  EXPECT_NEAR(average_minimizer(std::vector<ConvexFunction>{far[0], h}), 0.0, 1e-9);

  const std::vector<ConvexFunction> at_target = {ConvexFunction::quadratic(4.0)};
  EXPECT_DOUBLE_EQ(spoof_function(at_target, 4.0).subgradient(4.0), 0.0);
  EXPECT_THROW(spoof_function(far, 0.0, 18.0), std::invalid_argument);
}

TEST(Objectives, SpoofMovesTheAverageMinimizer) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> target(-8, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto others = random_functions(rng, 1 + trial % 4);
    const double t = target(rng);
    const auto g = spoof_function(others, t, 1000.0);
    std::vector<ConvexFunction> all = others;
    all.push_back(g);
    const double x = average_minimizer(all);
    double sum = 0.0;
    for (const auto& f : all) sum += f.subgradient(t);
    EXPECT_NEAR(sum, 0.0, 1e-9);
    // t is a minimizer: the sum of subdifferentials at x contains zero
    Interval total{0, 0};
    for (const auto& f : all) {
      const auto s = f.subdifferential(t);
      total.lo += s.lo;
      total.hi += s.hi;
    }
    EXPECT_TRUE(total.contains(0.0, 1e-9));
    double fx = 0.0, ft = 0.0;
    for (const auto& f : all) {
      fx += f.eval(x);
      ft += f.eval(t);
    }
    EXPECT_NEAR(fx, ft, 1e-6 * (1.0 + std::abs(ft)));
  }
}

}  // namespace
}  // namespace resopt
