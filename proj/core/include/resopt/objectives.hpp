#pragma once

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace resopt {

// Gradient cap used when a scenario does not specify one.
inline constexpr double kDefaultCap = 100.0;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double slack = 0.0) const {
    return x >= lo - slack && x <= hi + slack;
  }
  double mid() const { return 0.5 * (lo + hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Convex hull [M_lo, M_hi] of the regular nodes' minimizer sets.
using MinimizerHull = Interval;

class ConvexFunction;

namespace fn {

// scale * (x - center)^2
struct Quadratic {
  double center = 0.0;
  double scale = 1.0;
};

// slope * |x - center|
struct Abs {
  double center = 0.0;
  double slope = 1.0;
};

// Zero on [lo, hi]; outside, the derivative grows linearly with rate
// `growth` (so the function is quadratic off the band until the cap binds).
struct FlatBand {
  double lo = 0.0;
  double hi = 0.0;
  double growth = 1.0;
};

// sum_k weights[k] * parts[k]; weights nonnegative, not all zero.
struct Combination {
  std::vector<double> weights;
  std::shared_ptr<const std::vector<ConvexFunction>> parts;
};

}  // namespace fn

// Scalar convex function with subgradients clamped to [-cap, cap]. The value
// is the integral of the clamped derivative, so eval() and the subgradients
// stay consistent past the cap and the function stays convex.
class ConvexFunction {
 public:
  using Spec = std::variant<fn::Quadratic, fn::Abs, fn::FlatBand,
                            fn::Combination>;

  static ConvexFunction quadratic(double center, double cap = kDefaultCap,
                                  double scale = 1.0);
  static ConvexFunction abs(double center, double slope = 1.0,
                            double cap = kDefaultCap);
  static ConvexFunction flat_band(double lo, double hi, double growth = 1.0,
                                  double cap = kDefaultCap);
  // The cap of a combination is sum_k w_k * cap_k; no extra clamping applies.
  static ConvexFunction combination(std::vector<double> weights,
                                    std::vector<ConvexFunction> parts);

  double eval(double x) const;
  // Subdifferential [g_lo(x), g_hi(x)], already clamped to [-cap, cap].
  Interval subdifferential(double x) const;
  // Canonical selection: 0 when admissible, else the endpoint of smaller
  // magnitude.
  double subgradient(double x) const;
  // The set { x : 0 in subdifferential(x) }.
  Interval minimizers() const { return minimizers_; }

  double cap() const { return cap_; }
  // Tightest bound on |subgradient| this function can produce.
  double lipschitz() const;

  const Spec& spec() const { return spec_; }

 private:
  ConvexFunction(Spec spec, double cap);
  Interval compute_minimizers() const;
  void collect_kinks(std::vector<double>& out) const;
  double snap_to_kink(double x) const;

  Spec spec_;
  double cap_;
  Interval minimizers_;
};

MinimizerHull minimizer_hull(std::span<const ConvexFunction> fs);

// A minimizer of sum_i q_i f_i (uniform q when `weights` is empty), found by
// bisection on the sign of the weighted canonical subgradient. When the sum is
// flat on an interval the midpoint of that interval is returned.
double average_minimizer(std::span<const ConvexFunction> fs,
                         std::span<const double> weights = {});

// Capped quadratic g with g'(target) = -sum_i f_i'(target), so that target
// minimizes the average of fs_others together with g. Throws when the
// required slope magnitude is not strictly below `cap`.
ConvexFunction spoof_function(std::span<const ConvexFunction> fs_others,
                              double target, double cap = kDefaultCap);

}  // namespace resopt
