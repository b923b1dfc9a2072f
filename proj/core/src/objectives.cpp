#include "resopt/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace resopt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Integral of clamp(2*k*u, -cap, cap) from 0 to u.
double capped_square(double u, double k, double cap) {
  const double knee = cap / (2.0 * k);
  const double a = std::abs(u);
  if (a <= knee) return k * u * u;
  return k * knee * knee + cap * (a - knee);
}

double capped_slope(double u, double k, double cap) {
  return std::clamp(2.0 * k * u, -cap, cap);
}

void require_cap(double cap) {
  if (!(cap > 0.0) || !std::isfinite(cap)) {
    throw std::invalid_argument("gradient cap must be positive and finite");
  }
}

// Largest bisection step count; 2^-200 of any sane bracket is far below the
// spacing of doubles.
constexpr int kMaxBisection = 200;

bool narrow(double lo, double hi, double tol) {
  return hi - lo <= tol * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
}

// sup { x : pred(x) is false } for a monotone predicate false at lo, true at hi.
double bisect_edge(double lo, double hi, const std::function<bool(double)>& pred,
                   double tol) {
  for (int it = 0; it < kMaxBisection && !narrow(lo, hi, tol); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (pred(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ConvexFunction::ConvexFunction(Spec spec, double cap)
    : spec_(std::move(spec)), cap_(cap) {
  minimizers_ = compute_minimizers();
}

ConvexFunction ConvexFunction::quadratic(double center, double cap,
                                         double scale) {
  require_cap(cap);
  if (!(scale > 0.0)) throw std::invalid_argument("quadratic: scale <= 0");
  return ConvexFunction(fn::Quadratic{center, scale}, cap);
}

ConvexFunction ConvexFunction::abs(double center, double slope, double cap) {
  require_cap(cap);
  if (!(slope > 0.0)) throw std::invalid_argument("abs: slope <= 0");
  return ConvexFunction(fn::Abs{center, slope}, cap);
}

ConvexFunction ConvexFunction::flat_band(double lo, double hi, double growth,
                                         double cap) {
  require_cap(cap);
  if (!(lo <= hi)) throw std::invalid_argument("flat_band: lo > hi");
  if (!(growth > 0.0)) throw std::invalid_argument("flat_band: growth <= 0");
  return ConvexFunction(fn::FlatBand{lo, hi, growth}, cap);
}

ConvexFunction ConvexFunction::combination(std::vector<double> weights,
                                           std::vector<ConvexFunction> parts) {
  if (weights.size() != parts.size() || parts.empty()) {
    throw std::invalid_argument("combination: weights/parts mismatch");
  }
  double cap = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (!(weights[k] >= 0.0)) {
      throw std::invalid_argument("combination: negative weight");
    }
    cap += weights[k] * parts[k].cap();
    total += weights[k];
  }
  if (!(total > 0.0)) throw std::invalid_argument("combination: zero weights");
  auto shared =
      std::make_shared<const std::vector<ConvexFunction>>(std::move(parts));
  return ConvexFunction(fn::Combination{std::move(weights), std::move(shared)},
                        cap);
}

double ConvexFunction::eval(double x) const {
  return std::visit(
      overloaded{
          [&](const fn::Quadratic& q) {
            return capped_square(x - q.center, q.scale, cap_);
          },
          [&](const fn::Abs& a) {
            return std::min(a.slope, cap_) * std::abs(x - a.center);
          },
          [&](const fn::FlatBand& b) {
            const double k = 0.5 * b.growth;
            if (x > b.hi) return capped_square(x - b.hi, k, cap_);
            if (x < b.lo) return capped_square(x - b.lo, k, cap_);
            return 0.0;
          },
          [&](const fn::Combination& c) {
            double v = 0.0;
            for (std::size_t k = 0; k < c.weights.size(); ++k) {
              v += c.weights[k] * (*c.parts)[k].eval(x);
            }
            return v;
          }},
      spec_);
}

Interval ConvexFunction::subdifferential(double x) const {
  return std::visit(
      overloaded{
          [&](const fn::Quadratic& q) {
            const double g = capped_slope(x - q.center, q.scale, cap_);
            return Interval{g, g};
          },
          [&](const fn::Abs& a) {
            const double s = std::min(a.slope, cap_);
            if (x > a.center) return Interval{s, s};
            if (x < a.center) return Interval{-s, -s};
            return Interval{-s, s};
          },
          [&](const fn::FlatBand& b) {
            const double k = 0.5 * b.growth;
            double g = 0.0;
            if (x > b.hi) g = capped_slope(x - b.hi, k, cap_);
            if (x < b.lo) g = capped_slope(x - b.lo, k, cap_);
            return Interval{g, g};
          },
          [&](const fn::Combination& c) {
            Interval sum{0.0, 0.0};
            for (std::size_t k = 0; k < c.weights.size(); ++k) {
              const Interval part = (*c.parts)[k].subdifferential(x);
              sum.lo += c.weights[k] * part.lo;
              sum.hi += c.weights[k] * part.hi;
            }
            return sum;
          }},
      spec_);
}

double ConvexFunction::subgradient(double x) const {
  const Interval g = subdifferential(x);
  if (g.lo <= 0.0 && g.hi >= 0.0) return 0.0;
  return g.lo > 0.0 ? g.lo : g.hi;
}

double ConvexFunction::lipschitz() const {
  if (const auto* a = std::get_if<fn::Abs>(&spec_)) {
    return std::min(a->slope, cap_);
  }
  if (const auto* c = std::get_if<fn::Combination>(&spec_)) {
    double l = 0.0;
    for (std::size_t k = 0; k < c->weights.size(); ++k) {
      l += c->weights[k] * (*c->parts)[k].lipschitz();
    }
    return l;
  }
  return cap_;
}

void ConvexFunction::collect_kinks(std::vector<double>& out) const {
  std::visit(overloaded{[](const fn::Quadratic&) {},
                        [&](const fn::Abs& a) { out.push_back(a.center); },
                        [&](const fn::FlatBand& b) {
                          out.push_back(b.lo);
                          out.push_back(b.hi);
                        },
                        [&](const fn::Combination& c) {
                          for (const auto& p : *c.parts) p.collect_kinks(out);
                        }},
             spec_);
}

// Bisection lands next to a kink, not on it; move onto the kink when it is
// an exact minimizer.
double ConvexFunction::snap_to_kink(double x) const {
  std::vector<double> kinks;
  collect_kinks(kinks);
  for (double k : kinks) {
    if (narrow(std::min(k, x), std::max(k, x), 1e-12) &&
        subdifferential(k).contains(0.0)) {
      return k;
    }
  }
  return x;
}

Interval ConvexFunction::compute_minimizers() const {
  return std::visit(
      overloaded{
          [](const fn::Quadratic& q) { return Interval{q.center, q.center}; },
          [](const fn::Abs& a) { return Interval{a.center, a.center}; },
          [](const fn::FlatBand& b) { return Interval{b.lo, b.hi}; },
          [this](const fn::Combination& c) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (std::size_t k = 0; k < c.weights.size(); ++k) {
              if (c.weights[k] <= 0.0) continue;
              const Interval m = (*c.parts)[k].minimizers();
              lo = std::min(lo, m.lo);
              hi = std::max(hi, m.hi);
            }
            // Outside the parts' hull every weighted part has a strictly
            // signed subgradient, so the bracket below is valid.
            const double a = lo - 1.0;
            const double b = hi + 1.0;
            const double left = bisect_edge(
                a, b, [&](double x) { return subdifferential(x).hi >= 0.0; },
                1e-15);
            const double right = bisect_edge(
                a, b, [&](double x) { return subdifferential(x).lo > 0.0; },
                1e-15);
            return Interval{snap_to_kink(left), snap_to_kink(std::max(left, right))};
          }},
      spec_);
}

MinimizerHull minimizer_hull(std::span<const ConvexFunction> fs) {
  if (fs.empty()) throw std::invalid_argument("minimizer_hull: empty list");
  MinimizerHull h = fs.front().minimizers();
  for (const auto& f : fs.subspan(1)) {
    h.lo = std::min(h.lo, f.minimizers().lo);
    h.hi = std::max(h.hi, f.minimizers().hi);
  }
  return h;
}

double average_minimizer(std::span<const ConvexFunction> fs,
                         std::span<const double> weights) {
  if (fs.empty()) throw std::invalid_argument("average_minimizer: empty list");
  std::vector<double> q(weights.begin(), weights.end());
  if (q.empty()) q.assign(fs.size(), 1.0 / static_cast<double>(fs.size()));
  if (q.size() != fs.size()) {
    throw std::invalid_argument("average_minimizer: weight count mismatch");
  }
  double total = 0.0;
  for (double w : q) {
    if (!(w >= 0.0)) throw std::invalid_argument("average_minimizer: w < 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("average_minimizer: weights must sum to 1");
  }

  auto slope = [&](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (q[i] > 0.0) s += q[i] * fs[i].subgradient(x);
    }
    return s;
  };

  double lo = -1.0;
  double hi = 1.0;
  constexpr double kLimit = 1e300;
  while (slope(lo) >= 0.0) {
    lo *= 2.0;
    if (lo < -kLimit) throw std::runtime_error("average_minimizer: no bracket");
  }
  while (slope(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > kLimit) throw std::runtime_error("average_minimizer: no bracket");
  }
  constexpr double kTol = 1e-13;
  const double left =
      bisect_edge(lo, hi, [&](double x) { return slope(x) >= 0.0; }, kTol);
  const double right =
      bisect_edge(lo, hi, [&](double x) { return slope(x) > 0.0; }, kTol);
  return 0.5 * (left + right);
}

ConvexFunction spoof_function(std::span<const ConvexFunction> fs_others,
                              double target, double cap) {
  double sum = 0.0;
  for (const auto& f : fs_others) sum += f.subgradient(target);
  const double slope = -sum;
  if (!(std::abs(slope) < cap)) {
    throw std::invalid_argument(
        "spoof_function: cap too small for the required slope");
  }
  // d/dx (x - c)^2 at target equals slope.
  return ConvexFunction::quadratic(target - 0.5 * slope, cap);
}

}  // namespace resopt
