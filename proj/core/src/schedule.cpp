#include "resopt/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resopt {

StepSchedule::StepSchedule(Kind kind, double scale, double start,
                           std::vector<double> t)
    : kind_(kind), scale_(scale), start_(start), table_(std::move(t)) {}

StepSchedule StepSchedule::harmonic(double scale, double start) {
  if (!(scale >= 0.0) || !(start > 0.0)) {
    throw std::invalid_argument("harmonic schedule: need scale >= 0, start > 0");
  }
  return {Kind::kHarmonic, scale, start, {}};
}

StepSchedule StepSchedule::constant(double value) {
  if (!(value >= 0.0)) throw std::invalid_argument("constant schedule: < 0");
  return {Kind::kConstant, value, 1.0, {}};
}

StepSchedule StepSchedule::custom(std::vector<double> table) {
  if (table.empty()) throw std::invalid_argument("custom schedule: empty");
  for (double a : table) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("custom schedule: entries must be >= 0");
    }
  }
  return {Kind::kCustom, 1.0, 1.0, std::move(table)};
}

double StepSchedule::alpha(int t) const {
  switch (kind_) {
    case Kind::kHarmonic:
      return scale_ / (static_cast<double>(t) + start_);
    case Kind::kConstant:
      return scale_;
    case Kind::kCustom:
      return table_[std::min<std::size_t>(t, table_.size() - 1)];
  }
  return 0.0;
}

bool StepSchedule::nonincreasing() const {
  if (kind_ != Kind::kCustom) return true;
  return std::is_sorted(table_.rbegin(), table_.rend());
}

std::vector<double> StepSchedule::deltas(int horizon, double lipschitz) const {
  std::vector<double> d(std::max(horizon, 0));
  if (nonincreasing()) {
    for (int t = 0; t < horizon; ++t) d[t] = lipschitz * alpha(t);
    return d;
  }
  const int span = std::max<int>(horizon, static_cast<int>(table_.size()));
  double run = 0.0;
  for (int t = span - 1; t >= 0; --t) {
    run = std::max(run, alpha(t));
    if (t < horizon) d[t] = lipschitz * run;
  }
  return d;
}

}  // namespace resopt
