#pragma once

#include <vector>

namespace resopt {

// Gradient step sizes alpha_t.
class StepSchedule {
 public:
  enum class Kind { kHarmonic, kConstant, kCustom };

  // alpha_t = scale / (t + start); harmonic(c) is c / (t + 1).
  static StepSchedule harmonic(double scale = 1.0, double start = 1.0);
  static StepSchedule constant(double value);
  // alpha_t = table[t]; the last entry is held for later rounds.
  static StepSchedule custom(std::vector<double> table);

  StepSchedule() : StepSchedule(harmonic()) {}

  double alpha(int t) const;
  bool nonincreasing() const;

  // delta_t = lipschitz * sup_{s >= t} alpha_s for t in [0, horizon). For
  // nonincreasing schedules this is lipschitz * alpha_t; otherwise a suffix
  // maximum over the horizon (and any longer custom table) is used.
  std::vector<double> deltas(int horizon, double lipschitz) const;

  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  double start() const { return start_; }
  const std::vector<double>& table() const { return table_; }

 private:
  StepSchedule(Kind kind, double scale, double start, std::vector<double> t);

  Kind kind_;
  double scale_;
  double start_;
  std::vector<double> table_;
};

}  // namespace resopt
