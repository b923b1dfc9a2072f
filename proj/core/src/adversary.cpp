#include "resopt/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "resopt/filter.hpp"

namespace resopt {

double RoundView::regular_max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!adversarial[i]) m = std::max(m, state[i]);
  }
  return m;
}

double RoundView::regular_min() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!adversarial[i]) m = std::min(m, state[i]);
  }
  return m;
}

double RoundView::regular_mean() const {
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!adversarial[i]) {
      sum += state[i];
      ++count;
    }
  }
  return count > 0 ? sum / count : 0.0;
}

namespace {

class FixedAgent : public AdversaryAgent {
 public:
  explicit FixedAgent(double v) : value_(v) {}
  AdversaryMessage act(const RoundView&) override { return {value_, {}}; }

 private:
  double value_;
};

class FixedValue : public AdversaryBehavior {
 public:
  explicit FixedValue(double v) : value_(v) {}
  std::string kind() const override { return "fixed"; }
  std::unique_ptr<AdversaryAgent> spawn(const AgentSetup&) const override {
    return std::make_unique<FixedAgent>(value_);
  }
  nlohmann::json to_json() const override {
    return {{"kind", kind()}, {"value", value_}};
  }

 private:
  double value_;
};

class ScriptedAgent : public AdversaryAgent {
 public:
  ScriptedAgent(const std::vector<double>& v, bool cycle)
      : values_(v), cycle_(cycle) {}
  AdversaryMessage act(const RoundView& view) override {
    const auto n = values_.size();
    const auto t = static_cast<std::size_t>(view.round);
    return {values_[cycle_ ? t % n : std::min(t, n - 1)], {}};
  }

 private:
  const std::vector<double>& values_;
  bool cycle_;
};

class Scripted : public AdversaryBehavior {
 public:
  Scripted(std::vector<double> v, bool cycle)
      : values_(std::move(v)), cycle_(cycle) {
    if (values_.empty()) throw std::invalid_argument("scripted: no values");
  }
  std::string kind() const override { return "scripted"; }
  std::unique_ptr<AdversaryAgent> spawn(const AgentSetup&) const override {
    return std::make_unique<ScriptedAgent>(values_, cycle_);
  }
  nlohmann::json to_json() const override {
    return {{"kind", kind()}, {"values", values_}, {"cycle", cycle_}};
  }

 private:
  std::vector<double> values_;
  bool cycle_;
};

class OscillatingAgent : public AdversaryAgent {
 public:
  explicit OscillatingAgent(OscillationParams p) : p_(p) {}
  AdversaryMessage act(const RoundView& view) override {
    const double hi = view.regular_max();
    const double lo = view.regular_min();
    auto near = [&](double target) {
      return lo >= target - p_.tolerance && hi <= target + p_.tolerance;
    };
    if (!pushing_ && near(p_.low)) pushing_ = true;
    else if (pushing_ && near(p_.high)) pushing_ = false;
    if (pushing_) return {hi + p_.push_offset, {}};
    return {view.state[p_.anchor], {}};
  }

 private:
  OscillationParams p_;
  bool pushing_ = false;
};

class Oscillating : public AdversaryBehavior {
 public:
  explicit Oscillating(OscillationParams p) : p_(p) {
    if (!(p_.tolerance >= 0.0) || !(p_.push_offset > 0.0)) {
      throw std::invalid_argument("oscillating: bad tolerance/offset");
    }
  }
  std::string kind() const override { return "oscillating"; }
  std::unique_ptr<AdversaryAgent> spawn(const AgentSetup&) const override {
    return std::make_unique<OscillatingAgent>(p_);
  }
  nlohmann::json to_json() const override {
    return {{"kind", kind()},           {"anchor", p_.anchor},
            {"low", p_.low},            {"high", p_.high},
            {"tolerance", p_.tolerance}, {"push_offset", p_.push_offset}};
  }

 private:
  OscillationParams p_;
};

class SpoofAgent : public AdversaryAgent {
 public:
  SpoofAgent(const ConvexFunction& f, double initial)
      : f_(f), value_(initial) {}
  AdversaryMessage act(const RoundView&) override { return {value_, {}}; }
  void observe(const RoundView& view) override {
    std::vector<Incoming> in;
    for (NodeId j : view.graph->in_neighbors(view.self)) {
      in.push_back({j, view.state[j]});
    }
    const auto kept = lf_filter(value_, in, view.filter_f);
    double sum = value_;
    for (NodeId j : kept.retained) sum += view.state[j];
    const double c = sum / static_cast<double>(kept.retained.size() + 1);
    value_ = c - view.alpha * f_.subgradient(c);
  }

 private:
  const ConvexFunction& f_;
  double value_;
};

class SpoofedFunction : public AdversaryBehavior {
 public:
  explicit SpoofedFunction(ConvexFunction f) : f_(std::move(f)) {}
  std::string kind() const override { return "spoofed_function"; }
  std::unique_ptr<AdversaryAgent> spawn(const AgentSetup& s) const override {
    return std::make_unique<SpoofAgent>(f_, s.initial);
  }
  nlohmann::json to_json() const override;
  const ConvexFunction& function() const { return f_; }

 private:
  ConvexFunction f_;
};

class SplitAgent : public AdversaryAgent {
 public:
  SplitAgent(const std::vector<double>& offsets, SplitAnchor anchor,
             double base)
      : offsets_(offsets), anchor_(anchor), base_(base) {}
  AdversaryMessage act(const RoundView& view) override {
    const double base =
        anchor_ == SplitAnchor::kFixed ? base_ : view.regular_mean() + base_;
    AdversaryMessage m{base, {}};
    const auto outs = view.graph->out_neighbors(view.self);
    for (std::size_t k = 0; k < outs.size(); ++k) {
      m.per_edge.push_back(base + offsets_[k % offsets_.size()]);
    }
    return m;
  }

 private:
  const std::vector<double>& offsets_;
  SplitAnchor anchor_;
  double base_;
};

class ByzantineSplit : public AdversaryBehavior {
 public:
  ByzantineSplit(std::vector<double> offsets, SplitAnchor anchor, double base)
      : offsets_(std::move(offsets)), anchor_(anchor), base_(base) {
    if (offsets_.empty()) throw std::invalid_argument("byzantine: no offsets");
  }
  std::string kind() const override { return "byzantine_split"; }
  bool broadcast() const override { return false; }
  std::unique_ptr<AdversaryAgent> spawn(const AgentSetup&) const override {
    return std::make_unique<SplitAgent>(offsets_, anchor_, base_);
  }
  nlohmann::json to_json() const override {
    return {{"kind", kind()},
            {"offsets", offsets_},
            {"anchor", anchor_ == SplitAnchor::kFixed ? "fixed" : "regular_mean"},
            {"base", base_}};
  }

 private:
  std::vector<double> offsets_;
  SplitAnchor anchor_;
  double base_;
};

class RandomAgent : public AdversaryAgent {
 public:
  RandomAgent(double lo, double hi, std::uint64_t seed)
      : rng_(seed), dist_(lo, hi) {}
  AdversaryMessage act(const RoundView&) override { return {dist_(rng_), {}}; }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> dist_;
};

class RandomValue : public AdversaryBehavior {
 public:
  RandomValue(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw std::invalid_argument("random_value: lo > hi");
  }
  std::string kind() const override { return "random"; }
  std::unique_ptr<AdversaryAgent> spawn(const AgentSetup& s) const override {
    return std::make_unique<RandomAgent>(lo_, hi_, s.seed);
  }
  nlohmann::json to_json() const override {
    return {{"kind", kind()}, {"lo", lo_}, {"hi", hi_}};
  }

 private:
  double lo_;
  double hi_;
};

}  // namespace

// Defined by the scenario I/O code, which owns the function encoding.
nlohmann::json function_to_json(const ConvexFunction& f);

nlohmann::json SpoofedFunction::to_json() const {
  return {{"kind", kind()}, {"function", function_to_json(f_)}};
}

BehaviorPtr fixed_value(double value) {
  return std::make_shared<FixedValue>(value);
}

BehaviorPtr scripted(std::vector<double> values, bool cycle) {
  return std::make_shared<Scripted>(std::move(values), cycle);
}

BehaviorPtr oscillating(OscillationParams params) {
  return std::make_shared<Oscillating>(params);
}

BehaviorPtr spoofed_function(ConvexFunction pretend) {
  return std::make_shared<SpoofedFunction>(std::move(pretend));
}

BehaviorPtr byzantine_split(std::vector<double> offsets, SplitAnchor anchor,
                            double base) {
  return std::make_shared<ByzantineSplit>(std::move(offsets), anchor, base);
}

BehaviorPtr random_value(double lo, double hi) {
  return std::make_shared<RandomValue>(lo, hi);
}

}  // namespace resopt
