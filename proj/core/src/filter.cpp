#include "resopt/filter.hpp"

#include <algorithm>
#include <stdexcept>

namespace resopt {

FilterResult lf_filter(double own_value, std::span<const Incoming> incoming,
                       int f) {
  if (f < 0) throw std::invalid_argument("lf_filter: F < 0");
  std::vector<Incoming> above;
  std::vector<Incoming> below;
  for (const Incoming& in : incoming) {
    if (in.value > own_value) above.push_back(in);
    if (in.value < own_value) below.push_back(in);
  }
  std::sort(above.begin(), above.end(), [](const Incoming& a, const Incoming& b) {
    return a.value != b.value ? a.value > b.value : a.sender < b.sender;
  });
  std::sort(below.begin(), below.end(), [](const Incoming& a, const Incoming& b) {
    return a.value != b.value ? a.value < b.value : a.sender < b.sender;
  });

  FilterResult out;
  const auto take = [f](const std::vector<Incoming>& side) {
    return std::min<std::size_t>(f, side.size());
  };
  for (std::size_t k = 0; k < take(above); ++k) {
    out.removed_above.push_back(above[k].sender);
  }
  for (std::size_t k = 0; k < take(below); ++k) {
    out.removed_below.push_back(below[k].sender);
  }

  // Removal is decided per in-edge; a sender appears once per node.
  for (const Incoming& in : incoming) {
    const bool gone =
        std::find(out.removed_above.begin(), out.removed_above.end(),
                  in.sender) != out.removed_above.end() ||
        std::find(out.removed_below.begin(), out.removed_below.end(),
                  in.sender) != out.removed_below.end();
    if (!gone) out.retained.push_back(in.sender);
  }
  std::sort(out.retained.begin(), out.retained.end());
  return out;
}

}  // namespace resopt
