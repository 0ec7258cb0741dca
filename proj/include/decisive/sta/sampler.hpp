#pragma once

#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "decisive/sta/model.hpp"

namespace decisive::sta {

// Delays d >= 0 with ν + d satisfying a guard: a single interval.
struct DelayInterval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = true;
  bool hi_closed = false;

  bool contains(double d) const;
  bool is_point() const { return lo == hi; }
  double length() const { return hi - lo; }
};

std::optional<DelayInterval> enabling_delays(const Guard& guard, const std::vector<double>& clocks);

// I(γ) split per outgoing edge (edge index, delays).
std::vector<std::pair<std::size_t, DelayInterval>> delay_set(const StaModel& sta, const Configuration& config);

struct Step {
  Configuration next;
  double delay = 0.0;
  std::size_t edge = 0;
};

// Draws a delay from the location's distribution restricted to I(γ), then
// an enabled edge by weight. A delay that meets a bound of the chosen
// guard exactly puts the bounded clock on the constant.
Step sample_step(const StaModel& sta, const Configuration& config, std::mt19937_64& rng);

}  // namespace decisive::sta
