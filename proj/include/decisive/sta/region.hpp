#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "decisive/sta/model.hpp"

namespace decisive::sta {

// Clock region for a maximal constant M. Per clock: integer part 0..M, or
// M+1 for "above M"; fractional class 0 when the fractional part is zero,
// otherwise the rank of the fractional part among the nonzero ones of the
// clocks that are not above M. Above clocks carry class 0.
struct Region {
  std::vector<std::int64_t> ip;
  std::vector<std::int64_t> cls;

  friend bool operator==(const Region&, const Region&) = default;
  friend auto operator<=>(const Region&, const Region&) = default;
};

Region region_of(const std::vector<double>& clocks, std::int64_t max_constant);

bool is_above(const Region& r, std::size_t x, std::int64_t max_constant);
// Some clock is exactly an integer at most M: time elapses through r in a
// single instant.
bool is_punctual(const Region& r, std::int64_t max_constant);
// Every clock is 0 or above M.
bool is_memoryless(const Region& r, std::int64_t max_constant);
// Every clock is above M; the only region that time never leaves.
bool is_unbounded(const Region& r, std::int64_t max_constant);

Region time_successor(const Region& r, std::int64_t max_constant);
Region reset(const Region& r, std::uint64_t clocks, std::int64_t max_constant);
bool satisfies(const Guard& guard, const Region& r, std::int64_t max_constant);

// r, its time successors, and so on up to the unbounded region.
std::vector<Region> delay_regions(const Region& r, std::int64_t max_constant);

// "x=0 && 0<y<1" plus the ordering of fractional parts, e.g. "{x}<{y}".
std::string describe(const Region& r, const std::vector<std::string>& clocks, std::int64_t max_constant);

// A valuation inside r; fractional parts are spread over (0, 1) in rank
// order with random jitter.
std::vector<double> sample_in_region(const Region& r, std::int64_t max_constant, std::mt19937_64& rng);

}  // namespace decisive::sta
