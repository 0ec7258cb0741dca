#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace decisive {

// Opaque state identifier. Countable chains encode their states as
// nonnegative integers; the encoding must be injective.
struct StateId {
  std::int64_t value = 0;

  friend auto operator<=>(const StateId&, const StateId&) = default;
};

inline StateId state(std::int64_t value) { return StateId{value}; }

// Subset of the atomic propositions, one bit per proposition.
using LabelSet = std::uint64_t;

inline constexpr std::size_t kMaxPropositions = 64;

}  // namespace decisive

template <>
struct std::hash<decisive::StateId> {
  std::size_t operator()(const decisive::StateId& s) const noexcept {
    // splitmix64 finalizer; plain identity hashing clusters badly for
    // product encodings s * |Q| + q.
    std::uint64_t x = static_cast<std::uint64_t>(s.value) + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};
