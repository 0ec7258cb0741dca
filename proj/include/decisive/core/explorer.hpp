#pragma once

#include <deque>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "decisive/core/markov_chain.hpp"
#include "decisive/error.hpp"

namespace decisive {

inline constexpr std::size_t kDefaultExplorationCap = 1'000'000;

// Memoized dense view of the part of a chain that has been touched. States
// get indices in discovery order; rows are converted to T once.
template <class T>
class ExploredChain {
 public:
  using Row = std::vector<std::pair<std::size_t, T>>;

  explicit ExploredChain(MarkovChain chain, std::size_t cap = kDefaultExplorationCap)
      : chain_(std::move(chain)), cap_(cap) {}

  const MarkovChain& chain() const { return chain_; }
  std::size_t size() const { return states_.size(); }
  StateId state(std::size_t i) const { return states_[i]; }

  std::size_t index(StateId s) {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    if (!chain_.has_state(s)) fail(ErrorKind::UnknownState, "unknown state " + std::to_string(s.value));
    if (states_.size() >= cap_) {
      fail(ErrorKind::ResourceExhausted, "exploration cap of " + std::to_string(cap_) + " states reached");
    }
    const std::size_t i = states_.size();
    index_.emplace(s, i);
    states_.push_back(s);
    rows_.emplace_back();
    return i;
  }

  std::optional<std::size_t> find(StateId s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Row& row(std::size_t i) {
    if (!rows_[i]) {
      const Distribution d = chain_.successors(states_[i]);
      Row r;
      r.reserve(d.size());
      for (const auto& e : d.entries()) {
        const std::size_t j = index(e.state);
        if constexpr (Numeric<T>::exact) {
          r.emplace_back(j, e.prob);
        } else {
          r.emplace_back(j, static_cast<T>(e.prob.get_d()));
        }
      }
      rows_[i] = std::move(r);
    }
    return *rows_[i];
  }

  // Breadth-first exploration from seeds; returns the indices visited with
  // their depth, up to the given depth (inclusive).
  std::vector<std::pair<std::size_t, std::size_t>> explore(const std::vector<StateId>& seeds,
                                                           std::optional<std::size_t> max_depth) {
    std::vector<std::pair<std::size_t, std::size_t>> visited;
    std::vector<char> seen;
    auto mark = [&](std::size_t i) {
      if (seen.size() <= i) seen.resize(std::max(i + 1, seen.size() * 2), 0);
      if (seen[i]) return false;
      seen[i] = 1;
      return true;
    };
    std::deque<std::pair<std::size_t, std::size_t>> queue;
    for (auto s : seeds) {
      const auto i = index(s);
      if (mark(i)) queue.emplace_back(i, 0);
    }
    while (!queue.empty()) {
      const auto [i, depth] = queue.front();
      queue.pop_front();
      visited.emplace_back(i, depth);
      if (max_depth && depth >= *max_depth) continue;
      for (const auto& [j, p] : row(i)) {
        if (mark(j)) queue.emplace_back(j, depth + 1);
      }
    }
    return visited;
  }

 private:
  MarkovChain chain_;
  std::size_t cap_;
  std::vector<StateId> states_;
  std::unordered_map<StateId, std::size_t> index_;
  std::deque<std::optional<Row>> rows_;  // deque keeps row references stable
};

}  // namespace decisive
