#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "decisive/core/state.hpp"
#include "decisive/core/state_set.hpp"
#include "decisive/error.hpp"
#include "decisive/rational.hpp"

namespace decisive {

// Finite-support probability distribution over states, entries sorted by
// state with strictly positive probabilities.
template <class T>
class SparseDistribution {
 public:
  struct Entry {
    StateId state;
    T prob;
  };

  SparseDistribution() = default;

  static SparseDistribution dirac(StateId s) {
    SparseDistribution d;
    d.entries_.push_back({s, Numeric<T>::one()});
    return d;
  }

  static SparseDistribution uniform(const std::vector<StateId>& support) {
    if (support.empty()) fail(ErrorKind::InvalidArgument, "uniform distribution over an empty support");
    std::vector<Entry> entries;
    const T share = T(Numeric<T>::one()) / T(static_cast<long>(support.size()));
    for (auto s : support) entries.push_back({s, share});
    return from_entries(std::move(entries));
  }

  // Merges duplicate states and drops zero entries. Does not check mass.
  static SparseDistribution from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.state < b.state; });
    SparseDistribution d;
    for (auto& e : entries) {
      if (!d.entries_.empty() && d.entries_.back().state == e.state) {
        d.entries_.back().prob += e.prob;
      } else {
        d.entries_.push_back(std::move(e));
      }
    }
    d.entries_.erase(std::remove_if(d.entries_.begin(), d.entries_.end(),
                                    [](const Entry& e) { return Numeric<T>::is_zero(e.prob); }),
                     d.entries_.end());
    for (const auto& e : d.entries_) {
      if (e.prob < 0) fail(ErrorKind::InvalidModel, "negative probability in distribution");
    }
    return d;
  }

  const std::vector<Entry>& entries() const& { return entries_; }
  // Keeps `for (auto& e : chain.successors(s).entries())` safe.
  std::vector<Entry> entries() && { return std::move(entries_); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<StateId> support() const {
    std::vector<StateId> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.state);
    return out;
  }

  T mass() const {
    T total = Numeric<T>::zero();
    for (const auto& e : entries_) total += e.prob;
    return total;
  }

  T probability(StateId s) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                               [](const Entry& e, StateId key) { return e.state < key; });
    if (it == entries_.end() || it->state != s) return Numeric<T>::zero();
    return it->prob;
  }

  T measure(const StateSet& set) const {
    T total = Numeric<T>::zero();
    for (const auto& e : entries_) {
      if (set.contains(e.state)) total += e.prob;
    }
    return total;
  }

  bool is_probability() const {
    if constexpr (Numeric<T>::exact) {
      return mass() == 1;
    } else {
      return std::abs(mass() - 1.0) <= kMassTolerance;
    }
  }

  void require_probability(const std::string& what) const {
    if (!is_probability()) {
      fail(ErrorKind::InvalidModel, what + " has total mass " + Numeric<T>::format(mass()) + ", expected 1");
    }
  }

  // Approximate mode only: removes entries below the threshold and
  // renormalizes. Returns the removed mass.
  double prune(double threshold = kPruneThreshold) {
    static_assert(!Numeric<T>::exact, "pruning is an approximate-mode operation");
    double removed = 0.0;
    std::erase_if(entries_, [&](const Entry& e) {
      if (e.prob < threshold) {
        removed += e.prob;
        return true;
      }
      return false;
    });
    if (removed > 0.0) {
      const double kept = 1.0 - removed;
      if (kept > 0.0) {
        for (auto& e : entries_) e.prob /= kept;
      }
    }
    return removed;
  }

  template <class U>
  SparseDistribution<U> convert() const {
    std::vector<typename SparseDistribution<U>::Entry> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
      if constexpr (std::is_same_v<T, U>) {
        out.push_back({e.state, e.prob});
      } else {
        out.push_back({e.state, static_cast<U>(to_double(e.prob))});
      }
    }
    return SparseDistribution<U>::from_entries(std::move(out));
  }

  friend bool operator==(const SparseDistribution& a, const SparseDistribution& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      if (a.entries_[i].state != b.entries_[i].state || a.entries_[i].prob != b.entries_[i].prob) return false;
    }
    return true;
  }

 private:
  std::vector<Entry> entries_;
};

using Distribution = SparseDistribution<Rational>;

// Accumulates weighted states and freezes into a sorted distribution.
template <class T>
class DistributionBuilder {
 public:
  void add(StateId s, const T& p) {
    auto [it, inserted] = weights_.try_emplace(s, p);
    if (!inserted) it->second += p;
  }
  SparseDistribution<T> build() const {
    std::vector<typename SparseDistribution<T>::Entry> entries;
    entries.reserve(weights_.size());
    for (const auto& [s, p] : weights_) entries.push_back({s, p});
    return SparseDistribution<T>::from_entries(std::move(entries));
  }

 private:
  std::unordered_map<StateId, T> weights_;
};

std::string format_distribution(const Distribution& d);

}  // namespace decisive
