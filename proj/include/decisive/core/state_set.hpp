#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "decisive/core/state.hpp"

namespace decisive {

// A measurable set of states: either an explicit finite set, or a membership
// predicate. Predicates may be partial (return nullopt) when membership is
// only known on an explored region; querying such a state is an
// UnresolvableSet error. A predicate may also carry a closure certificate: a
// depth k such that exploring k steps from the initial support decides every
// closure query (reachability, avoid-sets) involving the set.
class StateSet {
 public:
  using Membership = std::function<std::optional<bool>(StateId)>;

  StateSet();  // empty explicit set

  static StateSet of(std::vector<StateId> members);
  static StateSet of(std::initializer_list<std::int64_t> members);
  static StateSet predicate(Membership membership, std::string description,
                            std::optional<std::size_t> certificate = std::nullopt);
  static StateSet everything();
  static StateSet nothing() { return StateSet(); }

  bool contains(StateId s) const;
  std::optional<bool> try_contains(StateId s) const;

  bool is_explicit() const { return impl_->membership == nullptr; }
  // Sorted members; explicit sets only.
  const std::vector<StateId>& members() const;
  std::size_t size() const;  // explicit sets only
  bool empty() const { return is_explicit() && impl_->sorted.empty(); }

  std::optional<std::size_t> certificate() const { return impl_->certificate; }
  StateSet with_certificate(std::size_t depth) const;

  // Identity used for formula interning; copies share it.
  std::uint64_t id() const { return impl_->id; }
  const std::string& description() const { return impl_->description; }

  friend bool operator==(const StateSet& a, const StateSet& b);

 private:
  struct Impl {
    std::uint64_t id = 0;
    std::vector<StateId> sorted;
    std::unordered_set<StateId> lookup;
    Membership membership;
    std::optional<std::size_t> certificate;
    std::string description;
  };
  explicit StateSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

StateSet set_union(const StateSet& a, const StateSet& b);
StateSet set_intersection(const StateSet& a, const StateSet& b);
StateSet set_complement(const StateSet& a);
StateSet set_difference(const StateSet& a, const StateSet& b);

}  // namespace decisive
