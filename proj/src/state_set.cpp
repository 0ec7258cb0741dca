#include "decisive/core/state_set.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "decisive/error.hpp"

namespace decisive {

namespace {

std::uint64_t next_set_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

std::string describe_members(const std::vector<StateId>& members) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out << ',';
    if (i == 16) {
      out << "...";
      break;
    }
    out << members[i].value;
  }
  out << '}';
  return out.str();
}

std::optional<std::size_t> min_certificate(const StateSet& a, const StateSet& b) {
  const auto ca = a.is_explicit() ? std::optional<std::size_t>{} : a.certificate();
  const auto cb = b.is_explicit() ? std::optional<std::size_t>{} : b.certificate();
  if (!a.is_explicit() && !ca) return std::nullopt;
  if (!b.is_explicit() && !cb) return std::nullopt;
  if (ca && cb) return std::max(*ca, *cb);
  return ca ? ca : cb;
}

}  // namespace

StateSet::StateSet() {
  auto impl = std::make_shared<Impl>();
  impl->id = next_set_id();
  impl->description = "{}";
  impl_ = std::move(impl);
}

StateSet StateSet::of(std::vector<StateId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto impl = std::make_shared<Impl>();
  impl->id = next_set_id();
  impl->lookup.insert(members.begin(), members.end());
  impl->description = describe_members(members);
  impl->sorted = std::move(members);
  return StateSet(std::move(impl));
}

StateSet StateSet::of(std::initializer_list<std::int64_t> members) {
  std::vector<StateId> ids;
  for (auto m : members) ids.push_back(StateId{m});
  return of(std::move(ids));
}

StateSet StateSet::predicate(Membership membership, std::string description,
                             std::optional<std::size_t> certificate) {
  auto impl = std::make_shared<Impl>();
  impl->id = next_set_id();
  impl->membership = std::move(membership);
  impl->certificate = certificate;
  impl->description = std::move(description);
  return StateSet(std::move(impl));
}

StateSet StateSet::everything() {
  return predicate([](StateId) { return std::optional<bool>(true); }, "S");
}

std::optional<bool> StateSet::try_contains(StateId s) const {
  if (impl_->membership) return impl_->membership(s);
  return impl_->lookup.count(s) > 0;
}

bool StateSet::contains(StateId s) const {
  const auto answer = try_contains(s);
  if (!answer) {
    fail(ErrorKind::UnresolvableSet,
         "membership of state " + std::to_string(s.value) + " in " + impl_->description + " is not resolvable");
  }
  return *answer;
}

const std::vector<StateId>& StateSet::members() const {
  if (!is_explicit()) fail(ErrorKind::InvalidArgument, "members() on predicate set " + impl_->description);
  return impl_->sorted;
}

std::size_t StateSet::size() const { return members().size(); }

StateSet StateSet::with_certificate(std::size_t depth) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->certificate = depth;
  return StateSet(std::move(impl));
}

bool operator==(const StateSet& a, const StateSet& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.is_explicit() && b.is_explicit()) return a.impl_->sorted == b.impl_->sorted;
  return false;
}

StateSet set_union(const StateSet& a, const StateSet& b) {
  if (a.is_explicit() && b.is_explicit()) {
    std::vector<StateId> merged(a.members());
    merged.insert(merged.end(), b.members().begin(), b.members().end());
    return StateSet::of(std::move(merged));
  }
  return StateSet::predicate(
      [a, b](StateId s) -> std::optional<bool> {
        const auto x = a.try_contains(s);
        if (x && *x) return true;
        const auto y = b.try_contains(s);
        if (y && *y) return true;
        if (!x || !y) return std::nullopt;
        return false;
      },
      "(" + a.description() + " | " + b.description() + ")", min_certificate(a, b));
}

StateSet set_intersection(const StateSet& a, const StateSet& b) {
  if (a.is_explicit() && b.is_explicit()) {
    std::vector<StateId> common;
    std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                          std::back_inserter(common));
    return StateSet::of(std::move(common));
  }
  if (a.is_explicit() || b.is_explicit()) {
    const StateSet& finite = a.is_explicit() ? a : b;
    const StateSet& other = a.is_explicit() ? b : a;
    std::vector<StateId> kept;
    for (auto s : finite.members()) {
      const auto in = other.try_contains(s);
      if (!in) {
        // Cannot be decided eagerly; fall back to a lazy predicate.
        kept.clear();
        goto lazy;
      }
      if (*in) kept.push_back(s);
    }
    return StateSet::of(std::move(kept));
  }
lazy:
  return StateSet::predicate(
      [a, b](StateId s) -> std::optional<bool> {
        const auto x = a.try_contains(s);
        if (x && !*x) return false;
        const auto y = b.try_contains(s);
        if (y && !*y) return false;
        if (!x || !y) return std::nullopt;
        return true;
      },
      "(" + a.description() + " & " + b.description() + ")", min_certificate(a, b));
}

StateSet set_complement(const StateSet& a) {
  return StateSet::predicate(
      [a](StateId s) -> std::optional<bool> {
        const auto x = a.try_contains(s);
        if (!x) return std::nullopt;
        return !*x;
      },
      "~" + a.description(), a.is_explicit() ? std::optional<std::size_t>{} : a.certificate());
}

StateSet set_difference(const StateSet& a, const StateSet& b) {
  if (a.is_explicit()) return set_intersection(a, set_complement(b));
  return set_intersection(a, set_complement(b));
}

}  // namespace decisive
