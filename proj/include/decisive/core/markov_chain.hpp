#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "decisive/core/distribution.hpp"
#include "decisive/core/state.hpp"

namespace decisive {

// Facts about a lazily generated chain that the user vouches for.
struct ChainCertificate {
  // Every state reaches every other state.
  bool irreducible = false;
  std::string note;
};

// Labelled Markov chain, either finite and explicit or countable and
// generated on demand. Copies share the same immutable representation.
class MarkovChain {
 public:
  using SuccessorFn = std::function<Distribution(StateId)>;
  using LabelFn = std::function<LabelSet(StateId)>;
  using NameFn = std::function<std::string(StateId)>;
  using ValidFn = std::function<bool(StateId)>;

  static MarkovChain finite(std::vector<std::string> ap, std::vector<StateId> states, std::vector<Distribution> rows,
                            std::vector<LabelSet> labels, std::vector<std::string> names = {});

  static MarkovChain lazy(std::vector<std::string> ap, SuccessorFn successors, LabelFn label, ValidFn valid,
                          NameFn name = {}, ChainCertificate certificate = {});

  bool is_finite() const;

  // Finite chains only.
  const std::vector<StateId>& states() const;
  std::size_t index_of(StateId s) const;

  bool has_state(StateId s) const;
  Distribution successors(StateId s) const;
  // Finite chains only; avoids copying rows in hot loops.
  const Distribution& row(std::size_t index) const;
  LabelSet label(StateId s) const;
  std::string name(StateId s) const;

  const std::vector<std::string>& ap() const;
  std::optional<std::size_t> ap_index(const std::string& proposition) const;
  const ChainCertificate& certificate() const;

 private:
  struct Impl;
  explicit MarkovChain(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Returns the set of state ids of a finite chain.
StateSet all_states(const MarkovChain& chain);

}  // namespace decisive
