#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "decisive/core/distribution.hpp"
#include "decisive/core/markov_chain.hpp"

namespace decisive {

using LocationMask = std::uint64_t;

inline constexpr std::size_t kMaxLocations = 64;
inline constexpr std::size_t kMaxAutomatonPropositions = 16;

// Deterministic complete Muller automaton over 2^AP. Locations are dense
// indices; the Muller family is a set of location masks.
class MullerAutomaton {
 public:
  struct Edge {
    std::size_t from;
    LabelSet label;
    std::size_t to;
  };

  // Checks determinism and completeness. With auto_complete, missing
  // (location, letter) pairs go to an added sink that belongs to no set of
  // the family.
  static MullerAutomaton build(std::vector<std::string> ap, std::vector<std::string> locations, std::size_t initial,
                               const std::vector<Edge>& edges, std::vector<LocationMask> family,
                               bool auto_complete = false);

  std::size_t size() const { return locations_.size(); }
  std::size_t initial() const { return initial_; }
  std::size_t next(std::size_t q, LabelSet letter) const;
  const std::vector<std::string>& ap() const { return ap_; }
  const std::vector<std::string>& locations() const { return locations_; }
  const std::vector<LocationMask>& family() const { return family_; }
  bool accepts(LocationMask inf) const;
  bool auto_completed() const { return auto_completed_; }
  std::optional<std::size_t> location_index(const std::string& name) const;

  // Same automaton with letters re-encoded over `chain_ap`, which must
  // contain every proposition the automaton mentions.
  MullerAutomaton over_alphabet(const std::vector<std::string>& chain_ap) const;

 private:
  std::vector<std::string> ap_;
  std::vector<std::string> locations_;
  std::size_t initial_ = 0;
  std::vector<std::size_t> delta_;  // [q * 2^|AP| + letter]
  std::vector<LocationMask> family_;
  bool auto_completed_ = false;
};

std::string format_mask(const MullerAutomaton& dma, LocationMask mask);

// {"ap", "locations", "initial", "edges":[{"from","label","to"}], "muller"}.
MullerAutomaton load_muller(const nlohmann::json& doc, bool auto_complete = false);
nlohmann::json muller_to_json(const MullerAutomaton& dma);

// The three-location automaton over {a}: q0 -> q1 <-> q2, family {{q1,q2}}.
MullerAutomaton alternating_automaton();

}  // namespace decisive
