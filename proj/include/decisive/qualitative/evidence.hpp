#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "decisive/core/state_set.hpp"

namespace decisive {

// Why a chain may be treated as decisive for a query. Assumed evidence is
// accepted but taints every result derived from it.
struct DecisivenessEvidence {
  enum class Kind { FiniteChain, FiniteAttractor, SoundAbstractionOfDecisive, Assumed, NonZeno, Dagger, NotRequired };

  Kind kind = Kind::Assumed;
  std::optional<StateSet> attractor;
  std::string note;
  // Set when the attractor or abstraction behind the evidence was checked
  // mechanically rather than declared.
  bool verified = false;

  static DecisivenessEvidence finite_chain();
  static DecisivenessEvidence finite_attractor(StateSet attractor, std::string note, bool verified);
  static DecisivenessEvidence sound_abstraction(std::string note);
  static DecisivenessEvidence assumed(std::string note);
  static DecisivenessEvidence non_zeno(std::string note);
  static DecisivenessEvidence dagger(std::string note, bool verified);
  // Sound without decisiveness, e.g. sampled intervals that keep truncated
  // mass inside the gap.
  static DecisivenessEvidence not_required(std::string note);

  bool taints() const { return kind == Kind::Assumed; }
  std::string describe() const;
};

std::string to_string(DecisivenessEvidence::Kind kind);
nlohmann::json to_json(const DecisivenessEvidence& evidence);

}  // namespace decisive
