#include "decisive/qualitative/evidence.hpp"

namespace decisive {

DecisivenessEvidence DecisivenessEvidence::finite_chain() {
  DecisivenessEvidence e;
  e.kind = Kind::FiniteChain;
  e.note = "finite chains are decisive";
  e.verified = true;
  return e;
}

DecisivenessEvidence DecisivenessEvidence::finite_attractor(StateSet attractor, std::string note, bool verified) {
  DecisivenessEvidence e;
  e.kind = Kind::FiniteAttractor;
  e.attractor = std::move(attractor);
  e.note = std::move(note);
  e.verified = verified;
  return e;
}

DecisivenessEvidence DecisivenessEvidence::sound_abstraction(std::string note) {
  DecisivenessEvidence e;
  e.kind = Kind::SoundAbstractionOfDecisive;
  e.note = std::move(note);
  e.verified = true;
  return e;
}

DecisivenessEvidence DecisivenessEvidence::assumed(std::string note) {
  DecisivenessEvidence e;
  e.kind = Kind::Assumed;
  e.note = std::move(note);
  return e;
}

DecisivenessEvidence DecisivenessEvidence::non_zeno(std::string note) {
  DecisivenessEvidence e;
  e.kind = Kind::NonZeno;
  e.note = std::move(note);
  return e;
}

DecisivenessEvidence DecisivenessEvidence::dagger(std::string note, bool verified) {
  DecisivenessEvidence e;
  e.kind = Kind::Dagger;
  e.note = std::move(note);
  e.verified = verified;
  return e;
}

DecisivenessEvidence DecisivenessEvidence::not_required(std::string note) {
  DecisivenessEvidence e;
  e.kind = Kind::NotRequired;
  e.note = std::move(note);
  e.verified = true;
  return e;
}

std::string to_string(DecisivenessEvidence::Kind kind) {
  switch (kind) {
    case DecisivenessEvidence::Kind::FiniteChain: return "finite-chain";
    case DecisivenessEvidence::Kind::FiniteAttractor: return "finite-attractor";
    case DecisivenessEvidence::Kind::SoundAbstractionOfDecisive: return "sound-abstraction-of-decisive";
    case DecisivenessEvidence::Kind::Assumed: return "assumed";
    case DecisivenessEvidence::Kind::NonZeno: return "non-zeno";
    case DecisivenessEvidence::Kind::Dagger: return "uniform-fiber-bounds";
    case DecisivenessEvidence::Kind::NotRequired: return "not-required";
  }
  return "unknown";
}

std::string DecisivenessEvidence::describe() const {
  std::string out = to_string(kind);
  if (attractor) out += " " + attractor->description();
  if (!note.empty()) out += ": " + note;
  if (!verified && kind != Kind::Assumed) out += " (declared)";
  if (taints()) out += " [TAINTED]";
  return out;
}

nlohmann::json to_json(const DecisivenessEvidence& evidence) {
  nlohmann::json doc{{"kind", to_string(evidence.kind)}, {"note", evidence.note}, {"verified", evidence.verified},
                     {"tainted", evidence.taints()}};
  if (evidence.attractor) doc["attractor"] = evidence.attractor->description();
  return doc;
}

}  // namespace decisive
