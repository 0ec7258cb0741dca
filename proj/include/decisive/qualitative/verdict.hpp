#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "decisive/core/distribution.hpp"
#include "decisive/omega/product.hpp"
#include "decisive/qualitative/attractor_graph.hpp"
#include "decisive/qualitative/avoid.hpp"
#include "decisive/qualitative/evidence.hpp"

namespace decisive {

enum class Qualitative { AlmostSure, Positive, Zero };

std::string to_string(Qualitative verdict);

struct QualitativeVerdict {
  Qualitative verdict = Qualitative::Zero;
  std::string property;
  std::vector<std::string> evidence_chain;
  bool tainted = false;
};

nlohmann::json to_json(const QualitativeVerdict& verdict);

// P(F B) = 1 iff P(¬B U B̃) = 0, under D(μ, B).
QualitativeVerdict qualitative_reachability(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                                            const DecisivenessEvidence& evidence, const ExplorationScope& scope = {});

// P(GF B) = 1 iff P(F B̃) = 0, and P(GF B) > 0 iff P(F B̃̃) > 0.
QualitativeVerdict qualitative_repeated(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                                        const DecisivenessEvidence& evidence, const ExplorationScope& scope = {});

struct OmegaVerdict {
  bool almost_sure = false;
  AttractorGraph graph;
  std::vector<std::size_t> good;
  std::vector<std::size_t> reachable_bsccs;
  std::vector<std::string> evidence_chain;
  bool tainted = false;
};

// Every BSCC of Graph(B) reachable from μ × δ_{q0} is good. `attractor` is
// a finite attractor of the product; `mu` lives on the factor chain.
OmegaVerdict almost_sure_omega(const ProductChain& prod, const Distribution& mu, const StateSet& attractor,
                               const DecisivenessEvidence& evidence, const ExplorationScope& scope = {});

nlohmann::json to_json(const ProductChain& prod, const OmegaVerdict& verdict);

}  // namespace decisive
