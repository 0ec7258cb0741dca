#include "decisive/qualitative/verdict.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "decisive/error.hpp"

namespace decisive {

namespace {

void check_evidence(const MarkovChain& chain, const DecisivenessEvidence& evidence) {
  if (evidence.kind == DecisivenessEvidence::Kind::FiniteChain && !chain.is_finite()) {
    fail(ErrorKind::InvalidArgument, "finite-chain evidence offered for a countable chain");
  }
  if (evidence.kind == DecisivenessEvidence::Kind::FiniteAttractor && !evidence.attractor) {
    fail(ErrorKind::InvalidArgument, "finite-attractor evidence carries no attractor");
  }
}

std::optional<std::size_t> scope_depth(const MarkovChain& chain, const AvoidSet& avoid, const ExplorationScope& scope) {
  if (chain.is_finite()) return std::nullopt;
  if (scope.depth) return scope.depth;
  return avoid.depth;
}

// Some state of `bad` is reachable from the support; states in `stop` are
// not expanded. Countable chains are searched up to the depth; an explicit
// empty `bad` needs no search.
bool hits(const MarkovChain& chain, const std::vector<StateId>& support, const StateSet& bad, const StateSet* stop,
          std::optional<std::size_t> depth) {
  if (bad.is_explicit() && bad.empty()) return false;
  if (!chain.is_finite() && !depth) {
    // Membership answers everywhere (e.g. the whole state space): only the
    // support can be tested without a bound.
    for (auto s : support) {
      if (bad.try_contains(s).value_or(false)) return true;
    }
    fail(ErrorKind::CertificateRequired, "reachability of " + bad.description() + " needs an exploration depth");
  }
  std::unordered_set<StateId> seen;
  std::deque<std::pair<StateId, std::size_t>> queue;
  for (auto s : support) {
    if (seen.insert(s).second) queue.emplace_back(s, 0);
  }
  while (!queue.empty()) {
    const auto [s, d] = queue.front();
    queue.pop_front();
    if (bad.try_contains(s).value_or(false)) return true;
    if (stop && stop->contains(s)) continue;
    if (depth && d >= *depth) continue;
    for (const auto& e : chain.successors(s).entries()) {
      if (seen.insert(e.state).second) queue.emplace_back(e.state, d + 1);
    }
  }
  return false;
}

void add_evidence(std::vector<std::string>& chain_out, const DecisivenessEvidence& evidence) {
  chain_out.push_back("decisiveness: " + evidence.describe());
}

}  // namespace

std::string to_string(Qualitative verdict) {
  switch (verdict) {
    case Qualitative::AlmostSure: return "almost-sure";
    case Qualitative::Positive: return "positive";
    case Qualitative::Zero: return "zero";
  }
  return "unknown";
}

nlohmann::json to_json(const QualitativeVerdict& verdict) {
  return {{"property", verdict.property},
          {"verdict", to_string(verdict.verdict)},
          {"evidence", verdict.evidence_chain},
          {"tainted", verdict.tainted}};
}

QualitativeVerdict qualitative_reachability(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                                            const DecisivenessEvidence& evidence, const ExplorationScope& scope) {
  check_evidence(chain, evidence);
  ExplorationScope local = scope;
  if (local.seeds.empty()) local.seeds = mu.support();
  const AvoidSet avoid = avoid_set(chain, target, local);
  const auto support = mu.support();

  QualitativeVerdict out;
  out.property = "F " + target.description();
  out.tainted = evidence.taints();
  add_evidence(out.evidence_chain, evidence);
  out.evidence_chain.push_back("avoid-set " + avoid.set.description() + " via " + to_string(avoid.provenance) +
                               (avoid.note.empty() ? "" : " (" + avoid.note + ")"));

  const bool all_avoid = std::all_of(support.begin(), support.end(),
                                     [&](StateId s) { return avoid.set.try_contains(s).value_or(false); });
  if (all_avoid) {
    out.verdict = Qualitative::Zero;
    out.evidence_chain.push_back("support lies in the avoid-set");
    return out;
  }
  if (hits(chain, support, avoid.set, &target, scope_depth(chain, avoid, local))) {
    out.verdict = Qualitative::Positive;
    out.evidence_chain.push_back("a path avoiding the target enters the avoid-set");
  } else {
    out.verdict = Qualitative::AlmostSure;
    out.evidence_chain.push_back("P(F B) = 1 iff P(!B U avoid(B)) = 0 under decisiveness");
  }
  return out;
}

QualitativeVerdict qualitative_repeated(const MarkovChain& chain, const Distribution& mu, const StateSet& target,
                                        const DecisivenessEvidence& evidence, const ExplorationScope& scope) {
  check_evidence(chain, evidence);
  ExplorationScope local = scope;
  if (local.seeds.empty()) local.seeds = mu.support();
  const AvoidSet avoid = avoid_set(chain, target, local);
  const auto support = mu.support();

  QualitativeVerdict out;
  out.property = "G F " + target.description();
  out.tainted = evidence.taints();
  add_evidence(out.evidence_chain, evidence);
  out.evidence_chain.push_back("avoid-set " + avoid.set.description() + " via " + to_string(avoid.provenance));

  if (!hits(chain, support, avoid.set, nullptr, scope_depth(chain, avoid, local))) {
    out.verdict = Qualitative::AlmostSure;
    out.evidence_chain.push_back("P(G F B) = 1 iff P(F avoid(B)) = 0 under strong decisiveness");
    return out;
  }
  const AvoidSet twice = avoid_set(chain, avoid.set, local);
  out.evidence_chain.push_back("double avoid-set " + twice.set.description() + " via " + to_string(twice.provenance));
  if (hits(chain, support, twice.set, nullptr, scope_depth(chain, twice, local))) {
    out.verdict = Qualitative::Positive;
    out.evidence_chain.push_back("P(G F B) > 0 iff P(F avoid(avoid(B))) > 0 under PD(B) and D(avoid(B))");
  } else {
    out.verdict = Qualitative::Zero;
    out.evidence_chain.push_back("double avoid-set unreachable");
  }
  return out;
}

OmegaVerdict almost_sure_omega(const ProductChain& prod, const Distribution& mu, const StateSet& attractor,
                               const DecisivenessEvidence& evidence, const ExplorationScope& scope) {
  OmegaVerdict out;
  out.graph = attractor_graph(prod, attractor, scope);
  out.good = good_bsccs(out.graph, prod.automaton());
  out.tainted = evidence.taints();
  add_evidence(out.evidence_chain, evidence);
  out.evidence_chain.push_back("attractor graph over " + std::to_string(out.graph.vertices.size()) + " states, " +
                               std::to_string(out.graph.bsccs.size()) + " BSCCs" +
                               (out.graph.exact ? "" : ", bounded depth " + std::to_string(*out.graph.depth)));

  const auto lifted = lift_initial(prod, mu);
  const auto support = lifted.support();
  for (std::size_t c = 0; c < out.graph.bsccs.size(); ++c) {
    const auto members = out.graph.bscc_states(c);
    if (hits(prod.chain(), support, StateSet::of(members), nullptr, out.graph.depth)) out.reachable_bsccs.push_back(c);
  }
  out.almost_sure = std::all_of(out.reachable_bsccs.begin(), out.reachable_bsccs.end(), [&](std::size_t c) {
    return std::find(out.good.begin(), out.good.end(), c) != out.good.end();
  });
  out.evidence_chain.push_back(out.almost_sure ? "every reachable BSCC is good" : "a reachable BSCC is not good");
  return out;
}

nlohmann::json to_json(const ProductChain& prod, const OmegaVerdict& verdict) {
  return {{"property", "Inf in F"},
          {"almost_sure", verdict.almost_sure},
          {"graph", attractor_graph_json(prod, verdict.graph, verdict.good)},
          {"reachable_bsccs", verdict.reachable_bsccs},
          {"evidence", verdict.evidence_chain},
          {"tainted", verdict.tainted}};
}

}  // namespace decisive
