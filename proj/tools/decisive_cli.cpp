// Batch front-end: loads models and automata, runs one analysis, prints a
// report. Exit codes: 0 success, 1 input error, 2 refusal, 3 the scheme
// stalled or ran out of budget.

#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "decisive/abstraction/abstraction.hpp"
#include "decisive/core/families.hpp"
#include "decisive/core/model_io.hpp"
#include "decisive/omega/muller.hpp"
#include "decisive/omega/product.hpp"
#include "decisive/qualitative/attractor_graph.hpp"
#include "decisive/qualitative/avoid.hpp"
#include "decisive/qualitative/verdict.hpp"
#include "decisive/quantitative/omega.hpp"
#include "decisive/quantitative/scheme.hpp"
#include "decisive/sta/pipeline.hpp"

namespace {

using namespace decisive;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRefused = 2;
constexpr int kExitIncomplete = 3;

// Exploration depth for the necessary-condition check of a declared
// attractor on a countable chain when --depth is absent.
constexpr std::size_t kAttractorProbeDepth = 200;

struct Options {
  std::string model;
  std::string dma;
  std::string abstract_model;
  std::string map = "identity";
  std::string p;
  std::string init;
  std::string target;
  std::string allowed;
  std::string attractor;
  std::string assume;
  std::string tail;
  std::string locations;
  std::string window;
  std::string non_zeno;
  std::string property = "reach";
  std::string out = "text";
  std::string output;
  double eps = 1e-6;
  std::size_t budget = 10000;
  std::size_t samples = 0;
  double confidence = 0.99;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t depth = 0;
  std::size_t fiber_bound = 64;
  bool exact = false;
  bool monte_carlo = false;
};

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* value = std::getenv(name);
  if (!value || !*value) return fallback;
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, std::string(name) + " must be a nonnegative integer");
  }
}

// Report sink: stdout or --output.
void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(o.output);
  if (!file) fail(ErrorKind::InvalidArgument, "cannot write " + o.output);
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

std::string dump(const json& doc) { return doc.dump(2); }

LoadedChain load_model(const Options& o) {
  if (o.model.empty()) fail(ErrorKind::InvalidArgument, "--model is required");
  std::optional<Rational> p;
  if (!o.p.empty()) p = parse_probability(o.p);
  return load_chain(read_json_file(o.model), p);
}

MullerAutomaton load_dma(const Options& o) {
  if (o.dma.empty()) fail(ErrorKind::InvalidArgument, "--dma is required");
  return load_muller(read_json_file(o.dma));
}

Distribution initial(const LoadedChain& m, const Options& o) {
  if (!o.init.empty()) return parse_initial(m, o.init);
  if (m.init) return *m.init;
  fail(ErrorKind::InvalidArgument, "no initial distribution: pass --init or declare \"init\" in the model");
}

StateSet target_set(const LoadedChain& m, const Options& o) {
  if (o.target.empty()) fail(ErrorKind::InvalidArgument, "--target is required");
  return parse_state_set(m, o.target);
}

ExplorationScope scope_of(const Options& o, std::vector<StateId> seeds = {}) {
  ExplorationScope scope;
  scope.seeds = std::move(seeds);
  if (o.depth > 0) scope.depth = o.depth;
  return scope;
}

// Finite chains are decisive; countable ones need --attractor or --assume.
// Without either, the interval is still reported but marked as resting on
// an assumption.
DecisivenessEvidence evidence_for(const LoadedChain& m, const Options& o, const ExplorationScope& scope) {
  if (!o.assume.empty()) return DecisivenessEvidence::assumed(o.assume);
  if (m.chain.is_finite()) return DecisivenessEvidence::finite_chain();
  if (!o.attractor.empty()) {
    const StateSet set = parse_state_set(m, o.attractor);
    ExplorationScope probe = scope;
    if (!probe.depth) probe.depth = kAttractorProbeDepth;
    const AttractorCheck check = check_attractor(m.chain, set, {}, probe);
    if (!check.holds) fail(ErrorKind::Refused, "declared attractor rejected: " + check.justification);
    return DecisivenessEvidence::finite_attractor(set, "declared attractor; " + check.justification, check.conclusive);
  }
  return DecisivenessEvidence::assumed("no decisiveness evidence supplied for a countable chain");
}

Estimator estimator_of(const Options& o) {
  if (o.exact && o.monte_carlo) fail(ErrorKind::InvalidArgument, "--exact and --mc are exclusive");
  if (o.exact) return Estimator::exact();
  if (o.monte_carlo || o.samples > 0) {
    return Estimator::monte_carlo(o.samples > 0 ? o.samples : 100000, o.confidence, o.seed, o.threads);
  }
  return Estimator::floating();
}

SchemeOptions scheme_of(const Options& o) {
  SchemeOptions s;
  s.eps = o.eps;
  s.budget = o.budget;
  return s;
}

// Named upper bounds on the target probability, for sample truncation.
void attach_chain_tail(Estimator& estimator, const LoadedChain& m, const Options& o, const StateSet& target) {
  if (o.tail.empty()) return;
  if (o.tail != "walk") fail(ErrorKind::InvalidArgument, "unknown --tail '" + o.tail + "' (known: walk)");
  if (m.family != "random-walk") fail(ErrorKind::InvalidArgument, "--tail walk needs the random-walk family");
  if (!(target.is_explicit() && target.members() == std::vector<StateId>{state(0)})) {
    fail(ErrorKind::InvalidArgument, "--tail walk bounds reachability of {0} only");
  }
  const Rational p = o.p.empty() ? Rational(0) : parse_probability(o.p);
  const LoadedChain& model = m;
  (void)model;
  if (o.p.empty()) fail(ErrorKind::InvalidArgument, "--tail walk needs --p");
  estimator.tail = [p](StateId s) { return walk_ruin_tail(p, s); };
}

int exit_for(const ApproxResult& r) { return r.status == Status::Converged ? kExitOk : kExitIncomplete; }

int report(const Options& o, const ApproxResult& r) {
  if (o.out == "json") {
    emit(o, dump(to_json(r)));
  } else if (o.out == "text") {
    emit(o, to_text(r));
  } else {
    fail(ErrorKind::InvalidArgument, "--out " + o.out + " is not available for this command");
  }
  return exit_for(r);
}

std::string set_text(const MarkovChain& chain, const StateSet& set) {
  if (!set.is_explicit()) return set.description();
  std::string out = "{";
  for (auto s : set.members()) out += (out.size() > 1 ? ", " : "") + chain.name(s);
  return out + "}";
}

json set_json(const MarkovChain& chain, const StateSet& set) {
  if (!set.is_explicit()) return set.description();
  json out = json::array();
  for (auto s : set.members()) out.push_back(chain.name(s));
  return out;
}

std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// States reachable from the support, up to the depth on countable chains.
std::vector<StateId> explore(const MarkovChain& chain, const std::vector<StateId>& support, std::size_t depth) {
  if (!chain.is_finite() && depth == 0) {
    fail(ErrorKind::CertificateRequired, "listing a countable chain needs --depth");
  }
  std::vector<StateId> order;
  std::unordered_set<StateId> seen;
  std::deque<std::pair<StateId, std::size_t>> queue;
  for (auto s : support) {
    if (seen.insert(s).second) queue.emplace_back(s, 0);
  }
  while (!queue.empty()) {
    const auto [s, d] = queue.front();
    queue.pop_front();
    order.push_back(s);
    if (!chain.is_finite() && d >= depth) continue;
    for (const auto& e : chain.successors(s).entries()) {
      if (seen.insert(e.state).second) queue.emplace_back(e.state, d + 1);
    }
  }
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<StateId> lift_states(const ProductChain& prod, const std::vector<StateId>& states) {
  std::vector<StateId> out;
  for (auto s : states) {
    for (std::size_t q = 0; q < prod.automaton().size(); ++q) out.push_back(prod.encode(s, q));
  }
  return out;
}

// Attractor over chain states (all states of a finite chain by default),
// lifted to the product.
StateSet product_attractor(const LoadedChain& m, const ProductChain& prod, const Options& o) {
  if (!o.attractor.empty()) {
    const StateSet set = parse_state_set(m, o.attractor);
    if (!set.is_explicit()) fail(ErrorKind::InvalidArgument, "--attractor must be a finite list of states");
    return StateSet::of(lift_states(prod, set.members()));
  }
  if (!m.chain.is_finite()) fail(ErrorKind::CertificateRequired, "countable chain: pass a finite --attractor");
  return StateSet::of(lift_states(prod, m.chain.states()));
}

// ---------------------------------------------------------------- commands

int cmd_product(const Options& o) {
  const LoadedChain m = load_model(o);
  const ProductChain prod = product(m.chain, load_dma(o));
  const Distribution mu = lift_initial(prod, initial(m, o));
  const auto states = explore(prod.chain(), mu.support(), o.depth);
  if (o.out == "dot") {
    std::ostringstream dot;
    dot << "digraph product {\n  node [shape=box];\n";
    for (auto s : states) dot << "  p" << s.value << " [label=\"" << dot_escape(prod.name(s)) << "\"];\n";
    std::unordered_set<StateId> listed(states.begin(), states.end());
    for (auto s : states) {
      for (const auto& e : prod.chain().successors(s).entries()) {
        if (!listed.count(e.state)) continue;
        dot << "  p" << s.value << " -> p" << e.state.value << " [label=\"" << format_rational(e.prob) << "\"];\n";
      }
    }
    dot << "}\n";
    emit(o, dot.str());
    return kExitOk;
  }
  json doc;
  doc["automaton"] = muller_to_json(prod.automaton());
  doc["states"] = json::array();
  doc["edges"] = json::array();
  for (auto s : states) {
    doc["states"].push_back(prod.name(s));
    for (const auto& e : prod.chain().successors(s).entries()) {
      doc["edges"].push_back({prod.name(s), prod.name(e.state), format_rational(e.prob)});
    }
  }
  doc["exhaustive"] = prod.chain().is_finite();
  if (o.out == "json") {
    emit(o, dump(doc));
  } else {
    std::ostringstream text;
    text << "product: " << states.size() << " states" << (prod.chain().is_finite() ? "" : " (explored)") << "\n";
    for (const auto& e : doc["edges"]) {
      text << "  " << e[0].get<std::string>() << " -> " << e[1].get<std::string>() << " : "
           << e[2].get<std::string>() << "\n";
    }
    emit(o, text.str());
  }
  return kExitOk;
}

int cmd_avoid_set(const Options& o) {
  const LoadedChain m = load_model(o);
  const StateSet target = target_set(m, o);
  std::vector<StateId> seeds;
  if (!o.init.empty() || m.init) seeds = initial(m, o).support();
  const AvoidSet avoid = avoid_set(m.chain, target, scope_of(o, seeds));
  json doc{{"target", set_json(m.chain, target)},
           {"avoid_set", set_json(m.chain, avoid.set)},
           {"provenance", to_string(avoid.provenance)},
           {"note", avoid.note}};
  if (avoid.depth) doc["depth"] = *avoid.depth;
  if (o.out == "json") {
    emit(o, dump(doc));
  } else {
    emit(o, "avoid(" + set_text(m.chain, target) + ") = " + set_text(m.chain, avoid.set) + " via " +
                to_string(avoid.provenance) + (avoid.note.empty() ? "" : " (" + avoid.note + ")"));
  }
  return kExitOk;
}

int cmd_attractor_graph(const Options& o) {
  const LoadedChain m = load_model(o);
  const ProductChain prod = product(m.chain, load_dma(o));
  const StateSet attractor = product_attractor(m, prod, o);
  const AttractorGraph graph = attractor_graph(prod, attractor, scope_of(o));
  const auto good = good_bsccs(graph, prod.automaton());
  if (o.out == "dot") {
    emit(o, attractor_graph_dot(prod, graph, good));
  } else if (o.out == "json") {
    emit(o, dump(attractor_graph_json(prod, graph, good)));
  } else {
    std::ostringstream text;
    text << "attractor graph: " << graph.vertices.size() << " vertices, " << graph.bsccs.size() << " BSCCs"
         << (graph.exact ? "" : " (bounded depth " + std::to_string(*graph.depth) + ")") << "\n";
    for (std::size_t c = 0; c < graph.bsccs.size(); ++c) {
      const bool is_good = std::find(good.begin(), good.end(), c) != good.end();
      text << "  BSCC " << c << (is_good ? " good" : " bad") << " recurring "
           << format_mask(prod.automaton(), graph.recurring[c]) << ":";
      for (auto s : graph.bscc_states(c)) text << " " << prod.name(s);
      text << "\n";
    }
    emit(o, text.str());
  }
  return kExitOk;
}

std::string verdict_text(const std::string& head, const std::vector<std::string>& chain, bool tainted) {
  std::string out = head + (tainted ? " TAINTED" : "") + "\n";
  for (const auto& line : chain) out += "  " + line + "\n";
  return out;
}

int cmd_check_qualitative(const Options& o) {
  const LoadedChain m = load_model(o);
  const Distribution mu = initial(m, o);
  const ExplorationScope scope = scope_of(o, mu.support());
  const DecisivenessEvidence evidence = evidence_for(m, o, scope);
  if (o.property == "omega") {
    const ProductChain prod = product(m.chain, load_dma(o));
    const OmegaVerdict v = almost_sure_omega(prod, mu, product_attractor(m, prod, o), evidence, scope_of(o));
    if (o.out == "json") {
      emit(o, dump(to_json(prod, v)));
    } else {
      emit(o, verdict_text(std::string("Inf in F: ") + (v.almost_sure ? "almost-sure" : "not almost-sure"),
                           v.evidence_chain, v.tainted));
    }
    return kExitOk;
  }
  QualitativeVerdict v;
  if (o.property == "reach") {
    v = qualitative_reachability(m.chain, mu, target_set(m, o), evidence, scope);
  } else if (o.property == "repeated") {
    v = qualitative_repeated(m.chain, mu, target_set(m, o), evidence, scope);
  } else {
    fail(ErrorKind::InvalidArgument, "--property must be reach, repeated or omega");
  }
  if (o.out == "json") {
    emit(o, dump(to_json(v)));
  } else {
    emit(o, verdict_text(v.property + ": " + to_string(v.verdict), v.evidence_chain, v.tainted));
  }
  return kExitOk;
}

int cmd_approx(const Options& o, const std::string& kind) {
  const LoadedChain m = load_model(o);
  const Distribution mu = initial(m, o);
  const ExplorationScope scope = scope_of(o, mu.support());
  const DecisivenessEvidence evidence = evidence_for(m, o, scope);
  const StateSet target = target_set(m, o);
  Estimator estimator = estimator_of(o);
  const AvoidSet avoid = avoid_set(m.chain, target, scope);
  if (kind == "reach") {
    attach_chain_tail(estimator, m, o, target);
    return report(o, approx_reach(m.chain, mu, target, avoid, evidence, estimator, scheme_of(o)));
  }
  if (kind == "until") {
    if (o.allowed.empty()) fail(ErrorKind::InvalidArgument, "--allowed is required");
    return report(o, approx_until(m.chain, mu, parse_state_set(m, o.allowed), target, avoid, evidence, estimator,
                                  scheme_of(o)));
  }
  const AvoidSet twice = avoid_set(m.chain, avoid.set, scope);
  return report(o, approx_repeated(m.chain, mu, target, avoid, twice, evidence, estimator, scheme_of(o)));
}

int cmd_approx_omega(const Options& o) {
  const LoadedChain m = load_model(o);
  const ProductChain prod = product(m.chain, load_dma(o));
  const Distribution mu = initial(m, o);
  const DecisivenessEvidence evidence = evidence_for(m, o, scope_of(o, mu.support()));
  return report(o, quant_omega_attractor(prod, mu, product_attractor(m, prod, o), evidence, estimator_of(o),
                                         scheme_of(o), scope_of(o)));
}

AlphaMap alpha_of(const Options& o, const LoadedChain& concrete, const LoadedChain& abstract) {
  if (o.map == "walk-to-Tf") return AlphaMap::walk_to_three_state();
  if (o.map == "identity") return AlphaMap::identity(concrete.chain);
  // A JSON object {"concrete name": "abstract name"}.
  std::map<StateId, StateId> table;
  for (const auto& [from, to] : read_json_file(o.map).items()) {
    table[concrete.resolve(from)] = abstract.resolve(to.get<std::string>());
  }
  return AlphaMap::table(std::move(table), o.map);
}

int cmd_check_abstraction(const Options& o) {
  const LoadedChain concrete = load_model(o);
  if (o.abstract_model.empty()) fail(ErrorKind::InvalidArgument, "--abstract is required");
  const LoadedChain abstract = load_chain(read_json_file(o.abstract_model));
  AbstractionHandle handle(concrete.chain, abstract.chain, alpha_of(o, concrete, abstract));
  const AbstractionReport check = check_abstraction(handle, o.fiber_bound, scope_of(o));
  const CertificationReport complete = certify_complete(handle);
  json doc{{"abstraction", {{"holds", check.holds},
                            {"bounded", check.bounded},
                            {"pairs_checked", check.pairs_checked},
                            {"detail", check.detail}}},
           {"complete", {{"holds", complete.holds}, {"reason", complete.reason}}},
           {"handle", to_json(handle)}};
  if (check.offending) {
    doc["abstraction"]["offending"] = {concrete.chain.name(check.offending->first),
                                       abstract.chain.name(check.offending->second)};
  }
  if (o.out == "json") {
    emit(o, dump(doc));
  } else {
    std::string text = std::string("alpha-abstraction: ") + (check.holds ? "holds" : "fails") +
                       (check.bounded ? " (fibers bounded)" : "") + "\n  " + check.detail + "\n";
    text += std::string("complete: ") + (complete.holds ? "yes" : "no") + "\n  " + complete.reason + "\n";
    emit(o, text);
  }
  return kExitOk;
}

json witness_json(const MarkovChain& abstract, const std::optional<AbstractWitness>& w) {
  if (!w) return {{"found", false}};
  return {{"found", true},
          {"abstract_target", set_json(abstract, w->abstract_target)},
          {"abstract_value", format_rational(w->abstract_value)},
          {"concrete", to_json(w->concrete)}};
}

std::string witness_text(const MarkovChain& abstract, const std::optional<AbstractWitness>& w) {
  if (!w) return "no counterexample over the catalogue";
  return "unsound: abstract P(F " + set_text(abstract, w->abstract_target) + ") = " +
         format_rational(w->abstract_value) + " but concrete " + to_text(w->concrete);
}

int cmd_witness_sta(const Options& o) {
  const sta::StaModel model = sta::load_sta(read_json_file(o.model));
  const auto atoms = sta::parse_atoms(model, o.init);
  const sta::ThickGraph graph = sta::thick_graph(model, sta::configurations(atoms));
  std::vector<StateSet> catalogue;
  if (!o.target.empty()) {
    // Thick-graph state ids, as printed by sta-thick-graph.
    std::vector<StateId> ids;
    std::stringstream parts(o.target);
    std::string part;
    while (std::getline(parts, part, ',')) ids.push_back(state(std::stoll(part)));
    catalogue.push_back(StateSet::of(ids));
  }
  sta::ConfigTail tail;
  if (o.tail == "pacman") {
    tail = sta::pacman_tail;
  } else if (!o.tail.empty()) {
    fail(ErrorKind::InvalidArgument, "unknown --tail '" + o.tail + "' (known for STA: pacman)");
  }
  Estimator estimator = estimator_of(o);
  if (estimator.kind != Estimator::Kind::MonteCarlo) estimator = Estimator::monte_carlo(100000, o.confidence, o.seed, o.threads);
  const auto w = sta::sta_witness_search(model, graph, atoms, catalogue, estimator, scheme_of(o), tail);
  if (o.out == "json") {
    emit(o, dump(witness_json(graph.chain(), w)));
  } else {
    emit(o, witness_text(graph.chain(), w));
  }
  return kExitOk;
}

int cmd_witness_unsound(const Options& o) {
  if (o.map == "sta-thick-graph") return cmd_witness_sta(o);
  const LoadedChain concrete = load_model(o);
  if (o.abstract_model.empty()) fail(ErrorKind::InvalidArgument, "--abstract is required");
  const LoadedChain abstract = load_chain(read_json_file(o.abstract_model));
  AbstractionHandle handle(concrete.chain, abstract.chain, alpha_of(o, concrete, abstract));
  const Distribution mu = initial(concrete, o);
  std::vector<StateSet> catalogue;
  if (!o.target.empty()) {
    catalogue.push_back(parse_state_set(abstract, o.target));
  } else {
    catalogue = default_catalogue(handle);
  }
  const Estimator base = estimator_of(o).kind == Estimator::Kind::MonteCarlo
                             ? estimator_of(o)
                             : Estimator::monte_carlo(100000, o.confidence, o.seed, o.threads);
  auto estimate = [&](const Distribution& from, const StateSet& target) {
    Estimator e = base;
    if (o.tail == "walk" && target.is_explicit() && target.members() == std::vector<StateId>{state(0)}) {
      attach_chain_tail(e, concrete, o, target);
    }
    const AvoidSet avoid = avoid_set(concrete.chain, target, scope_of(o, from.support()));
    return approx_reach(concrete.chain, from, target, avoid,
                        DecisivenessEvidence::not_required("truncated runs stay inside the interval"), e,
                        scheme_of(o));
  };
  const auto cex = soundness_witness_search(handle, mu, catalogue, estimate);
  std::optional<AbstractWitness> w;
  if (cex) w = AbstractWitness{cex->abstract_target, pushforward(handle.alpha(), mu), cex->abstract_value, cex->concrete};
  if (o.out == "json") {
    json doc = witness_json(abstract.chain, w);
    doc["handle"] = to_json(handle);
    emit(o, dump(doc));
  } else {
    emit(o, witness_text(abstract.chain, w));
  }
  return kExitOk;
}

sta::StaModel load_sta_model(const Options& o) {
  if (o.model.empty()) fail(ErrorKind::InvalidArgument, "--model is required");
  return sta::load_sta(read_json_file(o.model));
}

int cmd_sta_thick_graph(const Options& o) {
  const sta::StaModel model = load_sta_model(o);
  const auto atoms = sta::parse_atoms(model, o.init);
  const sta::ThickGraph graph = sta::thick_graph(model, sta::configurations(atoms));
  const sta::Classification cls = sta::classify(model, graph);
  if (o.out == "dot") {
    emit(o, sta::thick_graph_dot(graph));
  } else if (o.out == "json") {
    json doc = sta::thick_graph_json(graph);
    doc["class"] = sta::to_string(cls.cls);
    doc["class_reason"] = cls.reason;
    emit(o, dump(doc));
  } else {
    std::ostringstream text;
    text << "thick graph: " << graph.states().size() << " states, class " << sta::to_string(cls.cls) << " ("
         << cls.reason << ")\n";
    const auto& chain = graph.chain();
    for (std::size_t i = 0; i < chain.states().size(); ++i) {
      text << "  " << i << " " << graph.name(chain.states()[i]) << " ->";
      for (const auto& e : chain.row(i).entries()) text << " " << e.state.value << ":" << format_rational(e.prob);
      text << "\n";
    }
    emit(o, text.str());
  }
  return kExitOk;
}

int cmd_sta_check(const Options& o) {
  const sta::StaModel model = load_sta_model(o);
  const auto verdict = sta::sta_check_qualitative(model, load_dma(o), sta::parse_atoms(model, o.init));
  if (o.out == "json") {
    emit(o, dump(sta::to_json(verdict)));
  } else {
    emit(o, verdict_text(std::string("Inf in F: ") + (verdict.omega.almost_sure ? "almost-sure" : "not almost-sure"),
                         verdict.evidence_chain, verdict.omega.tainted));
  }
  return kExitOk;
}

Estimator sta_estimator(const Options& o) {
  if (o.exact) fail(ErrorKind::InvalidArgument, "STA quantities are estimated by simulation; --exact is unavailable");
  return Estimator::monte_carlo(o.samples > 0 ? o.samples : 100000, o.confidence, o.seed, o.threads);
}

int cmd_sta_approx(const Options& o) {
  const sta::StaModel model = load_sta_model(o);
  return report(o, sta::sta_approx_quantitative(model, sta::parse_atoms(model, o.init), load_dma(o), sta_estimator(o),
                                                scheme_of(o)));
}

int cmd_sta_time_bounded(const Options& o) {
  const sta::StaModel model = load_sta_model(o);
  if (o.locations.empty()) fail(ErrorKind::InvalidArgument, "--locations is required");
  std::vector<std::size_t> locations;
  std::stringstream parts(o.locations);
  std::string part;
  while (std::getline(parts, part, ',')) locations.push_back(model.location_index(part));
  sta::TimeWindow window;
  const auto comma = o.window.find(',');
  if (comma == std::string::npos) fail(ErrorKind::Parse, "--window must be 'a,b'");
  window.lo = parse_rational(o.window.substr(0, comma)).get_d();
  window.hi = parse_rational(o.window.substr(comma + 1)).get_d();
  std::optional<std::string> declared;
  if (!o.non_zeno.empty()) declared = o.non_zeno;
  return report(o, sta::sta_time_bounded(model, sta::parse_atoms(model, o.init), locations, window, sta_estimator(o),
                                         scheme_of(o), declared));
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Refused:
    case ErrorKind::CertificateRequired: return kExitRefused;
    default: return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  CLI::App app{"Decisiveness-based verification of countable and stochastic timed systems"};
  app.require_subcommand(1);
  Options o;
  try {
    o.seed = env_or("DECISIVE_SEED", 0);
    o.threads = static_cast<unsigned>(std::max<std::uint64_t>(1, env_or("DECISIVE_THREADS", 1)));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  struct Command {
    const char* name;
    const char* help;
    std::function<int(const Options&)> run;
  };
  const std::vector<Command> commands{
      {"product", "product of a chain with a Muller automaton", cmd_product},
      {"avoid-set", "avoid-set of a target", cmd_avoid_set},
      {"attractor-graph", "attractor graph of a product and its good BSCCs", cmd_attractor_graph},
      {"check-qualitative", "almost-sure / positive / zero verdicts", cmd_check_qualitative},
      {"approx-reach", "interval for P(F target)", [](const Options& x) { return cmd_approx(x, "reach"); }},
      {"approx-until", "interval for P(allowed U target)", [](const Options& x) { return cmd_approx(x, "until"); }},
      {"approx-repeated", "interval for P(G F target)", [](const Options& x) { return cmd_approx(x, "repeated"); }},
      {"approx-omega", "interval for P(Inf in F) via the attractor graph", cmd_approx_omega},
      {"check-abstraction", "one-step abstraction condition and completeness", cmd_check_abstraction},
      {"witness-unsound", "search for an unsoundness counterexample", cmd_witness_unsound},
      {"sta-thick-graph", "thick graph of a stochastic timed automaton", cmd_sta_thick_graph},
      {"sta-check", "almost-sure Muller satisfaction for an STA", cmd_sta_check},
      {"sta-approx", "interval for P(Inf in F) of an STA", cmd_sta_approx},
      {"sta-time-bounded", "interval for time-bounded reachability of an STA", cmd_sta_time_bounded},
  };
  std::function<int(const Options&)> selected;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--model", o.model, "model JSON");
    sub->add_option("--dma", o.dma, "Muller automaton JSON");
    sub->add_option("--abstract", o.abstract_model, "abstract chain JSON");
    sub->add_option("--map", o.map, "walk-to-Tf, identity, sta-thick-graph or a JSON table");
    sub->add_option("--p", o.p, "family parameter, e.g. 1/3");
    sub->add_option("--init", o.init, "initial distribution, e.g. \"1:1/2, 2:1/2\" or \"l0:x=0,y=1/2\"");
    sub->add_option("--target", o.target, "target states");
    sub->add_option("--allowed", o.allowed, "states allowed before the target (until)");
    sub->add_option("--attractor", o.attractor, "finite attractor, e.g. \"0\"");
    sub->add_option("--assume", o.assume, "accept decisiveness on the given justification (taints results)");
    sub->add_option("--property", o.property, "reach, repeated or omega");
    sub->add_option("--tail", o.tail, "named tail bound: walk or pacman");
    sub->add_option("--locations", o.locations, "STA target locations, comma separated");
    sub->add_option("--window", o.window, "time window a,b");
    sub->add_option("--non-zeno", o.non_zeno, "declared non-Zeno justification");
    sub->add_option("--eps", o.eps, "interval width");
    sub->add_option("--budget", o.budget, "iteration budget / path horizon");
    sub->add_option("--samples", o.samples, "Monte-Carlo samples");
    sub->add_option("--confidence", o.confidence, "Monte-Carlo confidence");
    sub->add_option("--seed", o.seed, "random seed (default $DECISIVE_SEED or 0)");
    sub->add_option("--threads", o.threads, "worker threads (default $DECISIVE_THREADS or 1)");
    sub->add_option("--depth", o.depth, "exploration depth for countable chains");
    sub->add_option("--fiber-bound", o.fiber_bound, "fiber enumeration bound");
    sub->add_flag("--exact", o.exact, "exact rational propagation");
    sub->add_flag("--mc", o.monte_carlo, "Monte-Carlo estimation");
    sub->add_option("--out", o.out, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--output", o.output, "write the report to a file");
    sub->callback([&selected, run = c.run] { selected = run; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }
  try {
    if (o.threads == 0) o.threads = 1;
    return selected(o);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
