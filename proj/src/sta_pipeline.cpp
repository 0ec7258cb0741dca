#include "decisive/sta/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "decisive/core/measures.hpp"
#include "decisive/error.hpp"
#include "decisive/omega/product.hpp"
#include "decisive/quantitative/monte_carlo.hpp"
#include "decisive/quantitative/omega.hpp"
#include "decisive/sta/sampler.hpp"

namespace decisive::sta {

namespace {

struct PathState {
  Configuration config;
  std::size_t q = 0;
  double time = 0.0;
};

// Sampled runs of an STA, optionally in product with an automaton. The
// automaton location moves on the label of the location being left.
class StaSimulation {
 public:
  using State = PathState;
  using ClassFn = std::function<ClassId(const PathState&, std::size_t)>;

  StaSimulation(const StaModel* sta, const MullerAutomaton* dma, const std::vector<Atom>& atoms, ClassFn classify,
                ConfigTail tail)
      : sta_(sta), dma_(dma), classify_(std::move(classify)), tail_(std::move(tail)) {
    Rational running = 0;
    for (const auto& a : atoms) {
      running += a.weight;
      bounds_.push_back(running.get_d());
      configs_.push_back(a.config);
    }
  }

  PathState initial(Rng& rng) const {
    PathState s;
    const double u = uniform01(rng);
    std::size_t i = 0;
    while (i + 1 < bounds_.size() && u >= bounds_[i]) ++i;
    s.config = configs_[i];
    s.q = dma_ ? dma_->initial() : 0;
    return s;
  }

  void step(PathState& s, Rng& rng) const {
    if (dma_) s.q = dma_->next(s.q, sta_->locations()[s.config.location].labels);
    Step next = sample_step(*sta_, s.config, rng);
    s.time += next.delay;
    s.config = std::move(next.next);
  }

  ClassId classify(const PathState& s, std::size_t n) const { return classify_(s, n); }
  double tail(const PathState& s) const { return tail_ ? tail_(s.config) : 1.0; }

 private:
  const StaModel* sta_;
  const MullerAutomaton* dma_;
  ClassFn classify_;
  ConfigTail tail_;
  std::vector<double> bounds_;
  std::vector<Configuration> configs_;
};

McOptions mc_options(const Estimator& estimator, const SchemeOptions& options, bool has_tail, std::size_t classes) {
  if (estimator.kind != Estimator::Kind::MonteCarlo) {
    fail(ErrorKind::InvalidArgument, "STA quantities are estimated by simulation; use a Monte-Carlo estimator");
  }
  if (estimator.samples == 0) fail(ErrorKind::InvalidArgument, "sample count must be positive");
  if (!(estimator.confidence > 0 && estimator.confidence < 1)) {
    fail(ErrorKind::InvalidArgument, "confidence must lie in (0, 1)");
  }
  if (!(options.eps > 0)) fail(ErrorKind::InvalidArgument, "eps must be positive");
  McOptions mc;
  mc.samples = estimator.samples;
  mc.confidence = estimator.confidence;
  mc.seed = estimator.seed;
  mc.threads = estimator.threads;
  mc.horizon = options.budget;
  mc.tail_cutoff = has_tail ? estimator.tail_cutoff : -1.0;
  mc.yes_classes = std::max<std::size_t>(1, classes);
  return mc;
}

// Any gap is below an eps above 1.
std::optional<ApproxResult> trivial(const SchemeOptions& options) {
  if (options.eps <= 1.0) return std::nullopt;
  ApproxResult out;
  out.lo = 0.0;
  out.hi = 1.0;
  out.eps = options.eps;
  out.iterations = 0;
  out.status = Status::Converged;
  out.notes.push_back("eps above 1: [0, 1] is already within tolerance");
  return out;
}

void require_atoms(const StaModel& sta, const std::vector<Atom>& atoms) {
  Rational total = 0;
  for (const auto& a : atoms) {
    if (a.config.location >= sta.locations().size()) fail(ErrorKind::InvalidArgument, "atom location out of range");
    if (a.config.clocks.size() != sta.clocks().size()) {
      fail(ErrorKind::InvalidArgument, "atom valuation has wrong arity");
    }
    if (a.weight <= 0) fail(ErrorKind::InvalidArgument, "atom weights must be positive");
    total += a.weight;
  }
  if (total != 1) fail(ErrorKind::InvalidArgument, "atom weights sum to " + format_rational(total) + ", expected 1");
}

std::vector<Atom> or_initial(const StaModel& sta, const std::vector<Atom>& atoms) {
  const auto out = atoms.empty() ? initial_atoms(sta) : atoms;
  require_atoms(sta, out);
  return out;
}

void add_sampling_notes(ApproxResult& out, const Estimator& estimator) {
  out.notes.push_back("estimator: " + to_string(estimator.kind));
}

}  // namespace

std::vector<Atom> initial_atoms(const StaModel& sta) { return {Atom{sta.initial(), 1}}; }

std::vector<Atom> parse_atoms(const StaModel& sta, const std::string& text) {
  if (text.empty()) return initial_atoms(sta);
  std::vector<Atom> atoms;
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ';')) {
    if (part.empty()) continue;
    Atom atom;
    const auto at = part.find('@');
    if (at != std::string::npos) {
      atom.weight = parse_rational(part.substr(at + 1));
      part = part.substr(0, at);
    }
    const auto colon = part.find(':');
    atom.config.location = sta.location_index(part.substr(0, colon));
    atom.config.clocks.assign(sta.clocks().size(), 0.0);
    if (colon != std::string::npos) {
      std::stringstream assigns(part.substr(colon + 1));
      std::string assign;
      while (std::getline(assigns, assign, ',')) {
        const auto eq = assign.find('=');
        if (eq == std::string::npos) fail(ErrorKind::Parse, "expected clock=value in '" + assign + "'");
        atom.config.clocks[sta.clock_index(assign.substr(0, eq))] = parse_rational(assign.substr(eq + 1)).get_d();
      }
    }
    atoms.push_back(std::move(atom));
  }
  require_atoms(sta, atoms);
  return atoms;
}

std::vector<Configuration> configurations(const std::vector<Atom>& atoms) {
  std::vector<Configuration> out;
  for (const auto& a : atoms) out.push_back(a.config);
  return out;
}

Distribution abstract_initial(const ThickGraph& graph, const std::vector<Atom>& atoms) {
  std::vector<Distribution::Entry> entries;
  for (const auto& a : atoms) entries.push_back({graph.of(a.config), a.weight});
  return Distribution::from_entries(std::move(entries));
}

StaVerdict sta_check_qualitative(const StaModel& sta, const MullerAutomaton& dma, const std::vector<Atom>& atoms) {
  const auto init = or_initial(sta, atoms);
  const ThickGraph graph = thick_graph(sta, configurations(init));
  StaVerdict out;
  out.cls = classify(sta, graph);
  const StaAttractor attractor = sta_attractor(sta, graph, out.cls);  // refuses General
  out.evidence_chain.push_back("STA class " + to_string(out.cls.cls) + ": " + out.cls.reason);
  out.evidence_chain.push_back("thick graph is a sound abstraction for this class");
  out.evidence_chain.push_back("attractor: " + attractor.evidence.describe());

  const ProductChain prod = product(graph.chain(), dma);
  std::vector<StateId> lifted;
  for (auto s : attractor.set.members()) {
    for (std::size_t q = 0; q < prod.automaton().size(); ++q) lifted.push_back(prod.encode(s, q));
  }
  out.omega = almost_sure_omega(prod, abstract_initial(graph, init), StateSet::of(lifted),
                                DecisivenessEvidence::finite_chain());
  for (const auto& line : out.omega.evidence_chain) out.evidence_chain.push_back(line);
  return out;
}

nlohmann::json to_json(const StaVerdict& verdict) {
  return {{"property", "Inf in F"},
          {"class", to_string(verdict.cls.cls)},
          {"class_reason", verdict.cls.reason},
          {"almost_sure", verdict.omega.almost_sure},
          {"evidence", verdict.evidence_chain},
          {"tainted", verdict.omega.tainted}};
}

ApproxResult sta_approx_quantitative(const StaModel& sta, const std::vector<Atom>& atoms, const MullerAutomaton& dma,
                                     const Estimator& estimator, const SchemeOptions& options,
                                     const ConfigTail& tail) {
  const auto init = or_initial(sta, atoms);
  const ThickGraph graph = thick_graph(sta, configurations(init));
  const Classification cls = classify(sta, graph);
  const StaAttractor attractor = sta_attractor(sta, graph, cls);
  const DecisivenessEvidence evidence =
      DecisivenessEvidence::sound_abstraction("thick graph of a " + to_string(cls.cls) + " STA; " + cls.reason);
  if (auto t = trivial(options)) {
    t->property = "Inf in F";
    t->evidence = evidence;
    return *t;
  }

  const ProductChain abstract = product(graph.chain(), dma);
  const ProductClassification table = classify_product(abstract, all_states(abstract.chain()));
  const MullerAutomaton& automaton = abstract.automaton();
  auto classify_path = [&graph, &abstract, &table](const PathState& s, std::size_t) {
    const auto t = graph.find({s.config.location, region_of(s.config.clocks, graph.max_constant())});
    if (!t) return kUndecided;  // rounding left the explored regions; keep the run going
    return table.classify(abstract.encode(*t, s.q));
  };
  const McOptions mc = mc_options(estimator, options, static_cast<bool>(tail), table.good.size());
  const StaSimulation sim(&sta, &automaton, init, classify_path, tail);
  ApproxResult out = summarize(simulate(sim, mc), mc, options);
  if (table.good.empty()) out.class_lo.clear();
  out.class_names = table.class_names(abstract);
  out.property = "Inf in F";
  out.evidence = evidence;
  out.notes.push_back("STA class " + to_string(cls.cls) + "; attractor " + attractor.evidence.describe());
  out.notes.push_back("abstract product: " + std::to_string(table.good.size()) + " good BSCCs of " +
                      std::to_string(table.graph.bsccs.size()));
  out.notes.push_back("No set: " + table.no_provenance);
  add_sampling_notes(out, estimator);
  return out;
}

ApproxResult sta_time_bounded(const StaModel& sta, const std::vector<Atom>& atoms,
                              const std::vector<std::size_t>& locations, TimeWindow window,
                              const Estimator& estimator, const SchemeOptions& options,
                              const std::optional<std::string>& declared_non_zeno) {
  const auto init = or_initial(sta, atoms);
  if (!(window.lo >= 0 && window.lo <= window.hi)) fail(ErrorKind::InvalidArgument, "time window must be [a, b], 0 <= a <= b");
  for (auto l : locations) {
    if (l >= sta.locations().size()) fail(ErrorKind::InvalidArgument, "target location out of range");
  }
  const ThickGraph graph = thick_graph(sta, configurations(init));
  const Classification cls = classify(sta, graph);
  DecisivenessEvidence evidence;
  if (cls.cls == StaClass::Reactive) {
    evidence = DecisivenessEvidence::non_zeno("reactive STA are almost-surely non-Zeno");
    evidence.verified = true;
  } else if (declared_non_zeno) {
    evidence = DecisivenessEvidence::non_zeno(*declared_non_zeno);
  } else {
    fail(ErrorKind::Refused, "time-bounded analysis needs non-Zeno evidence (STA class " + to_string(cls.cls) +
                                 " is not reactive and none was declared)");
  }

  std::string names;
  std::vector<StateId> target_states;
  for (std::size_t i = 0; i < graph.states().size(); ++i) {
    if (std::find(locations.begin(), locations.end(), graph.states()[i].location) != locations.end()) {
      target_states.push_back(state(static_cast<std::int64_t>(i)));
    }
  }
  for (auto l : locations) names += (names.empty() ? "" : ",") + sta.locations()[l].name;
  const std::string property =
      "F[" + format_decimal(window.lo) + "," + format_decimal(window.hi) + "] {" + names + "}";
  if (auto t = trivial(options)) {
    t->property = property;
    t->evidence = evidence;
    return *t;
  }

  // Thick-graph pairs that never reach a target location.
  const AvoidSet avoid = avoid_set(graph.chain(), StateSet::of(target_states));
  const double delta = window.hi + 1.0;
  std::vector<char> is_target(sta.locations().size(), 0);
  for (auto l : locations) is_target[l] = 1;
  auto classify_path = [&](const PathState& s, std::size_t) {
    if (is_target[s.config.location] && s.time >= window.lo && s.time <= window.hi) return kYes;
    if (s.time >= delta) return kNo;
    const auto t = graph.find({s.config.location, region_of(s.config.clocks, graph.max_constant())});
    if (t && avoid.set.contains(*t)) return kNo;
    return kUndecided;
  };
  const McOptions mc = mc_options(estimator, options, false, 1);
  const StaSimulation sim(&sta, nullptr, init, classify_path, {});
  ApproxResult out = summarize(simulate(sim, mc), mc, options);
  out.class_names = {names};
  out.property = property;
  out.evidence = evidence;
  out.notes.push_back("time attractor: total time >= " + format_decimal(delta));
  out.notes.push_back("reachability observed at jump epochs");
  add_sampling_notes(out, estimator);
  return out;
}

ApproxResult sta_reach_estimate(const StaModel& sta, const ThickGraph& graph, const std::vector<Atom>& atoms,
                                const StateSet& target, const Estimator& estimator, const SchemeOptions& options,
                                const ConfigTail& tail) {
  const auto init = or_initial(sta, atoms);
  const AvoidSet avoid = avoid_set(graph.chain(), target);
  auto classify_path = [&](const PathState& s, std::size_t) {
    const auto t = graph.find({s.config.location, region_of(s.config.clocks, graph.max_constant())});
    if (!t) return kUndecided;
    if (target.contains(*t)) return kYes;
    if (avoid.set.contains(*t)) return kNo;
    return kUndecided;
  };
  const McOptions mc = mc_options(estimator, options, static_cast<bool>(tail), 1);
  const StaSimulation sim(&sta, nullptr, init, classify_path, tail);
  ApproxResult out = summarize(simulate(sim, mc), mc, options);
  std::string desc;
  if (target.is_explicit()) {
    for (auto s : target.members()) desc += (desc.empty() ? "" : ", ") + graph.name(s);
  } else {
    desc = target.description();
  }
  out.property = "F alpha^-1{" + desc + "}";
  out.class_names = {desc};
  out.evidence = DecisivenessEvidence::not_required("truncated runs stay inside the interval");
  out.notes.push_back("abstract avoid-set used as No set");
  add_sampling_notes(out, estimator);
  return out;
}

std::optional<AbstractWitness> sta_witness_search(const StaModel& sta, const ThickGraph& graph,
                                                  const std::vector<Atom>& atoms, std::vector<StateSet> catalogue,
                                                  const Estimator& estimator, const SchemeOptions& options,
                                                  const ConfigTail& tail) {
  const auto init = or_initial(sta, atoms);
  if (catalogue.empty()) catalogue = default_catalogue(graph.chain());
  auto estimate = [&](const StateSet& target) {
    return sta_reach_estimate(sta, graph, init, target, estimator, options, tail);
  };
  return witness_search(graph.chain(), abstract_initial(graph, init), catalogue, estimate);
}

double pacman_tail(const Configuration& config) {
  if (config.location != 0 || config.clocks.size() != 2 || config.clocks[0] != 0.0) return 1.0;
  return std::clamp(2.0 * (1.0 - config.clocks[1]), 0.0, 1.0);
}

}  // namespace decisive::sta
