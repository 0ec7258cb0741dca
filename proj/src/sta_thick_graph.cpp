#include "decisive/sta/thick_graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "decisive/core/graph.hpp"
#include "decisive/error.hpp"
#include "decisive/qualitative/avoid.hpp"

namespace decisive::sta {

ThickSuccessors thick_successors(const StaModel& sta, const ThickState& from) {
  const std::int64_t m = sta.max_constant();
  ThickSuccessors out;
  out.every_delay_enabled = true;
  std::vector<ThickState> open;
  std::vector<ThickState> point;
  for (const auto& dr : delay_regions(from.region, m)) {
    const bool punctual = is_punctual(dr, m);
    bool any = false;
    for (auto e : sta.edges_from(from.location)) {
      const Edge& edge = sta.edges()[e];
      if (!satisfies(edge.guard, dr, m)) continue;
      any = true;
      (punctual ? point : open).push_back({edge.to, reset(dr, edge.resets, m)});
      if (is_unbounded(dr, m)) out.unbounded = true;
    }
    if (!any) out.every_delay_enabled = false;
  }
  out.positive_measure = !open.empty();
  out.targets = out.positive_measure ? std::move(open) : std::move(point);
  std::sort(out.targets.begin(), out.targets.end());
  out.targets.erase(std::unique(out.targets.begin(), out.targets.end()), out.targets.end());
  return out;
}

std::optional<StateId> ThickGraph::find(const ThickState& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return decisive::state(static_cast<std::int64_t>(it->second));
}

StateId ThickGraph::of(const Configuration& config) const {
  ThickState t{config.location, region_of(config.clocks, max_constant_)};
  if (auto s = find(t)) return *s;
  fail(ErrorKind::UnknownState, "configuration outside the thick graph");
}

std::string ThickGraph::name(StateId s) const { return names_.at(static_cast<std::size_t>(s.value)); }

ThickGraph thick_graph(const StaModel& sta, const std::vector<Configuration>& seeds) {
  ThickGraph g;
  g.max_constant_ = sta.max_constant();
  std::deque<std::size_t> queue;
  auto intern = [&](const ThickState& t) {
    auto [it, inserted] = g.index_.try_emplace(t, g.states_.size());
    if (inserted) {
      g.states_.push_back(t);
      queue.push_back(it->second);
    }
    return it->second;
  };
  if (seeds.empty()) {
    intern({sta.initial().location, region_of(sta.initial().clocks, g.max_constant_)});
  }
  for (const auto& c : seeds) intern({c.location, region_of(c.clocks, g.max_constant_)});

  std::vector<std::vector<std::size_t>> targets;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    ThickSuccessors succ = thick_successors(sta, g.states_[i]);
    std::vector<std::size_t> ids;
    for (const auto& t : succ.targets) ids.push_back(intern(t));
    if (targets.size() <= i) targets.resize(i + 1);
    targets[i] = std::move(ids);
    if (g.successors_.size() <= i) g.successors_.resize(i + 1);
    g.successors_[i] = std::move(succ);
  }

  std::vector<StateId> states;
  std::vector<Distribution> rows;
  std::vector<LabelSet> labels;
  for (std::size_t i = 0; i < g.states_.size(); ++i) {
    const ThickState& t = g.states_[i];
    states.push_back(state(static_cast<std::int64_t>(i)));
    labels.push_back(sta.locations()[t.location].labels);
    g.names_.push_back("(" + sta.locations()[t.location].name + ", " + describe(t.region, sta.clocks(), g.max_constant_) +
                       ")");
    std::vector<StateId> support;
    for (auto j : targets[i]) support.push_back(state(static_cast<std::int64_t>(j)));
    if (support.empty()) {
      g.deadlocks_.push_back(states.back());
      support.push_back(states.back());
    }
    rows.push_back(Distribution::uniform(support));
  }
  g.chain_ = MarkovChain::finite(sta.ap(), std::move(states), std::move(rows), std::move(labels), g.names_);
  return g;
}

namespace {

std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string thick_graph_dot(const ThickGraph& graph) {
  std::ostringstream out;
  out << "digraph thick_graph {\n";
  out << "  node [shape=box];\n";
  const auto& chain = graph.chain();
  for (auto s : chain.states()) {
    out << "  n" << s.value << " [label=\"" << dot_escape(graph.name(s)) << "\"];\n";
  }
  for (std::size_t i = 0; i < chain.states().size(); ++i) {
    for (const auto& e : chain.row(i).entries()) {
      out << "  n" << chain.states()[i].value << " -> n" << e.state.value << " [label=\"" << format_rational(e.prob)
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

nlohmann::json thick_graph_json(const ThickGraph& graph) {
  const auto& chain = graph.chain();
  nlohmann::json doc;
  doc["states"] = nlohmann::json::array();
  doc["edges"] = nlohmann::json::array();
  for (std::size_t i = 0; i < chain.states().size(); ++i) {
    const StateId s = chain.states()[i];
    doc["states"].push_back({{"id", s.value}, {"name", graph.name(s)}});
    for (const auto& e : chain.row(i).entries()) {
      doc["edges"].push_back({{"from", s.value}, {"to", e.state.value}, {"probability", format_rational(e.prob)}});
    }
  }
  nlohmann::json dead = nlohmann::json::array();
  for (auto s : graph.deadlocks()) dead.push_back(s.value);
  doc["deadlocks"] = dead;
  doc["max_constant"] = graph.max_constant();
  return doc;
}

std::string to_string(StaClass cls) {
  switch (cls) {
    case StaClass::Reactive: return "Reactive";
    case StaClass::OneClock: return "OneClock";
    case StaClass::General: return "General";
  }
  return "unknown";
}

Classification classify(const StaModel& sta, const ThickGraph& graph) {
  std::string not_reactive;
  for (const auto& loc : sta.locations()) {
    if (loc.kind != DelayKind::Exponential) {
      not_reactive = "location " + loc.name + " has a non-exponential delay";
      break;
    }
  }
  if (not_reactive.empty()) {
    for (std::size_t i = 0; i < graph.states().size(); ++i) {
      if (!graph.successors()[i].every_delay_enabled) {
        not_reactive = "some delay is disabled in " + graph.name(state(static_cast<std::int64_t>(i)));
        break;
      }
    }
  }
  if (not_reactive.empty()) return {StaClass::Reactive, "exponential delays and every delay enabled"};

  if (sta.clocks().size() != 1) {
    return {StaClass::General, std::to_string(sta.clocks().size()) + " clocks and not reactive (" + not_reactive + ")"};
  }
  for (std::size_t i = 0; i < graph.states().size(); ++i) {
    const auto& succ = graph.successors()[i];
    const Location& loc = sta.locations()[graph.states()[i].location];
    const std::string where = graph.name(state(static_cast<std::int64_t>(i)));
    if (succ.unbounded && succ.positive_measure && loc.kind != DelayKind::Exponential) {
      return {StaClass::General, "unbounded delays without an exponential distribution in " + where};
    }
    if (succ.positive_measure && loc.kind == DelayKind::Dirac) {
      return {StaClass::General, "point delay over a positive-length delay set in " + where};
    }
  }
  return {StaClass::OneClock, "one clock; uniform on bounded and exponential on unbounded delay sets"};
}

StateSet memoryless_attractor(const StaModel& sta, const ThickGraph& graph) {
  const auto cls = classify(sta, graph);
  if (cls.cls != StaClass::Reactive) {
    fail(ErrorKind::Refused, "memoryless attractor needs a reactive STA (class " + to_string(cls.cls) + ": " +
                                 cls.reason + ")");
  }
  std::vector<StateId> members;
  for (std::size_t i = 0; i < graph.states().size(); ++i) {
    if (is_memoryless(graph.states()[i].region, graph.max_constant())) {
      members.push_back(state(static_cast<std::int64_t>(i)));
    }
  }
  return StateSet::of(std::move(members));
}

StateSet oneclock_attractor(const StaModel& sta, const ThickGraph& graph) {
  const auto cls = classify(sta, graph);
  if (sta.clocks().size() != 1 || cls.cls == StaClass::General) {
    fail(ErrorKind::Refused, "one-clock attractor needs a one-clock STA (class " + to_string(cls.cls) + ": " +
                                 cls.reason + ")");
  }
  const Graph g = support_graph(graph.chain());
  std::vector<StateId> members;
  for (std::size_t i = 0; i < graph.states().size(); ++i) {
    const Region& r = graph.states()[i].region;
    bool keep = r.ip[0] == 0 && r.cls[0] == 0;
    if (!keep) {
      const auto reach = reachable_from(g, {i});
      keep = true;
      for (std::size_t j = 0; j < reach.size() && keep; ++j) {
        if (reach[j] && graph.states()[j].region != r) keep = false;
      }
    }
    if (keep) members.push_back(state(static_cast<std::int64_t>(i)));
  }
  return StateSet::of(std::move(members));
}

StaAttractor sta_attractor(const StaModel& sta, const ThickGraph& graph, const Classification& cls) {
  StaAttractor out;
  std::string note;
  if (cls.cls == StaClass::Reactive) {
    out.set = memoryless_attractor(sta, graph);
    note = "memoryless regions of a reactive STA";
  } else if (cls.cls == StaClass::OneClock) {
    out.set = oneclock_attractor(sta, graph);
    note = "A_max of a one-clock STA";
  } else {
    fail(ErrorKind::Refused, "thick graph unsound: STA class General (" + cls.reason + ")");
  }
  const AttractorCheck check = check_attractor(graph.chain(), out.set);
  if (!check.holds) fail(ErrorKind::Refused, note + " is not an attractor of the thick graph: " + check.justification);
  out.evidence = DecisivenessEvidence::finite_attractor(out.set, note, true);
  return out;
}

bool isomorphic(const MarkovChain& a, const MarkovChain& b) {
  if (!a.is_finite() || !b.is_finite()) fail(ErrorKind::InvalidArgument, "isomorphism check needs finite chains");
  const std::size_t n = a.states().size();
  if (b.states().size() != n) return false;
  auto prob = [](const MarkovChain& c, std::size_t i, std::size_t j) {
    return c.row(i).probability(c.states()[j]);
  };
  std::vector<std::size_t> map(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || a.row(i).size() != b.row(j).size()) continue;
      map[i] = j;
      bool ok = prob(a, i, i) == prob(b, j, j);
      for (std::size_t k = 0; k < i && ok; ++k) {
        ok = prob(a, i, k) == prob(b, j, map[k]) && prob(a, k, i) == prob(b, map[k], j);
      }
      if (!ok) continue;
      used[j] = 1;
      if (extend(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return extend(0);
}

}  // namespace decisive::sta
