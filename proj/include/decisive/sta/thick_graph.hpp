#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "decisive/core/markov_chain.hpp"
#include "decisive/core/state_set.hpp"
#include "decisive/qualitative/evidence.hpp"
#include "decisive/sta/model.hpp"
#include "decisive/sta/region.hpp"

namespace decisive::sta {

struct ThickState {
  std::size_t location = 0;
  Region region;

  friend auto operator<=>(const ThickState&, const ThickState&) = default;
};

// Outgoing thick edges of (ℓ, r): targets of the open delay-regions when
// one of them enables an edge, else those of the punctual ones.
struct ThickSuccessors {
  std::vector<ThickState> targets;
  bool positive_measure = false;
  bool unbounded = false;       // the region above M enables an edge
  bool every_delay_enabled = false;
};

ThickSuccessors thick_successors(const StaModel& sta, const ThickState& from);

// Finite chain over the (location, region) pairs reachable from the seeds,
// with uniform out-distributions. States are numbered by discovery; a
// deadlocked pair gets a self-loop and is listed.
class ThickGraph {
 public:
  const MarkovChain& chain() const { return *chain_; }
  const std::vector<ThickState>& states() const { return states_; }
  const ThickState& state(StateId s) const { return states_.at(static_cast<std::size_t>(s.value)); }
  std::optional<StateId> find(const ThickState& t) const;
  // α(γ) = (ℓ, [ν]); UnknownState outside the explored part.
  StateId of(const Configuration& config) const;
  std::int64_t max_constant() const { return max_constant_; }
  const std::vector<StateId>& deadlocks() const { return deadlocks_; }
  const std::vector<ThickSuccessors>& successors() const { return successors_; }
  std::string name(StateId s) const;

 private:
  friend ThickGraph thick_graph(const StaModel& sta, const std::vector<Configuration>& seeds);

  std::optional<MarkovChain> chain_;
  std::vector<ThickState> states_;
  std::vector<ThickSuccessors> successors_;
  std::map<ThickState, std::size_t> index_;
  std::vector<std::string> names_;
  std::vector<StateId> deadlocks_;
  std::int64_t max_constant_ = 0;
};

// Seeds default to the initial configuration.
ThickGraph thick_graph(const StaModel& sta, const std::vector<Configuration>& seeds = {});

std::string thick_graph_dot(const ThickGraph& graph);
nlohmann::json thick_graph_json(const ThickGraph& graph);

enum class StaClass { Reactive, OneClock, General };
std::string to_string(StaClass cls);

struct Classification {
  StaClass cls = StaClass::General;
  std::string reason;
};

Classification classify(const StaModel& sta, const ThickGraph& graph);

// L × memoryless regions, restricted to the thick graph. Reactive only.
StateSet memoryless_attractor(const StaModel& sta, const ThickGraph& graph);

// {(ℓ, x=0)} ∪ {(ℓ, r) : every pair reachable from it has region r}.
// One-clock only.
StateSet oneclock_attractor(const StaModel& sta, const ThickGraph& graph);

// The attractor matching the class, with its justification.
struct StaAttractor {
  StateSet set;
  DecisivenessEvidence evidence;
};
StaAttractor sta_attractor(const StaModel& sta, const ThickGraph& graph, const Classification& cls);

// Structural isomorphism of two small finite chains, probabilities
// included. Brute force over bijections.
bool isomorphic(const MarkovChain& a, const MarkovChain& b);

}  // namespace decisive::sta
