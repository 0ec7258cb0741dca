#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "decisive/core/state.hpp"
#include "decisive/rational.hpp"

namespace decisive::sta {

enum class Cmp { Lt, Le, Eq, Ge, Gt };

// x ⋈ c with an integer constant.
struct Constraint {
  std::size_t clock = 0;
  Cmp op = Cmp::Eq;
  std::int64_t constant = 0;
};

// Conjunction; empty means true.
using Guard = std::vector<Constraint>;

enum class DelayKind { Uniform, Exponential, Dirac };

struct Location {
  std::string name;
  LabelSet labels = 0;
  DelayKind kind = DelayKind::Uniform;
  double rate = 1.0;  // exponential only
};

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  Guard guard;
  std::uint64_t resets = 0;  // clock bitmask
  std::uint64_t weight = 1;
};

struct Configuration {
  std::size_t location = 0;
  std::vector<double> clocks;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

class StaModel {
 public:
  StaModel(std::vector<std::string> ap, std::vector<std::string> clocks, std::vector<Location> locations,
           std::vector<Edge> edges, Configuration initial);

  const std::vector<std::string>& ap() const { return ap_; }
  const std::vector<std::string>& clocks() const { return clocks_; }
  const std::vector<Location>& locations() const { return locations_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& edges_from(std::size_t location) const { return outgoing_[location]; }
  const Configuration& initial() const { return initial_; }
  // Largest constant in a guard.
  std::int64_t max_constant() const { return max_constant_; }

  std::size_t location_index(const std::string& name) const;
  std::size_t clock_index(const std::string& name) const;

 private:
  std::vector<std::string> ap_;
  std::vector<std::string> clocks_;
  std::vector<Location> locations_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> outgoing_;
  Configuration initial_;
  std::int64_t max_constant_ = 0;
};

// "x<1 && 1<y<2 && z==0"; "true" or "" is the empty conjunction.
Guard parse_guard(const std::string& text, const std::vector<std::string>& clocks);
std::string format_guard(const Guard& guard, const std::vector<std::string>& clocks);

bool satisfies(const Guard& guard, const std::vector<double>& clocks);

StaModel load_sta(const nlohmann::json& doc);
nlohmann::json sta_to_json(const StaModel& sta);

std::string format_configuration(const StaModel& sta, const Configuration& config);

// The two-clock automaton whose right-loop probability decays at every
// return to l0 (five locations, uniform and point delays).
StaModel pacman();

// l0 --(exp rate)--> l1, with an exponential self-loop on l1.
StaModel exponential_jump(double rate);

}  // namespace decisive::sta
