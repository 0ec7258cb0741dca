#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "decisive/core/markov_chain.hpp"

namespace decisive {

// A chain loaded from JSON together with its declared initial distribution
// and the mapping from state names to ids.
struct LoadedChain {
  MarkovChain chain;
  std::optional<Distribution> init;
  std::map<std::string, StateId> ids;
  std::optional<std::string> family;

  StateId resolve(const std::string& name) const;
};

// Parses text as JSON, reporting syntax errors with line and column.
nlohmann::json parse_json(std::string_view text, const std::string& origin);
nlohmann::json read_json_file(const std::string& path);

// Explicit model: {"states", "init", "edges", "labels", "ap"}; or a builtin
// family: {"family": "random-walk", "p": "1/3"}. `p_override` replaces the
// family parameter when given.
LoadedChain load_chain(const nlohmann::json& doc, const std::optional<Rational>& p_override = std::nullopt);

// "1:1/2, 2:1/2" over the chain's state names.
Distribution parse_initial(const LoadedChain& model, std::string_view text);
// "0,1,2" over the chain's state names.
StateSet parse_state_set(const LoadedChain& model, std::string_view text);

nlohmann::json chain_to_json(const MarkovChain& chain, const std::optional<Distribution>& init = std::nullopt);

}  // namespace decisive
