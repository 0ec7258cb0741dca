#include "decisive/core/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "decisive/core/families.hpp"
#include "decisive/error.hpp"

namespace decisive {

namespace {

std::string json_key_text(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  fail(ErrorKind::Parse, "state names must be strings or integers, got " + value.dump());
}

Rational json_probability(const nlohmann::json& value) {
  if (value.is_string()) return parse_probability(value.get<std::string>());
  if (value.is_number()) return parse_probability(value.dump());
  fail(ErrorKind::Parse, "probability must be a number or a \"num/den\" string, got " + value.dump());
}

std::optional<std::int64_t> as_integer(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = text[0] == '-' ? 1 : 0;
  if (i == text.size()) return std::nullopt;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
  }
  return std::stoll(text);
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(separator, start);
    const auto piece = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (!piece.empty()) parts.push_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

LoadedChain load_family(const nlohmann::json& doc, const std::optional<Rational>& p_override) {
  const auto family = doc.at("family").get<std::string>();
  // random-walk and three-state take a parameter ("p" or "q"); unfair none.
  auto parameter = [&](const char* key) {
    if (p_override) return *p_override;
    if (doc.contains(key)) return json_probability(doc.at(key));
    fail(ErrorKind::Parse, family + " model needs parameter " + key + " (in the file or via --p)");
  };
  std::optional<MarkovChain> chain;
  if (family == "random-walk") {
    chain = random_walk(parameter("p"));
  } else if (family == "three-state") {
    chain = three_state_abstraction(parameter("q"));
  } else if (family == "unfair") {
    chain = unfair_chain();
  } else {
    fail(ErrorKind::Parse, "unknown model family '" + family + "'");
  }
  LoadedChain loaded{*chain, std::nullopt, {}, family};
  // Display names resolve alongside numeric ids.
  if (chain->is_finite()) {
    for (auto s : chain->states()) loaded.ids.emplace(chain->name(s), s);
  } else {
    loaded.ids.emplace(chain->name(StateId{0}), StateId{0});
  }
  if (doc.contains("init")) {
    std::vector<Distribution::Entry> entries;
    for (const auto& [name, prob] : doc.at("init").items()) entries.push_back({loaded.resolve(name), json_probability(prob)});
    loaded.init = Distribution::from_entries(std::move(entries));
    loaded.init->require_probability("initial distribution");
  }
  return loaded;
}

}  // namespace

StateId LoadedChain::resolve(const std::string& name) const {
  auto it = ids.find(name);
  if (it != ids.end()) return it->second;
  if (family) {
    const auto id = as_integer(name);
    if (id && chain.has_state(StateId{*id})) return StateId{*id};
  }
  fail(ErrorKind::UnknownState, "unknown state '" + name + "'");
}

nlohmann::json parse_json(std::string_view text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    if (auto pos = message.find("parse error"); pos != std::string::npos) message = message.substr(pos);
    fail(ErrorKind::Parse, origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message);
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

LoadedChain load_chain(const nlohmann::json& doc, const std::optional<Rational>& p_override) {
  try {
    if (doc.contains("family")) return load_family(doc, p_override);

    std::vector<std::string> names;
    for (const auto& s : doc.at("states")) names.push_back(json_key_text(s));
    const bool numeric = std::all_of(names.begin(), names.end(), [](const std::string& n) { return as_integer(n).has_value(); });
    std::map<std::string, StateId> ids;
    std::vector<StateId> states;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const StateId id{numeric ? *as_integer(names[i]) : static_cast<std::int64_t>(i)};
      if (!ids.emplace(names[i], id).second) fail(ErrorKind::InvalidModel, "duplicate state '" + names[i] + "'");
      states.push_back(id);
    }
    auto lookup = [&](const std::string& name) {
      auto it = ids.find(name);
      if (it == ids.end()) fail(ErrorKind::InvalidModel, "edge or label mentions undeclared state '" + name + "'");
      return it->second;
    };

    std::vector<std::string> ap;
    if (doc.contains("ap")) ap = doc.at("ap").get<std::vector<std::string>>();
    std::set<std::string> seen_ap(ap.begin(), ap.end());
    if (doc.contains("labels")) {
      for (const auto& [state, props] : doc.at("labels").items()) {
        for (const auto& prop : props) {
          const auto name = prop.get<std::string>();
          if (seen_ap.insert(name).second) ap.push_back(name);
        }
      }
    }

    std::vector<DistributionBuilder<Rational>> builders(states.size());
    std::map<StateId, std::size_t> position;
    for (std::size_t i = 0; i < states.size(); ++i) position[states[i]] = i;
    for (const auto& edge : doc.at("edges")) {
      const StateId from = lookup(json_key_text(edge.at("from")));
      const StateId to = lookup(json_key_text(edge.at("to")));
      builders[position[from]].add(to, json_probability(edge.at("prob")));
    }
    std::vector<Distribution> rows;
    for (auto& b : builders) rows.push_back(b.build());

    std::vector<LabelSet> labels(states.size(), 0);
    if (doc.contains("labels")) {
      for (const auto& [state, props] : doc.at("labels").items()) {
        const auto i = position[lookup(state)];
        for (const auto& prop : props) {
          const auto name = prop.get<std::string>();
          const auto bit = std::find(ap.begin(), ap.end(), name) - ap.begin();
          labels[i] |= LabelSet{1} << bit;
        }
      }
    }

    std::optional<Distribution> init;
    if (doc.contains("init")) {
      std::vector<Distribution::Entry> entries;
      for (const auto& [name, prob] : doc.at("init").items()) entries.push_back({lookup(name), json_probability(prob)});
      init = Distribution::from_entries(std::move(entries));
      init->require_probability("initial distribution");
    }
    return LoadedChain{MarkovChain::finite(ap, states, std::move(rows), std::move(labels), names), std::move(init),
                       std::move(ids), std::nullopt};
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed model: ") + e.what());
  }
}

Distribution parse_initial(const LoadedChain& model, std::string_view text) {
  std::vector<Distribution::Entry> entries;
  for (auto part : split(text, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      entries.push_back({model.resolve(std::string(part)), Rational(1)});
    } else {
      entries.push_back({model.resolve(std::string(trim(part.substr(0, colon)))),
                         parse_probability(trim(part.substr(colon + 1)))});
    }
  }
  auto mu = Distribution::from_entries(std::move(entries));
  mu.require_probability("initial distribution '" + std::string(text) + "'");
  return mu;
}

StateSet parse_state_set(const LoadedChain& model, std::string_view text) {
  std::vector<StateId> members;
  for (auto part : split(text, ',')) members.push_back(model.resolve(std::string(part)));
  return StateSet::of(std::move(members));
}

nlohmann::json chain_to_json(const MarkovChain& chain, const std::optional<Distribution>& init) {
  nlohmann::json doc;
  doc["ap"] = chain.ap();
  doc["states"] = nlohmann::json::array();
  doc["edges"] = nlohmann::json::array();
  doc["labels"] = nlohmann::json::object();
  for (auto s : chain.states()) {
    const auto name = chain.name(s);
    doc["states"].push_back(name);
    for (const auto& e : chain.successors(s).entries()) {
      doc["edges"].push_back({{"from", name}, {"to", chain.name(e.state)}, {"prob", format_rational(e.prob)}});
    }
    nlohmann::json props = nlohmann::json::array();
    const LabelSet label = chain.label(s);
    for (std::size_t i = 0; i < chain.ap().size(); ++i) {
      if (label >> i & 1) props.push_back(chain.ap()[i]);
    }
    doc["labels"][name] = props;
  }
  if (init) {
    doc["init"] = nlohmann::json::object();
    for (const auto& e : init->entries()) doc["init"][chain.name(e.state)] = format_rational(e.prob);
  }
  return doc;
}

}  // namespace decisive
