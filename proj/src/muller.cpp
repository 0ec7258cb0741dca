#include "decisive/omega/muller.hpp"

#include <algorithm>
#include <set>

#include <spdlog/spdlog.h>

#include "decisive/error.hpp"

namespace decisive {

namespace {

constexpr std::size_t kNoEdge = static_cast<std::size_t>(-1);

}  // namespace

MullerAutomaton MullerAutomaton::build(std::vector<std::string> ap, std::vector<std::string> locations,
                                       std::size_t initial, const std::vector<Edge>& edges,
                                       std::vector<LocationMask> family, bool auto_complete) {
  if (ap.size() > kMaxAutomatonPropositions) {
    fail(ErrorKind::InvalidModel, "automaton alphabet has more than " + std::to_string(kMaxAutomatonPropositions) +
                                      " propositions");
  }
  if (locations.empty()) fail(ErrorKind::InvalidModel, "automaton has no locations");
  if (initial >= locations.size()) fail(ErrorKind::InvalidModel, "initial location out of range");
  const std::size_t letters = std::size_t{1} << ap.size();

  MullerAutomaton dma;
  dma.ap_ = std::move(ap);
  dma.locations_ = std::move(locations);
  dma.initial_ = initial;
  dma.delta_.assign(dma.locations_.size() * letters, kNoEdge);
  for (const auto& e : edges) {
    if (e.from >= dma.locations_.size() || e.to >= dma.locations_.size()) {
      fail(ErrorKind::InvalidModel, "automaton edge refers to an unknown location");
    }
    if (e.label >= letters) fail(ErrorKind::InvalidModel, "automaton edge label outside 2^AP");
    auto& slot = dma.delta_[e.from * letters + e.label];
    if (slot != kNoEdge && slot != e.to) {
      fail(ErrorKind::InvalidModel, "automaton is not deterministic at location '" + dma.locations_[e.from] + "'");
    }
    slot = e.to;
  }

  const bool complete = std::find(dma.delta_.begin(), dma.delta_.end(), kNoEdge) == dma.delta_.end();
  if (!complete) {
    if (!auto_complete) {
      for (std::size_t q = 0; q < dma.locations_.size(); ++q) {
        for (std::size_t u = 0; u < letters; ++u) {
          if (dma.delta_[q * letters + u] == kNoEdge) {
            fail(ErrorKind::InvalidModel, "automaton is not complete: location '" + dma.locations_[q] +
                                              "' has no edge for letter " + std::to_string(u));
          }
        }
      }
    }
    const std::size_t sink = dma.locations_.size();
    std::string sink_name = "sink";
    while (std::find(dma.locations_.begin(), dma.locations_.end(), sink_name) != dma.locations_.end()) sink_name += "_";
    dma.locations_.push_back(sink_name);
    dma.delta_.resize(dma.locations_.size() * letters, kNoEdge);
    for (auto& slot : dma.delta_) {
      if (slot == kNoEdge) slot = sink;
    }
    dma.auto_completed_ = true;
    spdlog::info("automaton completed with rejecting location '{}'", sink_name);
  }
  if (dma.locations_.size() > kMaxLocations) fail(ErrorKind::InvalidModel, "automaton has too many locations");

  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  for (auto mask : family) {
    if (mask == 0) fail(ErrorKind::InvalidModel, "Muller family contains the empty set");
    if (dma.locations_.size() < 64 && (mask >> dma.locations_.size()) != 0) {
      fail(ErrorKind::InvalidModel, "Muller set mentions an unknown location");
    }
  }
  dma.family_ = std::move(family);
  return dma;
}

std::size_t MullerAutomaton::next(std::size_t q, LabelSet letter) const {
  const std::size_t letters = std::size_t{1} << ap_.size();
  if (q >= locations_.size() || letter >= letters) fail(ErrorKind::InvalidArgument, "automaton step out of range");
  return delta_[q * letters + letter];
}

bool MullerAutomaton::accepts(LocationMask inf) const {
  return std::binary_search(family_.begin(), family_.end(), inf);
}

std::optional<std::size_t> MullerAutomaton::location_index(const std::string& name) const {
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    if (locations_[i] == name) return i;
  }
  return std::nullopt;
}

MullerAutomaton MullerAutomaton::over_alphabet(const std::vector<std::string>& chain_ap) const {
  // Propositions the automaton does not mention are ignored; every one it
  // does mention must exist in the chain.
  const std::set<std::string> theirs(chain_ap.begin(), chain_ap.end());
  const bool covered = std::all_of(ap_.begin(), ap_.end(), [&](const std::string& p) { return theirs.count(p) > 0; });
  if (!covered || chain_ap.size() > 16) {
    std::string a, b;
    for (const auto& p : ap_) a += (a.empty() ? "" : ",") + p;
    for (const auto& p : chain_ap) b += (b.empty() ? "" : ",") + p;
    fail(ErrorKind::AlphabetMismatch, "automaton alphabet {" + a + "} is not contained in chain propositions {" + b + "}");
  }
  if (chain_ap == ap_) return *this;
  // bit i of a chain letter is proposition chain_ap[i]; find its position here.
  constexpr std::size_t kAbsent = ~std::size_t{0};
  std::vector<std::size_t> position(chain_ap.size(), kAbsent);
  for (std::size_t i = 0; i < chain_ap.size(); ++i) {
    auto it = std::find(ap_.begin(), ap_.end(), chain_ap[i]);
    if (it != ap_.end()) position[i] = static_cast<std::size_t>(it - ap_.begin());
  }
  MullerAutomaton out = *this;
  out.ap_ = chain_ap;
  const std::size_t mine_letters = std::size_t{1} << ap_.size();
  const std::size_t letters = std::size_t{1} << chain_ap.size();
  out.delta_.assign(locations_.size() * letters, 0);
  for (std::size_t q = 0; q < locations_.size(); ++q) {
    for (std::size_t u = 0; u < letters; ++u) {
      std::size_t mine_letter = 0;
      for (std::size_t i = 0; i < chain_ap.size(); ++i) {
        if ((u >> i & 1) && position[i] != kAbsent) mine_letter |= std::size_t{1} << position[i];
      }
      out.delta_[q * letters + u] = delta_[q * mine_letters + mine_letter];
    }
  }
  return out;
}

std::string format_mask(const MullerAutomaton& dma, LocationMask mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t q = 0; q < dma.size(); ++q) {
    if (mask >> q & 1) {
      if (!first) out += ",";
      first = false;
      out += dma.locations()[q];
    }
  }
  return out + "}";
}

MullerAutomaton load_muller(const nlohmann::json& doc, bool auto_complete) {
  try {
    const auto locations = doc.at("locations").get<std::vector<std::string>>();
    auto location = [&](const std::string& name) {
      auto it = std::find(locations.begin(), locations.end(), name);
      if (it == locations.end()) fail(ErrorKind::InvalidModel, "unknown automaton location '" + name + "'");
      return static_cast<std::size_t>(it - locations.begin());
    };
    std::vector<std::string> ap;
    if (doc.contains("ap")) {
      ap = doc.at("ap").get<std::vector<std::string>>();
    } else {
      std::set<std::string> seen;
      for (const auto& e : doc.at("edges")) {
        for (const auto& p : e.at("label")) {
          if (seen.insert(p.get<std::string>()).second) ap.push_back(p.get<std::string>());
        }
      }
    }
    std::vector<MullerAutomaton::Edge> edges;
    for (const auto& e : doc.at("edges")) {
      LabelSet label = 0;
      for (const auto& p : e.at("label")) {
        const auto name = p.get<std::string>();
        auto it = std::find(ap.begin(), ap.end(), name);
        if (it == ap.end()) fail(ErrorKind::InvalidModel, "edge label uses unknown proposition '" + name + "'");
        label |= LabelSet{1} << (it - ap.begin());
      }
      edges.push_back({location(e.at("from").get<std::string>()), label, location(e.at("to").get<std::string>())});
    }
    std::vector<LocationMask> family;
    for (const auto& set : doc.at("muller")) {
      LocationMask mask = 0;
      for (const auto& q : set) mask |= LocationMask{1} << location(q.get<std::string>());
      family.push_back(mask);
    }
    return MullerAutomaton::build(ap, locations, location(doc.at("initial").get<std::string>()), edges,
                                  std::move(family), auto_complete);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed automaton: ") + e.what());
  }
}

nlohmann::json muller_to_json(const MullerAutomaton& dma) {
  nlohmann::json doc;
  doc["ap"] = dma.ap();
  doc["locations"] = dma.locations();
  doc["initial"] = dma.locations()[dma.initial()];
  doc["edges"] = nlohmann::json::array();
  const std::size_t letters = std::size_t{1} << dma.ap().size();
  for (std::size_t q = 0; q < dma.size(); ++q) {
    for (std::size_t u = 0; u < letters; ++u) {
      nlohmann::json label = nlohmann::json::array();
      for (std::size_t i = 0; i < dma.ap().size(); ++i) {
        if (u >> i & 1) label.push_back(dma.ap()[i]);
      }
      doc["edges"].push_back({{"from", dma.locations()[q]}, {"label", label}, {"to", dma.locations()[dma.next(q, u)]}});
    }
  }
  doc["muller"] = nlohmann::json::array();
  for (auto mask : dma.family()) {
    nlohmann::json set = nlohmann::json::array();
    for (std::size_t q = 0; q < dma.size(); ++q) {
      if (mask >> q & 1) set.push_back(dma.locations()[q]);
    }
    doc["muller"].push_back(set);
  }
  return doc;
}

MullerAutomaton alternating_automaton() {
  // Letter {a} is 1; the empty letter never occurs on chains labelled a
  // everywhere and is sent to a rejecting sink.
  return MullerAutomaton::build({"a"}, {"q0", "q1", "q2", "sink"}, 0,
                                {{0, 1, 1}, {1, 1, 2}, {2, 1, 1}, {0, 0, 3}, {1, 0, 3}, {2, 0, 3}, {3, 0, 3}, {3, 1, 3}},
                                {0b0110});
}

}  // namespace decisive
