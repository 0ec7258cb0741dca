#include "decisive/sta/model.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "decisive/error.hpp"

namespace decisive::sta {

StaModel::StaModel(std::vector<std::string> ap, std::vector<std::string> clocks, std::vector<Location> locations,
                   std::vector<Edge> edges, Configuration initial)
    : ap_(std::move(ap)),
      clocks_(std::move(clocks)),
      locations_(std::move(locations)),
      edges_(std::move(edges)),
      initial_(std::move(initial)) {
  if (locations_.empty()) fail(ErrorKind::InvalidModel, "automaton has no locations");
  if (clocks_.size() > 64) fail(ErrorKind::InvalidModel, "at most 64 clocks are supported");
  if (ap_.size() > kMaxPropositions) fail(ErrorKind::InvalidModel, "too many propositions");
  outgoing_.assign(locations_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.from >= locations_.size() || e.to >= locations_.size()) {
      fail(ErrorKind::InvalidModel, "edge endpoint out of range");
    }
    if (e.weight == 0) fail(ErrorKind::InvalidModel, "edge weights must be positive");
    for (const auto& c : e.guard) {
      if (c.clock >= clocks_.size()) fail(ErrorKind::InvalidModel, "guard mentions an unknown clock");
      if (c.constant < 0) fail(ErrorKind::InvalidModel, "guard constants must be nonnegative");
      max_constant_ = std::max(max_constant_, c.constant);
    }
    outgoing_[e.from].push_back(i);
  }
  for (const auto& loc : locations_) {
    if (loc.kind == DelayKind::Exponential && !(loc.rate > 0)) {
      fail(ErrorKind::InvalidModel, "exponential rate of " + loc.name + " must be positive");
    }
  }
  if (initial_.location >= locations_.size()) fail(ErrorKind::InvalidModel, "initial location out of range");
  if (initial_.clocks.size() != clocks_.size()) fail(ErrorKind::InvalidModel, "initial valuation has wrong arity");
  for (double v : initial_.clocks) {
    if (!(v >= 0)) fail(ErrorKind::InvalidModel, "clock values must be nonnegative");
  }
}

std::size_t StaModel::location_index(const std::string& name) const {
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    if (locations_[i].name == name) return i;
  }
  fail(ErrorKind::UnknownState, "unknown location " + name);
}

std::size_t StaModel::clock_index(const std::string& name) const {
  for (std::size_t i = 0; i < clocks_.size(); ++i) {
    if (clocks_[i] == name) return i;
  }
  fail(ErrorKind::Parse, "unknown clock " + name);
}

namespace {

Cmp parse_cmp(const std::string& op) {
  if (op == "<") return Cmp::Lt;
  if (op == "<=") return Cmp::Le;
  if (op == "=" || op == "==") return Cmp::Eq;
  if (op == ">=") return Cmp::Ge;
  if (op == ">") return Cmp::Gt;
  fail(ErrorKind::Parse, "unknown comparison " + op);
}

// c ⋈ x as x ⋈' c.
Cmp flip(Cmp op) {
  switch (op) {
    case Cmp::Lt: return Cmp::Gt;
    case Cmp::Le: return Cmp::Ge;
    case Cmp::Eq: return Cmp::Eq;
    case Cmp::Ge: return Cmp::Le;
    case Cmp::Gt: return Cmp::Lt;
  }
  return op;
}

const char* cmp_text(Cmp op) {
  switch (op) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Eq: return "==";
    case Cmp::Ge: return ">=";
    case Cmp::Gt: return ">";
  }
  return "?";
}

std::size_t find_clock(const std::string& name, const std::vector<std::string>& clocks, const std::string& text) {
  auto it = std::find(clocks.begin(), clocks.end(), name);
  if (it == clocks.end()) fail(ErrorKind::Parse, "guard '" + text + "': unknown clock " + name);
  return static_cast<std::size_t>(it - clocks.begin());
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

DelayKind parse_kind(const std::string& kind) {
  if (kind == "uniform") return DelayKind::Uniform;
  if (kind == "exponential") return DelayKind::Exponential;
  if (kind == "dirac") return DelayKind::Dirac;
  fail(ErrorKind::Parse, "unknown delay distribution " + kind);
}

const char* kind_text(DelayKind kind) {
  switch (kind) {
    case DelayKind::Uniform: return "uniform";
    case DelayKind::Exponential: return "exponential";
    case DelayKind::Dirac: return "dirac";
  }
  return "?";
}

}  // namespace

Guard parse_guard(const std::string& text, const std::vector<std::string>& clocks) {
  Guard guard;
  const std::string whole = trim(text);
  if (whole.empty() || whole == "true") return guard;
  static const std::regex simple(R"(^([A-Za-z_]\w*)\s*(<=|>=|==|<|>|=)\s*(\d+)$)");
  static const std::regex reversed(R"(^(\d+)\s*(<=|>=|==|<|>|=)\s*([A-Za-z_]\w*)$)");
  static const std::regex range(R"(^(\d+)\s*(<=|<)\s*([A-Za-z_]\w*)\s*(<=|<)\s*(\d+)$)");
  std::size_t start = 0;
  while (start <= whole.size()) {
    const auto pos = whole.find("&&", start);
    const std::string atom = trim(whole.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    std::smatch m;
    if (std::regex_match(atom, m, simple)) {
      guard.push_back({find_clock(m[1], clocks, text), parse_cmp(m[2]), std::stoll(m[3])});
    } else if (std::regex_match(atom, m, range)) {
      const std::size_t x = find_clock(m[3], clocks, text);
      guard.push_back({x, flip(parse_cmp(m[2])), std::stoll(m[1])});
      guard.push_back({x, parse_cmp(m[4]), std::stoll(m[5])});
    } else if (std::regex_match(atom, m, reversed)) {
      guard.push_back({find_clock(m[3], clocks, text), flip(parse_cmp(m[2])), std::stoll(m[1])});
    } else {
      fail(ErrorKind::Parse, "guard '" + text + "': cannot parse '" + atom + "'");
    }
    if (pos == std::string::npos) break;
    start = pos + 2;
  }
  return guard;
}

std::string format_guard(const Guard& guard, const std::vector<std::string>& clocks) {
  if (guard.empty()) return "true";
  std::string out;
  for (const auto& c : guard) {
    if (!out.empty()) out += " && ";
    out += clocks[c.clock] + cmp_text(c.op) + std::to_string(c.constant);
  }
  return out;
}

bool satisfies(const Guard& guard, const std::vector<double>& clocks) {
  for (const auto& c : guard) {
    const double v = clocks[c.clock];
    const auto k = static_cast<double>(c.constant);
    bool ok = false;
    switch (c.op) {
      case Cmp::Lt: ok = v < k; break;
      case Cmp::Le: ok = v <= k; break;
      case Cmp::Eq: ok = v == k; break;
      case Cmp::Ge: ok = v >= k; break;
      case Cmp::Gt: ok = v > k; break;
    }
    if (!ok) return false;
  }
  return true;
}

StaModel load_sta(const nlohmann::json& doc) {
  try {
    std::vector<std::string> clocks = doc.at("clocks").get<std::vector<std::string>>();
    std::vector<std::string> ap = doc.value("ap", std::vector<std::string>{});
    auto ap_bit = [&ap](const std::string& p) {
      auto it = std::find(ap.begin(), ap.end(), p);
      if (it == ap.end()) {
        ap.push_back(p);
        return ap.size() - 1;
      }
      return static_cast<std::size_t>(it - ap.begin());
    };
    std::vector<Location> locations;
    for (const auto& l : doc.at("locations")) {
      Location loc;
      loc.name = l.at("name").get<std::string>();
      for (const auto& p : l.value("labels", std::vector<std::string>{})) loc.labels |= LabelSet{1} << ap_bit(p);
      const auto& dist = l.at("dist");
      loc.kind = parse_kind(dist.at("kind").get<std::string>());
      if (loc.kind == DelayKind::Exponential) loc.rate = dist.at("rate").get<double>();
      locations.push_back(std::move(loc));
    }
    auto location_of = [&locations](const std::string& name) {
      for (std::size_t i = 0; i < locations.size(); ++i) {
        if (locations[i].name == name) return i;
      }
      fail(ErrorKind::InvalidModel, "unknown location " + name);
    };
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      Edge edge;
      edge.from = location_of(e.at("from").get<std::string>());
      edge.to = location_of(e.at("to").get<std::string>());
      edge.guard = parse_guard(e.value("guard", std::string("true")), clocks);
      for (const auto& r : e.value("resets", std::vector<std::string>{})) {
        edge.resets |= std::uint64_t{1} << find_clock(r, clocks, "resets");
      }
      edge.weight = e.value("weight", std::uint64_t{1});
      edges.push_back(std::move(edge));
    }
    Configuration init;
    const auto& i = doc.at("initial");
    init.location = location_of(i.at("location").get<std::string>());
    init.clocks.assign(clocks.size(), 0.0);
    if (i.contains("valuation")) {
      for (const auto& [name, value] : i.at("valuation").items()) {
        const double v = value.is_string() ? parse_rational(value.get<std::string>()).get_d() : value.get<double>();
        init.clocks[find_clock(name, clocks, "valuation")] = v;
      }
    }
    return StaModel(std::move(ap), std::move(clocks), std::move(locations), std::move(edges), std::move(init));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed automaton: ") + e.what());
  }
}

nlohmann::json sta_to_json(const StaModel& sta) {
  nlohmann::json doc;
  doc["clocks"] = sta.clocks();
  doc["ap"] = sta.ap();
  doc["locations"] = nlohmann::json::array();
  for (const auto& loc : sta.locations()) {
    nlohmann::json labels = nlohmann::json::array();
    for (std::size_t i = 0; i < sta.ap().size(); ++i) {
      if (loc.labels >> i & 1) labels.push_back(sta.ap()[i]);
    }
    nlohmann::json dist{{"kind", kind_text(loc.kind)}};
    if (loc.kind == DelayKind::Exponential) dist["rate"] = loc.rate;
    doc["locations"].push_back({{"name", loc.name}, {"labels", labels}, {"dist", dist}});
  }
  doc["edges"] = nlohmann::json::array();
  for (const auto& e : sta.edges()) {
    nlohmann::json resets = nlohmann::json::array();
    for (std::size_t x = 0; x < sta.clocks().size(); ++x) {
      if (e.resets >> x & 1) resets.push_back(sta.clocks()[x]);
    }
    doc["edges"].push_back({{"from", sta.locations()[e.from].name},
                            {"to", sta.locations()[e.to].name},
                            {"guard", format_guard(e.guard, sta.clocks())},
                            {"resets", resets},
                            {"weight", e.weight}});
  }
  nlohmann::json valuation = nlohmann::json::object();
  for (std::size_t x = 0; x < sta.clocks().size(); ++x) valuation[sta.clocks()[x]] = sta.initial().clocks[x];
  doc["initial"] = {{"location", sta.locations()[sta.initial().location].name}, {"valuation", valuation}};
  return doc;
}

std::string format_configuration(const StaModel& sta, const Configuration& config) {
  std::ostringstream out;
  out << "(" << sta.locations()[config.location].name;
  for (std::size_t x = 0; x < config.clocks.size(); ++x) {
    out << "," << sta.clocks()[x] << "=" << format_decimal(config.clocks[x]);
  }
  out << ")";
  return out.str();
}

StaModel pacman() {
  const std::vector<std::string> clocks{"x", "y"};
  std::vector<Location> locations{
      {"l0", 0, DelayKind::Uniform, 1.0}, {"l1", 0, DelayKind::Dirac, 1.0}, {"l2", 1, DelayKind::Uniform, 1.0},
      {"l3", 0, DelayKind::Dirac, 1.0},   {"l4", 0, DelayKind::Uniform, 1.0},
  };
  const std::uint64_t x = 1;
  const std::uint64_t y = 2;
  std::vector<Edge> edges{
      {0, 1, parse_guard("y<1", clocks), 0, 1},
      {1, 2, parse_guard("y==1", clocks), y, 1},
      {2, 0, parse_guard("x>1 && y<1", clocks), x, 1},
      {0, 3, parse_guard("1<y<2", clocks), 0, 1},
      {3, 4, parse_guard("y==2", clocks), y, 1},
      {4, 0, parse_guard("x>2 && y<1", clocks), x, 1},
  };
  return StaModel({"b"}, clocks, std::move(locations), std::move(edges), Configuration{0, {0.0, 0.5}});
}

StaModel exponential_jump(double rate) {
  std::vector<Location> locations{{"l0", 0, DelayKind::Exponential, rate}, {"l1", 1, DelayKind::Exponential, rate}};
  std::vector<Edge> edges{{0, 1, {}, 0, 1}, {1, 1, {}, 0, 1}};
  return StaModel({"jumped"}, {"x"}, std::move(locations), std::move(edges), Configuration{0, {0.0}});
}

}  // namespace decisive::sta
