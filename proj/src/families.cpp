#include "decisive/core/families.hpp"

#include <cmath>

#include "decisive/error.hpp"

namespace decisive {

namespace {

Distribution two_point(StateId a, const Rational& pa, StateId b, const Rational& pb) {
  return Distribution::from_entries({{a, pa}, {b, pb}});
}

void check_open_probability(const Rational& p, const char* what) {
  if (sgn(p) <= 0 || p >= 1) fail(ErrorKind::InvalidArgument, std::string(what) + " must lie in (0,1)");
}

}  // namespace

MarkovChain random_walk(const Rational& p) {
  check_open_probability(p, "walk parameter p");
  const Rational q = 1 - p;
  auto successors = [p, q](StateId s) {
    if (s.value == 0) return Distribution::dirac(StateId{1});
    return two_point(StateId{s.value + 1}, p, StateId{s.value - 1}, q);
  };
  ChainCertificate certificate;
  certificate.irreducible = true;
  certificate.note = "random walk: every state reaches every other state";
  return MarkovChain::lazy({"a"}, successors, [](StateId) { return LabelSet{1}; },
                           [](StateId s) { return s.value >= 0; }, {}, certificate);
}

MarkovChain truncated_walk(const Rational& p, std::size_t n, TopBoundary top) {
  check_open_probability(p, "walk parameter p");
  if (n < 1) fail(ErrorKind::InvalidArgument, "truncation needs at least two states");
  const Rational q = 1 - p;
  std::vector<StateId> states;
  std::vector<Distribution> rows;
  for (std::size_t i = 0; i <= n; ++i) {
    const auto s = static_cast<std::int64_t>(i);
    states.push_back(StateId{s});
    if (i == 0) {
      rows.push_back(Distribution::dirac(StateId{1}));
    } else if (i == n) {
      rows.push_back(top == TopBoundary::Absorbing ? Distribution::dirac(StateId{s})
                                                   : Distribution::dirac(StateId{s - 1}));
    } else {
      rows.push_back(two_point(StateId{s + 1}, p, StateId{s - 1}, q));
    }
  }
  std::vector<LabelSet> labels(states.size(), 1);
  return MarkovChain::finite({"a"}, std::move(states), std::move(rows), std::move(labels));
}

MarkovChain three_state_abstraction(const Rational& q) {
  check_open_probability(q, "parameter q");
  const Rational r = 1 - q;
  std::vector<StateId> states{StateId{0}, StateId{1}, StateId{2}};
  std::vector<Distribution> rows{Distribution::dirac(StateId{1}), two_point(StateId{0}, r, StateId{2}, q),
                                 two_point(StateId{1}, r, StateId{2}, q)};
  std::vector<LabelSet> labels(3, 1);
  return MarkovChain::finite({"a"}, std::move(states), std::move(rows), std::move(labels), {"s0", "s1", "s2"});
}

MarkovChain unfair_chain() {
  auto successors = [](StateId s) {
    if (s.value == 0) return Distribution::dirac(StateId{1});
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 3, static_cast<unsigned long>(s.value));
    const Rational back(mpz_class(1), power);
    return two_point(StateId{0}, back, StateId{s.value + 1}, Rational(1 - back));
  };
  auto name = [](StateId s) { return s.value == 0 ? std::string("b") : "a" + std::to_string(s.value); };
  ChainCertificate certificate;
  certificate.irreducible = true;
  certificate.note = "every a_n returns to b and b reaches every a_n";
  return MarkovChain::lazy({"b"}, successors, [](StateId s) { return LabelSet{s.value == 0 ? 1u : 0u}; },
                           [](StateId s) { return s.value >= 0; }, name, certificate);
}

double walk_ruin_tail(const Rational& p, StateId s) {
  if (p <= Rational(1, 2)) return 1.0;
  const double ratio = Rational((1 - p) / p).get_d();
  return std::pow(ratio, static_cast<double>(s.value));
}

}  // namespace decisive
