#pragma once

#include <cstddef>

#include "decisive/core/markov_chain.hpp"

namespace decisive {

// Random walk on the naturals: 0 moves to 1, i >= 1 moves up with
// probability p and down otherwise. Every state carries proposition "a".
MarkovChain random_walk(const Rational& p);

enum class TopBoundary { Reflecting, Absorbing };

// The walk on {0..n}; the top state either steps down surely or absorbs.
MarkovChain truncated_walk(const Rational& p, std::size_t n, TopBoundary top);

// Three-state chain s0 -> s1 -> {s0 (1-q), s2 (q)}, s2 -> {s1 (1-q), s2 (q)},
// with states 0, 1, 2.
MarkovChain three_state_abstraction(const Rational& q);

// Abstraction map of the walk onto the three-state chain: n -> min(n, 2).
inline StateId walk_to_three_state(StateId s) { return StateId{s.value < 2 ? s.value : 2}; }

// State 0 is b, state n >= 1 is a_n; a_n returns to b with probability
// 3^-n and otherwise moves to a_{n+1}; b moves to a_1. Proposition "b"
// holds in b only.
MarkovChain unfair_chain();

// Upper bound on P(F {0}) from state i of the walk with p > 1/2.
double walk_ruin_tail(const Rational& p, StateId s);

}  // namespace decisive
