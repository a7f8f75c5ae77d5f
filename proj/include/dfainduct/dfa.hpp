#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dfainduct/sample.hpp"

namespace dfainduct {

enum class Traversal { Dfs, Bfs };

/// Complete deterministic finite automaton. States are stored 0-based with
/// state 0 as the start; external formats print them 1-based with start 1.
struct Dfa {
    int num_states = 0;
    std::vector<std::string> alphabet;
    std::vector<int> transitions;     // state * L + symbol -> state
    std::vector<uint8_t> accepting;   // one flag per state

    int alphabet_size() const { return static_cast<int>(alphabet.size()); }
    int next(int state, int symbol) const { return transitions[state * alphabet_size() + symbol]; }
    int& next(int state, int symbol) { return transitions[state * alphabet_size() + symbol]; }

    static Dfa uniform(int num_states, std::vector<std::string> alphabet);  // all self-loops

    bool operator==(const Dfa& other) const {
        return num_states == other.num_states && alphabet == other.alphabet &&
               transitions == other.transitions && accepting == other.accepting;
    }
};

bool accepts(const Dfa& dfa, const Word& word);

// Number of sample strings whose label disagrees with the DFA.
int misclassified_count(const Dfa& dfa, const Sample& sample);

// True iff at most flips_allowed sample strings disagree (0 = exact).
bool consistent(const Dfa& dfa, const Sample& sample, int flips_allowed = 0);

// Start-fixing isomorphism: a bijection of states that fixes the start state,
// commutes with all transitions and preserves acceptance.
bool isomorphic(const Dfa& a, const Dfa& b);

bool all_states_reachable(const Dfa& dfa);

// True iff the traversal from the start state, expanding symbols in alphabet
// order, discovers states exactly in increasing numeric order. False when
// some state is unreachable.
bool is_canonical(const Dfa& dfa, Traversal order);

// Renumbers states into traversal discovery order. Requires all states
// reachable.
Dfa canonicalize(const Dfa& dfa, Traversal order);

}  // namespace dfainduct
