#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dfainduct/apta.hpp"
#include "dfainduct/dfa.hpp"
#include "dfainduct/encoding.hpp"
#include "dfainduct/sample.hpp"
#include "dfainduct/solver.hpp"

namespace dfainduct {

struct SearchConfig {
    int min_size = 1;
    int max_size = 32;
    SbpStrategy strategy = SbpStrategy::Bfs;
    BackendConfig backend;
    double time_limit_seconds = 60.0;  // per solver call
    bool noisy = false;
    int flip_budget = 0;  // noisy mode only
};

struct SizeTrace {
    int size = 0;
    SolveStatus status = SolveStatus::TimedOut;
    double seconds = 0;
    size_t num_clauses = 0;
    size_t num_vars = 0;
};

struct FindResult {
    enum class Status { Found, NotFound, TimedOut };
    Status status = Status::NotFound;
    std::optional<Dfa> dfa;
    std::vector<Word> flipped;  // noisy mode: strings the model treats as noise
    int clique_lower_bound = 0;
    std::vector<SizeTrace> trace;
    double elapsed_seconds = 0;
};

/// Iterates the state budget from max(min_size, greedy clique size) upward
/// until the translation is satisfiable, returning the decoded automaton.
/// In noisy mode there is no consistency graph, so min_size is used as-is.
FindResult find_min_dfa(const Sample& sample, const SearchConfig& config);

enum class FindAllMethod { Restart, Incremental };

struct FindAllConfig {
    FindAllMethod method = FindAllMethod::Incremental;
    SbpStrategy sbp = SbpStrategy::Bfs;
    BackendConfig backend;
    double time_limit_seconds = 300.0;  // overall enumeration budget
};

struct FindAllResult {
    bool complete = true;  // false: timed out, dfas holds what was found so far
    std::vector<Dfa> dfas;
    int solver_calls = 0;
    double elapsed_seconds = 0;
};

/// Enumerates every automaton of the given size consistent with the sample by
/// repeatedly banning the transition table of each model found. Loop forcing
/// is always on, so machines differing only in transitions or accepting flags
/// the sample never exercises are not enumerated separately. Restart rebuilds
/// the solver with all accumulated bans each round; Incremental keeps one
/// live session.
FindAllResult find_all(const Sample& sample, int num_states, const FindAllConfig& config);

/// Solver-free baseline: depth-first extension of a partial automaton along
/// the frontier of unrealized APTA edges, completing free transitions as
/// self-loops. Results are deduplicated up to isomorphism.
std::vector<Dfa> backtracking_find_all(const Apta& apta, int num_states);

/// Working state of the backtracking search: the map from APTA nodes to
/// automaton states, and the APTA edges whose source is mapped but whose
/// transition is still undefined.
struct Frontier {
    std::vector<int> node_state;              // APTA node -> state, -1 unmapped
    std::vector<std::pair<int, int>> edges;   // (node, symbol), kept sorted
};

// ---- exhaustive oracles (desk scale; guarded) ----

// Streams one representative per start-fixing isomorphism class of reachable
// complete automata with num_states states: every BFS-enumerated transition
// structure, each with all 2^C accepting subsets. Guard: C <= 5, L <= 2.
void brute_force_enumerate(const std::vector<std::string>& alphabet, int num_states,
                           const std::function<void(const Dfa&)>& yield);

// Shared structure list behind brute_force_enumerate (cached per (L, C)).
const std::vector<std::vector<int>>& canonical_transition_structures(int alphabet_size,
                                                                     int num_states);

// True iff some complete DFA with num_states states misclassifies at most
// max_flips sample strings. Same guard as brute_force_enumerate.
bool exists_consistent_dfa(const Sample& sample, int num_states, int max_flips = 0);

// Smallest size at which exists_consistent_dfa holds. Throws GuardError when
// that size would exceed the enumeration guard.
int min_dfa_size_oracle(const Sample& sample, int max_flips = 0);

/// Test utility: enumerates all satisfying assignments of the exact encoding
/// (plus the requested strategy block) and returns the distinct decoded
/// automata. Guard: C <= 3 and at most 10 APTA nodes.
std::vector<Dfa> project_models_to_dfas(const Apta& apta, int num_states, SbpStrategy strategy,
                                        bool loop_forcing = false,
                                        const BackendConfig& backend = {});

}  // namespace dfainduct
