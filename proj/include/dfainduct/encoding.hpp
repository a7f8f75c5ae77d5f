#pragma once

#include <map>
#include <string>
#include <vector>

#include "dfainduct/apta.hpp"
#include "dfainduct/cnf.hpp"
#include "dfainduct/consistency_graph.hpp"
#include "dfainduct/dfa.hpp"

namespace dfainduct {

enum class SbpStrategy { None, Clique, Dfs, Bfs };

const char* to_string(SbpStrategy strategy);

/// State shared by the exact and noisy encoders: the variable blocks of the
/// coloring translation plus the clause store, with per-family clause counts
/// kept for the closed-form count checks.
///
/// Variable blocks are allocated in a fixed order (color, accepting,
/// transition, then strategy-specific) so DIMACS output is reproducible.
/// All state indices are 0-based here; DIMACS variables are 1-based.
struct EncodingBase {
    virtual ~EncodingBase() = default;
    EncodingBase() = default;
    EncodingBase(EncodingBase&&) = default;
    EncodingBase& operator=(EncodingBase&&) = default;

    const Apta* apta = nullptr;
    int num_states = 0;     // C
    int alphabet_size = 0;  // L

    VariableRegistry vars;
    CnfFormula formula;
    std::map<std::string, long> clause_counts;

    VarBlock color;       // (node, state): node merges into DFA state
    VarBlock accepting;   // (state)
    VarBlock transition;  // (symbol, from, to)

    // symmetry-breaking blocks, allocated by encode_sbp
    SbpStrategy sbp = SbpStrategy::None;
    VarBlock link;        // state pair i<j: some transition i -> j exists
    VarBlock parent;      // state pair i<j: i is j's traversal-tree parent
    VarBlock min_symbol;  // (symbol, pair): smallest symbol on i -> j

    // find-all blocks, allocated by encode_loop_forcing
    bool loop_forcing = false;
    VarBlock used;  // (symbol, state): some node with that out-edge has this color

    int color_var(int node, int state) const { return color(node, state); }
    int accepting_var(int state) const { return accepting(state); }
    int transition_var(int symbol, int from, int to) const {
        return transition(symbol, from, to);
    }

    // triangle rank of a state pair, from < to
    int pair_rank(int from, int to) const { return to * (to - 1) / 2 + from; }
    int num_pairs() const { return num_states * (num_states - 1) / 2; }
    int link_var(int from, int to) const { return link(pair_rank(from, to)); }
    int parent_var(int to, int from) const { return parent(pair_rank(from, to)); }
    int min_symbol_var(int symbol, int from, int to) const {
        return min_symbol(symbol, pair_rank(from, to));
    }

    void emit(const std::string& family, std::span<const int> lits) {
        formula.ensure_vars(vars.num_vars());
        formula.add_clause(lits);
        clause_counts[family] += 1;
    }
    void emit(const std::string& family, std::initializer_list<int> lits) {
        emit(family, std::span<const int>(lits.begin(), lits.size()));
    }

    long count(const std::string& family) const {
        auto it = clause_counts.find(family);
        return it == clause_counts.end() ? 0 : it->second;
    }
};

struct EncodeOptions {
    bool clique_fixing = false;
    // Emit the at-most-one-color, transition-totality and color-propagation
    // families (solver guidance; the translation is complete without them).
    bool redundant_clauses = true;
};

/// Exact identification encoding: the nine clause families of the coloring
/// translation plus a unit clause pinning the root's color to the start
/// state. With clique fixing, the colors of a greedy clique grown around the
/// root are fixed as well.
struct ExactEncoding : EncodingBase {
    const ConsistencyGraph* cg = nullptr;
    EncodeOptions options;
    std::vector<int> fixing_clique;  // sorted node ids; root first
};

ExactEncoding encode_exact(const Apta& apta, const ConsistencyGraph& cg, int num_states,
                           EncodeOptions options = {});

/// Noisy identification encoding: replaces the accepting/rejecting definition
/// clauses with flip-conditioned ones, drops the consistency-graph family and
/// bounds the number of flips by an order-encoded correction array.
struct NoisyEncoding : EncodingBase {
    int max_flips = 0;                    // K
    std::vector<int> labeled_node_list;   // V+- in construction order
    std::vector<int> node_to_labeled_pos; // -1 for unlabeled nodes
    VarBlock flip;        // (labeled position): label may be wrong
    VarBlock slot;        // (slot, labeled position): correction slot holds node
    VarBlock slot_order;  // (slot, labeled position): order encoding of slot values
};

NoisyEncoding encode_noisy(const Apta& apta, int num_states, int max_flips,
                           SbpStrategy sbp = SbpStrategy::None);

// Reads the transition and accepting variables of a satisfying model.
Dfa decode_model(const EncodingBase& encoding, const std::vector<uint8_t>& model);

// Labeled APTA nodes whose flip variable is true in the model.
std::vector<int> decode_flips(const NoisyEncoding& encoding, const std::vector<uint8_t>& model);

// Clause banning the model's transition table: one negative literal per
// (state, symbol), C*L literals in total.
std::vector<int> blocking_clause(const EncodingBase& encoding, const Dfa& dfa);

// Find-all support: forces transitions unused by the sample to be self-loops
// and pins accepting flags of states no labeled node maps to, so solutions
// differ only in ways the sample distinguishes.
void encode_loop_forcing(EncodingBase& encoding);

// Emits the traversal-enumeration clauses for Dfs or Bfs; None and Clique are
// no-ops here. Rejected on encodings built with clique fixing.
void encode_sbp(EncodingBase& encoding, SbpStrategy strategy);

}  // namespace dfainduct
