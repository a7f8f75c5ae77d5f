#include <algorithm>

#include "dfainduct/encoding.hpp"
#include "dfainduct/error.hpp"

namespace dfainduct {

const char* to_string(SbpStrategy strategy) {
    switch (strategy) {
        case SbpStrategy::None: return "none";
        case SbpStrategy::Clique: return "clique";
        case SbpStrategy::Dfs: return "dfs";
        case SbpStrategy::Bfs: return "bfs";
    }
    return "?";
}

namespace detail {

void allocate_core_blocks(EncodingBase& enc, const Apta& apta, int num_states) {
    if (num_states < 1) throw ParameterError("state budget must be at least 1");
    enc.apta = &apta;
    enc.num_states = num_states;
    enc.alphabet_size = apta.alphabet_size();
    enc.color = enc.vars.new_block("color", apta.size(), num_states);
    enc.accepting = enc.vars.new_block("accepting", num_states);
    enc.transition = enc.vars.new_block("transition", enc.alphabet_size, num_states, num_states);
    enc.formula.ensure_vars(enc.vars.num_vars());
}

// The model is read off the transition/accepting variables with the start
// state fixed, so the root's color must be pinned; the clause list of the
// translation leaves this implicit.
void emit_root_color(EncodingBase& enc) {
    enc.emit("root_color", {enc.color_var(enc.apta->root(), 0)});
}

// Clause families shared between the exact and noisy encodings
// (everything except the accepting/rejecting definitions and the
// consistency-graph family).
void emit_structural_families(EncodingBase& enc, bool redundant_clauses) {
    const Apta& apta = *enc.apta;
    const int C = enc.num_states;
    const int L = enc.alphabet_size;
    std::vector<int> lits;

    // each node gets at least one color
    for (int v = 0; v < apta.size(); ++v) {
        lits.clear();
        for (int i = 0; i < C; ++i) lits.push_back(enc.color_var(v, i));
        enc.emit("node_has_color", lits);
    }
    // a colored node and its colored parent set a transition
    for (int v = 0; v < apta.size(); ++v) {
        if (v == apta.root()) continue;
        int p = apta.parent(v), l = apta.incoming_symbol(v);
        for (int i = 0; i < C; ++i)
            for (int j = 0; j < C; ++j)
                enc.emit("transition_set", {enc.transition_var(l, i, j),
                                            -enc.color_var(p, i), -enc.color_var(v, j)});
    }
    // a transition targets at most one state
    for (int l = 0; l < L; ++l)
        for (int i = 0; i < C; ++i)
            for (int j = 0; j < C; ++j)
                for (int k = j + 1; k < C; ++k)
                    enc.emit("transition_at_most_one",
                             {-enc.transition_var(l, i, j), -enc.transition_var(l, i, k)});
    if (redundant_clauses) {
        // each node gets at most one color
        for (int v = 0; v < apta.size(); ++v)
            for (int i = 0; i < C; ++i)
                for (int j = i + 1; j < C; ++j)
                    enc.emit("node_color_at_most_one",
                             {-enc.color_var(v, i), -enc.color_var(v, j)});
        // every transition targets at least one state
        for (int l = 0; l < L; ++l)
            for (int i = 0; i < C; ++i) {
                lits.clear();
                for (int j = 0; j < C; ++j) lits.push_back(enc.transition_var(l, i, j));
                enc.emit("transition_at_least_one", lits);
            }
        // a transition and a colored parent set the node's color
        for (int v = 0; v < apta.size(); ++v) {
            if (v == apta.root()) continue;
            int p = apta.parent(v), l = apta.incoming_symbol(v);
            for (int i = 0; i < C; ++i)
                for (int j = 0; j < C; ++j)
                    enc.emit("color_propagate", {-enc.transition_var(l, i, j),
                                                 -enc.color_var(p, i), enc.color_var(v, j)});
        }
    }
}

}  // namespace detail

ExactEncoding encode_exact(const Apta& apta, const ConsistencyGraph& cg, int num_states,
                           EncodeOptions options) {
    ExactEncoding enc;
    enc.cg = &cg;
    enc.options = options;
    detail::allocate_core_blocks(enc, apta, num_states);
    const int C = num_states;

    detail::emit_root_color(enc);

    if (options.clique_fixing) {
        // The clique is grown around the root so that fixing its colors stays
        // a pure symmetry break alongside the pinned root color.
        enc.fixing_clique = find_greedy_clique_around(cg, apta.root());
        if (static_cast<int>(enc.fixing_clique.size()) > C)
            throw BudgetError("state budget " + std::to_string(C) +
                              " smaller than fixed clique of size " +
                              std::to_string(enc.fixing_clique.size()));
        for (size_t k = 0; k < enc.fixing_clique.size(); ++k)
            enc.emit("clique_fixing", {enc.color_var(enc.fixing_clique[k], static_cast<int>(k))});
    }

    // accepting/rejecting color definitions
    for (int v = 0; v < apta.size(); ++v) {
        if (apta.label(v) != NodeLabel::Accepting) continue;
        for (int i = 0; i < C; ++i)
            enc.emit("accepting_def", {-enc.color_var(v, i), enc.accepting_var(i)});
    }
    for (int v = 0; v < apta.size(); ++v) {
        if (apta.label(v) != NodeLabel::Rejecting) continue;
        for (int i = 0; i < C; ++i)
            enc.emit("rejecting_def", {-enc.color_var(v, i), -enc.accepting_var(i)});
    }

    detail::emit_structural_families(enc, options.redundant_clauses);

    // inconsistent nodes never share a color
    for (auto [v, w] : cg.edges)
        for (int i = 0; i < C; ++i)
            enc.emit("conflict_distinct", {-enc.color_var(v, i), -enc.color_var(w, i)});

    return enc;
}

Dfa decode_model(const EncodingBase& enc, const std::vector<uint8_t>& model) {
    const int C = enc.num_states;
    const int L = enc.alphabet_size;
    Dfa dfa;
    dfa.num_states = C;
    dfa.alphabet = enc.apta->alphabet();
    dfa.transitions.assign(static_cast<size_t>(C) * L, -1);
    dfa.accepting.resize(C);
    for (int i = 0; i < C; ++i) dfa.accepting[i] = model[enc.accepting_var(i)];
    for (int l = 0; l < L; ++l)
        for (int i = 0; i < C; ++i) {
            int target = -1;
            for (int j = 0; j < C; ++j)
                if (model[enc.transition_var(l, i, j)]) {
                    target = j;
                    break;
                }
            if (target < 0)
                throw ModelError("model sets no target for transition (state " +
                                 std::to_string(i + 1) + ", symbol " + enc.apta->alphabet()[l] +
                                 ")");
            dfa.next(i, l) = target;
        }
    return dfa;
}

std::vector<int> blocking_clause(const EncodingBase& enc, const Dfa& dfa) {
    if (dfa.num_states != enc.num_states || dfa.alphabet_size() != enc.alphabet_size)
        throw InputError("blocking clause: DFA shape does not match the encoding");
    std::vector<int> lits;
    lits.reserve(static_cast<size_t>(enc.num_states) * enc.alphabet_size);
    for (int l = 0; l < enc.alphabet_size; ++l)
        for (int i = 0; i < enc.num_states; ++i)
            lits.push_back(-enc.transition_var(l, i, dfa.next(i, l)));
    return lits;
}

void encode_loop_forcing(EncodingBase& enc) {
    const Apta& apta = *enc.apta;
    const int C = enc.num_states;
    const int L = enc.alphabet_size;
    enc.used = enc.vars.new_block("used", L, C);
    enc.loop_forcing = true;

    std::vector<std::vector<int>> sources(L);  // nodes with an out-edge per symbol
    for (int v = 0; v < apta.size(); ++v)
        for (int l = 0; l < L; ++l)
            if (apta.child(v, l) >= 0) sources[l].push_back(v);

    std::vector<int> lits;
    for (int l = 0; l < L; ++l)
        for (int i = 0; i < C; ++i) {
            lits.clear();
            lits.push_back(-enc.used(l, i));
            for (int v : sources[l]) lits.push_back(enc.color_var(v, i));
            enc.emit("used_implies_source", lits);
            for (int v : sources[l])
                enc.emit("source_implies_used", {-enc.color_var(v, i), enc.used(l, i)});
            enc.emit("unused_loops", {enc.used(l, i), enc.transition_var(l, i, i)});
        }

    // pin accepting flags of states that host no labeled node, for the same
    // reason free transitions are pinned: enumeration should not distinguish
    // solutions the sample cannot
    for (int i = 0; i < C; ++i) {
        lits.clear();
        lits.push_back(-enc.accepting_var(i));
        for (int v = 0; v < apta.size(); ++v)
            if (apta.label(v) == NodeLabel::Accepting) lits.push_back(enc.color_var(v, i));
        enc.emit("accept_support", lits);
    }
}

}  // namespace dfainduct
