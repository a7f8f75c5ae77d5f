#include "dfainduct/encoding.hpp"
#include "dfainduct/error.hpp"

namespace dfainduct {

namespace detail {
void allocate_core_blocks(EncodingBase& enc, const Apta& apta, int num_states);
void emit_root_color(EncodingBase& enc);
void emit_structural_families(EncodingBase& enc, bool redundant_clauses);
}  // namespace detail

NoisyEncoding encode_noisy(const Apta& apta, int num_states, int max_flips, SbpStrategy sbp) {
    if (max_flips < 0) throw ParameterError("flip budget must be nonnegative");
    if (max_flips > apta.num_labeled())
        throw ParameterError("flip budget " + std::to_string(max_flips) + " exceeds the " +
                             std::to_string(apta.num_labeled()) + " labeled strings");
    if (sbp == SbpStrategy::Clique)
        throw Error("clique fixing needs the consistency graph, which noisy labels rule out");

    NoisyEncoding enc;
    enc.max_flips = max_flips;
    detail::allocate_core_blocks(enc, apta, num_states);
    const int C = num_states;
    const int K = max_flips;
    const int W = apta.num_labeled();

    enc.labeled_node_list = apta.labeled_nodes();
    enc.node_to_labeled_pos.assign(apta.size(), -1);
    for (int w = 0; w < W; ++w) enc.node_to_labeled_pos[enc.labeled_node_list[w]] = w;

    detail::emit_root_color(enc);

    // Accepting/rejecting definitions, flip-conditioned when the budget is
    // positive. With K = 0 the formula is the exact encoding minus the
    // consistency-graph family.
    if (K == 0) {
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
        detail::emit_structural_families(enc, true);
        if (sbp != SbpStrategy::None) encode_sbp(enc, sbp);
        return enc;
    }

    if (sbp != SbpStrategy::None) encode_sbp(enc, sbp);
    enc.flip = enc.vars.new_block("flip", W);
    enc.slot = enc.vars.new_block("slot", K, W);
    enc.slot_order = enc.vars.new_block("slot_order", K, W);
    enc.formula.ensure_vars(enc.vars.num_vars());

    for (int v = 0; v < apta.size(); ++v) {
        if (apta.label(v) != NodeLabel::Accepting) continue;
        int w = enc.node_to_labeled_pos[v];
        for (int i = 0; i < C; ++i)
            enc.emit("flip_accepting_def",
                     {-enc.color_var(v, i), enc.accepting_var(i), enc.flip(w)});
    }
    for (int v = 0; v < apta.size(); ++v) {
        if (apta.label(v) != NodeLabel::Rejecting) continue;
        int w = enc.node_to_labeled_pos[v];
        for (int i = 0; i < C; ++i)
            enc.emit("flip_rejecting_def",
                     {-enc.color_var(v, i), -enc.accepting_var(i), enc.flip(w)});
    }

    detail::emit_structural_families(enc, true);

    // correction array: a flipped node occupies one of K slots
    std::vector<int> lits;
    for (int w = 0; w < W; ++w) {
        lits.clear();
        lits.push_back(-enc.flip(w));
        for (int k = 0; k < K; ++k) lits.push_back(enc.slot(k, w));
        enc.emit("flip_implies_slot", lits);
    }
    for (int k = 0; k < K; ++k)
        for (int w = 0; w < W; ++w)
            enc.emit("slot_implies_flip", {-enc.slot(k, w), enc.flip(w)});

    // order-encoded slot contents: slot k holds node w iff the order block
    // steps from true to false at w
    for (int k = 0; k < K; ++k)
        for (int w = 0; w < W; ++w)
            enc.emit("slot_implies_order", {-enc.slot(k, w), enc.slot_order(k, w)});
    for (int k = 0; k < K; ++k)
        for (int w = 0; w + 1 < W; ++w)
            enc.emit("slot_step_upper", {-enc.slot(k, w), -enc.slot_order(k, w + 1)});
    for (int k = 0; k < K; ++k)
        for (int w = 0; w + 1 < W; ++w)
            enc.emit("slot_step_def",
                     {-enc.slot_order(k, w), enc.slot_order(k, w + 1), enc.slot(k, w)});
    enc.emit("slot_last", {-enc.slot_order(K - 1, W - 1), enc.slot(K - 1, W - 1)});

    for (int k = 0; k < K; ++k)
        for (int w = 0; w + 1 < W; ++w)
            enc.emit("order_monotone", {-enc.slot_order(k, w + 1), enc.slot_order(k, w)});
    // successive slots hold strictly increasing node positions
    for (int k = 0; k + 1 < K; ++k)
        for (int w = 0; w + 1 < W; ++w)
            enc.emit("order_increase", {-enc.slot_order(k, w), enc.slot_order(k + 1, w + 1)});

    return enc;
}

std::vector<int> decode_flips(const NoisyEncoding& enc, const std::vector<uint8_t>& model) {
    std::vector<int> flipped;
    if (enc.max_flips == 0) return flipped;
    for (size_t w = 0; w < enc.labeled_node_list.size(); ++w)
        if (model[enc.flip(static_cast<int>(w))]) flipped.push_back(enc.labeled_node_list[w]);
    return flipped;
}

}  // namespace dfainduct
