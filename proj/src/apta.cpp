#include "dfainduct/apta.hpp"

#include <algorithm>

#include "dfainduct/error.hpp"

namespace dfainduct {

Word Apta::prefix_of(int node) const {
    Word w;
    for (int v = node; v != root(); v = parent_[v]) w.push_back(incoming_[v]);
    std::reverse(w.begin(), w.end());
    return w;
}

Apta build_apta(const Sample& sample) {
    Apta apta;
    apta.alphabet_ = sample.alphabet();
    const int L = apta.alphabet_size();

    auto new_node = [&](int parent, int symbol) {
        int id = apta.size();
        apta.children_.insert(apta.children_.end(), L, -1);
        apta.parent_.push_back(parent);
        apta.incoming_.push_back(symbol);
        apta.depth_.push_back(parent < 0 ? 0 : apta.depth_[parent] + 1);
        apta.label_.push_back(NodeLabel::None);
        return id;
    };

    new_node(-1, -1);  // root = empty prefix

    auto insert = [&](const Word& word, NodeLabel label) {
        int node = apta.root();
        for (int sym : word) {
            int next = apta.child(node, sym);
            if (next < 0) {
                next = new_node(node, sym);
                apta.children_[node * L + sym] = next;
            }
            node = next;
        }
        NodeLabel old = apta.label_[node];
        if (old != NodeLabel::None && old != label)
            throw LabelConflictError(sample.format_word(word));
        if (old == NodeLabel::None) {
            apta.label_[node] = label;
            apta.labeled_nodes_.push_back(node);
            (label == NodeLabel::Accepting ? apta.num_accepting_ : apta.num_rejecting_) += 1;
        }
    };

    for (const Word& w : sample.positives()) insert(w, NodeLabel::Accepting);
    for (const Word& w : sample.negatives()) insert(w, NodeLabel::Rejecting);
    return apta;
}

}  // namespace dfainduct
