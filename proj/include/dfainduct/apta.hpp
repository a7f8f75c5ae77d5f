#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dfainduct/sample.hpp"

namespace dfainduct {

enum class NodeLabel : uint8_t { None, Accepting, Rejecting };

/// Augmented prefix tree acceptor. One node per distinct prefix of the sample
/// strings; the node ending a full string carries that string's label. The
/// root (node 0) is the empty prefix. Immutable once built.
class Apta {
public:
    int size() const { return static_cast<int>(label_.size()); }
    int root() const { return 0; }
    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }

    int child(int node, int symbol) const { return children_[node * alphabet_size() + symbol]; }
    int parent(int node) const { return parent_[node]; }
    int incoming_symbol(int node) const { return incoming_[node]; }
    int depth(int node) const { return depth_[node]; }
    NodeLabel label(int node) const { return label_[node]; }

    int num_accepting() const { return num_accepting_; }
    int num_rejecting() const { return num_rejecting_; }
    int num_labeled() const { return num_accepting_ + num_rejecting_; }

    // Labeled nodes in construction order (the fixed indexing the noisy
    // encoding's correction array relies on).
    const std::vector<int>& labeled_nodes() const { return labeled_nodes_; }

    // The prefix leading to a node, for diagnostics.
    Word prefix_of(int node) const;

    friend Apta build_apta(const Sample& sample);

private:
    std::vector<std::string> alphabet_;
    std::vector<int> children_;   // node * L + symbol -> child id, -1 if absent
    std::vector<int> parent_;     // -1 for the root
    std::vector<int> incoming_;   // symbol on the edge from the parent, -1 for the root
    std::vector<int> depth_;
    std::vector<NodeLabel> label_;
    std::vector<int> labeled_nodes_;
    int num_accepting_ = 0;
    int num_rejecting_ = 0;
};

Apta build_apta(const Sample& sample);

}  // namespace dfainduct
