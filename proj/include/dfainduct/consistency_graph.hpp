#pragma once

#include <utility>
#include <vector>

#include "dfainduct/apta.hpp"

namespace dfainduct {

/// Graph over APTA nodes with an edge wherever merging the two nodes (under
/// the deterministic merge closure) would force an accepting node onto a
/// rejecting one. Symmetric, irreflexive, and a superset of the direct
/// accepting x rejecting pairs.
struct ConsistencyGraph {
    int num_nodes = 0;
    std::vector<std::pair<int, int>> edges;  // v < w
    std::vector<std::vector<int>> adjacency;             // sorted neighbor lists

    bool has_edge(int v, int w) const;
    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
};

ConsistencyGraph build_cg(const Apta& apta);

// Greedy clique: repeatedly pick the candidate adjacent to everything picked
// so far with maximum degree in the residual graph, smallest node index on
// ties. Returned sorted by node index.
std::vector<int> find_greedy_clique(const Apta& apta, const ConsistencyGraph& cg);

// Same greedy rule, but the clique is grown around a seed node (used for
// color fixing, which needs the APTA root inside the clique).
std::vector<int> find_greedy_clique_around(const ConsistencyGraph& cg, int seed);

}  // namespace dfainduct
