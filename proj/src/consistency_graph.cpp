#include "dfainduct/consistency_graph.hpp"

#include <algorithm>
#include <cstdint>

namespace dfainduct {

bool ConsistencyGraph::has_edge(int v, int w) const {
    if (v == w) return false;
    const auto& a = adjacency[v];
    return std::binary_search(a.begin(), a.end(), w);
}

namespace {

constexpr uint8_t kUnknown = 0;
constexpr uint8_t kNoConflict = 1;
constexpr uint8_t kConflict = 2;

inline bool label_clash(NodeLabel a, NodeLabel b) {
    return (a == NodeLabel::Accepting && b == NodeLabel::Rejecting) ||
           (a == NodeLabel::Rejecting && b == NodeLabel::Accepting);
}

// Triangle index for an unordered pair, u < v.
inline size_t pair_index(int u, int v) {
    return static_cast<size_t>(v) * (v - 1) / 2 + u;
}

// Shared state for one build_cg run.
struct CgBuilder {
    const Apta& apta;
    int n;
    int L;
    std::vector<uint8_t> result;  // triangle-indexed conflict verdicts

    // Union-find scratch, reused across closure calls via epoch stamps.
    std::vector<int> uf_parent;
    std::vector<int> uf_epoch;
    std::vector<uint8_t> class_acc, class_rej;
    std::vector<int> class_child;  // node * L + symbol, valid when stamped
    std::vector<int> child_epoch;
    std::vector<int> tin, tout;  // Euler intervals for O(1) ancestor tests
    int epoch = 0;

    explicit CgBuilder(const Apta& a)
        : apta(a),
          n(a.size()),
          L(a.alphabet_size()),
          result(static_cast<size_t>(n) * (n - 1) / 2, kUnknown),
          uf_parent(n),
          uf_epoch(n, -1),
          class_acc(n),
          class_rej(n),
          class_child(static_cast<size_t>(n) * a.alphabet_size()),
          child_epoch(static_cast<size_t>(n) * a.alphabet_size(), -1),
          tin(n),
          tout(n) {
        int clock = 0;
        std::vector<std::pair<int, int>> stack{{0, 0}};  // node, next symbol
        tin[0] = clock++;
        while (!stack.empty()) {
            auto& [node, sym] = stack.back();
            if (sym == L) {
                tout[node] = clock++;
                stack.pop_back();
                continue;
            }
            int c = apta.child(node, sym++);
            if (c >= 0) {
                tin[c] = clock++;
                stack.push_back({c, 0});
            }
        }
    }

    uint8_t& verdict(int u, int v) { return result[u < v ? pair_index(u, v) : pair_index(v, u)]; }

    int find(int x) {
        if (uf_epoch[x] != epoch) {
            uf_epoch[x] = epoch;
            uf_parent[x] = x;
            class_acc[x] = apta.label(x) == NodeLabel::Accepting;
            class_rej[x] = apta.label(x) == NodeLabel::Rejecting;
        }
        while (uf_parent[x] != x) {
            uf_parent[x] = uf_parent[uf_parent[x]];
            x = uf_parent[x];
        }
        return x;
    }

    int child_of(int root, int sym) {
        size_t k = static_cast<size_t>(root) * L + sym;
        if (child_epoch[k] == epoch) return class_child[k];
        return apta.child(root, sym);
    }

    void set_child(int root, int sym, int c) {
        size_t k = static_cast<size_t>(root) * L + sym;
        child_epoch[k] = epoch;
        class_child[k] = c;
    }

    // Fast path for pairs where neither node is an ancestor of the other:
    // merging two unrelated subtrees of a tree only identifies nodes pairwise
    // along parallel descents, so the conflict test is a plain recursion.
    bool parallel_conflict(int u, int v) {
        uint8_t& memo = verdict(u, v);
        if (memo != kUnknown) return memo == kConflict;
        bool conflict = label_clash(apta.label(u), apta.label(v));
        if (!conflict) {
            for (int l = 0; l < L && !conflict; ++l) {
                int cu = apta.child(u, l);
                int cv = apta.child(v, l);
                if (cu >= 0 && cv >= 0) conflict = parallel_conflict(cu, cv);
            }
        }
        memo = conflict ? kConflict : kNoConflict;
        return conflict;
    }

    // Full merge closure. Needed for ancestor pairs, where chains of
    // identifications glue whole prefix families together and transitivity
    // can produce clashes no single parallel descent sees.
    bool closure_conflict(int u0, int v0) {
        ++epoch;
        std::vector<std::pair<int, int>> queue{{u0, v0}};
        std::vector<std::pair<int, int>> merged;
        bool conflict = false;
        while (!queue.empty() && !conflict) {
            auto [a, b] = queue.back();
            queue.pop_back();
            uint8_t known = verdict(a, b);
            if (known == kConflict) {
                conflict = true;
                break;
            }
            int ra = find(a), rb = find(b);
            if (ra == rb) continue;
            merged.push_back({a, b});
            // attach rb under ra
            uf_parent[rb] = ra;
            class_acc[ra] |= class_acc[rb];
            class_rej[ra] |= class_rej[rb];
            if (class_acc[ra] && class_rej[ra]) {
                conflict = true;
                break;
            }
            for (int l = 0; l < L; ++l) {
                int ca = child_of(ra, l);
                int cb = child_of(rb, l);
                if (ca >= 0 && cb >= 0 && ca != cb) queue.push_back({ca, cb});
                set_child(ra, l, ca >= 0 ? ca : cb);
            }
        }
        if (!conflict) {
            // Every pair merged inside a consistent closure generates a
            // sub-closure of it, hence is itself consistent.
            for (auto [a, b] : merged)
                if (a != b) verdict(a, b) = kNoConflict;
        }
        verdict(u0, v0) = conflict ? kConflict : kNoConflict;
        return conflict;
    }

    bool is_ancestor(int u, int v) {
        if (apta.depth(u) > apta.depth(v)) std::swap(u, v);
        return tin[u] < tin[v] && tout[v] < tout[u];
    }
};

}  // namespace

ConsistencyGraph build_cg(const Apta& apta) {
    const int n = apta.size();
    ConsistencyGraph cg;
    cg.num_nodes = n;
    cg.adjacency.assign(n, {});
    if (n < 2) return cg;

    CgBuilder builder(apta);
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            bool conflict;
            if (builder.verdict(u, v) != kUnknown)
                conflict = builder.verdict(u, v) == kConflict;
            else if (builder.is_ancestor(u, v))
                conflict = builder.closure_conflict(u, v);
            else
                conflict = builder.parallel_conflict(u, v);
            if (conflict) {
                cg.edges.push_back({u, v});
                cg.adjacency[u].push_back(v);
                cg.adjacency[v].push_back(u);
            }
        }
    }
    for (auto& a : cg.adjacency) std::sort(a.begin(), a.end());
    return cg;
}

namespace {

std::vector<int> grow_clique(const ConsistencyGraph& cg, std::vector<int> picked,
                             std::vector<int> candidates) {
    std::vector<uint8_t> in_cand(cg.num_nodes, 0);
    while (!candidates.empty()) {
        for (int c : candidates) in_cand[c] = 1;
        int best = -1, best_deg = -1;
        for (int c : candidates) {
            int deg = 0;
            for (int w : cg.adjacency[c]) deg += in_cand[w];
            if (deg > best_deg || (deg == best_deg && c < best)) {
                best = c;
                best_deg = deg;
            }
        }
        for (int c : candidates) in_cand[c] = 0;
        picked.push_back(best);
        std::vector<int> next;
        for (int c : candidates)
            if (c != best && cg.has_edge(c, best)) next.push_back(c);
        candidates = std::move(next);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

}  // namespace

std::vector<int> find_greedy_clique(const Apta& apta, const ConsistencyGraph& cg) {
    (void)apta;
    if (cg.num_nodes == 0) return {};
    std::vector<int> all(cg.num_nodes);
    for (int i = 0; i < cg.num_nodes; ++i) all[i] = i;
    return grow_clique(cg, {}, std::move(all));
}

std::vector<int> find_greedy_clique_around(const ConsistencyGraph& cg, int seed) {
    return grow_clique(cg, {seed}, cg.adjacency[seed]);
}

}  // namespace dfainduct
