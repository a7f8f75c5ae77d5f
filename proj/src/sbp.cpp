// DFS- and BFS-enumeration clauses over the parent / link / minimal-symbol
// variables. The clause block depends only on (C, L, strategy), never on the
// sample, so generated blocks are cached in a symbolic numbering and remapped
// onto each encoding's variables.

#include <iterator>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "dfainduct/encoding.hpp"
#include "dfainduct/error.hpp"

namespace dfainduct {

namespace {

// Families of the strategy blocks, used as both cache tags and count keys.
const char* const kFamilies[] = {
    "link_def",               // link <=> some transition on the pair
    "transition_implies_link",
    "parent_implies_link",
    "parent_exists",
    "minsym_implies_transition",
    "minsym_excludes_smaller",
    "minsym_def",
    "parent_def",             // maximal (DFS) / minimal (BFS) transition source
    "dfs_parent_max",
    "dfs_order",
    "dfs_sibling_order",
    "dfs_forward_order",
    "bfs_parent_min",
    "bfs_order",
    "bfs_sibling_order",
};

struct SbpBlock {
    struct SymbolicClause {
        int family;
        std::vector<int> lits;  // signed symbolic indices, 1-based
    };
    std::vector<SymbolicClause> clauses;
    bool uses_min_symbol = false;
};

// Symbolic variable space: transition, then link, then parent, then
// min-symbol, each laid out exactly like the per-encoding blocks.
struct SymbolicVars {
    int num_states, alphabet_size, pairs;
    int transition(int l, int i, int j) const { return 1 + (l * num_states + i) * num_states + j; }
    int rank(int i, int j) const { return j * (j - 1) / 2 + i; }
    int link(int i, int j) const { return 1 + alphabet_size * num_states * num_states + rank(i, j); }
    int parent(int j, int i) const {
        return 1 + alphabet_size * num_states * num_states + pairs + rank(i, j);
    }
    int min_symbol(int l, int i, int j) const {
        return 1 + alphabet_size * num_states * num_states + 2 * pairs + l * pairs + rank(i, j);
    }
    int total() const {
        return alphabet_size * num_states * num_states + 2 * pairs + alphabet_size * pairs;
    }
};

std::shared_ptr<const SbpBlock> build_block(int C, int L, SbpStrategy strategy) {
    SymbolicVars sym{C, L, C * (C - 1) / 2};
    auto block = std::make_shared<SbpBlock>();
    block->uses_min_symbol = L >= 3;

    auto family_id = [](const char* name) {
        for (int i = 0; i < static_cast<int>(std::size(kFamilies)); ++i)
            if (std::string(kFamilies[i]) == name) return i;
        throw Error(std::string("unknown SBP family ") + name);
    };
    auto emit = [&](const char* family, std::vector<int> lits) {
        block->clauses.push_back({family_id(family), std::move(lits)});
    };

    // ---- shared rows ----
    for (int j = 1; j < C; ++j)
        for (int i = 0; i < j; ++i) {
            std::vector<int> lits{-sym.link(i, j)};
            for (int l = 0; l < L; ++l) lits.push_back(sym.transition(l, i, j));
            emit("link_def", std::move(lits));
        }
    for (int j = 1; j < C; ++j)
        for (int i = 0; i < j; ++i)
            for (int l = 0; l < L; ++l)
                emit("transition_implies_link", {-sym.transition(l, i, j), sym.link(i, j)});
    for (int j = 1; j < C; ++j)
        for (int i = 0; i < j; ++i)
            emit("parent_implies_link", {-sym.parent(j, i), sym.link(i, j)});
    for (int j = 1; j < C; ++j) {
        std::vector<int> lits;
        for (int i = 0; i < j; ++i) lits.push_back(sym.parent(j, i));
        emit("parent_exists", std::move(lits));
    }
    if (L >= 3) {
        for (int j = 1; j < C; ++j)
            for (int i = 0; i < j; ++i)
                for (int n = 0; n < L; ++n) {
                    emit("minsym_implies_transition",
                         {-sym.min_symbol(n, i, j), sym.transition(n, i, j)});
                    for (int k = 0; k < n; ++k)
                        emit("minsym_excludes_smaller",
                             {-sym.min_symbol(n, i, j), -sym.transition(k, i, j)});
                    std::vector<int> lits{-sym.transition(n, i, j)};
                    for (int k = 0; k < n; ++k) lits.push_back(sym.transition(k, i, j));
                    lits.push_back(sym.min_symbol(n, i, j));
                    emit("minsym_def", std::move(lits));
                }
    }

    if (strategy == SbpStrategy::Dfs) {
        // parent = maximal incoming state
        for (int j = 1; j < C; ++j)
            for (int i = 0; i < j; ++i)
                for (int k = i + 1; k < j; ++k)
                    emit("dfs_parent_max", {-sym.parent(j, i), -sym.link(k, j)});
        for (int j = 1; j < C; ++j)
            for (int i = 0; i < j; ++i) {
                std::vector<int> lits{-sym.link(i, j)};
                for (int k = i + 1; k < j; ++k) lits.push_back(sym.link(k, j));
                lits.push_back(sym.parent(j, i));
                emit("parent_def", std::move(lits));
            }
        // a state between a parent and its child reaches nothing beyond the child
        for (int q = 3; q < C; ++q)
            for (int j = 2; j < q; ++j)
                for (int k = 1; k < j; ++k)
                    for (int i = 0; i < k; ++i)
                        emit("dfs_order", {-sym.parent(j, i), -sym.link(k, q)});
        // siblings are ordered by their smallest connecting symbol
        if (L == 2) {
            for (int k = 2; k < C; ++k)
                for (int j = 1; j < k; ++j)
                    for (int i = 0; i < j; ++i)
                        emit("dfs_sibling_order",
                             {-sym.parent(j, i), -sym.parent(k, i), sym.transition(0, i, j)});
        } else if (L >= 3) {
            for (int k = 2; k < C; ++k)
                for (int j = 1; j < k; ++j)
                    for (int i = 0; i < j; ++i)
                        for (int n = 1; n < L; ++n)
                            for (int m = 0; m < n; ++m)
                                emit("dfs_sibling_order",
                                     {-sym.parent(j, i), -sym.parent(k, i),
                                      -sym.min_symbol(n, i, j), -sym.min_symbol(m, i, k)});
        }
        // a transition from an earlier state into a child's subtree must use
        // a later symbol than the tree edge into that child; the parent-of-
        // maximum rule alone leaves such forward edges free to reorder the
        // traversal
        for (int j = 2; j < C; ++j)
            for (int c = 1; c < j; ++c)
                for (int a = 0; a < c; ++a) {
                    std::vector<int> tail;
                    for (int mid = c + 1; mid <= j; ++mid) tail.push_back(sym.parent(mid, a));
                    if (L == 2) {
                        std::vector<int> lits{-sym.parent(c, a), sym.transition(0, a, c),
                                              -sym.transition(0, a, j)};
                        lits.insert(lits.end(), tail.begin(), tail.end());
                        emit("dfs_forward_order", std::move(lits));
                    } else if (L >= 3) {
                        for (int n = 1; n < L; ++n)
                            for (int m = 0; m < n; ++m) {
                                std::vector<int> lits{-sym.parent(c, a),
                                                      -sym.min_symbol(n, a, c),
                                                      -sym.transition(m, a, j)};
                                lits.insert(lits.end(), tail.begin(), tail.end());
                                emit("dfs_forward_order", std::move(lits));
                            }
                    }
                }
    } else {
        // parent = minimal incoming state
        for (int j = 1; j < C; ++j)
            for (int i = 0; i < j; ++i)
                for (int k = 0; k < i; ++k)
                    emit("bfs_parent_min", {-sym.parent(j, i), -sym.link(k, j)});
        for (int j = 1; j < C; ++j)
            for (int i = 0; i < j; ++i) {
                std::vector<int> lits{-sym.link(i, j)};
                for (int k = 0; k < i; ++k) lits.push_back(sym.link(k, j));
                lits.push_back(sym.parent(j, i));
                emit("parent_def", std::move(lits));
            }
        // consecutive states have nondecreasing parents
        for (int j = 2; j + 1 < C; ++j)
            for (int i = 1; i < j; ++i)
                for (int k = 0; k < i; ++k)
                    emit("bfs_order", {-sym.parent(j, i), -sym.parent(j + 1, k)});
        // consecutive siblings are ordered by their smallest connecting symbol
        if (L == 2) {
            for (int j = 1; j + 1 < C; ++j)
                for (int i = 0; i < j; ++i)
                    emit("bfs_sibling_order",
                         {-sym.parent(j, i), -sym.parent(j + 1, i), sym.transition(0, i, j)});
        } else if (L >= 3) {
            for (int j = 1; j + 1 < C; ++j)
                for (int i = 0; i < j; ++i)
                    for (int n = 1; n < L; ++n)
                        for (int m = 0; m < n; ++m)
                            emit("bfs_sibling_order",
                                 {-sym.parent(j, i), -sym.parent(j + 1, i),
                                  -sym.min_symbol(n, i, j), -sym.min_symbol(m, i, j + 1)});
        }
    }
    return block;
}

std::shared_ptr<const SbpBlock> cached_block(int C, int L, SbpStrategy strategy) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const SbpBlock>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_tuple(C, L, static_cast<int>(strategy));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto block = build_block(C, L, strategy);
    cache.emplace(key, block);
    return block;
}

}  // namespace

void encode_sbp(EncodingBase& enc, SbpStrategy strategy) {
    if (strategy == SbpStrategy::None || strategy == SbpStrategy::Clique) return;
    if (auto* exact = dynamic_cast<ExactEncoding*>(&enc); exact && exact->options.clique_fixing)
        throw Error("clique fixing cannot be combined with DFS/BFS enumeration");
    if (enc.sbp != SbpStrategy::None) throw Error("symmetry-breaking block already emitted");

    const int C = enc.num_states;
    const int L = enc.alphabet_size;
    enc.sbp = strategy;
    enc.link = enc.vars.new_block("link", enc.num_pairs());
    enc.parent = enc.vars.new_block("parent", enc.num_pairs());
    if (L >= 3) enc.min_symbol = enc.vars.new_block("min_symbol", L, enc.num_pairs());
    enc.formula.ensure_vars(enc.vars.num_vars());

    auto block = cached_block(C, L, strategy);
    SymbolicVars sym{C, L, enc.num_pairs()};

    // symbolic index -> encoding variable
    std::vector<int> remap(sym.total() + 1, 0);
    for (int l = 0; l < L; ++l)
        for (int i = 0; i < C; ++i)
            for (int j = 0; j < C; ++j)
                remap[sym.transition(l, i, j)] = enc.transition_var(l, i, j);
    for (int j = 1; j < C; ++j)
        for (int i = 0; i < j; ++i) {
            remap[sym.link(i, j)] = enc.link_var(i, j);
            remap[sym.parent(j, i)] = enc.parent_var(j, i);
            if (L >= 3)
                for (int l = 0; l < L; ++l)
                    remap[sym.min_symbol(l, i, j)] = enc.min_symbol_var(l, i, j);
        }

    std::vector<int> lits;
    for (const auto& clause : block->clauses) {
        lits.clear();
        for (int s : clause.lits)
            lits.push_back(s > 0 ? remap[s] : -remap[-s]);
        enc.emit(kFamilies[clause.family], lits);
    }
}

}  // namespace dfainduct
