// Shared test fixtures and the independent oracles the unit suites check
// library results against. The oracles deliberately re-derive everything from
// first principles and share no code with the implementations under test.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "dfainduct/apta.hpp"
#include "dfainduct/dfa.hpp"
#include "dfainduct/rng.hpp"
#include "dfainduct/sample.hpp"

namespace testing_oracles {

using namespace dfainduct;

// The running example: S+ = {ab, b, ba, bbb}, S- = {abbb, baba}.
inline Sample example_sample() {
    return Sample::from_chars("ab", {"ab", "b", "ba", "bbb"}, {"abbb", "baba"});
}

inline Sample example_sample_without_baba() {
    return Sample::from_chars("ab", {"ab", "b", "ba", "bbb"}, {"abbb"});
}

// All distinct prefixes (including the empty one) of the sample strings.
inline std::set<Word> prefix_closure(const Sample& sample) {
    std::set<Word> prefixes;
    auto add = [&](const Word& w) {
        for (size_t len = 0; len <= w.size(); ++len)
            prefixes.insert(Word(w.begin(), w.begin() + len));
    };
    for (const Word& w : sample.positives()) add(w);
    for (const Word& w : sample.negatives()) add(w);
    return prefixes;
}

// Plain union-find merge closure for one node pair; no memoization, no
// shortcuts.
inline bool merge_conflict_oracle(const Apta& apta, int a, int b) {
    const int L = apta.alphabet_size();
    std::vector<int> parent(apta.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<char> acc(apta.size()), rej(apta.size());
    std::vector<std::vector<int>> child(apta.size(), std::vector<int>(L));
    for (int v = 0; v < apta.size(); ++v) {
        acc[v] = apta.label(v) == NodeLabel::Accepting;
        rej[v] = apta.label(v) == NodeLabel::Rejecting;
        for (int l = 0; l < L; ++l) child[v][l] = apta.child(v, l);
    }
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::pair<int, int>> queue{{a, b}};
    while (!queue.empty()) {
        auto [u, v] = queue.back();
        queue.pop_back();
        u = find(u);
        v = find(v);
        if (u == v) continue;
        parent[v] = u;
        acc[u] |= acc[v];
        rej[u] |= rej[v];
        if (acc[u] && rej[u]) return true;
        for (int l = 0; l < L; ++l) {
            if (child[u][l] >= 0 && child[v][l] >= 0) queue.push_back({child[u][l], child[v][l]});
            if (child[u][l] < 0) child[u][l] = child[v][l];
        }
    }
    return false;
}

inline std::set<std::pair<int, int>> cg_edges_oracle(const Apta& apta) {
    std::set<std::pair<int, int>> edges;
    for (int v = 1; v < apta.size(); ++v)
        for (int u = 0; u < v; ++u)
            if (merge_conflict_oracle(apta, u, v)) edges.insert({u, v});
    return edges;
}

// Exhaustive maximum clique (fine up to ~15 nodes).
inline int max_clique_size_oracle(int num_nodes, const std::set<std::pair<int, int>>& edges) {
    auto adjacent = [&](int a, int b) {
        return edges.count({std::min(a, b), std::max(a, b)}) != 0;
    };
    int best = 0;
    std::vector<int> chosen;
    std::function<void(int)> grow = [&](int next) {
        best = std::max(best, static_cast<int>(chosen.size()));
        for (int v = next; v < num_nodes; ++v) {
            bool ok = true;
            for (int c : chosen) ok = ok && adjacent(c, v);
            if (!ok) continue;
            chosen.push_back(v);
            grow(v + 1);
            chosen.pop_back();
        }
    };
    grow(0);
    return best;
}

// Random small samples for property tests; APTA size capped.
inline Sample random_sample(Rng& rng, int alphabet_size, int max_strings, int max_len,
                            int apta_node_cap) {
    std::string alphabet = "abc";
    for (;;) {
        Sample sample = Sample::from_chars(alphabet.substr(0, alphabet_size), {}, {});
        int count = 1 + rng.below_int(max_strings);
        for (int i = 0; i < count; ++i) {
            int len = rng.below_int(max_len + 1);
            Word w(len);
            for (int& s : w) s = rng.below_int(alphabet_size);
            bool positive = rng.coin();
            if (!sample.contains(w, !positive)) sample.add(w, positive);
        }
        if (static_cast<int>(prefix_closure(sample).size()) <= apta_node_cap &&
            sample.size() > 0)
            return sample;
    }
}

inline Word to_word(const Sample& sample, const std::string& chars) {
    Word w;
    for (char c : chars) w.push_back(sample.symbol_index(std::string(1, c)));
    return w;
}

}  // namespace testing_oracles
