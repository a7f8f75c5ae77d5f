#include "dfainduct/dfa.hpp"

#include <algorithm>
#include <deque>

#include "dfainduct/error.hpp"

namespace dfainduct {

Dfa Dfa::uniform(int num_states, std::vector<std::string> alphabet) {
    Dfa d;
    d.num_states = num_states;
    d.alphabet = std::move(alphabet);
    d.transitions.resize(static_cast<size_t>(num_states) * d.alphabet_size());
    for (int s = 0; s < num_states; ++s)
        for (int l = 0; l < d.alphabet_size(); ++l) d.next(s, l) = s;
    d.accepting.assign(num_states, 0);
    return d;
}

bool accepts(const Dfa& dfa, const Word& word) {
    int state = 0;
    for (int sym : word) {
        if (sym < 0 || sym >= dfa.alphabet_size())
            throw InputError("symbol index " + std::to_string(sym) + " outside alphabet");
        state = dfa.next(state, sym);
    }
    return dfa.accepting[state] != 0;
}

int misclassified_count(const Dfa& dfa, const Sample& sample) {
    int count = 0;
    for (const Word& w : sample.positives())
        if (!accepts(dfa, w)) ++count;
    for (const Word& w : sample.negatives())
        if (accepts(dfa, w)) ++count;
    return count;
}

bool consistent(const Dfa& dfa, const Sample& sample, int flips_allowed) {
    return misclassified_count(dfa, sample) <= flips_allowed;
}

namespace {

// States in discovery order; shorter than num_states when some are unreachable.
std::vector<int> discovery_order(const Dfa& dfa, Traversal order) {
    const int L = dfa.alphabet_size();
    std::vector<uint8_t> seen(dfa.num_states, 0);
    std::vector<int> out;
    if (dfa.num_states == 0) return out;
    seen[0] = 1;
    out.push_back(0);
    if (order == Traversal::Bfs) {
        std::deque<int> queue{0};
        while (!queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            for (int l = 0; l < L; ++l) {
                int t = dfa.next(s, l);
                if (!seen[t]) {
                    seen[t] = 1;
                    out.push_back(t);  // numbered at enqueue time
                    queue.push_back(t);
                }
            }
        }
    } else {
        std::vector<std::pair<int, int>> stack{{0, 0}};
        while (!stack.empty()) {
            auto& [s, l] = stack.back();
            if (l == L) {
                stack.pop_back();
                continue;
            }
            int t = dfa.next(s, l++);
            if (!seen[t]) {
                seen[t] = 1;
                out.push_back(t);
                stack.push_back({t, 0});
            }
        }
    }
    return out;
}

}  // namespace

bool all_states_reachable(const Dfa& dfa) {
    return static_cast<int>(discovery_order(dfa, Traversal::Bfs).size()) == dfa.num_states;
}

bool is_canonical(const Dfa& dfa, Traversal order) {
    std::vector<int> visit = discovery_order(dfa, order);
    if (static_cast<int>(visit.size()) != dfa.num_states) return false;
    for (int k = 0; k < dfa.num_states; ++k)
        if (visit[k] != k) return false;
    return true;
}

Dfa canonicalize(const Dfa& dfa, Traversal order) {
    std::vector<int> visit = discovery_order(dfa, order);
    if (static_cast<int>(visit.size()) != dfa.num_states)
        throw InputError("cannot canonicalize: unreachable state");
    std::vector<int> new_id(dfa.num_states);
    for (int k = 0; k < dfa.num_states; ++k) new_id[visit[k]] = k;
    Dfa out;
    out.num_states = dfa.num_states;
    out.alphabet = dfa.alphabet;
    out.transitions.resize(dfa.transitions.size());
    out.accepting.resize(dfa.num_states);
    for (int s = 0; s < dfa.num_states; ++s) {
        out.accepting[new_id[s]] = dfa.accepting[s];
        for (int l = 0; l < dfa.alphabet_size(); ++l)
            out.next(new_id[s], l) = new_id[dfa.next(s, l)];
    }
    return out;
}

namespace {

// Bijection search over states untouched by the lockstep walk (only relevant
// when both machines have unreachable states).
bool match_residual(const Dfa& a, const Dfa& b, std::vector<int>& map_ab,
                    std::vector<int>& map_ba, const std::vector<int>& rest_a, size_t pos) {
    if (pos == rest_a.size()) return true;
    int sa = rest_a[pos];
    for (int sb = 0; sb < b.num_states; ++sb) {
        if (map_ba[sb] >= 0 || a.accepting[sa] != b.accepting[sb]) continue;
        bool ok = true;
        for (int l = 0; l < a.alphabet_size() && ok; ++l) {
            int ta = a.next(sa, l), tb = b.next(sb, l);
            if (map_ab[ta] >= 0 && map_ab[ta] != tb) ok = false;
            if (map_ab[ta] < 0 && map_ba[tb] >= 0) ok = false;
        }
        if (!ok) continue;
        map_ab[sa] = sb;
        map_ba[sb] = sa;
        // transitions into sa/sb from already-mapped states
        for (int s = 0; s < a.num_states && ok; ++s) {
            if (map_ab[s] < 0) continue;
            for (int l = 0; l < a.alphabet_size() && ok; ++l) {
                int ta = a.next(s, l), tb = b.next(map_ab[s], l);
                if (map_ab[ta] >= 0 && map_ab[ta] != tb) ok = false;
            }
        }
        if (ok && match_residual(a, b, map_ab, map_ba, rest_a, pos + 1)) return true;
        map_ab[sa] = -1;
        map_ba[sb] = -1;
    }
    return false;
}

}  // namespace

bool isomorphic(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet || a.num_states != b.num_states) return false;
    if (a.num_states == 0) return true;
    const int L = a.alphabet_size();
    std::vector<int> map_ab(a.num_states, -1), map_ba(b.num_states, -1);
    std::deque<int> queue;
    // The bijection is forced on the reachable part: start maps to start and
    // transitions propagate the correspondence.
    map_ab[0] = 0;
    map_ba[0] = 0;
    if (a.accepting[0] != b.accepting[0]) return false;
    queue.push_back(0);
    int mapped = 1;
    while (!queue.empty()) {
        int sa = queue.front();
        queue.pop_front();
        int sb = map_ab[sa];
        for (int l = 0; l < L; ++l) {
            int ta = a.next(sa, l), tb = b.next(sb, l);
            if (map_ab[ta] >= 0) {
                if (map_ab[ta] != tb) return false;
            } else {
                if (map_ba[tb] >= 0) return false;
                if (a.accepting[ta] != b.accepting[tb]) return false;
                map_ab[ta] = tb;
                map_ba[tb] = ta;
                ++mapped;
                queue.push_back(ta);
            }
        }
    }
    if (mapped == a.num_states) return true;
    std::vector<int> rest;
    for (int s = 0; s < a.num_states; ++s)
        if (map_ab[s] < 0) rest.push_back(s);
    return match_residual(a, b, map_ab, map_ba, rest, 0);
}

}  // namespace dfainduct
