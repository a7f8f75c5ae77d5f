// Closed-form clause-count oracles, derived independently from the clause
// family ranges. Shared by the encoder unit tests and the acceptance suite.
#pragma once

#include <map>
#include <string>

#include "dfainduct/apta.hpp"
#include "dfainduct/encoding.hpp"

namespace testing_oracles {

using dfainduct::Apta;
using dfainduct::SbpStrategy;

inline std::map<std::string, long> exact_count_oracle(const Apta& apta, long edges, long C) {
    const long V = apta.size();
    const long Vp = apta.num_accepting();
    const long Vm = apta.num_rejecting();
    const long L = apta.alphabet_size();
    return {
        {"root_color", 1},
        {"accepting_def", Vp * C},
        {"rejecting_def", Vm * C},
        {"node_has_color", V},
        {"transition_set", (V - 1) * C * C},
        {"transition_at_most_one", L * C * C * (C - 1) / 2},
        {"node_color_at_most_one", V * C * (C - 1) / 2},
        {"transition_at_least_one", L * C},
        {"color_propagate", (V - 1) * C * C},
        {"conflict_distinct", edges * C},
    };
}

inline std::map<std::string, long> sbp_count_oracle(long C, long L, SbpStrategy strategy) {
    const long P = C * (C - 1) / 2;
    const long T = C * (C - 1) * (C - 2) / 6;
    std::map<std::string, long> counts = {
        {"link_def", P},
        {"transition_implies_link", L * P},
        {"parent_implies_link", P},
        {"parent_exists", C - 1},
        {"parent_def", P},
    };
    if (L >= 3) {
        counts["minsym_implies_transition"] = L * P;
        counts["minsym_excludes_smaller"] = P * L * (L - 1) / 2;
        counts["minsym_def"] = L * P;
    }
    if (strategy == SbpStrategy::Dfs) {
        counts["dfs_parent_max"] = T;
        counts["dfs_order"] = C * (C - 1) * (C - 2) * (C - 3) / 24;
        counts["dfs_sibling_order"] = L == 2 ? T : (L >= 3 ? T * L * (L - 1) / 2 : 0);
        counts["dfs_forward_order"] = L >= 2 ? T * L * (L - 1) / 2 : 0;
    } else {
        counts["bfs_parent_min"] = T;
        counts["bfs_order"] = (C - 1) * (C - 2) * (C - 3) / 6;
        counts["bfs_sibling_order"] =
            L == 2 ? (C - 1) * (C - 2) / 2 : (L >= 3 ? (C - 1) * (C - 2) / 2 * L * (L - 1) / 2 : 0);
    }
    for (auto it = counts.begin(); it != counts.end();)
        it = it->second == 0 ? counts.erase(it) : std::next(it);
    return counts;
}

inline std::map<std::string, long> noisy_extra_count_oracle(const Apta& apta, long C, long K) {
    const long W = apta.num_labeled();
    std::map<std::string, long> counts = {
        {"flip_accepting_def", apta.num_accepting() * C},
        {"flip_rejecting_def", apta.num_rejecting() * C},
        {"flip_implies_slot", W},
        {"slot_implies_flip", K * W},
        {"slot_implies_order", K * W},
        {"slot_step_upper", K * (W - 1)},
        {"slot_step_def", K * (W - 1)},
        {"slot_last", 1},
        {"order_monotone", K * (W - 1)},
        {"order_increase", (K - 1) * (W - 1)},
    };
    for (auto it = counts.begin(); it != counts.end();)
        it = it->second == 0 ? counts.erase(it) : std::next(it);
    return counts;
}

}  // namespace testing_oracles
