#include "dfainduct/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "dfainduct/consistency_graph.hpp"
#include "dfainduct/error.hpp"

namespace dfainduct {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct BuiltEncoding {
    std::unique_ptr<EncodingBase> enc;
    ExactEncoding* exact = nullptr;
    NoisyEncoding* noisy = nullptr;
};

BuiltEncoding build_encoding(const Apta& apta, const ConsistencyGraph* cg, int size,
                             const SearchConfig& config) {
    BuiltEncoding out;
    if (config.noisy) {
        auto enc = std::make_unique<NoisyEncoding>(
            encode_noisy(apta, size, config.flip_budget, config.strategy));
        out.noisy = enc.get();
        out.enc = std::move(enc);
    } else {
        EncodeOptions options;
        options.clique_fixing = config.strategy == SbpStrategy::Clique;
        auto enc = std::make_unique<ExactEncoding>(encode_exact(apta, *cg, size, options));
        encode_sbp(*enc, config.strategy);
        out.exact = enc.get();
        out.enc = std::move(enc);
    }
    return out;
}

}  // namespace

FindResult find_min_dfa(const Sample& sample, const SearchConfig& config) {
    if (config.min_size < 1 || config.min_size > config.max_size)
        throw ParameterError("need 1 <= min_size <= max_size");
    double start = now_seconds();
    FindResult result;

    Apta apta = build_apta(sample);
    ConsistencyGraph cg;
    int first_size = config.min_size;
    if (!config.noisy) {
        cg = build_cg(apta);
        std::vector<int> clique = find_greedy_clique(apta, cg);
        result.clique_lower_bound = static_cast<int>(clique.size());
        if (config.strategy == SbpStrategy::Clique) {
            // the clique whose colors get fixed is grown around the root and
            // may come out larger than the unrestricted one; both are sound
            // lower bounds
            std::vector<int> fixing = find_greedy_clique_around(cg, apta.root());
            result.clique_lower_bound =
                std::max(result.clique_lower_bound, static_cast<int>(fixing.size()));
        }
        first_size = std::max(first_size, result.clique_lower_bound);
    }

    for (int size = first_size; size <= config.max_size; ++size) {
        BuiltEncoding built = build_encoding(apta, &cg, size, config);
        auto session = config.backend.make();
        session->add_formula(built.enc->formula);
        SolveResult solved = session->solve(config.time_limit_seconds);
        result.trace.push_back({size, solved.status, solved.elapsed_seconds,
                                built.enc->formula.num_clauses(),
                                static_cast<size_t>(built.enc->formula.num_vars())});
        if (solved.status == SolveStatus::TimedOut) {
            result.status = FindResult::Status::TimedOut;
            result.elapsed_seconds = now_seconds() - start;
            return result;
        }
        if (solved.status == SolveStatus::Sat) {
            Dfa dfa = decode_model(*built.enc, solved.model);
            int budget = config.noisy ? config.flip_budget : 0;
            if (!consistent(dfa, sample, budget))
                throw ModelError("decoded automaton disagrees with the sample beyond budget");
            if (built.noisy)
                for (int node : decode_flips(*built.noisy, solved.model))
                    result.flipped.push_back(apta.prefix_of(node));
            result.status = FindResult::Status::Found;
            result.dfa = std::move(dfa);
            result.elapsed_seconds = now_seconds() - start;
            return result;
        }
    }
    result.status = FindResult::Status::NotFound;
    result.elapsed_seconds = now_seconds() - start;
    return result;
}

FindAllResult find_all(const Sample& sample, int num_states, const FindAllConfig& config) {
    double start = now_seconds();
    FindAllResult result;

    Apta apta = build_apta(sample);
    ConsistencyGraph cg = build_cg(apta);
    EncodeOptions options;
    options.clique_fixing = config.sbp == SbpStrategy::Clique;
    ExactEncoding enc = encode_exact(apta, cg, num_states, options);
    encode_sbp(enc, config.sbp);
    encode_loop_forcing(enc);

    std::vector<std::vector<int>> bans;
    std::unique_ptr<SolverSession> session;
    if (config.method == FindAllMethod::Incremental) {
        session = config.backend.make();
        session->add_formula(enc.formula);
    }

    for (;;) {
        double left = config.time_limit_seconds - (now_seconds() - start);
        if (left <= 0) {
            result.complete = false;
            break;
        }
        if (config.method == FindAllMethod::Restart) {
            session = config.backend.make();
            session->add_formula(enc.formula);
            for (const auto& ban : bans) session->add_clause(ban);
        }
        SolveResult solved = session->solve(left);
        ++result.solver_calls;
        if (solved.status == SolveStatus::TimedOut) {
            result.complete = false;
            break;
        }
        if (solved.status == SolveStatus::Unsat) break;
        Dfa dfa = decode_model(enc, solved.model);
        if (!consistent(dfa, sample, 0))
            throw ModelError("decoded automaton disagrees with the sample");
        std::vector<int> ban = blocking_clause(enc, dfa);
        result.dfas.push_back(std::move(dfa));
        if (config.method == FindAllMethod::Incremental)
            session->add_clause(ban);
        else
            bans.push_back(std::move(ban));
    }
    result.elapsed_seconds = now_seconds() - start;
    return result;
}

// ---- backtracking baseline ----

namespace {

struct BacktrackState {
    std::vector<int> transitions;  // state * L + symbol -> state or -1
    std::vector<uint8_t> has_accepting, has_rejecting;  // per state
    Frontier frontier;
    int num_used = 1;  // states 0..num_used-1 are in use
};

// Maps a node onto a state and cascades through transitions that are already
// defined. Returns false on an accepting/rejecting clash.
bool assign_node(const Apta& apta, BacktrackState& st, int node, int state, int L) {
    std::vector<std::pair<int, int>> queue{{node, state}};
    while (!queue.empty()) {
        auto [v, q] = queue.back();
        queue.pop_back();
        if (st.frontier.node_state[v] >= 0) {
            if (st.frontier.node_state[v] != q) return false;  // cannot happen: map is functional
            continue;
        }
        if (apta.label(v) == NodeLabel::Accepting) {
            if (st.has_rejecting[q]) return false;
            st.has_accepting[q] = 1;
        } else if (apta.label(v) == NodeLabel::Rejecting) {
            if (st.has_accepting[q]) return false;
            st.has_rejecting[q] = 1;
        }
        st.frontier.node_state[v] = q;
        for (int l = 0; l < L; ++l) {
            int child = apta.child(v, l);
            if (child < 0) continue;
            int target = st.transitions[q * L + l];
            if (target >= 0)
                queue.push_back({child, target});
            else
                st.frontier.edges.push_back({v, l});
        }
    }
    return true;
}

void search_backtracking(const Apta& apta, int num_states, BacktrackState st,
                         std::vector<Dfa>& out) {
    const int L = apta.alphabet_size();
    // drop frontier edges whose transition got defined by a cascade
    std::vector<std::pair<int, int>> pending;
    for (auto [v, l] : st.frontier.edges) {
        int q = st.frontier.node_state[v];
        if (st.transitions[q * L + l] < 0) pending.push_back({v, l});
    }
    st.frontier.edges = std::move(pending);

    if (st.frontier.edges.empty()) {
        Dfa dfa;
        dfa.num_states = num_states;
        dfa.alphabet = apta.alphabet();
        dfa.accepting.resize(num_states);
        dfa.transitions = st.transitions;
        for (int q = 0; q < num_states; ++q) {
            dfa.accepting[q] = st.has_accepting[q];
            for (int l = 0; l < L; ++l)
                if (dfa.next(q, l) < 0) dfa.next(q, l) = q;  // complete as self-loops
        }
        out.push_back(std::move(dfa));
        return;
    }

    auto edge = *std::min_element(st.frontier.edges.begin(), st.frontier.edges.end());
    int source_state = st.frontier.node_state[edge.first];
    int symbol = edge.second;
    // destinations beyond the first unused state only produce renumberings
    int max_dest = std::min(num_states - 1, st.num_used);
    for (int dest = 0; dest <= max_dest; ++dest) {
        BacktrackState branch = st;
        branch.num_used = std::max(branch.num_used, dest + 1);
        branch.transitions[source_state * L + symbol] = dest;
        // the transition also maps every same-state sibling's child
        bool ok = true;
        for (int v = 0; v < apta.size() && ok; ++v) {
            if (branch.frontier.node_state[v] != source_state) continue;
            int c = apta.child(v, symbol);
            if (c >= 0) ok = assign_node(apta, branch, c, dest, L);
        }
        if (ok) search_backtracking(apta, num_states, std::move(branch), out);
    }
}

// BFS renumbering of the reachable part only; idle tail states of equal count
// are interchangeable, so this is a sound isomorphism key.
std::pair<std::vector<int>, std::vector<uint8_t>> reachable_key(const Dfa& dfa) {
    const int L = dfa.alphabet_size();
    std::vector<int> order{0};
    std::vector<int> new_id(dfa.num_states, -1);
    new_id[0] = 0;
    for (size_t head = 0; head < order.size(); ++head)
        for (int l = 0; l < L; ++l) {
            int t = dfa.next(order[head], l);
            if (new_id[t] < 0) {
                new_id[t] = static_cast<int>(order.size());
                order.push_back(t);
            }
        }
    std::vector<int> transitions(order.size() * L);
    std::vector<uint8_t> accepting(order.size());
    for (size_t k = 0; k < order.size(); ++k) {
        accepting[k] = dfa.accepting[order[k]];
        for (int l = 0; l < L; ++l) transitions[k * L + l] = new_id[dfa.next(order[k], l)];
    }
    return {std::move(transitions), std::move(accepting)};
}

}  // namespace

std::vector<Dfa> backtracking_find_all(const Apta& apta, int num_states) {
    if (num_states < 1) throw ParameterError("state budget must be at least 1");
    BacktrackState st;
    const int L = apta.alphabet_size();
    st.transitions.assign(static_cast<size_t>(num_states) * L, -1);
    st.has_accepting.assign(num_states, 0);
    st.has_rejecting.assign(num_states, 0);
    st.frontier.node_state.assign(apta.size(), -1);
    std::vector<Dfa> found;
    if (!assign_node(apta, st, apta.root(), 0, L)) return found;
    search_backtracking(apta, num_states, std::move(st), found);

    // dedup up to isomorphism; idle states (never mapped) are interchangeable
    std::vector<Dfa> unique;
    std::set<std::pair<std::vector<int>, std::vector<uint8_t>>> keys;
    for (const Dfa& dfa : found)
        if (keys.insert(reachable_key(dfa)).second) unique.push_back(dfa);
    return unique;
}

// ---- exhaustive oracles ----

const std::vector<std::vector<int>>& canonical_transition_structures(int alphabet_size,
                                                                     int num_states) {
    if (num_states < 1 || num_states > 5 || alphabet_size < 1 || alphabet_size > 2)
        throw GuardError("exhaustive enumeration is guarded to C <= 5, L <= 2");
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(alphabet_size, num_states);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int C = num_states, L = alphabet_size;
    const int cells = C * L;
    std::vector<std::vector<int>> structures;
    std::vector<int> table(cells, 0);
    std::vector<int> order, new_id;
    for (;;) {
        // reachability and BFS-enumeration in one pass
        order.assign(1, 0);
        new_id.assign(C, -1);
        new_id[0] = 0;
        bool canonical = true;
        for (size_t head = 0; head < order.size() && canonical; ++head)
            for (int l = 0; l < L; ++l) {
                int t = table[order[head] * L + l];
                if (new_id[t] < 0) {
                    new_id[t] = static_cast<int>(order.size());
                    if (new_id[t] != t) {
                        canonical = false;
                        break;
                    }
                    order.push_back(t);
                }
            }
        if (canonical && static_cast<int>(order.size()) == C) structures.push_back(table);
        int cell = cells - 1;
        while (cell >= 0 && table[cell] == C - 1) table[cell--] = 0;
        if (cell < 0) break;
        ++table[cell];
    }
    return cache.emplace(key, std::move(structures)).first->second;
}

void brute_force_enumerate(const std::vector<std::string>& alphabet, int num_states,
                           const std::function<void(const Dfa&)>& yield) {
    const auto& structures =
        canonical_transition_structures(static_cast<int>(alphabet.size()), num_states);
    Dfa dfa;
    dfa.num_states = num_states;
    dfa.alphabet = alphabet;
    dfa.accepting.assign(num_states, 0);
    for (const auto& table : structures) {
        dfa.transitions = table;
        for (uint32_t mask = 0; mask < (1u << num_states); ++mask) {
            for (int s = 0; s < num_states; ++s) dfa.accepting[s] = (mask >> s) & 1;
            yield(dfa);
        }
    }
}

namespace {

// Minimal misclassification count achievable with the best labeling of one
// transition structure: per state, the cheaper side of the strings ending
// there loses.
int best_labeling_errors(const std::vector<int>& table, int num_states, int alphabet_size,
                         const Sample& sample) {
    std::vector<int> pos(num_states, 0), neg(num_states, 0);
    auto trace = [&](const Word& w) {
        int s = 0;
        for (int sym : w) s = table[s * alphabet_size + sym];
        return s;
    };
    for (const Word& w : sample.positives()) pos[trace(w)] += 1;
    for (const Word& w : sample.negatives()) neg[trace(w)] += 1;
    int errors = 0;
    for (int s = 0; s < num_states; ++s) errors += std::min(pos[s], neg[s]);
    return errors;
}

}  // namespace

bool exists_consistent_dfa(const Sample& sample, int num_states, int max_flips) {
    const auto& structures =
        canonical_transition_structures(sample.alphabet_size(), num_states);
    for (const auto& table : structures)
        if (best_labeling_errors(table, num_states, sample.alphabet_size(), sample) <= max_flips)
            return true;
    return false;
}

int min_dfa_size_oracle(const Sample& sample, int max_flips) {
    for (int size = 1; size <= 5; ++size)
        if (exists_consistent_dfa(sample, size, max_flips)) return size;
    throw GuardError("minimal size exceeds the exhaustive oracle guard of 5 states");
}

std::vector<Dfa> project_models_to_dfas(const Apta& apta, int num_states, SbpStrategy strategy,
                                        bool loop_forcing, const BackendConfig& backend) {
    if (num_states > 3 || apta.size() > 10)
        throw GuardError("model projection is guarded to C <= 3 and 10 APTA nodes");
    ConsistencyGraph cg = build_cg(apta);
    EncodeOptions options;
    options.clique_fixing = strategy == SbpStrategy::Clique;
    ExactEncoding enc = encode_exact(apta, cg, num_states, options);
    encode_sbp(enc, strategy);
    if (loop_forcing) encode_loop_forcing(enc);

    auto session = backend.make();
    session->add_formula(enc.formula);
    std::vector<Dfa> dfas;
    for (;;) {
        SolveResult solved = session->solve(120.0);
        if (solved.status == SolveStatus::TimedOut)
            throw GuardError("model projection timed out");
        if (solved.status == SolveStatus::Unsat) break;
        Dfa dfa = decode_model(enc, solved.model);
        bool fresh = true;
        for (const Dfa& seen : dfas)
            if (seen == dfa) fresh = false;
        if (fresh) dfas.push_back(dfa);
        // ban this decoded automaton: its transition table plus accepting flags
        std::vector<int> ban = blocking_clause(enc, dfa);
        for (int s = 0; s < num_states; ++s)
            ban.push_back(dfa.accepting[s] ? -enc.accepting_var(s) : enc.accepting_var(s));
        session->add_clause(ban);
        if (dfas.size() > 4096) throw GuardError("model projection exploded");
    }
    return dfas;
}

}  // namespace dfainduct
