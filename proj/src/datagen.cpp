#include "dfainduct/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "dfainduct/error.hpp"
#include "dfainduct/rng.hpp"

namespace dfainduct {

namespace {

std::vector<std::string> numeric_alphabet(int size) {
    std::vector<std::string> names;
    for (int i = 0; i < size; ++i) names.push_back(std::to_string(i));
    return names;
}

// Partition refinement: true iff no two states accept the same language.
bool pairwise_distinguishable(const Dfa& dfa) {
    const int C = dfa.num_states, L = dfa.alphabet_size();
    std::vector<int> cls(C);
    for (int s = 0; s < C; ++s) cls[s] = dfa.accepting[s] ? 1 : 0;
    for (;;) {
        std::map<std::vector<int>, int> signatures;
        std::vector<int> next(C);
        for (int s = 0; s < C; ++s) {
            std::vector<int> sig{cls[s]};
            for (int l = 0; l < L; ++l) sig.push_back(cls[dfa.next(s, l)]);
            auto [it, fresh] = signatures.emplace(sig, static_cast<int>(signatures.size()));
            next[s] = it->second;
        }
        if (next == cls) break;
        cls = std::move(next);
    }
    std::set<int> distinct(cls.begin(), cls.end());
    return static_cast<int>(distinct.size()) == C;
}

}  // namespace

Dfa generate_target(const GenConfig& config) {
    if (config.num_states < 1 || config.alphabet_size < 1)
        throw ParameterError("target machine needs at least one state and one symbol");
    Rng rng(config.seed);
    const int C = config.num_states, L = config.alphabet_size;
    Dfa dfa;
    dfa.num_states = C;
    dfa.alphabet = numeric_alphabet(L);
    dfa.transitions.resize(static_cast<size_t>(C) * L);
    dfa.accepting.resize(C);
    constexpr int kAttemptCap = 200000;
    for (int attempt = 0; attempt < kAttemptCap; ++attempt) {
        for (auto& t : dfa.transitions) t = rng.below_int(C);
        for (auto& a : dfa.accepting) a = rng.coin();
        if (all_states_reachable(dfa) && pairwise_distinguishable(dfa)) return dfa;
    }
    throw ParameterError("no minimal reachable machine found within " +
                         std::to_string(kAttemptCap) + " attempts");
}

Sample sample_strings(const Dfa& dfa, int num_strings, uint64_t seed) {
    if (num_strings < 0) throw ParameterError("string count must be nonnegative");
    const int L = dfa.alphabet_size();
    const int max_len = 2 * dfa.num_states + 2;
    // available distinct strings up to the length bound, saturated
    double available = 0;
    for (int len = 0; len <= max_len && available < 1e18; ++len)
        available += std::pow(static_cast<double>(L), len);
    if (static_cast<double>(num_strings) > available)
        throw ParameterError("requested " + std::to_string(num_strings) +
                             " distinct strings but only " + std::to_string((long)available) +
                             " exist up to length " + std::to_string(max_len));

    Rng rng(seed);
    std::set<Word> seen;
    Sample sample(dfa.alphabet);
    while (static_cast<int>(seen.size()) < num_strings) {
        int len = rng.below_int(max_len + 1);
        Word w(len);
        for (int& sym : w) sym = rng.below_int(L);
        if (!seen.insert(w).second) continue;
        sample.add(w, accepts(dfa, w));
    }
    return sample;
}

FlipResult flip_labels(const Sample& sample, int percent, uint64_t seed) {
    if (percent < 0 || percent > 100) throw ParameterError("noise percent must be in 0..100");
    const int total = sample.size();
    const int flips = (total * percent + 50) / 100;  // round half-up

    std::vector<std::pair<Word, bool>> strings;
    for (const Word& w : sample.positives()) strings.push_back({w, true});
    for (const Word& w : sample.negatives()) strings.push_back({w, false});

    Rng rng(seed);
    std::vector<int> chosen = rng.pick_distinct(total, flips);
    std::vector<uint8_t> flip(total, 0);
    for (int idx : chosen) flip[idx] = 1;

    FlipResult result;
    result.sample = Sample(sample.alphabet());
    for (int i = 0; i < total; ++i) {
        bool label = strings[i].second != (flip[i] != 0);
        result.sample.add(strings[i].first, label);
        if (flip[i]) result.flipped.push_back(strings[i].first);
    }
    return result;
}

Instance generate_instance(const GenConfig& config) {
    Instance instance;
    instance.target = generate_target(config);
    Sample clean = sample_strings(instance.target, config.num_strings, config.seed ^ 0x5eedULL);
    if (config.noise_percent > 0) {
        FlipResult flipped = flip_labels(clean, config.noise_percent, config.seed ^ 0xf11bULL);
        instance.sample = std::move(flipped.sample);
        instance.flipped = std::move(flipped.flipped);
    } else {
        instance.sample = std::move(clean);
    }
    return instance;
}

}  // namespace dfainduct
