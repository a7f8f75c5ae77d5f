#pragma once

#include <cstdint>
#include <vector>

#include "dfainduct/dfa.hpp"
#include "dfainduct/sample.hpp"

namespace dfainduct {

struct GenConfig {
    int num_states = 5;     // N: size of the target machine
    int alphabet_size = 2;  // A
    int num_strings = 0;    // S
    int noise_percent = 0;  // K
    uint64_t seed = 0;
};

// Uniformly random complete automaton, re-sampled until all states are
// reachable and no two states are equivalent (so the minimal size really is
// N). Deterministic per seed.
Dfa generate_target(const GenConfig& config);

// num_strings distinct strings labeled by the automaton, lengths uniform on
// 0..2N+2. Deterministic per seed.
Sample sample_strings(const Dfa& dfa, int num_strings, uint64_t seed);

struct FlipResult {
    Sample sample;
    std::vector<Word> flipped;  // the strings whose labels were inverted
};

// Flips the labels of exactly round(percent/100 * size) distinct strings
// (half-up rounding).
FlipResult flip_labels(const Sample& sample, int percent, uint64_t seed);

struct Instance {
    Dfa target;
    Sample sample;
    std::vector<Word> flipped;
};

// generate_target + sample_strings + flip_labels in one step, with derived
// sub-seeds, as the generator CLI and the bench harness use it.
Instance generate_instance(const GenConfig& config);

}  // namespace dfainduct
