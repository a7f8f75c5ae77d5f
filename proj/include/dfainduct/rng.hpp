#pragma once

#include <cstdint>
#include <vector>

namespace dfainduct {

// SplitMix64. Used instead of <random> engines/distributions so that seeded
// output is identical across platforms and standard library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0. Rejection sampling to avoid modulo bias.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<uint64_t>(n))); }

    bool coin() { return (next_u64() & 1ULL) != 0; }

    // First k elements of a seeded Fisher-Yates shuffle of 0..n-1.
    std::vector<int> pick_distinct(int n, int k) {
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        for (int i = 0; i < k && i < n; ++i) {
            int j = i + below_int(n - i);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k < n ? k : n);
        return idx;
    }

private:
    uint64_t state_;
};

}  // namespace dfainduct
