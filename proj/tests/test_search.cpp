#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dfainduct/datagen.hpp"
#include "dfainduct/error.hpp"
#include "dfainduct/search.hpp"
#include "helpers.hpp"

using namespace dfainduct;
using namespace testing_oracles;

namespace {

std::set<std::pair<std::vector<int>, std::vector<uint8_t>>> canonical_set(
    const std::vector<Dfa>& dfas) {
    std::set<std::pair<std::vector<int>, std::vector<uint8_t>>> keys;
    for (const Dfa& dfa : dfas) {
        Dfa c = all_states_reachable(dfa) ? canonicalize(dfa, Traversal::Bfs) : dfa;
        keys.insert({c.transitions, c.accepting});
    }
    return keys;
}

}  // namespace

TEST_CASE("brute-force enumeration counts") {
    SUBCASE("one state, two symbols: one structure, two labelings") {
        CHECK(canonical_transition_structures(2, 1).size() == 1);
        int count = 0;
        brute_force_enumerate({"a", "b"}, 1, [&](const Dfa&) { ++count; });
        CHECK(count == 2);
    }
    SUBCASE("two states, two symbols: 12 reachable structures") {
        CHECK(canonical_transition_structures(2, 2).size() == 12);
        int count = 0;
        brute_force_enumerate({"a", "b"}, 2, [&](const Dfa&) { ++count; });
        CHECK(count == 12 * 4);
    }
    SUBCASE("every emitted machine is canonical and no two are isomorphic") {
        std::vector<Dfa> all;
        brute_force_enumerate({"a", "b"}, 3, [&](const Dfa& d) { all.push_back(d); });
        std::set<std::pair<std::vector<int>, std::vector<uint8_t>>> keys;
        for (const Dfa& d : all) {
            CHECK(is_canonical(d, Traversal::Bfs));
            CHECK(keys.insert({d.transitions, d.accepting}).second);
        }
        // canonical forms are unique per class, so distinctness means
        // pairwise non-isomorphic
    }
    SUBCASE("guard refuses six states") {
        CHECK_THROWS_AS(canonical_transition_structures(2, 6), GuardError);
        CHECK_THROWS_AS(canonical_transition_structures(3, 3), GuardError);
    }
}

TEST_CASE("size oracle") {
    CHECK(min_dfa_size_oracle(example_sample()) == 3);
    CHECK(min_dfa_size_oracle(Sample::from_chars("ab", {}, {})) == 1);
    // known machine: multiples of 3 'a's (3 states), sampled densely
    Dfa mod3 = Dfa::uniform(3, {"a", "b"});
    mod3.next(0, 0) = 1;
    mod3.next(1, 0) = 2;
    mod3.next(2, 0) = 0;
    mod3.next(0, 1) = 0;
    mod3.next(1, 1) = 1;
    mod3.next(2, 1) = 2;
    mod3.accepting = {1, 0, 0};
    Sample dense(mod3.alphabet);
    Rng rng(71);
    for (int i = 0; i < 60; ++i) {
        Word w(rng.below_int(7));
        for (int& s : w) s = rng.below_int(2);
        if (!dense.contains(w, accepts(mod3, w)) && !dense.contains(w, !accepts(mod3, w)))
            dense.add(w, accepts(mod3, w));
    }
    CHECK(min_dfa_size_oracle(dense) == 3);
}

TEST_CASE("find_min_dfa matches the oracle for every strategy") {
    Rng rng(73);
    int verified = 0;
    for (int round = 0; round < 40; ++round) {
        Sample sample = random_sample(rng, 2, 7, 5, 10);
        int expected = min_dfa_size_oracle(sample);
        for (SbpStrategy strategy : {SbpStrategy::None, SbpStrategy::Clique, SbpStrategy::Dfs,
                                     SbpStrategy::Bfs}) {
            SearchConfig config;
            config.strategy = strategy;
            config.max_size = 6;
            FindResult result = find_min_dfa(sample, config);
            REQUIRE(result.status == FindResult::Status::Found);
            CHECK(result.dfa->num_states == expected);
            CHECK(consistent(*result.dfa, sample, 0));
        }
        ++verified;
    }
    CHECK(verified == 40);
}

TEST_CASE("find_min_dfa on the running example") {
    Sample sample = example_sample();
    SearchConfig config;
    config.strategy = SbpStrategy::Bfs;
    FindResult result = find_min_dfa(sample, config);
    REQUIRE(result.status == FindResult::Status::Found);
    CHECK(result.dfa->num_states == min_dfa_size_oracle(sample));
    CHECK(is_canonical(*result.dfa, Traversal::Bfs));
    CHECK(result.clique_lower_bound >= 2);
}

TEST_CASE("renumbering the smallest machine of the running example breaks canonicity") {
    // the minimal machine with states 2 and 3 swapped sends a to state 3
    // first, so neither traversal enumerates it
    Sample sample = example_sample();
    SearchConfig config;
    config.strategy = SbpStrategy::Bfs;
    FindResult result = find_min_dfa(sample, config);
    REQUIRE(result.status == FindResult::Status::Found);
    REQUIRE(result.dfa->num_states == 3);
    Dfa canon = *result.dfa;

    Dfa swapped = canon;
    auto sw = [](int s) { return s == 1 ? 2 : (s == 2 ? 1 : 0); };
    for (int q = 0; q < 3; ++q)
        for (int l = 0; l < 2; ++l) swapped.next(sw(q), l) = sw(canon.next(q, l));
    swapped.accepting[1] = canon.accepting[2];
    swapped.accepting[2] = canon.accepting[1];

    CHECK(isomorphic(canon, swapped));
    CHECK(consistent(swapped, sample, 0));
    CHECK(accepts(swapped, to_word(sample, "b")));
    CHECK_FALSE(is_canonical(swapped, Traversal::Bfs));
    CHECK_FALSE(is_canonical(swapped, Traversal::Dfs));
    CHECK(canonicalize(swapped, Traversal::Bfs) == canon);
}

TEST_CASE("find_min_dfa trivial and failure modes") {
    SearchConfig config;
    SUBCASE("empty sample yields one state") {
        FindResult r = find_min_dfa(Sample::from_chars("ab", {}, {}), config);
        REQUIRE(r.status == FindResult::Status::Found);
        CHECK(r.dfa->num_states == 1);
    }
    SUBCASE("budget too small reports NotFound") {
        config.min_size = 1;
        config.max_size = 1;
        config.strategy = SbpStrategy::None;
        FindResult r = find_min_dfa(Sample::from_chars("ab", {"a"}, {"b"}), config);
        CHECK(r.status == FindResult::Status::NotFound);
    }
    SUBCASE("bad bounds are rejected") {
        config.min_size = 3;
        config.max_size = 2;
        CHECK_THROWS_AS(find_min_dfa(example_sample(), config), ParameterError);
    }
}

TEST_CASE("noisy search: budget equal to distance succeeds, one less fails") {
    // sample from a 5-state machine with 2 labels flipped
    GenConfig gen;
    gen.num_states = 4;
    gen.alphabet_size = 2;
    gen.num_strings = 60;
    for (uint64_t seed = 3;; ++seed) {
        gen.seed = seed;
        Dfa target = generate_target(gen);
        Sample clean = sample_strings(target, gen.num_strings, seed ^ 0x5eed);
        if (min_dfa_size_oracle(clean) != 4) continue;
        FlipResult noisy = flip_labels(clean, 3, seed);  // 3% of 60 -> 2 flips
        REQUIRE(noisy.flipped.size() == 2);
        // oracle-confirmed necessity of both flips at sizes up to 4
        bool needs_both = true;
        for (int size = 1; size <= 4; ++size)
            needs_both = needs_both && !exists_consistent_dfa(noisy.sample, size, 1);
        if (!needs_both) continue;

        SearchConfig config;
        config.noisy = true;
        config.flip_budget = 2;
        config.strategy = SbpStrategy::Bfs;
        config.max_size = 4;
        FindResult with_budget = find_min_dfa(noisy.sample, config);
        REQUIRE(with_budget.status == FindResult::Status::Found);
        CHECK(with_budget.dfa->num_states <= 4);
        CHECK(consistent(*with_budget.dfa, noisy.sample, 2));
        CHECK(with_budget.flipped.size() <= 2);

        config.flip_budget = 1;
        FindResult short_budget = find_min_dfa(noisy.sample, config);
        CHECK(short_budget.status == FindResult::Status::NotFound);
        break;
    }
}

TEST_CASE("noisy minimal size agrees with the oracle, with and without SBP") {
    Rng rng(79);
    int verified = 0;
    for (int round = 0; round < 25 || verified < 12; ++round) {
        REQUIRE(round < 200);
        Sample sample = random_sample(rng, 2, 6, 4, 10);
        if (sample.size() < 2) continue;
        int budget = 1 + rng.below_int(std::min(2, sample.size()));
        int expected;
        try {
            expected = min_dfa_size_oracle(sample, budget);
        } catch (const GuardError&) {
            continue;
        }
        for (SbpStrategy strategy : {SbpStrategy::None, SbpStrategy::Bfs}) {
            SearchConfig config;
            config.noisy = true;
            config.flip_budget = budget;
            config.strategy = strategy;
            config.max_size = 5;
            FindResult r = find_min_dfa(sample, config);
            REQUIRE(r.status == FindResult::Status::Found);
            CHECK(r.dfa->num_states == expected);
        }
        ++verified;
    }
}

TEST_CASE("find_all: restart and incremental agree and match backtracking") {
    Rng rng(83);
    int verified = 0;
    for (int round = 0; round < 30; ++round) {
        Sample sample = random_sample(rng, 2, 6, 5, 14);
        int minimum = min_dfa_size_oracle(sample);
        if (minimum > 4) continue;
        ++verified;

        FindAllConfig config;
        config.sbp = SbpStrategy::Bfs;
        config.method = FindAllMethod::Incremental;
        FindAllResult inc = find_all(sample, minimum, config);
        REQUIRE(inc.complete);
        config.method = FindAllMethod::Restart;
        FindAllResult rest = find_all(sample, minimum, config);
        REQUIRE(rest.complete);

        Apta apta = build_apta(sample);
        std::vector<Dfa> btr = backtracking_find_all(apta, minimum);

        CHECK(canonical_set(inc.dfas) == canonical_set(rest.dfas));
        CHECK(canonical_set(inc.dfas) == canonical_set(btr));
        CHECK(inc.dfas.size() == rest.dfas.size());
        CHECK(inc.dfas.size() == btr.size());

        // with BFS SBP the decoded set is canonical and duplicate-free
        std::set<std::pair<std::vector<int>, std::vector<uint8_t>>> seen;
        for (const Dfa& dfa : inc.dfas) {
            CHECK(is_canonical(dfa, Traversal::Bfs));
            CHECK(consistent(dfa, sample, 0));
            CHECK(seen.insert({dfa.transitions, dfa.accepting}).second);
        }
        // DFS strategy enumerates the same machines up to isomorphism
        config.method = FindAllMethod::Incremental;
        config.sbp = SbpStrategy::Dfs;
        FindAllResult dfs = find_all(sample, minimum, config);
        REQUIRE(dfs.complete);
        CHECK(canonical_set(dfs.dfas) == canonical_set(inc.dfas));
    }
    CHECK(verified >= 15);
}

TEST_CASE("find_all edge cases") {
    SUBCASE("unsatisfiable size gives the empty set") {
        FindAllConfig config;
        FindAllResult r = find_all(example_sample(), 2, config);
        CHECK(r.complete);
        CHECK(r.dfas.empty());
    }
    SUBCASE("unique machine gives a singleton") {
        // strings that pin down the parity machine on 'a'
        Sample sample = Sample::from_chars("ab", {"", "aa", "b"}, {"a", "ab", "ba"});
        int minimum = min_dfa_size_oracle(sample);
        FindAllConfig config;
        FindAllResult r = find_all(sample, minimum, config);
        REQUIRE(r.complete);
        Apta apta = build_apta(sample);
        CHECK(r.dfas.size() == backtracking_find_all(apta, minimum).size());
    }
}

TEST_CASE("backtracking corner cases") {
    SUBCASE("contradictory one-state instance") {
        Apta apta = build_apta(Sample::from_chars("ab", {"a"}, {"b"}));
        CHECK(backtracking_find_all(apta, 1).empty());
    }
    SUBCASE("single unlabeled root at C = 1: one all-loop machine") {
        Apta apta = build_apta(Sample::from_chars("ab", {}, {}));
        std::vector<Dfa> all = backtracking_find_all(apta, 1);
        REQUIRE(all.size() == 1);
        CHECK(all[0].next(0, 0) == 0);
        CHECK(all[0].next(0, 1) == 0);
    }
}

TEST_CASE("timeout surfaces partial enumeration results") {
    Sample sample = example_sample_without_baba();
    int minimum = min_dfa_size_oracle(sample);
    FindAllConfig config;
    config.time_limit_seconds = 0.0;  // expire immediately
    FindAllResult r = find_all(sample, minimum, config);
    CHECK_FALSE(r.complete);
}

TEST_CASE("project_models_to_dfas guard") {
    Apta big = build_apta(Sample::from_chars("ab", {"aaaa", "bbbb", "abab"}, {"ba"}));
    CHECK(big.size() > 10);
    CHECK_THROWS_AS(project_models_to_dfas(big, 2, SbpStrategy::None), GuardError);
    Apta small = build_apta(Sample::from_chars("ab", {"a"}, {}));
    CHECK_THROWS_AS(project_models_to_dfas(small, 4, SbpStrategy::None), GuardError);
}
