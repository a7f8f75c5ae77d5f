#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dfainduct/datagen.hpp"
#include "dfainduct/error.hpp"
#include "dfainduct/io.hpp"
#include "dfainduct/search.hpp"
#include "helpers.hpp"

using namespace dfainduct;
using namespace testing_oracles;

TEST_CASE("generated targets are reachable, minimal and seed-deterministic") {
    GenConfig config;
    config.alphabet_size = 2;
    for (int n : {1, 3, 5, 8}) {
        config.num_states = n;
        config.seed = 42 + n;
        Dfa a = generate_target(config);
        Dfa b = generate_target(config);
        CHECK(a == b);
        CHECK(a.num_states == n);
        CHECK(all_states_reachable(a));
    }

    // minimality: a dense sample from a small target needs exactly N states
    config.num_states = 3;
    int confirmed = 0;
    for (uint64_t seed = 0; seed < 20 && confirmed < 5; ++seed) {
        config.seed = seed;
        Dfa target = generate_target(config);
        Sample sample = sample_strings(target, 80, seed);
        int minimum = min_dfa_size_oracle(sample);
        CHECK(minimum <= 3);
        if (minimum == 3) ++confirmed;
    }
    CHECK(confirmed == 5);
}

TEST_CASE("sampled strings are distinct, labeled by the machine, and stable") {
    GenConfig config;
    config.num_states = 4;
    config.alphabet_size = 2;
    config.seed = 7;
    Dfa target = generate_target(config);

    Sample sample = sample_strings(target, 100, 11);
    CHECK(sample.size() == 100);
    for (const Word& w : sample.positives()) CHECK(accepts(target, w));
    for (const Word& w : sample.negatives()) CHECK_FALSE(accepts(target, w));
    for (const Word& w : sample.positives())
        CHECK(w.size() <= static_cast<size_t>(2 * 4 + 2));

    Sample again = sample_strings(target, 100, 11);
    CHECK(write_abbadingo(sample) == write_abbadingo(again));

    CHECK(sample_strings(target, 0, 1).size() == 0);
    // more strings than exist below the length bound
    Dfa tiny = generate_target({1, 1, 0, 0, 3});
    CHECK_THROWS_AS(sample_strings(tiny, 100, 1), ParameterError);
}

TEST_CASE("flip_labels flips exactly the rounded count") {
    GenConfig config;
    config.num_states = 3;
    config.alphabet_size = 2;
    config.seed = 5;
    Dfa target = generate_target(config);
    Sample sample = sample_strings(target, 200, 5);

    SUBCASE("zero percent changes nothing") {
        FlipResult r = flip_labels(sample, 0, 9);
        CHECK(r.flipped.empty());
        CHECK(write_abbadingo(r.sample) == write_abbadingo(sample));
    }
    SUBCASE("two percent of 200 is 4 strings") {
        FlipResult r = flip_labels(sample, 2, 9);
        CHECK(r.flipped.size() == 4);
        int disagreements = misclassified_count(target, r.sample);
        CHECK(disagreements == 4);
    }
    SUBCASE("one hundred percent inverts everything") {
        FlipResult r = flip_labels(sample, 100, 9);
        CHECK(r.flipped.size() == 200);
        CHECK(misclassified_count(target, r.sample) == 200);
    }
    SUBCASE("half-up rounding") {
        Sample five(sample.alphabet());
        int added = 0;
        for (const Word& w : sample.positives()) {
            if (added == 5) break;
            five.add(w, true);
            ++added;
        }
        REQUIRE(five.size() == 5);
        CHECK(flip_labels(five, 10, 1).flipped.size() == 1);  // 0.5 rounds up
        CHECK(flip_labels(five, 9, 1).flipped.size() == 0);   // 0.45 rounds down
    }
}

TEST_CASE("dense noiseless instances solve to the true minimum") {
    // S = 50N pins the target: the found size never exceeds N, and for small
    // N it equals the exhaustive minimum
    for (int n = 4; n <= 6; ++n) {
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            GenConfig config{n, 2, 50 * n, 0, seed};
            Instance instance = generate_instance(config);
            SearchConfig search;
            search.strategy = SbpStrategy::Bfs;
            search.max_size = n;
            FindResult result = find_min_dfa(instance.sample, search);
            REQUIRE(result.status == FindResult::Status::Found);
            int found = result.dfa->num_states;
            CHECK(found <= n);
            CHECK(consistent(*result.dfa, instance.sample, 0));
            // nothing smaller fits (sizes below the answer are within the guard)
            for (int size = 1; size < found; ++size)
                CHECK_FALSE(exists_consistent_dfa(instance.sample, size));
        }
    }
}

TEST_CASE("generate_instance is reproducible end to end") {
    GenConfig config;
    config.num_states = 4;
    config.alphabet_size = 2;
    config.num_strings = 50;
    config.noise_percent = 2;
    config.seed = 77;
    Instance a = generate_instance(config);
    Instance b = generate_instance(config);
    CHECK(a.target == b.target);
    CHECK(write_abbadingo(a.sample) == write_abbadingo(b.sample));
    CHECK(a.flipped == b.flipped);
    CHECK(a.flipped.size() == 1);  // 2% of 50
}

TEST_CASE("abbadingo round trip") {
    GenConfig config;
    config.num_states = 3;
    config.alphabet_size = 2;
    config.seed = 3;
    Dfa target = generate_target(config);
    Sample sample = sample_strings(target, 30, 3);
    std::string text = write_abbadingo(sample);
    std::istringstream in(text);
    Sample parsed = read_abbadingo(in);
    CHECK(write_abbadingo(parsed) == text);
}

TEST_CASE("abbadingo parse errors carry line numbers") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_abbadingo(in, "sample.txt");
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("not a header\n"), ParseError);
    CHECK_THROWS_AS(parse("2 2\n1 1 0\n"), ParseError);          // missing second string
    CHECK_THROWS_AS(parse("1 2\n1 3 0 1\n"), ParseError);        // too short
    CHECK_THROWS_AS(parse("1 2\n1 1 0 1\n"), ParseError);        // too long
    CHECK_THROWS_AS(parse("1 2\n1 1 5\n"), ParseError);          // symbol out of range
    CHECK_THROWS_AS(parse("2 2\n1 1 0\n0 1 0\n"), ParseError);   // label conflict
    try {
        parse("1 2\n2 1 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line_number == 2);
        CHECK(std::string(e.what()).find("sample.txt:2") != std::string::npos);
    }

    // labels may arrive in any order and blank lines are skipped
    std::istringstream ok("2 2\n\n0 2 0 1\n1 0\n");
    Sample parsed = read_abbadingo(ok);
    CHECK(parsed.positives().size() == 1);
    CHECK(parsed.negatives().size() == 1);
}

TEST_CASE("DFA JSON and DOT output") {
    Dfa dfa = Dfa::uniform(2, {"0", "1"});
    dfa.next(0, 0) = 1;
    dfa.accepting = {0, 1};

    std::string json_text = dfa_to_json(dfa);
    Dfa parsed = dfa_from_json(json_text);
    CHECK(parsed == dfa);
    CHECK(json_text.find("\"start\": 1") != std::string::npos);
    CHECK(json_text.find("\"size\": 2") != std::string::npos);

    std::string dot = dfa_to_dot(dfa);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("2 [shape=doublecircle]") != std::string::npos);
    CHECK(dot.find("start -> 1") != std::string::npos);

    CHECK_THROWS_AS(dfa_from_json("{\"size\": 1}"), std::exception);
}
