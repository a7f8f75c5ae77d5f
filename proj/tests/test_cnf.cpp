#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dfainduct/cnf.hpp"
#include "dfainduct/error.hpp"
#include "dfainduct/rng.hpp"

using namespace dfainduct;

TEST_CASE("registry allocates fresh contiguous indices and rejects reuse") {
    VariableRegistry reg;
    CHECK(reg.new_var("color 3 2") == 1);
    CHECK(reg.new_var("flip 0") == 2);
    CHECK(reg.lookup("color 3 2") == 1);
    CHECK_THROWS_AS(reg.new_var("color 3 2"), Error);
    VarBlock block = reg.new_block("transition", 2, 3, 3);
    CHECK(block.base == 3);
    CHECK(block(0, 0, 0) == 3);
    CHECK(block(1, 2, 2) == 3 + 17);
    CHECK(reg.num_vars() == 20);
    CHECK_THROWS_AS(reg.new_block("transition", 1), Error);
    CHECK(reg.describe(3) == "transition 0 0 0");
}

TEST_CASE("registry allocation is a bijection over many random keys") {
    VariableRegistry reg;
    Rng rng(3);
    std::vector<std::string> keys;
    std::set<int> indices;
    for (int i = 0; i < 10000; ++i) {
        std::string key = "k" + std::to_string(rng.next_u64());
        if (reg.has(key)) continue;
        keys.push_back(key);
        int idx = reg.new_var(key);
        CHECK(idx == static_cast<int>(keys.size()));
        CHECK(indices.insert(idx).second);
    }
    Rng replay(3);
    for (size_t i = 0; i < keys.size(); ++i)
        CHECK(reg.lookup(keys[i]) == static_cast<int>(i) + 1);
}

TEST_CASE("clause store validates literals and counts verbatim") {
    CnfFormula f;
    f.ensure_vars(2);
    f.add_clause({-1, 2});
    CHECK(f.num_clauses() == 1);
    CHECK_THROWS_AS(f.add_clause({3}), Error);
    CHECK_THROWS_AS(f.add_clause({0}), Error);
    for (int i = 0; i < 10; ++i) f.add_clause({1, -2});
    CHECK(f.num_clauses() == 11);  // duplicates kept verbatim

    CHECK_FALSE(f.trivially_unsat());
    f.add_clause(std::span<const int>{});
    CHECK(f.trivially_unsat());
}

TEST_CASE("DIMACS output is byte-exact") {
    CnfFormula f;
    f.ensure_vars(2);
    f.add_clause({1, -2});
    CHECK(emit_dimacs(f) == "p cnf 2 1\n1 -2 0\n");

    CnfFormula empty;
    CHECK(emit_dimacs(empty) == "p cnf 0 0\n");

    CnfFormula three;
    three.ensure_vars(3);
    three.add_clause({1});
    three.add_clause({-2, 3});
    three.add_clause({1, 2, -3});
    std::string text = emit_dimacs(three);
    CHECK(text == "p cnf 3 3\n1 0\n-2 3 0\n1 2 -3 0\n");
    CHECK(emit_dimacs(three) == text);  // stable across calls
}

TEST_CASE("comment map names every variable") {
    VariableRegistry reg;
    VarBlock acc = reg.new_block("accepting", 2);
    CnfFormula f;
    f.ensure_vars(reg.num_vars());
    f.add_clause({acc(0), -acc(1)});
    std::string text = emit_dimacs(f, &reg);
    CHECK(text.find("c accepting 0 -> 1\n") != std::string::npos);
    CHECK(text.find("c accepting 1 -> 2\n") != std::string::npos);
}

TEST_CASE("parsing emitted DIMACS reproduces the formula") {
    Rng rng(5);
    for (int round = 0; round < 100; ++round) {
        CnfFormula f;
        int vars = 1 + rng.below_int(20);
        f.ensure_vars(vars);
        int clauses = rng.below_int(30);
        for (int c = 0; c < clauses; ++c) {
            std::vector<int> lits;
            int len = 1 + rng.below_int(4);
            for (int i = 0; i < len; ++i) {
                int v = 1 + rng.below_int(vars);
                lits.push_back(rng.coin() ? v : -v);
            }
            f.add_clause(lits);
        }
        CnfFormula parsed = parse_dimacs(emit_dimacs(f));
        REQUIRE(parsed.num_vars() == f.num_vars());
        REQUIRE(parsed.num_clauses() == f.num_clauses());
        std::multiset<std::vector<int>> lhs, rhs;
        for (size_t i = 0; i < f.num_clauses(); ++i) {
            auto a = f.clause(i);
            auto b = parsed.clause(i);
            lhs.insert(std::vector<int>(a.begin(), a.end()));
            rhs.insert(std::vector<int>(b.begin(), b.end()));
        }
        CHECK(lhs == rhs);
    }
}
