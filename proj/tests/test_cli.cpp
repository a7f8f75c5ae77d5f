// End-to-end checks of the command-line tool, driven through the shell.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "dfainduct/dfa.hpp"
#include "dfainduct/io.hpp"
#include "dfainduct/sample.hpp"

using namespace dfainduct;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CLI_BINARY) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
    int rc = pclose(pipe);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, output};
}

std::string sample_path() {
    static std::string path = [] {
        std::string p = "/tmp/dfainduct_cli_sample.txt";
        // the running example, in Abbadingo form with a=0, b=1
        std::ofstream out(p);
        out << "6 2\n"
            << "1 2 0 1\n"
            << "1 1 1\n"
            << "1 2 1 0\n"
            << "1 3 1 1 1\n"
            << "0 4 0 1 1 1\n"
            << "0 4 1 0 1 0\n";
        return p;
    }();
    return path;
}

}  // namespace

TEST_CASE("infer finds the minimal machine and writes outputs") {
    RunResult r = run("infer --input " + sample_path() + " --sbp bfs --out /tmp/dfainduct_out");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("minimal DFA size: 3") != std::string::npos);

    Dfa dfa = dfa_from_json(read_file("/tmp/dfainduct_out.json"));
    CHECK(dfa.num_states == 3);
    CHECK(is_canonical(dfa, Traversal::Bfs));
    Sample sample = read_abbadingo_file(sample_path());
    CHECK(consistent(dfa, sample, 0));
    CHECK(read_file("/tmp/dfainduct_out.dot").find("digraph") != std::string::npos);
}

TEST_CASE("every strategy flag agrees on the size") {
    for (const std::string sbp : {"none", "clique", "dfs", "bfs"}) {
        RunResult r = run("infer --input " + sample_path() + " --sbp " + sbp);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("minimal DFA size: 3") != std::string::npos);
    }
}

TEST_CASE("budget too small exits with the NotFound code") {
    RunResult r = run("infer --input " + sample_path() + " --min 1 --max 2");
    CHECK(r.exit_code == 2);
}

TEST_CASE("malformed input reports the offending line") {
    std::string path = "/tmp/dfainduct_bad.txt";
    std::ofstream(path) << "2 2\n1 1 0\n1 9 0\n";
    RunResult r = run("infer --input " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find(path + ":3") != std::string::npos);
}

TEST_CASE("unknown sbp value is a usage error") {
    RunResult r = run("infer --input " + sample_path() + " --sbp sideways");
    CHECK(r.exit_code == 1);
}

TEST_CASE("requesting two symmetry strategies at once is a usage error") {
    RunResult r = run("infer --input " + sample_path() + " --sbp clique --sbp bfs");
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("minimal DFA size") == std::string::npos);
}

TEST_CASE("noisy flip budget accepts absolute and percent forms") {
    RunResult absolute = run("infer-noisy --input " + sample_path() + " --k 1");
    CHECK(absolute.exit_code == 0);
    CHECK(absolute.output.find("flip budget: 1") != std::string::npos);

    RunResult percent = run("infer-noisy --input " + sample_path() + " --k 17%");
    CHECK(percent.exit_code == 0);
    CHECK(percent.output.find("flip budget: 1") != std::string::npos);  // 17% of 6 rounds to 1

    RunResult clique = run("infer-noisy --input " + sample_path() + " --k 1 --sbp clique");
    CHECK(clique.exit_code == 1);
}

TEST_CASE("find-all strategies agree on the machine count") {
    std::string counts[3];
    int i = 0;
    for (const std::string strategy : {"restart", "incremental", "backtracking"}) {
        RunResult r = run("find-all --input " + sample_path() + " --strategy " + strategy);
        CHECK(r.exit_code == 0);
        size_t at = r.output.find("count: ");
        REQUIRE(at != std::string::npos);
        counts[i++] = r.output.substr(at, r.output.find(',', at) - at);
    }
    CHECK(counts[0] == counts[1]);
    CHECK(counts[1] == counts[2]);
}

TEST_CASE("gen writes a parseable sample and a truth sidecar") {
    RunResult r = run(
        "gen --states 4 --alpha 2 --count 60 --noise 2 --seed 9 --out /tmp/dfainduct_gen.txt");
    CHECK(r.exit_code == 0);
    Sample sample = read_abbadingo_file("/tmp/dfainduct_gen.txt");
    CHECK(sample.size() == 60);
    std::string truth = read_file("/tmp/dfainduct_gen.txt.truth.json");
    CHECK(truth.find("\"target\"") != std::string::npos);
    CHECK(truth.find("\"flipped\"") != std::string::npos);

    // determinism: generating again gives identical bytes
    RunResult again = run(
        "gen --states 4 --alpha 2 --count 60 --noise 2 --seed 9 --out /tmp/dfainduct_gen2.txt");
    CHECK(again.exit_code == 0);
    CHECK(read_file("/tmp/dfainduct_gen.txt") == read_file("/tmp/dfainduct_gen2.txt"));
}

TEST_CASE("external solver backend drives the reference DPLL binary") {
    RunResult r = run("infer --input " + sample_path() + " --solver external:" +
                      std::string(REFSAT_BINARY));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("minimal DFA size: 3") != std::string::npos);
}

TEST_CASE("tiny bench run holds together") {
    RunResult r = run("bench --family find-all --nmin 3 --nmax 4 --seeds 2 --jobs 2 --tl 30"
                      " --out /tmp/dfainduct_bench.tsv");
    CHECK(r.exit_code == 0);
    std::string tsv = read_file("/tmp/dfainduct_bench.tsv");
    CHECK(tsv.find("family\tN\tseed") != std::string::npos);
    CHECK(tsv.find("count-mismatch") == std::string::npos);

    // same seeds give the same report apart from the measured seconds column
    auto strip_seconds = [](const std::string& text) {
        std::string out;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            int tabs = 0;
            std::string kept;
            for (char c : line) {
                if (c == '\t') ++tabs;
                if (tabs != 5) kept += c;  // drop the "seconds" field
            }
            out += kept + "\n";
        }
        return out;
    };
    RunResult again = run("bench --family find-all --nmin 3 --nmax 4 --seeds 2 --jobs 2 --tl 30"
                          " --out /tmp/dfainduct_bench2.tsv");
    CHECK(strip_seconds(read_file("/tmp/dfainduct_bench2.tsv")) == strip_seconds(tsv));
}
