// Command-line driver: infer, infer-noisy, find-all, gen, bench.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfainduct/consistency_graph.hpp"
#include "dfainduct/datagen.hpp"
#include "dfainduct/error.hpp"
#include "dfainduct/io.hpp"
#include "dfainduct/search.hpp"

using namespace dfainduct;
using nlohmann::json;

namespace {

// exit codes, also documented in the README
constexpr int kExitFound = 0;
constexpr int kExitError = 1;
constexpr int kExitNotFound = 2;
constexpr int kExitTimedOut = 3;
constexpr int kExitBackend = 4;

SbpStrategy parse_sbp(const std::string& name) {
    if (name == "none") return SbpStrategy::None;
    if (name == "clique") return SbpStrategy::Clique;
    if (name == "dfs") return SbpStrategy::Dfs;
    if (name == "bfs") return SbpStrategy::Bfs;
    throw Error("--sbp: expected none, clique, dfs or bfs");
}

BackendConfig parse_backend(const std::string& spec) {
    BackendConfig backend;
    if (spec == "builtin") return backend;
    if (spec.rfind("external:", 0) == 0) {
        backend.kind = SolverBackend::External;
        backend.external_command = spec.substr(9);
        if (backend.external_command.empty()) throw Error("--solver external: needs a command");
        return backend;
    }
    throw Error("--solver: expected builtin or external:<command>");
}

// flip budget: absolute count or percentage of the string count ("10%")
int parse_budget(const std::string& text, int string_count) {
    if (!text.empty() && text.back() == '%') {
        int percent = std::stoi(text.substr(0, text.size() - 1));
        if (percent < 0 || percent > 100) throw Error("--k: percentage outside 0..100");
        return (string_count * percent + 50) / 100;
    }
    int value = std::stoi(text);
    if (value < 0) throw Error("--k: budget must be nonnegative");
    return value;
}

void write_outputs(const Dfa& dfa, const std::string& out_prefix) {
    if (out_prefix.empty()) return;
    write_file(out_prefix + ".json", dfa_to_json(dfa));
    write_file(out_prefix + ".dot", dfa_to_dot(dfa));
}

int report_search(const FindResult& result, const Sample& sample, const std::string& out_prefix) {
    switch (result.status) {
        case FindResult::Status::Found: {
            std::cout << "minimal DFA size: " << result.dfa->num_states << "\n";
            std::cout << "solver calls: " << result.trace.size()
                      << ", elapsed: " << result.elapsed_seconds << " s\n";
            if (!result.flipped.empty()) {
                std::cout << "labels treated as noise:";
                for (const Word& w : result.flipped) std::cout << " " << sample.format_word(w);
                std::cout << "\n";
            }
            write_outputs(*result.dfa, out_prefix);
            return kExitFound;
        }
        case FindResult::Status::NotFound:
            std::cout << "no automaton within the size budget\n";
            return kExitNotFound;
        case FindResult::Status::TimedOut:
            std::cout << "time limit exceeded at size " << result.trace.back().size << "\n";
            return kExitTimedOut;
    }
    return kExitError;
}

// ---- bench harness ----

struct BenchRow {
    std::string family;
    int target_size = 0;
    uint64_t seed = 0;
    std::string setting;
    std::string status;
    double seconds = 0;
    long detail = 0;  // found size / enumeration count
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::mutex mutex;

    void add(BenchRow row) {
        std::lock_guard<std::mutex> lock(mutex);
        rows.push_back(std::move(row));
    }

    std::string tsv() const {
        std::ostringstream out;
        out << "family\tN\tseed\tsetting\tstatus\tseconds\tdetail\n";
        for (const auto& r : rows)
            out << r.family << '\t' << r.target_size << '\t' << r.seed << '\t' << r.setting
                << '\t' << r.status << '\t' << r.seconds << '\t' << r.detail << '\n';
        return out.str();
    }

    // mean per (family, N, setting); timeouts excluded from the mean but counted
    std::string table() const {
        std::map<std::string, std::pair<std::vector<double>, int>> cells;
        for (const auto& r : rows) {
            std::string key = r.family + " N=" + std::to_string(r.target_size) + " " + r.setting;
            if (r.status == "timeout")
                cells[key].second += 1;
            else
                cells[key].first.push_back(r.seconds);
        }
        std::ostringstream out;
        out << "\n== mean seconds (timeouts excluded from means) ==\n";
        for (const auto& [key, cell] : cells) {
            double mean = 0;
            for (double s : cell.first) mean += s;
            if (!cell.first.empty()) mean /= cell.first.size();
            out << "  " << key << ": ";
            if (cell.first.empty())
                out << "TL";
            else
                out << mean;
            if (cell.second) out << "  (" << cell.second << " timed out)";
            out << "\n";
        }
        return out.str();
    }
};

void run_parallel(int jobs, int total, const std::function<void(int)>& work) {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    int threads = std::max(1, std::min(jobs, total));
    for (int t = 0; t < threads; ++t)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) work(i);
        });
    for (auto& w : workers) w.join();
}

int cmd_bench(const std::string& family, int n_min, int n_max, int repetitions, double tl,
              int jobs, uint64_t seed0, const std::string& out_path) {
    BenchReport report;
    struct Task {
        std::string family;
        int n;
        uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int n = n_min; n <= n_max; ++n)
        for (int r = 0; r < repetitions; ++r) {
            uint64_t seed = seed0 + 1000 * static_cast<uint64_t>(n) + r;
            if (family == "exact" || family == "all") tasks.push_back({"exact", n, seed});
            if (family == "noisy-unsat" || family == "all")
                tasks.push_back({"noisy-unsat", n, seed});
            if (family == "find-all" || family == "all") tasks.push_back({"find-all", n, seed});
        }

    run_parallel(jobs, static_cast<int>(tasks.size()), [&](int index) {
        const Task& task = tasks[index];
        if (task.family == "exact") {
            // strategy comparison on a noiseless dense instance
            GenConfig gen{task.n, 2, 50 * task.n, 0, task.seed};
            Instance instance = generate_instance(gen);
            long agreed_size = -1;
            for (SbpStrategy strategy :
                 {SbpStrategy::Clique, SbpStrategy::Dfs, SbpStrategy::Bfs}) {
                SearchConfig config;
                config.strategy = strategy;
                config.max_size = task.n + 1;
                config.time_limit_seconds = tl;
                FindResult result = find_min_dfa(instance.sample, config);
                BenchRow row{"exact", task.n, task.seed, to_string(strategy), "", 0, 0};
                row.seconds = result.elapsed_seconds;
                if (result.status == FindResult::Status::Found) {
                    row.status = "ok";
                    row.detail = result.dfa->num_states;
                    if (agreed_size < 0) agreed_size = result.dfa->num_states;
                    if (agreed_size != result.dfa->num_states) row.status = "size-mismatch";
                } else {
                    row.status = result.status == FindResult::Status::TimedOut ? "timeout"
                                                                               : "notfound";
                }
                report.add(row);
            }
        } else if (task.family == "noisy-unsat") {
            // strings from a machine one state larger; the budgeted noisy
            // search at the smaller size must come back UNSAT
            GenConfig gen{task.n + 1, 2, 50 * task.n, 0, task.seed};
            Instance instance = generate_instance(gen);
            int budget = std::max(1, (instance.sample.size() + 50) / 100);
            SearchConfig config;
            config.noisy = true;
            config.flip_budget = budget;
            config.strategy = SbpStrategy::Bfs;
            config.min_size = task.n;
            config.max_size = task.n;
            config.time_limit_seconds = tl;
            FindResult result = find_min_dfa(instance.sample, config);
            BenchRow row{"noisy-unsat", task.n, task.seed, "bfs", "", 0, 0};
            row.seconds = result.elapsed_seconds;
            row.status = result.status == FindResult::Status::NotFound    ? "unsat"
                         : result.status == FindResult::Status::TimedOut ? "timeout"
                                                                          : "sat";
            report.add(row);
        } else {
            // three-way enumeration comparison on a sparse instance
            GenConfig gen{task.n, 2, 5 * task.n, 0, task.seed};
            Instance instance = generate_instance(gen);
            SearchConfig min_config;
            min_config.strategy = SbpStrategy::Bfs;
            min_config.max_size = task.n + 1;
            min_config.time_limit_seconds = tl;
            FindResult minimal = find_min_dfa(instance.sample, min_config);
            if (minimal.status != FindResult::Status::Found) {
                report.add({"find-all", task.n, task.seed, "min-search",
                            minimal.status == FindResult::Status::TimedOut ? "timeout"
                                                                           : "notfound",
                            minimal.elapsed_seconds, 0});
                return;
            }
            int size = minimal.dfa->num_states;
            long counts[3] = {-1, -1, -1};
            for (FindAllMethod method : {FindAllMethod::Restart, FindAllMethod::Incremental}) {
                FindAllConfig config;
                config.method = method;
                config.sbp = SbpStrategy::Bfs;
                config.time_limit_seconds = tl;
                FindAllResult result = find_all(instance.sample, size, config);
                BenchRow row{"find-all", task.n, task.seed,
                             method == FindAllMethod::Restart ? "restart" : "incremental",
                             result.complete ? "ok" : "timeout", result.elapsed_seconds,
                             static_cast<long>(result.dfas.size())};
                counts[method == FindAllMethod::Restart ? 0 : 1] =
                    static_cast<long>(result.dfas.size());
                report.add(row);
            }
            auto start = std::chrono::steady_clock::now();
            Apta apta = build_apta(instance.sample);
            std::vector<Dfa> btr = backtracking_find_all(apta, size);
            double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            counts[2] = static_cast<long>(btr.size());
            std::string status = "ok";
            if (counts[0] >= 0 && counts[1] >= 0 &&
                (counts[0] != counts[1] || counts[1] != counts[2]))
                status = "count-mismatch";
            report.add(
                {"find-all", task.n, task.seed, "backtracking", status, seconds, counts[2]});
        }
    });

    std::sort(report.rows.begin(), report.rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return std::tie(a.family, a.target_size, a.seed, a.setting) <
               std::tie(b.family, b.target_size, b.seed, b.setting);
    });
    std::string tsv = report.tsv();
    if (!out_path.empty()) write_file(out_path, tsv);
    std::cout << tsv << report.table();
    for (const auto& row : report.rows)
        if (row.status == "size-mismatch" || row.status == "count-mismatch" || row.status == "sat")
            return kExitError;
    return kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal-DFA identification from labeled strings via SAT"};
    app.require_subcommand(1);

    std::string input_path, out_prefix, sbp_name = "bfs", solver_spec = "builtin";
    int min_size = 1, max_size = 32;
    double time_limit = 60.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", input_path, "sample file (Abbadingo format)")->required();
        cmd->add_option("--min", min_size, "smallest size to try");
        cmd->add_option("--max", max_size, "largest size to try");
        // repeated --sbp would silently pick a winner; strategies are exclusive
        cmd->add_option("--sbp", sbp_name, "symmetry breaking: none|clique|dfs|bfs")
            ->multi_option_policy(CLI::MultiOptionPolicy::Throw);
        cmd->add_option("--solver", solver_spec, "builtin or external:<command>");
        cmd->add_option("--tl", time_limit, "per-call time limit in seconds");
        cmd->add_option("--out", out_prefix, "write <out>.json and <out>.dot");
    };

    CLI::App* infer = app.add_subcommand("infer", "find a smallest consistent automaton");
    add_common(infer);

    CLI::App* noisy = app.add_subcommand(
        "infer-noisy", "find a smallest automaton assuming up to K flipped labels");
    add_common(noisy);
    std::string budget_text;
    noisy->add_option("--k", budget_text, "flip budget, absolute or percentage like 10%")
        ->required();

    CLI::App* findall =
        app.add_subcommand("find-all", "enumerate all automata of the minimal size");
    add_common(findall);
    std::string method_name = "incremental";
    int forced_size = 0;
    findall->add_option("--strategy", method_name,
                        "enumeration strategy: restart|incremental|backtracking");
    findall->add_option("--size", forced_size, "enumerate at this size instead of the minimum");

    CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
    GenConfig gen_config;
    std::string gen_out;
    gen->add_option("--states", gen_config.num_states, "target machine size")->required();
    gen->add_option("--alpha", gen_config.alphabet_size, "alphabet size");
    gen->add_option("--count", gen_config.num_strings, "number of strings")->required();
    gen->add_option("--noise", gen_config.noise_percent, "percentage of labels to flip");
    gen->add_option("--seed", gen_config.seed, "random seed");
    gen->add_option("--out", gen_out, "output sample file")->required();

    CLI::App* bench = app.add_subcommand("bench", "run the comparison experiment families");
    std::string family = "all", bench_out;
    int n_min = 4, n_max = 6, repetitions = 5, jobs = 1;
    uint64_t bench_seed = 1;
    bench->add_option("--family", family, "exact|noisy-unsat|find-all|all");
    bench->add_option("--nmin", n_min, "smallest target size");
    bench->add_option("--nmax", n_max, "largest target size");
    bench->add_option("--seeds", repetitions, "instances per size");
    bench->add_option("--tl", time_limit, "time limit per search in seconds");
    bench->add_option("--jobs", jobs, "parallel workers");
    bench->add_option("--seed", bench_seed, "base seed");
    bench->add_option("--out", bench_out, "write the TSV report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (infer->parsed() || noisy->parsed()) {
            Sample sample = read_abbadingo_file(input_path);
            SearchConfig config;
            config.min_size = min_size;
            config.max_size = max_size;
            config.strategy = parse_sbp(sbp_name);
            config.backend = parse_backend(solver_spec);
            config.time_limit_seconds = time_limit;
            if (noisy->parsed()) {
                config.noisy = true;
                config.flip_budget = parse_budget(budget_text, sample.size());
                if (config.strategy == SbpStrategy::Clique)
                    throw Error("noisy identification cannot use clique fixing");
                std::cout << "flip budget: " << config.flip_budget << "\n";
            }
            return report_search(find_min_dfa(sample, config), sample, out_prefix);
        }

        if (findall->parsed()) {
            Sample sample = read_abbadingo_file(input_path);
            SbpStrategy sbp = parse_sbp(sbp_name);
            int size = forced_size;
            if (size == 0) {
                SearchConfig config;
                config.min_size = min_size;
                config.max_size = max_size;
                config.strategy = sbp;
                config.backend = parse_backend(solver_spec);
                config.time_limit_seconds = time_limit;
                FindResult minimal = find_min_dfa(sample, config);
                if (minimal.status != FindResult::Status::Found)
                    return minimal.status == FindResult::Status::TimedOut ? kExitTimedOut
                                                                          : kExitNotFound;
                size = minimal.dfa->num_states;
            }
            std::vector<Dfa> dfas;
            bool complete = true;
            double elapsed = 0;
            if (method_name == "backtracking") {
                auto start = std::chrono::steady_clock::now();
                Apta apta = build_apta(sample);
                dfas = backtracking_find_all(apta, size);
                elapsed =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
            } else if (method_name == "restart" || method_name == "incremental") {
                FindAllConfig config;
                config.method = method_name == "restart" ? FindAllMethod::Restart
                                                         : FindAllMethod::Incremental;
                config.sbp = sbp;
                config.backend = parse_backend(solver_spec);
                config.time_limit_seconds = time_limit;
                FindAllResult result = find_all(sample, size, config);
                dfas = std::move(result.dfas);
                complete = result.complete;
                elapsed = result.elapsed_seconds;
            } else {
                throw Error("unknown strategy " + method_name);
            }
            json machines = json::array();
            for (const Dfa& dfa : dfas) machines.push_back(json::parse(dfa_to_json(dfa)));
            if (!out_prefix.empty()) write_file(out_prefix + ".json", machines.dump(2) + "\n");
            std::cout << machines.dump(2) << "\n";
            std::cout << "count: " << dfas.size() << ", size: " << size
                      << ", strategy: " << method_name << ", elapsed: " << elapsed << " s"
                      << (complete ? "" : " (incomplete: time limit)") << "\n";
            return complete ? kExitFound : kExitTimedOut;
        }

        if (gen->parsed()) {
            Instance instance = generate_instance(gen_config);
            write_file(gen_out, write_abbadingo(instance.sample));
            json truth;
            truth["target"] = json::parse(dfa_to_json(instance.target));
            truth["config"] = {{"states", gen_config.num_states},
                               {"alpha", gen_config.alphabet_size},
                               {"count", gen_config.num_strings},
                               {"noise", gen_config.noise_percent},
                               {"seed", gen_config.seed}};
            json flipped = json::array();
            for (const Word& w : instance.flipped)
                flipped.push_back(instance.sample.format_word(w));
            truth["flipped"] = flipped;
            write_file(gen_out + ".truth.json", truth.dump(2) + "\n");
            std::cout << "wrote " << gen_out << " (" << instance.sample.size() << " strings)\n";
            return kExitFound;
        }

        if (bench->parsed())
            return cmd_bench(family, n_min, n_max, repetitions, time_limit, jobs, bench_seed,
                             bench_out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const BackendError& e) {
        std::cerr << "solver backend error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
