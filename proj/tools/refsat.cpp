// refsat: a deliberately small DPLL solver over DIMACS files, kept fully
// independent of the main library so verdict comparisons against the built-in
// solver actually test two different engines. Output follows the standard
// convention: an "s" status line and "v" value lines.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Problem {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

bool parse(std::istream& in, Problem& problem) {
    std::string token;
    bool header = false;
    std::vector<int> clause;
    while (in >> token) {
        if (token == "c") {
            std::string rest;
            std::getline(in, rest);
        } else if (token == "p") {
            std::string kind;
            long clause_count;
            if (!(in >> kind >> problem.num_vars >> clause_count) || kind != "cnf") return false;
            header = true;
        } else {
            int lit = std::atoi(token.c_str());
            if (!header) return false;
            if (lit == 0) {
                problem.clauses.push_back(clause);
                clause.clear();
            } else {
                clause.push_back(lit);
            }
        }
    }
    return header && clause.empty();
}

struct Dpll {
    const Problem& problem;
    std::vector<int> assignment;  // 0 unknown, 1 true, -1 false
    std::vector<int> trail;

    explicit Dpll(const Problem& p) : problem(p), assignment(p.num_vars + 1, 0) {}

    int value(int lit) const {
        int v = assignment[std::abs(lit)];
        return lit > 0 ? v : -v;
    }

    bool assign(int lit) {
        int var = std::abs(lit);
        if (assignment[var] != 0) return value(lit) > 0;
        assignment[var] = lit > 0 ? 1 : -1;
        trail.push_back(var);
        return true;
    }

    void undo_to(size_t mark) {
        while (trail.size() > mark) {
            assignment[trail.back()] = 0;
            trail.pop_back();
        }
    }

    // Repeats full passes of unit propagation until a fixpoint; returns false
    // on a falsified clause.
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& clause : problem.clauses) {
                int unassigned = 0, last = 0;
                bool satisfied = false;
                for (int lit : clause) {
                    int v = value(lit);
                    if (v > 0) {
                        satisfied = true;
                        break;
                    }
                    if (v == 0) {
                        ++unassigned;
                        last = lit;
                    }
                }
                if (satisfied) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    if (!assign(last)) return false;
                    changed = true;
                }
            }
        }
        return true;
    }

    bool solve() {
        if (!propagate()) return false;
        int var = 0;
        for (int v = 1; v <= problem.num_vars; ++v)
            if (assignment[v] == 0) {
                var = v;
                break;
            }
        if (var == 0) return true;
        for (int phase : {-1, 1}) {
            size_t mark = trail.size();
            if (assign(phase * var) && solve()) return true;
            undo_to(mark);
        }
        return false;
    }
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: refsat <dimacs-file>\n";
        return 2;
    }
    std::ifstream in(argv[1]);
    if (!in) {
        std::cerr << "cannot open " << argv[1] << "\n";
        return 2;
    }
    Problem problem;
    if (!parse(in, problem)) {
        std::cerr << "not a DIMACS cnf file\n";
        return 2;
    }
    Dpll solver(problem);
    if (!solver.solve()) {
        std::cout << "s UNSATISFIABLE\n";
        return 20;
    }
    std::cout << "s SATISFIABLE\n";
    std::ostringstream line;
    line << "v";
    for (int v = 1; v <= problem.num_vars; ++v)
        line << ' ' << (solver.assignment[v] >= 0 ? v : -v);
    line << " 0";
    std::cout << line.str() << "\n";
    return 10;
}
