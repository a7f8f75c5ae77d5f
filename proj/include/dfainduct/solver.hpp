#pragma once

#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dfainduct/cnf.hpp"

namespace dfainduct {

enum class SolveStatus { Sat, Unsat, TimedOut };

struct SolveResult {
    SolveStatus status = SolveStatus::TimedOut;
    std::vector<uint8_t> model;  // model[v] for v in 1..n; empty unless Sat
    double elapsed_seconds = 0.0;

    bool sat() const { return status == SolveStatus::Sat; }
};

/// One solving session. Clauses are only ever added, never removed; a session
/// may be re-solved after adding clauses. Returned models are checked against
/// every clause submitted so far before they leave the backend.
class SolverSession {
public:
    virtual ~SolverSession() = default;

    virtual void ensure_vars(int count) = 0;
    virtual void add_clause(std::span<const int> lits) = 0;
    virtual SolveResult solve(double timeout_seconds) = 0;
    virtual int num_vars() const = 0;

    void add_clause(std::initializer_list<int> lits) {
        add_clause(std::span<const int>(lits.begin(), lits.size()));
    }
    void add_formula(const CnfFormula& formula);
};

// Built-in CDCL solver (watched literals, first-UIP learning, activity
// decisions, phase saving, geometric restarts). Keeps learned state across
// incremental re-solves.
std::unique_ptr<SolverSession> make_builtin_solver();

// Driver for an external DIMACS solver process; re-solves the accumulated
// formula from scratch on every call. The command is run as
// "<command> <dimacs-file>" and must follow the standard output convention
// ("s SATISFIABLE|UNSATISFIABLE|UNKNOWN" plus "v" value lines).
std::unique_ptr<SolverSession> make_external_solver(std::string command);

enum class SolverBackend { Builtin, External };

struct BackendConfig {
    SolverBackend kind = SolverBackend::Builtin;
    std::string external_command;

    std::unique_ptr<SolverSession> make() const;
};

// Parses SAT-competition style solver output. Throws BackendError when the
// status line is missing or the text is not understood.
SolveResult parse_solver_output(const std::string& text, int num_vars);

}  // namespace dfainduct
