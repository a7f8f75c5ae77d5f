#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "dfainduct/error.hpp"
#include "dfainduct/solver.hpp"

namespace dfainduct {

SolveResult parse_solver_output(const std::string& text, int num_vars) {
    std::istringstream in(text);
    std::string line;
    SolveResult result;
    bool status_seen = false;
    std::vector<uint8_t> model(num_vars + 1, 0);
    while (std::getline(in, line)) {
        if (line.rfind("s ", 0) == 0) {
            std::string verdict = line.substr(2);
            while (!verdict.empty() && (verdict.back() == '\r' || verdict.back() == ' '))
                verdict.pop_back();
            if (verdict == "SATISFIABLE")
                result.status = SolveStatus::Sat;
            else if (verdict == "UNSATISFIABLE")
                result.status = SolveStatus::Unsat;
            else if (verdict == "UNKNOWN" || verdict == "INDETERMINATE")
                result.status = SolveStatus::TimedOut;
            else
                throw BackendError("unrecognized solver status line: " + line);
            status_seen = true;
        } else if (line.rfind("v ", 0) == 0 || line == "v") {
            std::istringstream vals(line.substr(1));
            long lit;
            while (vals >> lit) {
                if (lit == 0) continue;
                long var = lit < 0 ? -lit : lit;
                if (var <= num_vars) model[var] = lit > 0;
            }
        }
    }
    if (!status_seen) throw BackendError("solver output has no status line");
    if (result.status == SolveStatus::Sat) result.model = std::move(model);
    return result;
}

namespace {

class ExternalSolver final : public SolverSession {
public:
    explicit ExternalSolver(std::string command) : command_(std::move(command)) {}

    void ensure_vars(int count) override { formula_.ensure_vars(count); }
    int num_vars() const override { return formula_.num_vars(); }
    void add_clause(std::span<const int> lits) override { formula_.add_clause(lits); }

    SolveResult solve(double timeout_seconds) override {
        auto start = std::chrono::steady_clock::now();
        std::string path = write_temp_dimacs();
        // Restart semantics: the full accumulated formula is re-solved.
        std::string cmd = "timeout " + format_seconds(timeout_seconds) + " " + command_ + " " +
                          path + " 2>/dev/null";
        std::string output;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) {
            std::remove(path.c_str());
            throw BackendError("failed to launch external solver: " + command_);
        }
        char buffer[4096];
        size_t got;
        while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, got);
        int rc = pclose(pipe);
        std::remove(path.c_str());
        int exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        if (exit_code == 124) {  // killed by timeout(1)
            SolveResult r;
            r.status = SolveStatus::TimedOut;
            r.elapsed_seconds = timeout_seconds;
            return r;
        }
        SolveResult result = parse_solver_output(output, formula_.num_vars());
        if (result.sat() && !formula_.satisfied_by(result.model))
            throw BackendError("external solver returned a non-satisfying model");
        result.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }

private:
    std::string write_temp_dimacs() {
        char tmpl[] = "/tmp/dfainduct-XXXXXX";
        int fd = mkstemp(tmpl);
        if (fd < 0) throw BackendError("cannot create temporary DIMACS file");
        std::string text = emit_dimacs(formula_);
        ssize_t off = 0;
        while (off < static_cast<ssize_t>(text.size())) {
            ssize_t n = write(fd, text.data() + off, text.size() - off);
            if (n <= 0) {
                close(fd);
                throw BackendError("cannot write temporary DIMACS file");
            }
            off += n;
        }
        close(fd);
        return tmpl;
    }

    static std::string format_seconds(double s) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", s > 0 ? s : 0.001);
        return buf;
    }

    std::string command_;
    CnfFormula formula_;
};

}  // namespace

std::unique_ptr<SolverSession> make_external_solver(std::string command) {
    return std::make_unique<ExternalSolver>(std::move(command));
}

}  // namespace dfainduct
