#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dfainduct {

/// Handle to a contiguous block of solver variables addressed by one, two or
/// three indices (row-major). Cheap to copy; indices are 0-based, returned
/// variable numbers are 1-based.
struct VarBlock {
    int base = 0;  // 0 = unallocated
    int d1 = 0, d2 = 0, d3 = 0;

    bool allocated() const { return base != 0; }
    int operator()(int a) const { return base + a; }
    int operator()(int a, int b) const { return base + a * d2 + b; }
    int operator()(int a, int b, int c) const { return base + (a * d2 + b) * d3 + c; }
    int size() const { return d1 * (d2 ? d2 : 1) * (d3 ? d3 : 1); }
};

/// Allocates 1-based, contiguous solver variables and remembers which family
/// each one belongs to. Families are either bulk blocks (the encoders) or
/// individually keyed variables; every key/family is allocated at most once.
class VariableRegistry {
public:
    int new_var(const std::string& key);
    int lookup(const std::string& key) const;  // throws if absent
    bool has(const std::string& key) const;

    VarBlock new_block(const std::string& family, int d1, int d2 = 0, int d3 = 0);
    bool has_block(const std::string& family) const;

    int num_vars() const { return count_; }

    // Human-readable identity of a variable, e.g. "color 3 1".
    std::string describe(int var) const;

private:
    struct Block {
        std::string family;
        int base;
        int d1, d2, d3;
    };
    std::vector<Block> blocks_;
    std::unordered_map<std::string, int> keyed_;
    int count_ = 0;
};

/// Clause store. Clauses are kept verbatim, in insertion order, with no
/// simplification, so clause counts stay comparable against the closed-form
/// formulas of the encoders.
class CnfFormula {
public:
    void ensure_vars(int n) {
        if (n > num_vars_) num_vars_ = n;
    }
    int num_vars() const { return num_vars_; }

    void add_clause(std::span<const int> lits);
    void add_clause(std::initializer_list<int> lits) {
        add_clause(std::span<const int>(lits.begin(), lits.size()));
    }

    size_t num_clauses() const { return offsets_.size() - 1; }
    std::span<const int> clause(size_t i) const {
        return {lits_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    const std::vector<int>& literals() const { return lits_; }

    // An explicitly added empty clause is representable but marks the formula.
    bool trivially_unsat() const { return trivially_unsat_; }

    bool satisfied_by(const std::vector<uint8_t>& model) const;  // model[var] in {0,1}

private:
    int num_vars_ = 0;
    std::vector<int> lits_;
    std::vector<uint32_t> offsets_ = {0};
    bool trivially_unsat_ = false;
};

// Header "p cnf <vars> <clauses>", one line per clause, 0-terminated.
// Byte-stable for identical inputs. With a registry, prepends one comment
// line "c <family> <args> -> <index>" per variable.
std::string emit_dimacs(const CnfFormula& formula, const VariableRegistry* comments = nullptr);

CnfFormula parse_dimacs(const std::string& text);

}  // namespace dfainduct
