#include "dfainduct/cnf.hpp"

#include <cstdlib>
#include <sstream>

#include "dfainduct/error.hpp"

namespace dfainduct {

int VariableRegistry::new_var(const std::string& key) {
    if (keyed_.count(key)) throw Error("variable key already allocated: " + key);
    keyed_.emplace(key, ++count_);
    return count_;
}

int VariableRegistry::lookup(const std::string& key) const {
    auto it = keyed_.find(key);
    if (it == keyed_.end()) throw Error("unknown variable key: " + key);
    return it->second;
}

bool VariableRegistry::has(const std::string& key) const { return keyed_.count(key) != 0; }

VarBlock VariableRegistry::new_block(const std::string& family, int d1, int d2, int d3) {
    if (has_block(family)) throw Error("variable family already allocated: " + family);
    VarBlock block;
    block.base = count_ + 1;
    block.d1 = d1;
    block.d2 = d2;
    block.d3 = d3;
    int size = block.size();
    if (size < 0 || d1 < 0 || d2 < 0 || d3 < 0) throw Error("bad block dimensions: " + family);
    blocks_.push_back({family, block.base, d1, d2, d3});
    count_ += size;
    return block;
}

bool VariableRegistry::has_block(const std::string& family) const {
    for (const auto& b : blocks_)
        if (b.family == family) return true;
    return false;
}

std::string VariableRegistry::describe(int var) const {
    for (const auto& b : blocks_) {
        int size = b.d1 * (b.d2 ? b.d2 : 1) * (b.d3 ? b.d3 : 1);
        if (var < b.base || var >= b.base + size) continue;
        int off = var - b.base;
        std::string out = b.family;
        if (b.d3) {
            out += " " + std::to_string(off / (b.d2 * b.d3));
            out += " " + std::to_string(off / b.d3 % b.d2);
            out += " " + std::to_string(off % b.d3);
        } else if (b.d2) {
            out += " " + std::to_string(off / b.d2);
            out += " " + std::to_string(off % b.d2);
        } else {
            out += " " + std::to_string(off);
        }
        return out;
    }
    for (const auto& [key, idx] : keyed_)
        if (idx == var) return key;
    return "?";
}

void CnfFormula::add_clause(std::span<const int> lits) {
    for (int lit : lits) {
        int var = lit < 0 ? -lit : lit;
        if (lit == 0 || var > num_vars_)
            throw Error("literal " + std::to_string(lit) + " out of range (have " +
                        std::to_string(num_vars_) + " variables)");
    }
    if (lits.empty()) trivially_unsat_ = true;
    lits_.insert(lits_.end(), lits.begin(), lits.end());
    offsets_.push_back(static_cast<uint32_t>(lits_.size()));
}

bool CnfFormula::satisfied_by(const std::vector<uint8_t>& model) const {
    for (size_t i = 0; i < num_clauses(); ++i) {
        bool sat = false;
        for (int lit : clause(i)) {
            int var = lit < 0 ? -lit : lit;
            if ((model[var] != 0) == (lit > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

std::string emit_dimacs(const CnfFormula& formula, const VariableRegistry* comments) {
    std::string out;
    if (comments) {
        for (int v = 1; v <= formula.num_vars(); ++v)
            out += "c " + comments->describe(v) + " -> " + std::to_string(v) + "\n";
    }
    out += "p cnf " + std::to_string(formula.num_vars()) + " " +
           std::to_string(formula.num_clauses()) + "\n";
    for (size_t i = 0; i < formula.num_clauses(); ++i) {
        for (int lit : formula.clause(i)) {
            out += std::to_string(lit);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    CnfFormula formula;
    long declared_clauses = -1;
    std::vector<int> clause;
    bool header_seen = false;
    while (in >> token) {
        if (token == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (token == "p") {
            std::string kind;
            long vars = 0;
            in >> kind >> vars >> declared_clauses;
            if (kind != "cnf") throw Error("not a DIMACS cnf header");
            formula.ensure_vars(static_cast<int>(vars));
            header_seen = true;
            continue;
        }
        if (!header_seen) throw Error("DIMACS literal before header");
        int lit = std::atoi(token.c_str());
        if (lit == 0) {
            formula.add_clause(clause);
            clause.clear();
        } else {
            clause.push_back(lit);
        }
    }
    if (!clause.empty()) throw Error("DIMACS clause missing terminating 0");
    if (!header_seen) throw Error("missing DIMACS header");
    if (declared_clauses >= 0 && static_cast<size_t>(declared_clauses) != formula.num_clauses())
        throw Error("DIMACS clause count mismatch");
    return formula;
}

}  // namespace dfainduct
