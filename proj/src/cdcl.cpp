// Built-in CDCL SAT solver. Classic architecture: two-watched-literal
// propagation, first-UIP conflict analysis with clause minimization,
// activity-driven decisions with phase saving, geometric restarts and
// LBD-based learned clause reduction.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <vector>

#include "dfainduct/error.hpp"
#include "dfainduct/solver.hpp"

namespace dfainduct {

namespace {

using Lit = int32_t;  // var * 2 + sign, vars 0-based internally
using CRef = int32_t;

constexpr CRef kNoReason = -1;

inline Lit make_lit(int var, bool negative) { return var * 2 + (negative ? 1 : 0); }
inline Lit from_dimacs(int lit) { return make_lit(std::abs(lit) - 1, lit < 0); }
inline int lit_var(Lit l) { return l >> 1; }
inline Lit lit_neg(Lit l) { return l ^ 1; }
inline bool lit_sign(Lit l) { return (l & 1) != 0; }

enum : uint8_t { kTrue = 0, kFalse = 1, kUndef = 2 };

struct Watch {
    CRef cref;
    Lit blocker;
};

// Clause layout in the arena: [size | flags] [lbd] [activity bits] lits...
constexpr int kHeaderSize = 3;
constexpr uint32_t kLearnedFlag = 0x80000000u;

class Cdcl final : public SolverSession {
public:
    void ensure_vars(int count) override {
        while (num_vars_ < count) add_var();
    }
    int num_vars() const override { return num_vars_; }

    void add_clause(std::span<const int> lits) override;
    SolveResult solve(double timeout_seconds) override;

private:
    // ---- clause arena ----
    std::vector<uint32_t> arena_;
    std::vector<CRef> originals_;
    std::vector<CRef> learnts_;

    uint32_t clause_size(CRef c) const { return arena_[c] & ~kLearnedFlag; }
    bool clause_learned(CRef c) const { return (arena_[c] & kLearnedFlag) != 0; }
    uint32_t& clause_lbd(CRef c) { return arena_[c + 1]; }
    float clause_act(CRef c) const {
        float f;
        uint32_t bits = arena_[c + 2];
        std::memcpy(&f, &bits, sizeof(f));
        return f;
    }
    void set_clause_act(CRef c, float f) { std::memcpy(&arena_[c + 2], &f, sizeof(f)); }
    Lit* clause_lits(CRef c) { return reinterpret_cast<Lit*>(arena_.data() + c + kHeaderSize); }
    const Lit* clause_lits(CRef c) const {
        return reinterpret_cast<const Lit*>(arena_.data() + c + kHeaderSize);
    }

    CRef alloc_clause(const std::vector<Lit>& lits, bool learned) {
        CRef c = static_cast<CRef>(arena_.size());
        arena_.push_back(static_cast<uint32_t>(lits.size()) | (learned ? kLearnedFlag : 0));
        arena_.push_back(0);
        arena_.push_back(0);
        for (Lit l : lits) arena_.push_back(static_cast<uint32_t>(l));
        return c;
    }

    // ---- assignment state ----
    int num_vars_ = 0;
    std::vector<uint8_t> value_;        // per var
    std::vector<uint8_t> saved_phase_;  // per var
    std::vector<int> level_;            // per var
    std::vector<CRef> reason_;          // per var
    std::vector<std::vector<Watch>> watches_;  // per lit
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    size_t propagate_head_ = 0;
    bool ok_ = true;

    // ---- decision heuristic ----
    std::vector<double> activity_;
    std::vector<int> heap_;      // binary max-heap of vars
    std::vector<int> heap_pos_;  // -1 when not in heap
    double var_inc_ = 1.0;
    static constexpr double kVarDecay = 1.0 / 0.95;

    double cla_inc_ = 1.0;
    static constexpr double kClaDecay = 1.0f / 0.999f;

    // ---- statistics / limits ----
    uint64_t conflicts_ = 0;
    double max_learnts_ = 0;

    std::vector<uint8_t> seen_;
    std::vector<Lit> analyze_stack_;

    uint8_t lit_value(Lit l) const {
        uint8_t v = value_[lit_var(l)];
        return v == kUndef ? static_cast<uint8_t>(kUndef) : static_cast<uint8_t>(v ^ (l & 1));
    }
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void add_var() {
        ++num_vars_;
        value_.push_back(kUndef);
        saved_phase_.push_back(1);  // negative polarity first
        level_.push_back(0);
        reason_.push_back(kNoReason);
        watches_.emplace_back();
        watches_.emplace_back();
        activity_.push_back(0.0);
        heap_pos_.push_back(-1);
        seen_.push_back(0);
        heap_insert(num_vars_ - 1);
    }

    // ---- heap ----
    bool heap_less(int a, int b) const { return activity_[a] < activity_[b]; }
    void heap_sift_up(int i) {
        int v = heap_[i];
        while (i > 0) {
            int parent = (i - 1) / 2;
            if (!heap_less(heap_[parent], v)) break;
            heap_[i] = heap_[parent];
            heap_pos_[heap_[i]] = i;
            i = parent;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }
    void heap_sift_down(int i) {
        int v = heap_[i];
        int n = static_cast<int>(heap_.size());
        for (;;) {
            int child = 2 * i + 1;
            if (child >= n) break;
            if (child + 1 < n && heap_less(heap_[child], heap_[child + 1])) ++child;
            if (!heap_less(v, heap_[child])) break;
            heap_[i] = heap_[child];
            heap_pos_[heap_[i]] = i;
            i = child;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }
    void heap_insert(int v) {
        if (heap_pos_[v] >= 0) return;
        heap_.push_back(v);
        heap_pos_[v] = static_cast<int>(heap_.size()) - 1;
        heap_sift_up(heap_pos_[v]);
    }
    int heap_pop() {
        int v = heap_[0];
        heap_pos_[v] = -1;
        heap_[0] = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_pos_[heap_[0]] = 0;
            heap_sift_down(0);
        }
        return v;
    }

    void bump_var(int v) {
        activity_[v] += var_inc_;
        if (activity_[v] > 1e100) {
            for (int i = 0; i < num_vars_; ++i) activity_[i] *= 1e-100;
            var_inc_ *= 1e-100;
        }
        if (heap_pos_[v] >= 0) heap_sift_up(heap_pos_[v]);
    }

    void bump_clause(CRef c) {
        float act = clause_act(c) + static_cast<float>(cla_inc_);
        if (act > 1e20f) {
            for (CRef l : learnts_) set_clause_act(l, clause_act(l) * 1e-20f);
            cla_inc_ *= 1e-20;
            act = clause_act(c) + static_cast<float>(cla_inc_);
        }
        set_clause_act(c, act);
    }

    // ---- core ----
    void enqueue(Lit l, CRef reason) {
        int v = lit_var(l);
        value_[v] = lit_sign(l) ? kFalse : kTrue;
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(l);
    }

    void cancel_until(int target_level) {
        if (decision_level() <= target_level) return;
        int bound = trail_lim_[target_level];
        for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
            int v = lit_var(trail_[i]);
            saved_phase_[v] = lit_sign(trail_[i]);
            value_[v] = kUndef;
            heap_insert(v);
        }
        trail_.resize(bound);
        trail_lim_.resize(target_level);
        propagate_head_ = trail_.size();
    }

    void attach_clause(CRef c) {
        Lit* lits = clause_lits(c);
        watches_[lit_neg(lits[0])].push_back({c, lits[1]});
        watches_[lit_neg(lits[1])].push_back({c, lits[0]});
    }

    void detach_clause(CRef c) {
        Lit* lits = clause_lits(c);
        for (Lit w : {lit_neg(lits[0]), lit_neg(lits[1])}) {
            auto& list = watches_[w];
            for (size_t i = 0; i < list.size(); ++i) {
                if (list[i].cref == c) {
                    list[i] = list.back();
                    list.pop_back();
                    break;
                }
            }
        }
    }

    CRef propagate() {
        while (propagate_head_ < trail_.size()) {
            Lit p = trail_[propagate_head_++];
            auto& list = watches_[p];
            size_t keep = 0;
            for (size_t i = 0; i < list.size(); ++i) {
                Watch w = list[i];
                if (lit_value(w.blocker) == kTrue) {
                    list[keep++] = w;
                    continue;
                }
                CRef c = w.cref;
                Lit* lits = clause_lits(c);
                Lit false_lit = lit_neg(p);
                if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
                Lit first = lits[0];
                if (first != w.blocker && lit_value(first) == kTrue) {
                    list[keep++] = {c, first};
                    continue;
                }
                uint32_t size = clause_size(c);
                bool moved = false;
                for (uint32_t k = 2; k < size; ++k) {
                    if (lit_value(lits[k]) != kFalse) {
                        std::swap(lits[1], lits[k]);
                        watches_[lit_neg(lits[1])].push_back({c, first});
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                // unit or conflicting
                list[keep++] = {c, first};
                if (lit_value(first) == kFalse) {
                    for (size_t j = i + 1; j < list.size(); ++j) list[keep++] = list[j];
                    list.resize(keep);
                    propagate_head_ = trail_.size();
                    return c;
                }
                enqueue(first, c);
            }
            list.resize(keep);
        }
        return kNoReason;
    }

    std::vector<int> lbd_mark_;
    int lbd_stamp_ = 0;

    uint32_t compute_lbd(const std::vector<Lit>& lits) {
        // stored levels can be stale (above the current decision level) for
        // literals unassigned by the preceding backtrack, so size by vars
        if (lbd_mark_.size() <= static_cast<size_t>(num_vars_))
            lbd_mark_.resize(num_vars_ + 1, -1);
        ++lbd_stamp_;
        uint32_t lbd = 0;
        for (Lit l : lits) {
            int lev = level_[lit_var(l)];
            if (lbd_mark_[lev] != lbd_stamp_) {
                lbd_mark_[lev] = lbd_stamp_;
                ++lbd;
            }
        }
        return lbd;
    }

    bool literal_redundant(Lit l) {
        analyze_stack_.clear();
        analyze_stack_.push_back(l);
        size_t top = 0;
        std::vector<int> touched;
        bool redundant = true;
        while (top < analyze_stack_.size() && redundant) {
            Lit q = analyze_stack_[top++];
            CRef r = reason_[lit_var(q)];
            if (r == kNoReason) {
                redundant = false;
                break;
            }
            const Lit* lits = clause_lits(r);
            uint32_t size = clause_size(r);
            for (uint32_t i = 0; i < size; ++i) {
                Lit x = lits[i];
                int v = lit_var(x);
                if (v == lit_var(q) || seen_[v] || level_[v] == 0) continue;
                if (reason_[v] == kNoReason) {
                    redundant = false;
                    break;
                }
                seen_[v] = 2;  // provisional
                touched.push_back(v);
                analyze_stack_.push_back(x);
            }
        }
        for (int v : touched)
            if (seen_[v] == 2) seen_[v] = 0;
        return redundant;
    }

    void analyze(CRef conflict, std::vector<Lit>& out_learnt, int& out_btlevel) {
        out_learnt.clear();
        out_learnt.push_back(0);  // slot for the asserting literal
        int counter = 0;
        Lit p = -1;
        size_t index = trail_.size();
        CRef reason = conflict;
        do {
            if (clause_learned(reason)) bump_clause(reason);
            const Lit* lits = clause_lits(reason);
            uint32_t size = clause_size(reason);
            for (uint32_t i = (p == -1 ? 0 : 1); i < size; ++i) {
                Lit q = lits[i];
                int v = lit_var(q);
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                bump_var(v);
                if (level_[v] == decision_level())
                    ++counter;
                else
                    out_learnt.push_back(q);
            }
            while (!seen_[lit_var(trail_[--index])]) {
            }
            p = trail_[index];
            reason = reason_[lit_var(p)];
            seen_[lit_var(p)] = 0;
            --counter;
            if (counter > 0 && reason != kNoReason) {
                // rotate clause so the propagated literal is first
                Lit* rl = clause_lits(reason);
                if (rl[0] != p) {
                    uint32_t size = clause_size(reason);
                    for (uint32_t i = 1; i < size; ++i)
                        if (rl[i] == p) {
                            std::swap(rl[0], rl[i]);
                            break;
                        }
                }
            }
        } while (counter > 0);
        out_learnt[0] = lit_neg(p);

        // conflict clause minimization; seen_ marks of dropped literals must
        // be cleared too, so remember the full clause
        to_clear_.assign(out_learnt.begin(), out_learnt.end());
        size_t keep = 1;
        for (size_t i = 1; i < out_learnt.size(); ++i) {
            if (!literal_redundant(out_learnt[i])) out_learnt[keep++] = out_learnt[i];
        }
        out_learnt.resize(keep);

        if (out_learnt.size() == 1) {
            out_btlevel = 0;
        } else {
            size_t max_i = 1;
            for (size_t i = 2; i < out_learnt.size(); ++i)
                if (level_[lit_var(out_learnt[i])] > level_[lit_var(out_learnt[max_i])]) max_i = i;
            std::swap(out_learnt[1], out_learnt[max_i]);
            out_btlevel = level_[lit_var(out_learnt[1])];
        }
        for (Lit l : to_clear_) seen_[lit_var(l)] = 0;
    }

    std::vector<Lit> to_clear_;

    void reduce_learnts() {
        std::sort(learnts_.begin(), learnts_.end(), [&](CRef a, CRef b) {
            uint32_t la = clause_lbd(a), lb = clause_lbd(b);
            if (la != lb) return la > lb;
            return clause_act(a) < clause_act(b);
        });
        size_t target = learnts_.size() / 2;
        size_t kept = 0;
        for (size_t i = 0; i < learnts_.size(); ++i) {
            CRef c = learnts_[i];
            bool locked = reason_[lit_var(clause_lits(c)[0])] == c &&
                          lit_value(clause_lits(c)[0]) == kTrue;
            if (i < target && clause_size(c) > 2 && clause_lbd(c) > 2 && !locked) {
                detach_clause(c);
            } else {
                learnts_[kept++] = c;
            }
        }
        learnts_.resize(kept);
    }

    bool verify_model(const std::vector<uint8_t>& model) const {
        for (CRef c : originals_) {
            const Lit* lits = clause_lits(c);
            uint32_t size = clause_size(c);
            bool sat = false;
            for (uint32_t i = 0; i < size && !sat; ++i) {
                int var = lit_var(lits[i]) + 1;
                sat = (model[var] != 0) != lit_sign(lits[i]);
            }
            if (!sat) return false;
        }
        return true;
    }
};

void Cdcl::add_clause(std::span<const int> lits) {
    cancel_until(0);
    std::vector<Lit> clause;
    clause.reserve(lits.size());
    for (int ext : lits) {
        int var = std::abs(ext);
        if (ext == 0 || var > num_vars_)
            throw BackendError("literal out of range: " + std::to_string(ext));
        clause.push_back(from_dimacs(ext));
    }
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (size_t i = 0; i + 1 < clause.size(); ++i)
        if (clause[i] == lit_neg(clause[i + 1])) return;  // tautology
    // drop literals already false at level 0; satisfied clause is dropped whole
    std::vector<Lit> reduced;
    for (Lit l : clause) {
        uint8_t v = lit_value(l);
        if (v == kTrue && level_[lit_var(l)] == 0) return;
        if (v == kFalse && level_[lit_var(l)] == 0) continue;
        reduced.push_back(l);
    }
    if (reduced.empty()) {
        ok_ = false;
        return;
    }
    if (reduced.size() == 1) {
        if (lit_value(reduced[0]) == kFalse) {
            ok_ = false;
            return;
        }
        if (lit_value(reduced[0]) == kUndef) {
            enqueue(reduced[0], kNoReason);
            if (propagate() != kNoReason) ok_ = false;
        }
        return;
    }
    CRef c = alloc_clause(reduced, false);
    originals_.push_back(c);
    attach_clause(c);
}

SolveResult Cdcl::solve(double timeout_seconds) {
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    auto result_with = [&](SolveStatus s) {
        SolveResult r;
        r.status = s;
        r.elapsed_seconds = elapsed();
        return r;
    };

    cancel_until(0);
    if (!ok_) return result_with(SolveStatus::Unsat);
    if (propagate() != kNoReason) {
        ok_ = false;
        return result_with(SolveStatus::Unsat);
    }

    if (max_learnts_ < 1) max_learnts_ = originals_.size() / 3.0 + 4000;
    uint64_t restart_limit = 100;
    uint64_t conflicts_at_restart = conflicts_;
    std::vector<Lit> learnt;

    for (;;) {
        CRef conflict = propagate();
        if (conflict != kNoReason) {
            ++conflicts_;
            if (decision_level() == 0) {
                ok_ = false;
                return result_with(SolveStatus::Unsat);
            }
            int backtrack_level;
            analyze(conflict, learnt, backtrack_level);
            cancel_until(backtrack_level);
            if (learnt.size() == 1) {
                enqueue(learnt[0], kNoReason);
            } else {
                CRef c = alloc_clause(learnt, true);
                clause_lbd(c) = compute_lbd(learnt);
                learnts_.push_back(c);
                attach_clause(c);
                bump_clause(c);
                enqueue(learnt[0], c);
            }
            var_inc_ *= kVarDecay;
            cla_inc_ *= kClaDecay;
            if ((conflicts_ & 511) == 0 && elapsed() > timeout_seconds) {
                cancel_until(0);
                return result_with(SolveStatus::TimedOut);
            }
        } else {
            if (conflicts_ - conflicts_at_restart >= restart_limit) {
                conflicts_at_restart = conflicts_;
                restart_limit = static_cast<uint64_t>(restart_limit * 1.1) + 1;
                cancel_until(0);
                if (elapsed() > timeout_seconds) return result_with(SolveStatus::TimedOut);
            }
            if (learnts_.size() >= max_learnts_ + trail_.size()) {
                max_learnts_ *= 1.1;
                reduce_learnts();
            }
            // pick a decision variable
            int var = -1;
            while (!heap_.empty()) {
                int v = heap_pop();
                if (value_[v] == kUndef) {
                    var = v;
                    break;
                }
            }
            if (var < 0) {
                // everything assigned: a model
                std::vector<uint8_t> model(num_vars_ + 1, 0);
                for (int v = 0; v < num_vars_; ++v) model[v + 1] = value_[v] == kTrue;
                if (!verify_model(model))
                    throw BackendError("builtin solver produced a non-satisfying model");
                SolveResult r;
                r.status = SolveStatus::Sat;
                r.model = std::move(model);
                r.elapsed_seconds = elapsed();
                cancel_until(0);
                return r;
            }
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            enqueue(make_lit(var, saved_phase_[var] != 0), kNoReason);
        }
    }
}

}  // namespace

std::unique_ptr<SolverSession> make_builtin_solver() { return std::make_unique<Cdcl>(); }

void SolverSession::add_formula(const CnfFormula& formula) {
    ensure_vars(formula.num_vars());
    for (size_t i = 0; i < formula.num_clauses(); ++i) add_clause(formula.clause(i));
}

std::unique_ptr<SolverSession> BackendConfig::make() const {
    if (kind == SolverBackend::External) return make_external_solver(external_command);
    return make_builtin_solver();
}

}  // namespace dfainduct
