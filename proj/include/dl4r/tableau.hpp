// tableau.hpp — KE-tableau saturation over a ground clause set: the E-rule
// (single-conclusion elimination) and the PB-rule (analytic cut), branch
// classification, and equality normalization.
//
// A branch is closed when it carries a literal and its complement, or a
// literal ~(x = x).  A clause is fulfilled on a branch when one of its
// disjuncts is present.  Saturation runs until every branch is fulfilled or
// closed; equality normalization then rewrites each open branch with a
// substitution that collapses x = y literals toward a fixed total order,
// re-checking closure afterwards.

#ifndef DL4R_TABLEAU_HPP
#define DL4R_TABLEAU_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "dl4r/grounder.hpp"
#include "dl4r/setcalc.hpp"

namespace dl4r {

// ── variable order ──────────────────────────────────────────────────────────

// Total order on level-0 variables.  The default ranks individuals by first
// occurrence in the KB, then datatype constants, then everything else
// lexicographically; "lexical" compares names only.
struct VarOrder {
    std::map<std::string, int> rank;  // explicit priorities; lower wins

    int compare(const std::string& a, const std::string& b) const;
    const std::string& min(const std::string& a, const std::string& b) const;

    static VarOrder lexical();
    static VarOrder with_priority(const std::vector<std::string>& names);
};

// ── trace ───────────────────────────────────────────────────────────────────

struct TraceEvent {
    enum class Kind { E, PB, Subst };
    Kind kind{Kind::E};
    int branch{0};
    int clause{-1};   // index into Tableau::clauses
    int index{0};     // j (E) or h (PB), 1-based
    GroundLiteral lit;
    std::string from, to;  // Subst

    std::string text() const;
};

// ── branches ────────────────────────────────────────────────────────────────

class Branch {
public:
    int id{0};
    bool closed{false};
    bool normalized{false};
    std::vector<GroundLiteral> literals;             // branch order
    std::vector<char> fulfilled;                     // per clause
    std::vector<int> pb_count;                       // PB applications per clause on this path
    std::map<std::string, std::string> sigma;        // equality substitution (after normalization)
    std::vector<Clause> clauses;                     // rewritten clauses (after normalization)

    bool has(const GroundLiteral& l) const { return set_.count(l) > 0; }
    // Appends unless already present; detects closure.  Returns true when
    // the literal was new.
    bool append(const GroundLiteral& l);
    void rebuild_index();

    // Level-0 variables on the branch (literals and clauses), plus collapsed
    // originals from sigma.
    std::vector<std::string> level0_vars() const;

private:
    std::unordered_set<GroundLiteral, GroundLiteralHash> set_;
};

struct Tableau {
    std::vector<Clause> clauses;      // the disjunctions of the expansion (shared, pre-substitution)
    std::vector<GroundLiteral> base;  // the ground conjuncts every branch starts from
    std::vector<Branch> branches;     // leaves, in deterministic order
    std::vector<TraceEvent> trace;
    bool resource_exceeded{false};
    long long rule_applications{0};

    bool closed() const;
    std::vector<const Branch*> open_branches() const;
};

struct TableauOptions {
    VarOrder order;
    long long max_branches{50000};
    bool record_trace{false};
};

// ── rules ───────────────────────────────────────────────────────────────────

// E-rule: if the complements of all disjuncts of clause `ci` except the j-th
// are on the branch, append the j-th disjunct and mark the clause fulfilled.
// Returns false (branch untouched) when the premise set is incomplete.
bool apply_E(Branch& b, const std::vector<Clause>& clauses, int ci, int j);

// PB-rule on the h-th disjunct of clause `ci`: returns the complement branch
// and the literal branch, in that order.
std::pair<Branch, Branch> apply_PB(const Branch& b, const std::vector<Clause>& clauses, int ci,
                                   int h);

// ── saturation / normalization / models ────────────────────────────────────

// Runs the E/PB loop to completion: every returned branch is closed or
// fulfilled.  Branch and clause selection are deterministic (leftmost open
// unfulfilled branch, first unfulfilled clause).
Tableau saturate(const Expansion& phi, const TableauOptions& opts = {});

// Builds sigma for one open fulfilled branch, rewrites it, re-checks
// closure, and retains rewritten clauses for later evaluation.  Idempotent.
void normalize_equalities(Branch& b, const std::vector<Clause>& clauses, const VarOrder& order,
                          std::vector<TraceEvent>* trace = nullptr);

// saturate + normalize every open branch.
Tableau run_tableau(const Expansion& phi, const TableauOptions& opts = {});

// The canonical interpretation of an open complete branch: domain = its
// level-0 representatives, set extensions = exactly the positive literals
// present.  Collapsed variables are assigned through sigma.  Returns nullopt
// on closed branches.
std::optional<Interpretation> branch_model(const Branch& b);

}  // namespace dl4r

#endif  // DL4R_TABLEAU_HPP
