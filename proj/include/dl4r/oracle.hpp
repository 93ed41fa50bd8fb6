// oracle.hpp — independent brute-force reference.  Satisfiability of ground
// clause sets is decided by exhaustive backtracking over the atom universe
// (all equality and membership atoms over the occurring variables), with the
// equality axioms (reflexivity, symmetry, transitivity, congruence) supplied
// as clauses.  Answer sets are computed by enumerating every level-respecting
// candidate substitution and testing satisfiability of the conjunction.
//
// This module is deliberately quarantined from the tableau engine: beyond
// the shared literal/clause/interpretation types it has its own truth
// bookkeeping.  It is exhaustive and slow on purpose.

#ifndef DL4R_ORACLE_HPP
#define DL4R_ORACLE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dl4r/grounder.hpp"
#include "dl4r/setcalc.hpp"
#include "dl4r/translator.hpp"

namespace dl4r::oracle {

struct Options {
    long long max_atoms{200000};
    long long max_decisions{20'000'000};
    long long max_candidates{2'000'000};
};

enum class Status { Sat, Unsat, Resource };

struct SatResult {
    Status status{Status::Unsat};
    std::optional<Interpretation> witness;  // quotient model, set on Sat
};

// Satisfiability of a conjunction of ground literals and ground clauses.
SatResult satisfiable(const std::vector<GroundLiteral>& ground,
                      const std::vector<Clause>& clauses, const Options& opts = {});

inline SatResult satisfiable(const Expansion& phi, const Options& opts = {}) {
    return satisfiable(phi.ground, phi.clauses, opts);
}

// phi with extra ground literals conjoined (entailment checks, query
// instances).
SatResult satisfiable_with(const Expansion& phi, const std::vector<GroundLiteral>& extra,
                           const Options& opts = {});

// ── answer sets ─────────────────────────────────────────────────────────────

using Binding = std::map<std::string, std::string>;  // ?variable -> variable name

struct AnswerResult {
    Status status{Status::Sat};
    std::set<Binding> answers;
    long long candidates{0};
};

// Every level-respecting candidate over the variables of phi kept iff the
// expansion of phi plus the instantiated query is satisfiable.
AnswerResult brute_answer_set(const Formula& phi, const std::vector<GroundLiteral>& psi,
                              const Options& opts = {});

}  // namespace dl4r::oracle

#endif  // DL4R_ORACLE_HPP
