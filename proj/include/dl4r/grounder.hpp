// grounder.hpp — expansion of purely universal conjuncts into ground clauses:
// every universal is instantiated over all functions from its quantified
// variables into the formula's free level-0 variables.

#ifndef DL4R_GROUNDER_HPP
#define DL4R_GROUNDER_HPP

#include <memory>
#include <vector>

#include "dl4r/kb.hpp"
#include "dl4r/setcalc.hpp"

namespace dl4r {

struct Expansion {
    std::vector<GroundLiteral> ground;  // quantifier-free conjuncts carried over
    std::vector<Clause> clauses;        // union of the per-universal expansions, canonical sorted

    // counters: m universal conjuncts, k = |Var0(phi)|, r = max quantifier
    // count, ell = max literal count per clause
    int m{0};
    int k{0};
    int r{0};
    int ell{0};
    long long instances{0};                 // total matrix instances = sum of k^{n_i}
    std::vector<long long> per_universal;   // k^{n_i} for each S_i

    std::vector<Diagnostic> diagnostics;
    bool resource_exceeded{false};
};

// One matrix instance per function from S's quantified variables into var0;
// duplicate clauses removed, each clause canonicalized.  An empty var0 under
// a nonempty quantifier prefix yields an empty result plus a diagnostic.
std::vector<Clause> expand_one(const PurelyUniversal& S, const std::vector<std::string>& var0,
                               std::vector<Diagnostic>* diags = nullptr);

// Expands every universal of phi over Var0(phi) and carries the ground
// conjuncts over.  Deterministic: output clauses are a canonical sorted set.
Expansion build_expansion(const Formula& phi, long long max_instances = 4'000'000);

}  // namespace dl4r

#endif  // DL4R_GROUNDER_HPP
