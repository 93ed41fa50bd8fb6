// engine.hpp — answer extraction: matches the translated query against every
// open complete branch of the saturated tableau via depth-first decision
// trees and decodes the resulting substitutions back to KB vocabulary.

#ifndef DL4R_ENGINE_HPP
#define DL4R_ENGINE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dl4r/query.hpp"
#include "dl4r/tableau.hpp"
#include "dl4r/translator.hpp"

namespace dl4r {

// A set-level substitution binding query variables to branch variables.
struct MatchSubst {
    std::map<std::string, std::string> m;  // ?variable -> variable name (level-respecting)
    auto operator<=>(const MatchSubst&) const = default;
};

struct EngineOptions {
    // Evaluate equality/inequality query atoms against the branch model
    // instead of by literal lookup.
    bool semantic_eq{false};
};

// Per-branch matching statistics (stack discipline / fan-out audit).
struct MatchStats {
    long long pushes{0};
    long long pops{0};
    long long leaves{0};
    long long max_fanout{0};  // s: max matches for one conjunct
};

// The literal-matching context for one open complete branch: its literal set
// augmented with x = x for every level-0 variable on it.
class BranchMatcher {
public:
    BranchMatcher(const Branch& b, const EngineOptions& opts = {});

    // All substitutions rho over the template's unbound ?variables such that
    // (template)rho equals a literal on the branch, polarity included.
    std::vector<MatchSubst> match_literal(const GroundLiteral& tmpl) const;

    // Depth-first consumption of the conjuncts, leftmost first.  Returns the
    // set of sigma-prime bindings whose leaves reached the end of the query.
    std::set<MatchSubst> answer_branch(const std::vector<GroundLiteral>& psi,
                                       MatchStats* stats = nullptr) const;

    const Branch& branch() const { return *branch_; }

private:
    const Branch* branch_;
    EngineOptions opts_;
    std::vector<GroundLiteral> lits_;  // branch literals + reflexive seeds
    std::optional<Interpretation> model_;  // for semantic_eq
};

// ── answers ─────────────────────────────────────────────────────────────────

struct RawAnswer {
    int branch_id{0};
    MatchSubst sigma_prime;                       // query-variable bindings
    std::map<std::string, std::string> sigma;     // the branch's equality substitution
    auto operator<=>(const RawAnswer&) const = default;
};

struct DecodedAnswer {
    std::map<std::string, DLSubstitution::Target> bindings;
    int branch_id{0};

    DLSubstitution to_substitution() const;
    std::string text() const;
    bool operator<(const DecodedAnswer& o) const { return text() < o.text(); }
    bool operator==(const DecodedAnswer& o) const { return text() == o.text(); }
};

struct AnswerSet {
    bool kb_consistent{true};
    std::vector<RawAnswer> raw;              // deduplicated, sorted
    std::vector<DecodedAnswer> decoded;      // deduplicated, canonical order
    MatchStats stats;
};

struct DecodeOptions {
    bool include_internal{false};
};

// Union of answer_branch over all open branches, then decoding: projection
// onto the query's variables, mapping through the naming map, expansion of
// level-0 bindings to every name in their equality class, and filtering of
// internal names (witnesses, definitional sets, domain markers) unless
// include_internal is set.
AnswerSet answer_set(const Tableau& t, const std::vector<GroundLiteral>& psi, const HOQuery& q,
                     const NamingMap& nm, const EngineOptions& eopts = {},
                     const DecodeOptions& dopts = {});

// Decoding of one branch-level answer; empty when a binding does not decode.
std::vector<DecodedAnswer> decode(const RawAnswer& ans, const HOQuery& q, const NamingMap& nm,
                                  const DecodeOptions& dopts = {});

}  // namespace dl4r

#endif  // DL4R_ENGINE_HPP
