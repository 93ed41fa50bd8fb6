// translator.hpp — the mapping from knowledge bases and queries into the
// ground set calculus: per-statement clause emission (theta), the twelve
// signature-indexed constraint groups (xi), the facet-expression expansion
// (zeta), and the assembly of the full CNF formula phi_KB.
//
// Statements are first flattened: every compound term nested where a clause
// template expects a name is replaced by a definitional name (its canonical
// print) plus a defining statement.  Nominal sets, data-range enumerations
// and compound facet expressions are not flattened; dedicated constraint
// groups (xi_11, xi_12) define their set variables directly.

#ifndef DL4R_TRANSLATOR_HPP
#define DL4R_TRANSLATOR_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dl4r/kb.hpp"
#include "dl4r/query.hpp"
#include "dl4r/setcalc.hpp"

namespace dl4r {

// ── NamingMap ───────────────────────────────────────────────────────────────

// Bijection between DL entities and set variables.  Tags are deterministic:
// individual a -> level-0 "a", constant "v"^d -> level-0 "v", concept C ->
// level-1 "C", role R -> level-3 "R", compound terms -> their canonical
// print, internal machinery -> '$'-prefixed names.  Every variable occurring
// in an emitted formula has exactly one entry.
class NamingMap {
public:
    enum class Kind {
        Individual, Constant, Witness,
        Concept, DefinedConcept, DomainI, DomainD, Top, Bottom,
        DatatypeSet, TopD, BotD, Facet, FacetExprSet, NominalSet, DataRange, DefinedData,
        Role, Universal, DefinedRole, CRole, DefinedCRole,
        QueryVar
    };

    struct Entry {
        Kind kind{Kind::Individual};
        std::string dl_name;             // user-level name, when one exists
        std::optional<Constant> value;   // Kind::Constant
        VarSort query_sort{VarSort::Individual};  // Kind::QueryVar
        bool internal{false};            // hidden from decoded answers by default
    };

    SetVar individual(const std::string& a);
    SetVar constant_var(const Constant& e);
    SetVar witness_i();
    SetVar witness_d();
    SetVar witness_dt(const std::string& datatype);

    SetVar domain_i();
    SetVar domain_d();
    SetVar top();
    SetVar bottom();
    SetVar datatype_set(const std::string& d);
    SetVar top_d(const std::string& d);
    SetVar bot_d(const std::string& d);
    SetVar facet(const std::string& f, const std::string& d);
    SetVar facet_expr_set(const FacetExpr& fe);
    SetVar nominal_set(const std::vector<std::string>& individuals);
    SetVar data_range(const std::vector<std::string>& values, const std::string& d);

    // Leaf terms only (names, nullary constants, nominals, enumerations,
    // facets, facet expressions).  Compound terms must be flattened first.
    std::optional<SetVar> concept_leaf(const ConceptPtr& c);
    std::optional<SetVar> role_leaf(const RolePtr& r);
    std::optional<SetVar> crole_leaf(const CRolePtr& p);
    std::optional<SetVar> data_leaf(const DataPtr& t);

    SetVar query_var(const std::string& name, VarSort sort);

    const Entry* find(const SetVar& v) const;
    bool is_internal(const SetVar& v) const;
    bool known(const SetVar& v) const { return entries.count(v) > 0; }

    std::map<SetVar, Entry> entries;

private:
    SetVar record(Level level, std::string tag, Entry e);
};

// True for plain identifiers ([A-Za-z_][A-Za-z0-9_]*); definitional names
// produced by flattening never are.
bool is_plain_ident(const std::string& name);

// ── Flattening ──────────────────────────────────────────────────────────────

// Rewrites a KB so that every statement matches a clause template: compound
// subterms in leaf positions get definitional names plus defining statements.
// Idempotent.
KnowledgeBase flatten(const KnowledgeBase& kb);

// ── theta / xi / zeta ───────────────────────────────────────────────────────

struct ThetaResult {
    Formula formula;  // universals and/or ground literals
    std::vector<Diagnostic> diagnostics;
};

// Clause emission for one (flattened) statement.  Unsupported shapes yield a
// diagnostic naming the construct.
ThetaResult theta_statement(const Statement& s, NamingMap& nm);

// One constraint group.
struct XiGroup {
    int index{0};  // 1..12
    Formula part;
};

// The twelve groups, instantiated exactly over the signature.  Nonemptiness
// is realized by ground witness literals (one Skolem witness each for the
// individual domain, the data domain, and every datatype in the signature).
std::vector<XiGroup> xi_constraints(const Signature& sig, NamingMap& nm);

// Membership-formula template over one level-0 placeholder variable ("$z"):
// base facets map to facet-membership atoms, Boolean structure maps
// homomorphically.  CNF in, CNF over membership literals out.
std::vector<Clause> zeta(const FacetExpr& psi, NamingMap& nm);

// Ground facts realizing the finite datatype semantics: declared facet
// extensions pinned on occurring constants, and pairwise distinctness of
// occurring constants.
std::vector<GroundLiteral> datatype_facts(const Signature& sig, const DatatypeMap& dmap,
                                          NamingMap& nm);

// ── phi_KB ──────────────────────────────────────────────────────────────────

struct Translation {
    Formula phi;               // CNF: universals with single-clause matrices + ground literals
    NamingMap naming;
    Signature sig;             // of the flattened KB
    KnowledgeBase flattened;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

// Validate, flatten, emit theta for every statement plus the xi groups and
// datatype facts, then normalize: quantifiers pushed inward (one clause per
// universal), unused quantifiers dropped, duplicates removed, quantified
// variables renamed apart ($z1, $z2, ...).
Translation build_phi_kb(const KnowledgeBase& kb);

// Query translation: literal order preserved; query variables become
// placeholder variables of their level.  Unknown predicate names map to
// their canonical variables (which simply never match anything).
std::vector<GroundLiteral> theta_query(const HOQuery& q, NamingMap& nm);

// DL-level substitution -> level-respecting variable mapping.  Rejects
// entities that have no variable in the naming map.
std::optional<VarSubst> theta_substitution(const DLSubstitution& sigma, const NamingMap& nm);

// Renders phi one conjunct per line (the --emit-4lqs dump).
std::string render_phi(const Formula& phi);

}  // namespace dl4r

#endif  // DL4R_TRANSLATOR_HPP
