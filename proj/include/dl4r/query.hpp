// query.hpp — higher-order conjunctive queries over four variable sorts
// (individual/data-value, concept, abstract-role, concrete-role) and
// sort-preserving substitutions into knowledge-base vocabulary.

#ifndef DL4R_QUERY_HPP
#define DL4R_QUERY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dl4r/kb.hpp"

namespace dl4r {

// Variable sorts.  Query variables are written with a leading '?', which
// keeps them disjoint from every KB name.
enum class VarSort { Individual, Concept, AbstractRole, ConcreteRole };

struct QueryVariable {
    std::string name;  // includes the '?'
    VarSort sort{VarSort::Individual};
    auto operator<=>(const QueryVariable&) const = default;
};

// One argument of a query atom: an individual name, a datatype constant, or
// an individual/data-value variable.
struct QueryArg {
    enum class Kind { Individual, Constant, Variable };
    Kind kind{Kind::Individual};
    std::string name;               // individual or ?variable
    std::optional<Constant> value;  // Kind::Constant

    static QueryArg ind(std::string n);
    static QueryArg var(std::string n);
    static QueryArg constant(Constant c);

    bool is_var() const { return kind == Kind::Variable; }
    std::string text() const;
    auto operator<=>(const QueryArg&) const = default;
};

// A HO literal: one of  R(w1,w2) | P(w1,u1) | C(w1) | r(w1,w2) | p(w1,u1) |
// c(w1) | w1 = w2 | u1 = u2,  possibly negated.  The predicate is either a
// closed term (kept by canonical name) or a variable of the matching sort.
struct HOLiteral {
    enum class Shape { Concept, AbstractRole, ConcreteRole, Equality };

    bool negated{false};
    Shape shape{Shape::Concept};
    bool predicate_is_var{false};
    std::string predicate;  // name, canonical term text, or ?variable
    QueryArg arg1, arg2;    // Concept uses arg1 only

    std::string text() const;
    auto operator<=>(const HOLiteral&) const = default;
};

HOLiteral ho_concept(std::string pred, QueryArg w, bool neg = false);
HOLiteral ho_role(std::string pred, QueryArg w1, QueryArg w2, bool neg = false);
HOLiteral ho_crole(std::string pred, QueryArg w1, QueryArg u1, bool neg = false);
HOLiteral ho_eq(QueryArg a, QueryArg b, bool neg = false);
// Variable-predicate forms.
HOLiteral ho_cvar(std::string var, QueryArg w, bool neg = false);
HOLiteral ho_rvar(std::string var, QueryArg w1, QueryArg w2, bool neg = false);
HOLiteral ho_pvar(std::string var, QueryArg w1, QueryArg u1, bool neg = false);

// Ordered conjunction of HO literals; the empty query is the always-true
// query (lambda).  Order matters to the matching engine; answer sets do not
// depend on it.
struct HOQuery {
    std::vector<HOLiteral> literals;

    bool empty() const { return literals.empty(); }
    std::string text() const;
    bool operator==(const HOQuery&) const = default;
};

// The variables of a query, partitioned by sort.
struct QueryVars {
    std::set<std::string> individuals, concepts, abstract_roles, concrete_roles;

    bool empty() const {
        return individuals.empty() && concepts.empty() && abstract_roles.empty() &&
               concrete_roles.empty();
    }
    std::vector<QueryVariable> all() const;
};

QueryVars variables(const HOQuery& q);

// A sort-preserving substitution from query variables to KB entities.
// Individual-sort variables map to individual names or datatype constants.
struct DLSubstitution {
    struct Target {
        enum class Kind { Individual, Constant, Concept, AbstractRole, ConcreteRole } kind;
        std::string name;
        std::optional<Constant> value;
        auto operator<=>(const Target&) const = default;
    };
    std::map<std::string, Target> map;  // keyed by ?variable name

    bool empty() const { return map.empty(); }
    bool operator==(const DLSubstitution&) const = default;
    std::string text() const;
};

// Applies sigma to q: every occurrence of a mapped variable is replaced,
// literal order preserved.  Returns nullopt on a sort violation (e.g. a
// concept variable mapped onto a role name).
std::optional<HOQuery> apply(const DLSubstitution& sigma, const HOQuery& q);

// Well-formedness of a query against a KB signature: names must exist with
// the right sorts, and no variable may occur in conflicting positions.
std::vector<Diagnostic> validate_query(const HOQuery& q, const KnowledgeBase& kb);

}  // namespace dl4r

#endif  // DL4R_QUERY_HPP
