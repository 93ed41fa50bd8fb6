// kb.hpp — abstract syntax and well-formedness for knowledge bases of an
// expressive description logic with Boolean role operators, products of
// concepts, and finite datatypes.
//
// Terms follow four grammars: datatype terms, concept terms, abstract role
// terms, concrete role terms.  Statements split into RBox, TBox and ABox
// forms.  Everything is an immutable value; shared_ptr<const T> is used for
// term trees.

#ifndef DL4R_KB_HPP
#define DL4R_KB_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace dl4r {

// ── Datatype map ────────────────────────────────────────────────────────────

// Finite datatype semantics: a datatype's extension is its declared constant
// set, a facet denotes a declared subset of those constants.
struct DatatypeMap {
    struct Datatype {
        std::string name;
        std::vector<std::string> constants;                       // declaration order
        std::vector<std::pair<std::string, std::vector<std::string>>> facets;
    };
    std::vector<Datatype> datatypes;  // declaration order

    const Datatype* find(const std::string& name) const;
    bool has_constant(const std::string& datatype, const std::string& value) const;
    // Datatype owning a facet name; nullopt when absent or ambiguous.
    std::optional<std::string> facet_datatype(const std::string& facet) const;

    bool operator==(const DatatypeMap&) const = default;
};

// A datatype constant reference: value "v" of datatype d (written "v"^d).
struct Constant {
    std::string value;
    std::string datatype;
    auto operator<=>(const Constant&) const = default;
};

// ── Terms ───────────────────────────────────────────────────────────────────

struct ConceptTerm;
struct RoleTerm;
struct CRoleTerm;
struct DataTerm;
using ConceptPtr = std::shared_ptr<const ConceptTerm>;
using RolePtr = std::shared_ptr<const RoleTerm>;
using CRolePtr = std::shared_ptr<const CRoleTerm>;
using DataPtr = std::shared_ptr<const DataTerm>;

// Concept terms: A | Thing | Nothing | ~C | C|D | C&D | {a,...} |
// exists R.Self | exists R.{a} | exists P.{e}.
struct ConceptTerm {
    enum class Kind {
        Name, Top, Bottom, Not, Or, And, Nominal, ExistsSelf, ExistsValue, ExistsData
    };
    Kind kind{Kind::Name};
    std::string name;                       // Name
    ConceptPtr lhs, rhs;                    // Not (lhs), Or/And
    RolePtr role;                           // ExistsSelf, ExistsValue
    CRolePtr crole;                         // ExistsData
    std::vector<std::string> individuals;   // Nominal, ExistsValue (single)
    std::optional<Constant> constant;       // ExistsData
};

// Abstract role terms: S | U | inv(R) | ~R | R|S | R&S | dom(R,C) | ran(R,C) |
// restr(R,C,D) | id(C) | prod(C,D).
struct RoleTerm {
    enum class Kind {
        Name, Universal, Inverse, Not, Or, And, DomRestr, RanRestr, BothRestr, Id, Product
    };
    Kind kind{Kind::Name};
    std::string name;
    RolePtr lhs, rhs;            // Inverse/Not (lhs), Or/And
    ConceptPtr c1, c2;           // restrictions, Id, Product
};

// Concrete role terms: T | ~P | P|Q | P&Q | dom(P,C) | ran(P,t) | restr(P,C,t).
struct CRoleTerm {
    enum class Kind { Name, Not, Or, And, DomRestr, RanRestr, BothRestr };
    Kind kind{Kind::Name};
    std::string name;
    CRolePtr lhs, rhs;
    ConceptPtr c1;
    DataPtr t1;
};

// Datatype terms: data ranges (facets, enumerations, datatype names, per-
// datatype tops/bottoms, singletons) closed under ~, |, &.  Defined is a
// flattener-introduced name for a compound term; the parser never makes one.
struct DataTerm {
    enum class Kind { Facet, Enum, DatatypeName, TopD, BotD, Singleton, Not, Or, And, Defined };
    Kind kind{Kind::Facet};
    std::string name;                  // Facet (facet name), DatatypeName/TopD/BotD (datatype)
    std::string datatype;              // owning datatype for Facet/Enum/Singleton
    std::vector<std::string> values;   // Enum (constant values)
    DataPtr lhs, rhs;
};

// Term factories.
ConceptPtr c_name(std::string n);
ConceptPtr c_top();
ConceptPtr c_bottom();
ConceptPtr c_not(ConceptPtr c);
ConceptPtr c_or(ConceptPtr a, ConceptPtr b);
ConceptPtr c_and(ConceptPtr a, ConceptPtr b);
ConceptPtr c_nominal(std::vector<std::string> individuals);
ConceptPtr c_exists_self(RolePtr r);
ConceptPtr c_exists_value(RolePtr r, std::string individual);
ConceptPtr c_exists_data(CRolePtr p, Constant e);

RolePtr r_name(std::string n);
RolePtr r_universal();
RolePtr r_inverse(RolePtr r);
RolePtr r_not(RolePtr r);
RolePtr r_or(RolePtr a, RolePtr b);
RolePtr r_and(RolePtr a, RolePtr b);
RolePtr r_dom(RolePtr r, ConceptPtr c);
RolePtr r_ran(RolePtr r, ConceptPtr c);
RolePtr r_both(RolePtr r, ConceptPtr c1, ConceptPtr c2);
RolePtr r_id(ConceptPtr c);
RolePtr r_product(ConceptPtr a, ConceptPtr b);

CRolePtr p_name(std::string n);
CRolePtr p_not(CRolePtr p);
CRolePtr p_or(CRolePtr a, CRolePtr b);
CRolePtr p_and(CRolePtr a, CRolePtr b);
CRolePtr p_dom(CRolePtr p, ConceptPtr c);
CRolePtr p_ran(CRolePtr p, DataPtr t);
CRolePtr p_both(CRolePtr p, ConceptPtr c, DataPtr t);

DataPtr d_facet(std::string facet, std::string datatype);
DataPtr d_enum(std::vector<std::string> values, std::string datatype);
DataPtr d_datatype(std::string datatype);
DataPtr d_top(std::string datatype);
DataPtr d_bot(std::string datatype);
DataPtr d_singleton(Constant e);
DataPtr d_not(DataPtr t);
DataPtr d_or(DataPtr a, DataPtr b);
DataPtr d_and(DataPtr a, DataPtr b);

// A compound facet expression: Boolean combination of facet names of one
// datatype, held in conjunctive normal form.  Plain facet names and the
// per-datatype top/bottom are not facet expressions.
struct FacetExpr {
    struct Lit {
        std::string facet;
        bool negated{false};
        auto operator<=>(const Lit&) const = default;
    };
    std::string datatype;
    std::vector<std::vector<Lit>> cnf;  // conjunction of disjunctions
    std::string text;                   // canonical rendering, used as variable tag
};

// Classifies a data term as a compound facet expression (maximal subtrees of
// ~/&/| over facets of a single datatype).  Returns nullopt for anything else,
// including bare facets and mixed-datatype combinations.
std::optional<FacetExpr> facet_expr_of(const DataPtr& t);

// Canonical term rendering (also used as the definitional variable tag for
// compound terms).
std::string print(const ConceptTerm& c);
std::string print(const RoleTerm& r);
std::string print(const CRoleTerm& p);
std::string print(const DataTerm& t);

bool term_equal(const ConceptPtr& a, const ConceptPtr& b);
bool term_equal(const RolePtr& a, const RolePtr& b);
bool term_equal(const CRolePtr& a, const CRolePtr& b);
bool term_equal(const DataPtr& a, const DataPtr& b);

// ── Statements ──────────────────────────────────────────────────────────────

struct Statement {
    enum class Kind {
        // RBox
        RoleEquiv,      // R1 == R2
        RoleSub,        // R1 <= R2
        RoleChainSub,   // chain(R1,...,Rn) <= R
        Sym, Asym, Ref, Irref, Tra, FunA,
        DisA,           // Dis(R1,R2)
        CRoleEquiv, CRoleSub, DisC, FunC,
        // TBox
        ConceptEquiv,   // C1 == C2
        ConceptSub,     // C1 <= C2
        SubForallR,     // C1 <= forall R . C2
        ExistsSub,      // exists R . C1 <= C2
        AtLeastSub,     // atleast(n, R, C1) <= C2
        SubAtMost,      // C1 <= atmost(n, R, C2)
        SubForallP,     // C1 <= forall P . t
        ExistsSubP,     // exists P . t <= C1
        AtLeastSubP,    // atleast(n, P, t) <= C1
        SubAtMostP,     // C1 <= atmost(n, P, t)
        DataEquiv,      // t1 == t2
        DataSub,        // t1 <= t2
        // ABox
        InstanceOf,     // a : C
        RolePair,       // (a,b) : R   or   (a,b) : ~R  (negated assertion)
        IndEq,          // a = b
        IndNeq,         // a != b
        DataInstance,   // "v"^d : t
        CRolePair       // (a,"v"^d) : P  or negated
    };

    Kind kind{Kind::InstanceOf};
    ConceptPtr c1, c2;
    RolePtr r1, r2;
    std::vector<RolePtr> chain;
    CRolePtr p1, p2;
    DataPtr t1, t2;
    int n{0};                       // cardinality bound
    std::string a, b;               // individuals
    std::optional<Constant> value;  // datatype constant operand
    bool negated{false};            // RolePair / CRolePair assertions

    std::string text() const;       // canonical surface form
};

// Statement factories (the ones tests and the flattener need).
Statement st_instance(std::string a, ConceptPtr c);
Statement st_role_pair(std::string a, std::string b, RolePtr r, bool negated = false);
Statement st_ind_eq(std::string a, std::string b);
Statement st_ind_neq(std::string a, std::string b);
Statement st_data_instance(Constant e, DataPtr t);
Statement st_crole_pair(std::string a, Constant e, CRolePtr p, bool negated = false);
Statement st_concept_equiv(ConceptPtr a, ConceptPtr b);
Statement st_concept_sub(ConceptPtr a, ConceptPtr b);
Statement st_sub_forall_r(ConceptPtr c1, RolePtr r, ConceptPtr c2);
Statement st_exists_sub(RolePtr r, ConceptPtr c1, ConceptPtr c2);
Statement st_atleast_sub(int n, RolePtr r, ConceptPtr c1, ConceptPtr c2);
Statement st_sub_atmost(ConceptPtr c1, int n, RolePtr r, ConceptPtr c2);
Statement st_sub_forall_p(ConceptPtr c1, CRolePtr p, DataPtr t);
Statement st_exists_sub_p(CRolePtr p, DataPtr t, ConceptPtr c);
Statement st_atleast_sub_p(int n, CRolePtr p, DataPtr t, ConceptPtr c);
Statement st_sub_atmost_p(ConceptPtr c, int n, CRolePtr p, DataPtr t);
Statement st_data_equiv(DataPtr a, DataPtr b);
Statement st_data_sub(DataPtr a, DataPtr b);
Statement st_role_equiv(RolePtr a, RolePtr b);
Statement st_role_sub(RolePtr a, RolePtr b);
Statement st_chain(std::vector<RolePtr> chain, RolePtr r);
Statement st_role_prop(Statement::Kind k, RolePtr r);                  // Sym..FunA
Statement st_dis_a(RolePtr a, RolePtr b);
Statement st_crole_equiv(CRolePtr a, CRolePtr b);
Statement st_crole_sub(CRolePtr a, CRolePtr b);
Statement st_dis_c(CRolePtr a, CRolePtr b);
Statement st_fun_c(CRolePtr p);

bool statement_equal(const Statement& s, const Statement& t);

// ── KnowledgeBase ───────────────────────────────────────────────────────────

struct KnowledgeBase {
    DatatypeMap dmap;
    std::vector<Statement> rbox;
    std::vector<Statement> tbox;
    std::vector<Statement> abox;

    void add(Statement s);  // routes by statement kind
    std::vector<const Statement*> all() const;
};

bool kb_equal(const KnowledgeBase& a, const KnowledgeBase& b);

// Canonical textual form; parse(print(kb)) == kb.
std::string print(const KnowledgeBase& kb);

// ── Diagnostics / validation ────────────────────────────────────────────────

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity{Severity::Error};
    std::string message;
    int line{0};
    int column{0};
    std::vector<std::string> expected;  // expected-token set (parser only)
};

bool has_errors(const std::vector<Diagnostic>& ds);

// Well-formedness: empty list iff every statement conforms to the term
// grammars and the datatype map invariants hold.
std::vector<Diagnostic> validate(const KnowledgeBase& kb);

// ── Signature ───────────────────────────────────────────────────────────────

struct Signature {
    std::vector<std::string> concepts;        // concept names, first-occurrence order
    std::vector<std::string> abstract_roles;  // includes "U"
    std::vector<std::string> concrete_roles;
    std::vector<std::string> individuals;     // first-occurrence order
    std::vector<std::string> datatypes;       // datatypes occurring in the KB
    std::map<std::string, std::vector<std::string>> facets;     // per datatype, occurring
    std::map<std::string, std::vector<std::string>> constants;  // per datatype, occurring
    // Compound facet expressions per datatype (in CNF), i.e. the ones that
    // are not plain facet names or per-datatype top/bottom.
    std::map<std::string, std::vector<FacetExpr>> facet_exprs;
    std::vector<std::vector<std::string>> nominal_sets;  // {a,...} occurring
    std::vector<std::pair<std::vector<std::string>, std::string>> data_ranges;  // enums + datatype

    bool has_concept(const std::string& n) const;
    bool has_individual(const std::string& n) const;
};

// Scan of all statements; total on validated KBs.
Signature signature(const KnowledgeBase& kb);

}  // namespace dl4r

#endif  // DL4R_KB_HPP
