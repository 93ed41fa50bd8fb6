// setcalc.hpp — the ground sublanguage of a four-level stratified set
// calculus: variables of levels 0/1/3, ground literals over them, clauses,
// purely universal formulae, CNF formulae, and evaluation against finite
// interpretations.
//
// Level-0 variables denote domain elements, level-1 variables sets of
// elements, level-3 variables sets of ordered pairs.  Only the three atom
// shapes usable at level 0 exist here:
//
//     x = y        (Eq)
//     x in X1      (Mem1)
//     <x,y> in X3  (Mem3)
//
// Level-2 machinery is deliberately absent; nothing in this project emits it.

#ifndef DL4R_SETCALC_HPP
#define DL4R_SETCALC_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dl4r {

enum class Level : std::uint8_t { L0 = 0, L1 = 1, L3 = 3 };

// A variable is its level plus a tag.  Tags are unique per level; tags that
// start with '$' (witnesses, bound variables, internal sets) or that are not
// plain identifiers (definitional names for compound terms) belong to the
// translation machinery rather than to user vocabulary.
struct SetVar {
    Level level{Level::L0};
    std::string name;

    auto operator<=>(const SetVar&) const = default;
};

// Rendering of a level-0 variable: user names get the x_ prefix, internal
// names ($-prefixed) are shown as-is.
std::string render_var0(const std::string& name);

// ── GroundLiteral ───────────────────────────────────────────────────────────

struct GroundLiteral {
    enum class Kind : std::uint8_t { Eq, Mem1, Mem3 };

    Kind kind{Kind::Eq};
    bool negated{false};
    std::string x;    // level-0 (all kinds)
    std::string y;    // level-0 (Eq, Mem3)
    std::string set;  // level-1 (Mem1) or level-3 (Mem3) variable name

    static GroundLiteral eq(std::string x, std::string y, bool neg = false);
    static GroundLiteral mem1(std::string x, std::string s, bool neg = false);
    static GroundLiteral mem3(std::string x, std::string y, std::string s, bool neg = false);

    bool is_reflexive_eq() const { return kind == Kind::Eq && x == y; }

    auto operator<=>(const GroundLiteral&) const = default;
};

// Polarity flip; an involution.
GroundLiteral complement(const GroundLiteral& l);

struct GroundLiteralHash {
    std::size_t operator()(const GroundLiteral& l) const noexcept;
};

// ── Clause / PurelyUniversal / Formula ──────────────────────────────────────

// Nonempty disjunction of ground literals.  canonicalize() sorts and
// deduplicates the disjuncts.
struct Clause {
    std::vector<GroundLiteral> lits;

    Clause() = default;
    explicit Clause(std::vector<GroundLiteral> ls) : lits(std::move(ls)) {}

    void canonicalize();

    auto operator<=>(const Clause&) const = default;
};

// (forall z1)...(forall zn) matrix, matrix a conjunction of clauses over the
// quantified variables and free level-0 variables.  Quantified variables are
// pairwise distinct and distinct from every free variable of the matrix.
struct PurelyUniversal {
    std::vector<std::string> bound;  // level-0 names
    std::vector<Clause> matrix;      // CNF

    auto operator<=>(const PurelyUniversal&) const = default;
};

// Conjunction of purely universal formulae and ground literals (the shape of
// a translated knowledge base).
struct Formula {
    std::vector<GroundLiteral> ground;
    std::vector<PurelyUniversal> universals;
};

// Free level-0 variables of each shape (bound variables excluded).
std::set<std::string> vars0(const GroundLiteral& l);
std::set<std::string> vars0(const Clause& c);
std::set<std::string> vars0(const PurelyUniversal& u);
std::set<std::string> vars0(const Formula& f);

// All set variables (levels 1 and 3) occurring in each shape.
std::set<SetVar> set_vars(const GroundLiteral& l);
std::set<SetVar> set_vars(const Clause& c);
std::set<SetVar> set_vars(const PurelyUniversal& u);
std::set<SetVar> set_vars(const Formula& f);

// ── Substitution ────────────────────────────────────────────────────────────

// A level-respecting variable-to-variable mapping.  Only free occurrences are
// replaced.  substitute() on a PurelyUniversal refuses capture (a free
// variable being renamed into a quantified one) by returning nullopt.
struct VarSubst {
    std::map<std::string, std::string> l0, l1, l3;

    bool empty() const { return l0.empty() && l1.empty() && l3.empty(); }
    std::string apply0(const std::string& v) const;
};

GroundLiteral substitute(const VarSubst& s, const GroundLiteral& l);
Clause substitute(const VarSubst& s, const Clause& c);
std::optional<PurelyUniversal> substitute(const VarSubst& s, const PurelyUniversal& u);
std::optional<Formula> substitute(const VarSubst& s, const Formula& f);

// ── Interpretation / evaluation ─────────────────────────────────────────────

// A finite interpretation: a domain of |elements| objects (labels are kept
// for diagnostics), level-0 variables mapped to element indices, level-1
// variables to sets of indices, level-3 variables to sets of ordered pairs.
struct Interpretation {
    std::vector<std::string> elements;
    std::map<std::string, int> v0;
    std::map<std::string, std::set<int>> v1;
    std::map<std::string, std::set<std::pair<int, int>>> v3;

    int add_element(const std::string& label);
};

// True iff the interpretation assigns every variable of f.
bool covers(const Interpretation& m, const GroundLiteral& l);
bool covers(const Interpretation& m, const Clause& c);
bool covers(const Interpretation& m, const PurelyUniversal& u);
bool covers(const Interpretation& m, const Formula& f);

// Tarskian evaluation; universal quantifiers range over the whole domain.
// Throws std::out_of_range when a variable of f is unassigned.
bool evaluate(const Interpretation& m, const GroundLiteral& l);
bool evaluate(const Interpretation& m, const Clause& c);
bool evaluate(const Interpretation& m, const PurelyUniversal& u);
bool evaluate(const Interpretation& m, const Formula& f);

// ── Canonical rendering ─────────────────────────────────────────────────────
//
//     x_a in C      ~ (x_a = x_b)      <x_a,x_b> in R
//     forall $z1 . ((~ ($z1 in C) | $z1 in D))

std::string render(const GroundLiteral& l);
std::string render(const Clause& c);
std::string render(const PurelyUniversal& u);

}  // namespace dl4r

#endif  // DL4R_SETCALC_HPP
