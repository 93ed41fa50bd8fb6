#include "dl4r/setcalc.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dl4r {

std::string render_var0(const std::string& name) {
    if (!name.empty() && name.front() == '$') return name;
    return "x_" + name;
}

GroundLiteral GroundLiteral::eq(std::string x, std::string y, bool neg) {
    GroundLiteral l;
    l.kind = Kind::Eq;
    l.negated = neg;
    l.x = std::move(x);
    l.y = std::move(y);
    return l;
}

GroundLiteral GroundLiteral::mem1(std::string x, std::string s, bool neg) {
    GroundLiteral l;
    l.kind = Kind::Mem1;
    l.negated = neg;
    l.x = std::move(x);
    l.set = std::move(s);
    return l;
}

GroundLiteral GroundLiteral::mem3(std::string x, std::string y, std::string s, bool neg) {
    GroundLiteral l;
    l.kind = Kind::Mem3;
    l.negated = neg;
    l.x = std::move(x);
    l.y = std::move(y);
    l.set = std::move(s);
    return l;
}

GroundLiteral complement(const GroundLiteral& l) {
    GroundLiteral c = l;
    c.negated = !c.negated;
    return c;
}

std::size_t GroundLiteralHash::operator()(const GroundLiteral& l) const noexcept {
    std::size_t h = std::hash<std::string>{}(l.x);
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    mix(std::hash<std::string>{}(l.y));
    mix(std::hash<std::string>{}(l.set));
    mix(static_cast<std::size_t>(l.kind) * 2 + (l.negated ? 1 : 0));
    return h;
}

void Clause::canonicalize() {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
}

// ── variable scans ──────────────────────────────────────────────────────────

std::set<std::string> vars0(const GroundLiteral& l) {
    std::set<std::string> out{l.x};
    if (l.kind != GroundLiteral::Kind::Mem1) out.insert(l.y);
    return out;
}

std::set<std::string> vars0(const Clause& c) {
    std::set<std::string> out;
    for (const auto& l : c.lits) out.merge(vars0(l));
    return out;
}

std::set<std::string> vars0(const PurelyUniversal& u) {
    std::set<std::string> out;
    for (const auto& c : u.matrix) out.merge(vars0(c));
    for (const auto& b : u.bound) out.erase(b);
    return out;
}

std::set<std::string> vars0(const Formula& f) {
    std::set<std::string> out;
    for (const auto& l : f.ground) out.merge(vars0(l));
    for (const auto& u : f.universals) out.merge(vars0(u));
    return out;
}

std::set<SetVar> set_vars(const GroundLiteral& l) {
    std::set<SetVar> out;
    if (l.kind == GroundLiteral::Kind::Mem1) out.insert({Level::L1, l.set});
    if (l.kind == GroundLiteral::Kind::Mem3) out.insert({Level::L3, l.set});
    return out;
}

std::set<SetVar> set_vars(const Clause& c) {
    std::set<SetVar> out;
    for (const auto& l : c.lits) out.merge(set_vars(l));
    return out;
}

std::set<SetVar> set_vars(const PurelyUniversal& u) {
    std::set<SetVar> out;
    for (const auto& c : u.matrix) out.merge(set_vars(c));
    return out;
}

std::set<SetVar> set_vars(const Formula& f) {
    std::set<SetVar> out;
    for (const auto& l : f.ground) out.merge(set_vars(l));
    for (const auto& u : f.universals) out.merge(set_vars(u));
    return out;
}

// ── substitution ────────────────────────────────────────────────────────────

std::string VarSubst::apply0(const std::string& v) const {
    auto it = l0.find(v);
    return it == l0.end() ? v : it->second;
}

GroundLiteral substitute(const VarSubst& s, const GroundLiteral& l) {
    GroundLiteral out = l;
    out.x = s.apply0(l.x);
    if (l.kind != GroundLiteral::Kind::Mem1) out.y = s.apply0(l.y);
    if (l.kind == GroundLiteral::Kind::Mem1) {
        auto it = s.l1.find(l.set);
        if (it != s.l1.end()) out.set = it->second;
    } else if (l.kind == GroundLiteral::Kind::Mem3) {
        auto it = s.l3.find(l.set);
        if (it != s.l3.end()) out.set = it->second;
    }
    return out;
}

Clause substitute(const VarSubst& s, const Clause& c) {
    Clause out;
    out.lits.reserve(c.lits.size());
    for (const auto& l : c.lits) out.lits.push_back(substitute(s, l));
    return out;
}

std::optional<PurelyUniversal> substitute(const VarSubst& s, const PurelyUniversal& u) {
    // Bound variables shadow the substitution; a free variable renamed onto a
    // bound name would be captured.
    VarSubst inner = s;
    std::set<std::string> bound(u.bound.begin(), u.bound.end());
    for (const auto& b : u.bound) inner.l0.erase(b);
    for (const auto& [from, to] : inner.l0) {
        (void)from;
        if (bound.count(to)) return std::nullopt;
    }
    PurelyUniversal out;
    out.bound = u.bound;
    out.matrix.reserve(u.matrix.size());
    for (const auto& c : u.matrix) out.matrix.push_back(substitute(inner, c));
    return out;
}

std::optional<Formula> substitute(const VarSubst& s, const Formula& f) {
    Formula out;
    out.ground.reserve(f.ground.size());
    for (const auto& l : f.ground) out.ground.push_back(substitute(s, l));
    for (const auto& u : f.universals) {
        auto su = substitute(s, u);
        if (!su) return std::nullopt;
        out.universals.push_back(std::move(*su));
    }
    return out;
}

// ── interpretation / evaluation ─────────────────────────────────────────────

int Interpretation::add_element(const std::string& label) {
    elements.push_back(label);
    return static_cast<int>(elements.size()) - 1;
}

bool covers(const Interpretation& m, const GroundLiteral& l) {
    if (!m.v0.count(l.x)) return false;
    if (l.kind != GroundLiteral::Kind::Mem1 && !m.v0.count(l.y)) return false;
    if (l.kind == GroundLiteral::Kind::Mem1 && !m.v1.count(l.set)) return false;
    if (l.kind == GroundLiteral::Kind::Mem3 && !m.v3.count(l.set)) return false;
    return true;
}

bool covers(const Interpretation& m, const Clause& c) {
    return std::all_of(c.lits.begin(), c.lits.end(),
                       [&](const GroundLiteral& l) { return covers(m, l); });
}

bool covers(const Interpretation& m, const PurelyUniversal& u) {
    for (const auto& v : vars0(u))
        if (!m.v0.count(v)) return false;
    for (const auto& sv : set_vars(u)) {
        if (sv.level == Level::L1 && !m.v1.count(sv.name)) return false;
        if (sv.level == Level::L3 && !m.v3.count(sv.name)) return false;
    }
    return true;
}

bool covers(const Interpretation& m, const Formula& f) {
    for (const auto& l : f.ground)
        if (!covers(m, l)) return false;
    for (const auto& u : f.universals)
        if (!covers(m, u)) return false;
    return true;
}

namespace {

// Evaluation with an overlay for quantified variables.
struct Env {
    const Interpretation& m;
    std::map<std::string, int> overlay;

    int lookup(const std::string& v) const {
        auto it = overlay.find(v);
        if (it != overlay.end()) return it->second;
        return m.v0.at(v);
    }
};

bool eval_lit(const Env& e, const GroundLiteral& l) {
    bool val = false;
    switch (l.kind) {
        case GroundLiteral::Kind::Eq:
            val = e.lookup(l.x) == e.lookup(l.y);
            break;
        case GroundLiteral::Kind::Mem1:
            val = e.m.v1.at(l.set).count(e.lookup(l.x)) > 0;
            break;
        case GroundLiteral::Kind::Mem3:
            val = e.m.v3.at(l.set).count({e.lookup(l.x), e.lookup(l.y)}) > 0;
            break;
    }
    return l.negated ? !val : val;
}

bool eval_clause(const Env& e, const Clause& c) {
    return std::any_of(c.lits.begin(), c.lits.end(),
                       [&](const GroundLiteral& l) { return eval_lit(e, l); });
}

bool eval_universal(Env& e, const PurelyUniversal& u, std::size_t qi) {
    if (qi == u.bound.size()) {
        return std::all_of(u.matrix.begin(), u.matrix.end(),
                           [&](const Clause& c) { return eval_clause(e, c); });
    }
    const int n = static_cast<int>(e.m.elements.size());
    for (int d = 0; d < n; ++d) {
        e.overlay[u.bound[qi]] = d;
        if (!eval_universal(e, u, qi + 1)) {
            e.overlay.erase(u.bound[qi]);
            return false;
        }
    }
    e.overlay.erase(u.bound[qi]);
    return true;
}

}  // namespace

bool evaluate(const Interpretation& m, const GroundLiteral& l) {
    Env e{m, {}};
    return eval_lit(e, l);
}

bool evaluate(const Interpretation& m, const Clause& c) {
    Env e{m, {}};
    return eval_clause(e, c);
}

bool evaluate(const Interpretation& m, const PurelyUniversal& u) {
    Env e{m, {}};
    return eval_universal(e, u, 0);
}

bool evaluate(const Interpretation& m, const Formula& f) {
    for (const auto& l : f.ground)
        if (!evaluate(m, l)) return false;
    for (const auto& u : f.universals)
        if (!evaluate(m, u)) return false;
    return true;
}

// ── rendering ───────────────────────────────────────────────────────────────

std::string render(const GroundLiteral& l) {
    std::string body;
    switch (l.kind) {
        case GroundLiteral::Kind::Eq:
            body = render_var0(l.x) + " = " + render_var0(l.y);
            break;
        case GroundLiteral::Kind::Mem1:
            body = render_var0(l.x) + " in " + l.set;
            break;
        case GroundLiteral::Kind::Mem3:
            body = "<" + render_var0(l.x) + "," + render_var0(l.y) + "> in " + l.set;
            break;
    }
    return l.negated ? "~ (" + body + ")" : body;
}

std::string render(const Clause& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.lits.size(); ++i) {
        if (i) out += " | ";
        out += render(c.lits[i]);
    }
    out += ")";
    return out;
}

std::string render(const PurelyUniversal& u) {
    std::string out;
    for (const auto& b : u.bound) out += "forall " + render_var0(b) + " ";
    out += ". (";
    for (std::size_t i = 0; i < u.matrix.size(); ++i) {
        if (i) out += " & ";
        out += render(u.matrix[i]);
    }
    out += ")";
    return out;
}

}  // namespace dl4r
