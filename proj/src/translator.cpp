#include "dl4r/translator.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <sstream>

namespace dl4r {

bool is_plain_ident(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

// ── NamingMap ───────────────────────────────────────────────────────────────

SetVar NamingMap::record(Level level, std::string tag, Entry e) {
    SetVar v{level, std::move(tag)};
    entries.emplace(v, std::move(e));
    return v;
}

SetVar NamingMap::individual(const std::string& a) {
    return record(Level::L0, a, {Kind::Individual, a, std::nullopt, {}, false});
}

SetVar NamingMap::constant_var(const Constant& e) {
    return record(Level::L0, e.value, {Kind::Constant, e.value, e, {}, false});
}

SetVar NamingMap::witness_i() {
    return record(Level::L0, "$wI", {Kind::Witness, "", std::nullopt, {}, true});
}
SetVar NamingMap::witness_d() {
    return record(Level::L0, "$wD", {Kind::Witness, "", std::nullopt, {}, true});
}
SetVar NamingMap::witness_dt(const std::string& d) {
    return record(Level::L0, "$w@" + d, {Kind::Witness, "", std::nullopt, {}, true});
}

SetVar NamingMap::domain_i() {
    return record(Level::L1, "$I", {Kind::DomainI, "", std::nullopt, {}, true});
}
SetVar NamingMap::domain_d() {
    return record(Level::L1, "$D", {Kind::DomainD, "", std::nullopt, {}, true});
}
SetVar NamingMap::top() {
    return record(Level::L1, "$Top", {Kind::Top, "", std::nullopt, {}, true});
}
SetVar NamingMap::bottom() {
    return record(Level::L1, "$Bot", {Kind::Bottom, "", std::nullopt, {}, true});
}
SetVar NamingMap::datatype_set(const std::string& d) {
    return record(Level::L1, d, {Kind::DatatypeSet, d, std::nullopt, {}, false});
}
SetVar NamingMap::top_d(const std::string& d) {
    return record(Level::L1, "$Top@" + d, {Kind::TopD, d, std::nullopt, {}, true});
}
SetVar NamingMap::bot_d(const std::string& d) {
    return record(Level::L1, "$Bot@" + d, {Kind::BotD, d, std::nullopt, {}, true});
}
SetVar NamingMap::facet(const std::string& f, const std::string& d) {
    return record(Level::L1, f + "@" + d, {Kind::Facet, f, std::nullopt, {}, false});
}
SetVar NamingMap::facet_expr_set(const FacetExpr& fe) {
    return record(Level::L1, fe.text + "@" + fe.datatype,
                  {Kind::FacetExprSet, fe.text, std::nullopt, {}, true});
}
SetVar NamingMap::nominal_set(const std::vector<std::string>& individuals) {
    std::string tag = "{";
    for (std::size_t i = 0; i < individuals.size(); ++i) {
        if (i) tag += ",";
        tag += individuals[i];
    }
    tag += "}";
    return record(Level::L1, tag, {Kind::NominalSet, tag, std::nullopt, {}, true});
}
SetVar NamingMap::data_range(const std::vector<std::string>& values, const std::string& d) {
    std::string tag = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) tag += ",";
        tag += "\"" + values[i] + "\"^" + d;
    }
    tag += "}";
    return record(Level::L1, tag, {Kind::DataRange, tag, std::nullopt, {}, true});
}

std::optional<SetVar> NamingMap::concept_leaf(const ConceptPtr& c) {
    using K = ConceptTerm::Kind;
    switch (c->kind) {
        case K::Name: {
            bool user = is_plain_ident(c->name);
            return record(Level::L1, c->name,
                          {user ? Kind::Concept : Kind::DefinedConcept, c->name, std::nullopt, {},
                           !user});
        }
        case K::Top: return top();
        case K::Bottom: return bottom();
        case K::Nominal: return nominal_set(c->individuals);
        default: return std::nullopt;
    }
}

std::optional<SetVar> NamingMap::role_leaf(const RolePtr& r) {
    using K = RoleTerm::Kind;
    switch (r->kind) {
        case K::Universal:
            return record(Level::L3, "U", {Kind::Universal, "U", std::nullopt, {}, false});
        case K::Name: {
            bool user = is_plain_ident(r->name);
            if (r->name == "U")
                return record(Level::L3, "U", {Kind::Universal, "U", std::nullopt, {}, false});
            return record(Level::L3, r->name,
                          {user ? Kind::Role : Kind::DefinedRole, r->name, std::nullopt, {}, !user});
        }
        default: return std::nullopt;
    }
}

std::optional<SetVar> NamingMap::crole_leaf(const CRolePtr& p) {
    if (p->kind != CRoleTerm::Kind::Name) return std::nullopt;
    bool user = is_plain_ident(p->name);
    return record(Level::L3, p->name,
                  {user ? Kind::CRole : Kind::DefinedCRole, p->name, std::nullopt, {}, !user});
}

std::optional<SetVar> NamingMap::data_leaf(const DataPtr& t) {
    using K = DataTerm::Kind;
    if (auto fe = facet_expr_of(t)) return facet_expr_set(*fe);
    switch (t->kind) {
        case K::Facet: return facet(t->name, t->datatype);
        case K::Enum:
        case K::Singleton: return data_range(t->values, t->datatype);
        case K::DatatypeName: return datatype_set(t->name);
        case K::TopD: return top_d(t->name);
        case K::BotD: return bot_d(t->name);
        case K::Defined:
            return record(Level::L1, t->name, {Kind::DefinedData, t->name, std::nullopt, {}, true});
        default: return std::nullopt;
    }
}

SetVar NamingMap::query_var(const std::string& name, VarSort sort) {
    Level lvl = Level::L0;
    if (sort == VarSort::Concept) lvl = Level::L1;
    if (sort == VarSort::AbstractRole || sort == VarSort::ConcreteRole) lvl = Level::L3;
    return record(lvl, name, {Kind::QueryVar, name, std::nullopt, sort, false});
}

const NamingMap::Entry* NamingMap::find(const SetVar& v) const {
    auto it = entries.find(v);
    return it == entries.end() ? nullptr : &it->second;
}

bool NamingMap::is_internal(const SetVar& v) const {
    const Entry* e = find(v);
    return e && e->internal;
}

// ── flattening ──────────────────────────────────────────────────────────────

namespace {

struct Flattener {
    KnowledgeBase out;
    std::set<std::string> defined;  // canonical prints already given a definition

    // Leaf concept positions: names, Thing/Nothing, nominals.
    bool concept_is_leaf(const ConceptPtr& c) const {
        using K = ConceptTerm::Kind;
        return c->kind == K::Name || c->kind == K::Top || c->kind == K::Bottom ||
               c->kind == K::Nominal;
    }
    bool role_is_leaf(const RolePtr& r) const {
        return r->kind == RoleTerm::Kind::Name || r->kind == RoleTerm::Kind::Universal;
    }
    bool crole_is_leaf(const CRolePtr& p) const { return p->kind == CRoleTerm::Kind::Name; }
    bool data_is_leaf(const DataPtr& t) const {
        using K = DataTerm::Kind;
        if (t->kind == K::Facet || t->kind == K::Enum || t->kind == K::Singleton ||
            t->kind == K::DatatypeName || t->kind == K::TopD || t->kind == K::BotD ||
            t->kind == K::Defined)
            return true;
        return facet_expr_of(t).has_value();
    }

    ConceptPtr concept_leaf(const ConceptPtr& c);
    RolePtr role_leaf(const RolePtr& r);
    CRolePtr crole_leaf(const CRolePtr& p);
    DataPtr data_leaf(const DataPtr& t);

    // One structural level kept; children reduced to leaves.
    ConceptPtr concept_shallow(const ConceptPtr& c);
    RolePtr role_shallow(const RolePtr& r);
    CRolePtr crole_shallow(const CRolePtr& p);
    DataPtr data_shallow(const DataPtr& t);

    void define_concept(const std::string& name, const ConceptPtr& rhs) {
        if (defined.insert(name).second)
            out.tbox.push_back(st_concept_equiv(c_name(name), rhs));
    }
    void define_role(const std::string& name, const RolePtr& rhs) {
        if (defined.insert(name).second) out.rbox.push_back(st_role_equiv(r_name(name), rhs));
    }
    void define_crole(const std::string& name, const CRolePtr& rhs) {
        if (defined.insert(name).second) out.rbox.push_back(st_crole_equiv(p_name(name), rhs));
    }
    void define_data(const std::string& name, const DataPtr& rhs) {
        if (defined.insert(name).second) {
            DataTerm t;
            t.kind = DataTerm::Kind::Defined;
            t.name = name;
            out.tbox.push_back(st_data_equiv(std::make_shared<const DataTerm>(std::move(t)), rhs));
        }
    }

    void statement(const Statement& s);
};

ConceptPtr Flattener::concept_leaf(const ConceptPtr& c) {
    if (concept_is_leaf(c)) return c;
    ConceptPtr shallow = concept_shallow(c);
    std::string name = print(*shallow);
    define_concept(name, shallow);
    return c_name(name);
}

RolePtr Flattener::role_leaf(const RolePtr& r) {
    if (role_is_leaf(r)) return r;
    RolePtr shallow = role_shallow(r);
    std::string name = print(*shallow);
    define_role(name, shallow);
    return r_name(name);
}

CRolePtr Flattener::crole_leaf(const CRolePtr& p) {
    if (crole_is_leaf(p)) return p;
    CRolePtr shallow = crole_shallow(p);
    std::string name = print(*shallow);
    define_crole(name, shallow);
    return p_name(name);
}

DataPtr Flattener::data_leaf(const DataPtr& t) {
    if (data_is_leaf(t)) return t;
    DataPtr shallow = data_shallow(t);
    std::string name = print(*shallow);
    define_data(name, shallow);
    DataTerm leaf;
    leaf.kind = DataTerm::Kind::Defined;
    leaf.name = name;
    return std::make_shared<const DataTerm>(std::move(leaf));
}

ConceptPtr Flattener::concept_shallow(const ConceptPtr& c) {
    using K = ConceptTerm::Kind;
    switch (c->kind) {
        case K::Not: return c_not(concept_leaf(c->lhs));
        case K::Or: return c_or(concept_leaf(c->lhs), concept_leaf(c->rhs));
        case K::And: return c_and(concept_leaf(c->lhs), concept_leaf(c->rhs));
        case K::ExistsSelf: return c_exists_self(role_leaf(c->role));
        case K::ExistsValue: return c_exists_value(role_leaf(c->role), c->individuals.at(0));
        case K::ExistsData: return c_exists_data(crole_leaf(c->crole), *c->constant);
        default: return c;
    }
}

RolePtr Flattener::role_shallow(const RolePtr& r) {
    using K = RoleTerm::Kind;
    switch (r->kind) {
        case K::Inverse: return r_inverse(role_leaf(r->lhs));
        case K::Not: return r_not(role_leaf(r->lhs));
        case K::Or: return r_or(role_leaf(r->lhs), role_leaf(r->rhs));
        case K::And: return r_and(role_leaf(r->lhs), role_leaf(r->rhs));
        case K::DomRestr: return r_dom(role_leaf(r->lhs), concept_leaf(r->c1));
        case K::RanRestr: return r_ran(role_leaf(r->lhs), concept_leaf(r->c1));
        case K::BothRestr:
            return r_both(role_leaf(r->lhs), concept_leaf(r->c1), concept_leaf(r->c2));
        case K::Id: return r_id(concept_leaf(r->c1));
        case K::Product: return r_product(concept_leaf(r->c1), concept_leaf(r->c2));
        default: return r;
    }
}

CRolePtr Flattener::crole_shallow(const CRolePtr& p) {
    using K = CRoleTerm::Kind;
    switch (p->kind) {
        case K::Not: return p_not(crole_leaf(p->lhs));
        case K::Or: return p_or(crole_leaf(p->lhs), crole_leaf(p->rhs));
        case K::And: return p_and(crole_leaf(p->lhs), crole_leaf(p->rhs));
        case K::DomRestr: return p_dom(crole_leaf(p->lhs), concept_leaf(p->c1));
        case K::RanRestr: return p_ran(crole_leaf(p->lhs), data_leaf(p->t1));
        case K::BothRestr:
            return p_both(crole_leaf(p->lhs), concept_leaf(p->c1), data_leaf(p->t1));
        default: return p;
    }
}

DataPtr Flattener::data_shallow(const DataPtr& t) {
    using K = DataTerm::Kind;
    switch (t->kind) {
        case K::Not: return d_not(data_leaf(t->lhs));
        case K::Or: return d_or(data_leaf(t->lhs), data_leaf(t->rhs));
        case K::And: return d_and(data_leaf(t->lhs), data_leaf(t->rhs));
        default: return t;
    }
}

void Flattener::statement(const Statement& s) {
    using K = Statement::Kind;
    Statement f = s;
    switch (s.kind) {
        case K::InstanceOf: f.c1 = concept_leaf(s.c1); break;
        case K::RolePair: f.r1 = role_leaf(s.r1); break;
        case K::IndEq:
        case K::IndNeq: break;
        case K::DataInstance: f.t1 = data_leaf(s.t1); break;
        case K::CRolePair: f.p1 = crole_leaf(s.p1); break;

        case K::ConceptEquiv:
            f.c1 = concept_leaf(s.c1);
            f.c2 = concept_is_leaf(s.c2) ? s.c2 : concept_shallow(s.c2);
            break;
        case K::ConceptSub:
            f.c1 = concept_leaf(s.c1);
            f.c2 = concept_leaf(s.c2);
            break;
        case K::SubForallR:
        case K::SubAtMost:
            f.c1 = concept_leaf(s.c1);
            f.r1 = role_leaf(s.r1);
            f.c2 = concept_leaf(s.c2);
            break;
        case K::ExistsSub:
        case K::AtLeastSub:
            f.r1 = role_leaf(s.r1);
            f.c1 = concept_leaf(s.c1);
            f.c2 = concept_leaf(s.c2);
            break;
        case K::SubForallP:
        case K::SubAtMostP:
            f.c1 = concept_leaf(s.c1);
            f.p1 = crole_leaf(s.p1);
            f.t1 = data_leaf(s.t1);
            break;
        case K::ExistsSubP:
        case K::AtLeastSubP:
            f.p1 = crole_leaf(s.p1);
            f.t1 = data_leaf(s.t1);
            f.c1 = concept_leaf(s.c1);
            break;
        case K::DataEquiv:
            f.t1 = data_leaf(s.t1);
            f.t2 = data_is_leaf(s.t2) ? s.t2 : data_shallow(s.t2);
            break;
        case K::DataSub:
            f.t1 = data_leaf(s.t1);
            f.t2 = data_leaf(s.t2);
            break;

        case K::RoleEquiv:
            f.r1 = role_leaf(s.r1);
            f.r2 = role_is_leaf(s.r2) ? s.r2 : role_shallow(s.r2);
            break;
        case K::RoleSub:
            f.r1 = role_leaf(s.r1);
            f.r2 = role_leaf(s.r2);
            break;
        case K::RoleChainSub: {
            f.chain.clear();
            for (const auto& r : s.chain) f.chain.push_back(role_leaf(r));
            f.r1 = role_leaf(s.r1);
            break;
        }
        case K::Sym:
        case K::Asym:
        case K::Ref:
        case K::Irref:
        case K::Tra:
        case K::FunA: f.r1 = role_leaf(s.r1); break;
        case K::DisA:
            f.r1 = role_leaf(s.r1);
            f.r2 = role_leaf(s.r2);
            break;
        case K::CRoleEquiv:
            f.p1 = crole_leaf(s.p1);
            f.p2 = crole_is_leaf(s.p2) ? s.p2 : crole_shallow(s.p2);
            break;
        case K::CRoleSub:
        case K::DisC:
            f.p1 = crole_leaf(s.p1);
            f.p2 = crole_leaf(s.p2);
            break;
        case K::FunC: f.p1 = crole_leaf(s.p1); break;
    }
    out.add(std::move(f));
}

}  // namespace

KnowledgeBase flatten(const KnowledgeBase& kb) {
    Flattener fl;
    fl.out.dmap = kb.dmap;
    for (const Statement* s : kb.all()) fl.statement(*s);
    return std::move(fl.out);
}

// ── theta ───────────────────────────────────────────────────────────────────

namespace {

using GL = GroundLiteral;

// Bound-variable names local to one emitted formula.
std::string zv(int i) { return "$z" + std::to_string(i); }

struct Emit {
    NamingMap& nm;
    ThetaResult res;

    void fail(const std::string& what) {
        res.diagnostics.push_back(
            {Diagnostic::Severity::Error, "unsupported form: " + what, 0, 0, {}});
    }

    std::optional<std::string> cvar(const ConceptPtr& c) {
        auto v = nm.concept_leaf(c);
        if (!v) {
            fail("compound concept term '" + print(*c) + "' in leaf position");
            return std::nullopt;
        }
        return v->name;
    }
    std::optional<std::string> rvar(const RolePtr& r) {
        auto v = nm.role_leaf(r);
        if (!v) {
            fail("compound role term '" + print(*r) + "' in leaf position");
            return std::nullopt;
        }
        return v->name;
    }
    std::optional<std::string> pvar(const CRolePtr& p) {
        auto v = nm.crole_leaf(p);
        if (!v) {
            fail("compound concrete role term '" + print(*p) + "' in leaf position");
            return std::nullopt;
        }
        return v->name;
    }
    std::optional<std::string> tvar(const DataPtr& t) {
        auto v = nm.data_leaf(t);
        if (!v) {
            fail("compound datatype term '" + print(*t) + "' in leaf position");
            return std::nullopt;
        }
        return v->name;
    }

    void universal(std::vector<std::string> bound, std::vector<Clause> matrix) {
        for (auto& c : matrix) c.canonicalize();
        res.formula.universals.push_back({std::move(bound), std::move(matrix)});
    }
    void ground(GL l) { res.formula.ground.push_back(std::move(l)); }
};

}  // namespace

ThetaResult theta_statement(const Statement& s, NamingMap& nm) {
    using K = Statement::Kind;
    using CK = ConceptTerm::Kind;
    using RK = RoleTerm::Kind;
    using PK = CRoleTerm::Kind;
    using DK = DataTerm::Kind;
    Emit em{nm, {}};
    const std::string z = zv(1), z1 = zv(1), z2 = zv(2), z3 = zv(3);

    auto I = nm.domain_i().name;
    auto D = nm.domain_d().name;

    switch (s.kind) {
        // ── ABox ────────────────────────────────────────────────────────────
        case K::InstanceOf: {
            auto c = em.cvar(s.c1);
            if (c) em.ground(GL::mem1(nm.individual(s.a).name, *c));
            break;
        }
        case K::RolePair: {
            auto r = em.rvar(s.r1);
            if (r)
                em.ground(GL::mem3(nm.individual(s.a).name, nm.individual(s.b).name, *r, s.negated));
            break;
        }
        case K::IndEq:
            em.ground(GL::eq(nm.individual(s.a).name, nm.individual(s.b).name));
            break;
        case K::IndNeq:
            em.ground(GL::eq(nm.individual(s.a).name, nm.individual(s.b).name, true));
            break;
        case K::DataInstance: {
            auto t = em.tvar(s.t1);
            if (t) em.ground(GL::mem1(nm.constant_var(*s.value).name, *t));
            break;
        }
        case K::CRolePair: {
            auto p = em.pvar(s.p1);
            if (p)
                em.ground(GL::mem3(nm.individual(s.a).name, nm.constant_var(*s.value).name, *p,
                                   s.negated));
            break;
        }

        // ── concept axioms ──────────────────────────────────────────────────
        case K::ConceptEquiv: {
            auto a = em.cvar(s.c1);
            if (!a) break;
            const ConceptTerm& rhs = *s.c2;
            if (rhs.kind == CK::Nominal && rhs.individuals.size() == 1) {
                // C1 == {a}
                const std::string xa = nm.individual(rhs.individuals[0]).name;
                em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::eq(z, xa)}},
                                   Clause{{GL::eq(z, xa, true), GL::mem1(z, *a)}}});
                break;
            }
            if (rhs.kind == CK::Not) {
                auto b = em.cvar(rhs.lhs);
                if (!b) break;
                em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b, true)}},
                                   Clause{{GL::mem1(z, *b), GL::mem1(z, *a), GL::mem1(z, I, true)}}});
                break;
            }
            if (rhs.kind == CK::Or || rhs.kind == CK::And) {
                auto b = em.cvar(rhs.lhs), c = em.cvar(rhs.rhs);
                if (!b || !c) break;
                if (rhs.kind == CK::Or)
                    em.universal({z},
                                 {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b), GL::mem1(z, *c)}},
                                  Clause{{GL::mem1(z, *b, true), GL::mem1(z, *a)}},
                                  Clause{{GL::mem1(z, *c, true), GL::mem1(z, *a)}}});
                else
                    em.universal({z},
                                 {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b)}},
                                  Clause{{GL::mem1(z, *a, true), GL::mem1(z, *c)}},
                                  Clause{{GL::mem1(z, *b, true), GL::mem1(z, *c, true), GL::mem1(z, *a)}}});
                break;
            }
            if (rhs.kind == CK::ExistsValue) {
                auto r = em.rvar(rhs.role);
                if (!r) break;
                const std::string xa = nm.individual(rhs.individuals.at(0)).name;
                em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::mem3(z, xa, *r)}},
                                   Clause{{GL::mem3(z, xa, *r, true), GL::mem1(z, *a)}}});
                break;
            }
            if (rhs.kind == CK::ExistsData) {
                auto p = em.pvar(rhs.crole);
                if (!p) break;
                const std::string xe = nm.constant_var(*rhs.constant).name;
                em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::mem3(z, xe, *p)}},
                                   Clause{{GL::mem3(z, xe, *p, true), GL::mem1(z, *a)}}});
                break;
            }
            if (rhs.kind == CK::ExistsSelf) {
                auto r = em.rvar(rhs.role);
                if (!r) break;
                em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::mem3(z, z, *r)}},
                                   Clause{{GL::mem3(z, z, *r, true), GL::mem1(z, *a)}}});
                break;
            }
            auto b = em.cvar(s.c2);
            if (!b) break;
            em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b)}},
                               Clause{{GL::mem1(z, *b, true), GL::mem1(z, *a)}}});
            break;
        }
        case K::ConceptSub: {
            auto a = em.cvar(s.c1), b = em.cvar(s.c2);
            if (a && b)
                em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b)}}});
            break;
        }
        case K::SubForallR: {
            auto a = em.cvar(s.c1), r = em.rvar(s.r1), b = em.cvar(s.c2);
            if (a && r && b)
                em.universal({z1, z2}, {Clause{{GL::mem1(z1, *a, true), GL::mem3(z1, z2, *r, true),
                                                GL::mem1(z2, *b)}}});
            break;
        }
        case K::ExistsSub: {
            auto r = em.rvar(s.r1), a = em.cvar(s.c1), b = em.cvar(s.c2);
            if (r && a && b)
                em.universal({z1, z2}, {Clause{{GL::mem3(z1, z2, *r, true), GL::mem1(z2, *a, true),
                                                GL::mem1(z1, *b)}}});
            break;
        }
        case K::AtLeastSub:
        case K::SubAtMost: {
            const bool atmost = s.kind == K::SubAtMost;
            auto a = em.cvar(s.c1), r = em.rvar(s.r1), b = em.cvar(s.c2);
            if (!(a && r && b)) break;
            const int count = atmost ? s.n + 1 : s.n;  // successors quantified
            std::vector<std::string> bound{zv(1)};
            for (int i = 0; i < count; ++i) bound.push_back(zv(i + 2));
            Clause cl;
            if (atmost) cl.lits.push_back(GL::mem1(zv(1), *a, true));
            const std::string& filler = atmost ? *b : *a;
            for (int i = 0; i < count; ++i) {
                cl.lits.push_back(GL::mem1(zv(i + 2), filler, true));
                cl.lits.push_back(GL::mem3(zv(1), zv(i + 2), *r, true));
            }
            for (int i = 0; i < count; ++i)
                for (int j = i + 1; j < count; ++j)
                    cl.lits.push_back(GL::eq(zv(i + 2), zv(j + 2)));
            if (!atmost) cl.lits.push_back(GL::mem1(zv(1), *b));
            em.universal(std::move(bound), {std::move(cl)});
            break;
        }
        case K::SubForallP: {
            auto a = em.cvar(s.c1), p = em.pvar(s.p1), t = em.tvar(s.t1);
            if (a && p && t)
                em.universal({z1, z2}, {Clause{{GL::mem1(z1, *a, true), GL::mem3(z1, z2, *p, true),
                                                GL::mem1(z2, *t)}}});
            break;
        }
        case K::ExistsSubP: {
            auto p = em.pvar(s.p1), t = em.tvar(s.t1), a = em.cvar(s.c1);
            if (p && t && a)
                em.universal({z1, z2}, {Clause{{GL::mem3(z1, z2, *p, true), GL::mem1(z2, *t, true),
                                                GL::mem1(z1, *a)}}});
            break;
        }
        case K::AtLeastSubP:
        case K::SubAtMostP: {
            const bool atmost = s.kind == K::SubAtMostP;
            auto a = em.cvar(s.c1), p = em.pvar(s.p1), t = em.tvar(s.t1);
            if (!(a && p && t)) break;
            const int count = atmost ? s.n + 1 : s.n;
            std::vector<std::string> bound{zv(1)};
            for (int i = 0; i < count; ++i) bound.push_back(zv(i + 2));
            Clause cl;
            if (atmost) cl.lits.push_back(GL::mem1(zv(1), *a, true));
            for (int i = 0; i < count; ++i) {
                cl.lits.push_back(GL::mem1(zv(i + 2), *t, true));
                cl.lits.push_back(GL::mem3(zv(1), zv(i + 2), *p, true));
            }
            for (int i = 0; i < count; ++i)
                for (int j = i + 1; j < count; ++j)
                    cl.lits.push_back(GL::eq(zv(i + 2), zv(j + 2)));
            if (!atmost) cl.lits.push_back(GL::mem1(zv(1), *a));
            em.universal(std::move(bound), {std::move(cl)});
            break;
        }

        // ── datatype-term axioms ────────────────────────────────────────────
        case K::DataEquiv: {
            auto a = em.tvar(s.t1);
            if (!a) break;
            const DataTerm& rhs = *s.t2;
            if (rhs.kind == DK::Singleton) {
                const std::string xe = nm.constant_var({rhs.values.at(0), rhs.datatype}).name;
                em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::eq(z, xe)}},
                                   Clause{{GL::eq(z, xe, true), GL::mem1(z, *a)}}});
                break;
            }
            if (rhs.kind == DK::Not && !facet_expr_of(s.t2)) {
                auto b = em.tvar(rhs.lhs);
                if (!b) break;
                em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b, true)}},
                                   Clause{{GL::mem1(z, *b), GL::mem1(z, *a), GL::mem1(z, D, true)}},
                                   Clause{{GL::mem1(z, *a, true), GL::mem1(z, D)}}});
                break;
            }
            if ((rhs.kind == DK::Or || rhs.kind == DK::And) && !facet_expr_of(s.t2)) {
                auto b = em.tvar(rhs.lhs), c = em.tvar(rhs.rhs);
                if (!b || !c) break;
                if (rhs.kind == DK::Or)
                    em.universal({z},
                                 {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b), GL::mem1(z, *c)}},
                                  Clause{{GL::mem1(z, *b, true), GL::mem1(z, *a)}},
                                  Clause{{GL::mem1(z, *c, true), GL::mem1(z, *a)}}});
                else
                    em.universal({z},
                                 {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b)}},
                                  Clause{{GL::mem1(z, *a, true), GL::mem1(z, *c)}},
                                  Clause{{GL::mem1(z, *b, true), GL::mem1(z, *c, true), GL::mem1(z, *a)}}});
                break;
            }
            auto b = em.tvar(s.t2);
            if (!b) break;
            em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b)}},
                               Clause{{GL::mem1(z, *b, true), GL::mem1(z, *a)}}});
            break;
        }
        case K::DataSub: {
            auto a = em.tvar(s.t1), b = em.tvar(s.t2);
            if (a && b) em.universal({z}, {Clause{{GL::mem1(z, *a, true), GL::mem1(z, *b)}}});
            break;
        }

        // ── abstract role axioms ────────────────────────────────────────────
        case K::RoleEquiv: {
            auto a = em.rvar(s.r1);
            if (!a) break;
            const RoleTerm& rhs = *s.r2;
            auto pair = [&](const std::string& v, bool neg = false) {
                return GL::mem3(z1, z2, v, neg);
            };
            switch (rhs.kind) {
                case RK::Not: {
                    auto b = em.rvar(rhs.lhs);
                    if (!b) break;
                    em.universal({z1, z2},
                                 {Clause{{pair(*a, true), pair(*b, true)}},
                                  Clause{{pair(*b), pair(*a), GL::mem1(z1, I, true),
                                          GL::mem1(z2, I, true)}}});
                    break;
                }
                case RK::Or:
                case RK::And: {
                    auto b = em.rvar(rhs.lhs), c = em.rvar(rhs.rhs);
                    if (!b || !c) break;
                    if (rhs.kind == RK::Or)
                        em.universal({z1, z2}, {Clause{{pair(*a, true), pair(*b), pair(*c)}},
                                                Clause{{pair(*b, true), pair(*a)}},
                                                Clause{{pair(*c, true), pair(*a)}}});
                    else
                        em.universal({z1, z2},
                                     {Clause{{pair(*a, true), pair(*b)}},
                                      Clause{{pair(*a, true), pair(*c)}},
                                      Clause{{pair(*b, true), pair(*c, true), pair(*a)}}});
                    break;
                }
                case RK::Inverse: {
                    auto b = em.rvar(rhs.lhs);
                    if (!b) break;
                    em.universal({z1, z2}, {Clause{{pair(*a, true), GL::mem3(z2, z1, *b)}},
                                            Clause{{GL::mem3(z2, z1, *b, true), pair(*a)}}});
                    break;
                }
                case RK::Id: {
                    auto c = em.cvar(rhs.c1);
                    if (!c) break;
                    em.universal({z1, z2},
                                 {Clause{{pair(*a, true), GL::mem1(z1, *c)}},
                                  Clause{{pair(*a, true), GL::mem1(z2, *c)}},
                                  Clause{{pair(*a, true), GL::eq(z1, z2)}},
                                  Clause{{GL::mem1(z1, *c, true), GL::mem1(z2, *c, true),
                                          GL::eq(z1, z2, true), pair(*a)}}});
                    break;
                }
                case RK::DomRestr:
                case RK::RanRestr: {
                    auto b = em.rvar(rhs.lhs);
                    auto c = em.cvar(rhs.c1);
                    if (!b || !c) break;
                    const std::string& side = rhs.kind == RK::DomRestr ? z1 : z2;
                    em.universal({z1, z2},
                                 {Clause{{pair(*a, true), pair(*b)}},
                                  Clause{{pair(*a, true), GL::mem1(side, *c)}},
                                  Clause{{pair(*b, true), GL::mem1(side, *c, true), pair(*a)}}});
                    break;
                }
                case RK::BothRestr: {
                    auto b = em.rvar(rhs.lhs);
                    auto c1 = em.cvar(rhs.c1), c2 = em.cvar(rhs.c2);
                    if (!b || !c1 || !c2) break;
                    em.universal({z1, z2},
                                 {Clause{{pair(*a, true), pair(*b)}},
                                  Clause{{pair(*a, true), GL::mem1(z1, *c1)}},
                                  Clause{{pair(*a, true), GL::mem1(z2, *c2)}},
                                  Clause{{pair(*b, true), GL::mem1(z1, *c1, true),
                                          GL::mem1(z2, *c2, true), pair(*a)}}});
                    break;
                }
                case RK::Product: {
                    auto c1 = em.cvar(rhs.c1), c2 = em.cvar(rhs.c2);
                    if (!c1 || !c2) break;
                    em.universal({z1, z2},
                                 {Clause{{pair(*a, true), GL::mem1(z1, *c1)}},
                                  Clause{{pair(*a, true), GL::mem1(z2, *c2)}},
                                  Clause{{GL::mem1(z1, *c1, true), GL::mem1(z2, *c2, true), pair(*a)}}});
                    break;
                }
                default: {  // name or U: plain biconditional
                    auto b = em.rvar(s.r2);
                    if (!b) break;
                    em.universal({z1, z2}, {Clause{{pair(*a, true), pair(*b)}},
                                            Clause{{pair(*b, true), pair(*a)}}});
                    break;
                }
            }
            break;
        }
        case K::RoleSub: {
            auto a = em.rvar(s.r1), b = em.rvar(s.r2);
            if (a && b)
                em.universal({z1, z2},
                             {Clause{{GL::mem3(z1, z2, *a, true), GL::mem3(z1, z2, *b)}}});
            break;
        }
        case K::RoleChainSub: {
            std::vector<std::string> names;
            for (const auto& r : s.chain) {
                auto v = em.rvar(r);
                if (!v) return std::move(em.res);
                names.push_back(*v);
            }
            auto head = em.rvar(s.r1);
            if (!head) break;
            const int n = static_cast<int>(names.size());
            std::vector<std::string> bound{zv(1)};
            for (int i = 1; i <= n; ++i) bound.push_back(zv(i + 1));
            Clause cl;
            for (int i = 0; i < n; ++i)
                cl.lits.push_back(GL::mem3(zv(i + 1), zv(i + 2), names[i], true));
            cl.lits.push_back(GL::mem3(zv(1), zv(n + 1), *head));
            em.universal(std::move(bound), {std::move(cl)});
            break;
        }
        case K::Sym: {
            auto r = em.rvar(s.r1);
            if (r)
                em.universal({z1, z2},
                             {Clause{{GL::mem3(z1, z2, *r, true), GL::mem3(z2, z1, *r)}}});
            break;
        }
        case K::Asym: {
            auto r = em.rvar(s.r1);
            if (r)
                em.universal({z1, z2},
                             {Clause{{GL::mem3(z1, z2, *r, true), GL::mem3(z2, z1, *r, true)}}});
            break;
        }
        case K::Ref: {
            auto r = em.rvar(s.r1);
            if (r) em.universal({z}, {Clause{{GL::mem3(z, z, *r)}}});
            break;
        }
        case K::Irref: {
            auto r = em.rvar(s.r1);
            if (r) em.universal({z}, {Clause{{GL::mem3(z, z, *r, true)}}});
            break;
        }
        case K::Tra: {
            auto r = em.rvar(s.r1);
            if (r)
                em.universal({z1, z2, z3},
                             {Clause{{GL::mem3(z1, z2, *r, true), GL::mem3(z2, z3, *r, true),
                                      GL::mem3(z1, z3, *r)}}});
            break;
        }
        case K::FunA: {
            auto r = em.rvar(s.r1);
            if (r)
                em.universal({z1, z2, z3},
                             {Clause{{GL::mem3(z1, z2, *r, true), GL::mem3(z1, z3, *r, true),
                                      GL::eq(z2, z3)}}});
            break;
        }
        case K::DisA: {
            auto a = em.rvar(s.r1), b = em.rvar(s.r2);
            if (a && b)
                em.universal({z1, z2},
                             {Clause{{GL::mem3(z1, z2, *a, true), GL::mem3(z1, z2, *b, true)}}});
            break;
        }

        // ── concrete role axioms ────────────────────────────────────────────
        case K::CRoleEquiv: {
            auto a = em.pvar(s.p1);
            if (!a) break;
            const CRoleTerm& rhs = *s.p2;
            auto pair = [&](const std::string& v, bool neg = false) {
                return GL::mem3(z1, z2, v, neg);
            };
            switch (rhs.kind) {
                case PK::Not: {
                    auto b = em.pvar(rhs.lhs);
                    if (!b) break;
                    em.universal({z1, z2},
                                 {Clause{{pair(*a, true), pair(*b, true)}},
                                  Clause{{pair(*b), pair(*a), GL::mem1(z1, I, true),
                                          GL::mem1(z2, D, true)}}});
                    break;
                }
                case PK::Or:
                case PK::And: {
                    auto b = em.pvar(rhs.lhs), c = em.pvar(rhs.rhs);
                    if (!b || !c) break;
                    if (rhs.kind == PK::Or)
                        em.universal({z1, z2}, {Clause{{pair(*a, true), pair(*b), pair(*c)}},
                                                Clause{{pair(*b, true), pair(*a)}},
                                                Clause{{pair(*c, true), pair(*a)}}});
                    else
                        em.universal({z1, z2},
                                     {Clause{{pair(*a, true), pair(*b)}},
                                      Clause{{pair(*a, true), pair(*c)}},
                                      Clause{{pair(*b, true), pair(*c, true), pair(*a)}}});
                    break;
                }
                case PK::DomRestr: {
                    auto b = em.pvar(rhs.lhs);
                    auto c = em.cvar(rhs.c1);
                    if (!b || !c) break;
                    em.universal({z1, z2},
                                 {Clause{{pair(*a, true), pair(*b)}},
                                  Clause{{pair(*a, true), GL::mem1(z1, *c)}},
                                  Clause{{pair(*b, true), GL::mem1(z1, *c, true), pair(*a)}}});
                    break;
                }
                case PK::RanRestr: {
                    auto b = em.pvar(rhs.lhs);
                    auto t = em.tvar(rhs.t1);
                    if (!b || !t) break;
                    em.universal({z1, z2},
                                 {Clause{{pair(*a, true), pair(*b)}},
                                  Clause{{pair(*a, true), GL::mem1(z2, *t)}},
                                  Clause{{pair(*b, true), GL::mem1(z2, *t, true), pair(*a)}}});
                    break;
                }
                case PK::BothRestr: {
                    auto b = em.pvar(rhs.lhs);
                    auto c = em.cvar(rhs.c1);
                    auto t = em.tvar(rhs.t1);
                    if (!b || !c || !t) break;
                    em.universal({z1, z2},
                                 {Clause{{pair(*a, true), pair(*b)}},
                                  Clause{{pair(*a, true), GL::mem1(z1, *c)}},
                                  Clause{{pair(*a, true), GL::mem1(z2, *t)}},
                                  Clause{{pair(*b, true), GL::mem1(z1, *c, true),
                                          GL::mem1(z2, *t, true), pair(*a)}}});
                    break;
                }
                default: {
                    auto b = em.pvar(s.p2);
                    if (!b) break;
                    em.universal({z1, z2}, {Clause{{pair(*a, true), pair(*b)}},
                                            Clause{{pair(*b, true), pair(*a)}}});
                    break;
                }
            }
            break;
        }
        case K::CRoleSub: {
            auto a = em.pvar(s.p1), b = em.pvar(s.p2);
            if (a && b)
                em.universal({z1, z2},
                             {Clause{{GL::mem3(z1, z2, *a, true), GL::mem3(z1, z2, *b)}}});
            break;
        }
        case K::DisC: {
            auto a = em.pvar(s.p1), b = em.pvar(s.p2);
            if (a && b)
                em.universal({z1, z2},
                             {Clause{{GL::mem3(z1, z2, *a, true), GL::mem3(z1, z2, *b, true)}}});
            break;
        }
        case K::FunC: {
            auto p = em.pvar(s.p1);
            if (p)
                em.universal({z1, z2, z3},
                             {Clause{{GL::mem3(z1, z2, *p, true), GL::mem3(z1, z3, *p, true),
                                      GL::eq(z2, z3)}}});
            break;
        }
    }
    return std::move(em.res);
}

// ── zeta / xi ───────────────────────────────────────────────────────────────

std::vector<Clause> zeta(const FacetExpr& psi, NamingMap& nm) {
    std::vector<Clause> out;
    for (const auto& fc : psi.cnf) {
        Clause cl;
        for (const auto& lit : fc)
            cl.lits.push_back(
                GroundLiteral::mem1("$z1", nm.facet(lit.facet, psi.datatype).name, lit.negated));
        out.push_back(std::move(cl));
    }
    return out;
}

std::vector<XiGroup> xi_constraints(const Signature& sig, NamingMap& nm) {
    using GL = GroundLiteral;
    std::vector<XiGroup> out;
    const std::string z = "$z1", z1 = "$z1", z2 = "$z2";
    const std::string I = nm.domain_i().name;
    const std::string D = nm.domain_d().name;

    {  // xi1: the individual and data domains partition the universe and are
       // both nonempty (witnessed by ground Skolem literals).
        XiGroup g{1, {}};
        g.part.universals.push_back(
            {{z}, {Clause{{GL::mem1(z, I, true), GL::mem1(z, D, true)}},
                   Clause{{GL::mem1(z, D), GL::mem1(z, I)}}}});
        g.part.universals.push_back({{z}, {Clause{{GL::mem1(z, I), GL::mem1(z, D)}}}});
        g.part.ground.push_back(GL::mem1(nm.witness_i().name, I));
        g.part.ground.push_back(GL::mem1(nm.witness_d().name, D));
        out.push_back(std::move(g));
    }
    {  // xi2: Thing coincides with the individual domain, Nothing is empty.
        XiGroup g{2, {}};
        const std::string top = nm.top().name, bot = nm.bottom().name;
        g.part.universals.push_back({{z}, {Clause{{GL::mem1(z, I, true), GL::mem1(z, top)}},
                                           Clause{{GL::mem1(z, top, true), GL::mem1(z, I)}}}});
        g.part.universals.push_back({{z}, {Clause{{GL::mem1(z, bot, true)}}}});
        out.push_back(std::move(g));
    }
    {  // xi3: concepts contain individuals only.
        XiGroup g{3, {}};
        for (const auto& a : sig.concepts)
            g.part.universals.push_back(
                {{z}, {Clause{{GL::mem1(z, a, true), GL::mem1(z, I)}}}});
        out.push_back(std::move(g));
    }
    {  // xi4: datatype extensions live in the data domain, are nonempty, and
       // are pairwise disjoint.
        XiGroup g{4, {}};
        for (const auto& d : sig.datatypes) {
            const std::string dv = nm.datatype_set(d).name;
            g.part.universals.push_back(
                {{z}, {Clause{{GL::mem1(z, dv, true), GL::mem1(z, D)}}}});
            g.part.ground.push_back(GL::mem1(nm.witness_dt(d).name, dv));
        }
        for (std::size_t i = 0; i < sig.datatypes.size(); ++i)
            for (std::size_t j = i + 1; j < sig.datatypes.size(); ++j)
                g.part.universals.push_back(
                    {{z}, {Clause{{GL::mem1(z, nm.datatype_set(sig.datatypes[i]).name, true),
                                   GL::mem1(z, nm.datatype_set(sig.datatypes[j]).name, true)}}}});
        out.push_back(std::move(g));
    }
    {  // xi5: per-datatype top equals the datatype, per-datatype bottom empty.
        XiGroup g{5, {}};
        for (const auto& d : sig.datatypes) {
            const std::string dv = nm.datatype_set(d).name;
            const std::string top = nm.top_d(d).name, bot = nm.bot_d(d).name;
            g.part.universals.push_back({{z}, {Clause{{GL::mem1(z, dv, true), GL::mem1(z, top)}},
                                               Clause{{GL::mem1(z, top, true), GL::mem1(z, dv)}}}});
            g.part.universals.push_back({{z}, {Clause{{GL::mem1(z, bot, true)}}}});
        }
        out.push_back(std::move(g));
    }
    {  // xi6: facets are subsets of their datatype.
        XiGroup g{6, {}};
        for (const auto& d : sig.datatypes) {
            auto it = sig.facets.find(d);
            if (it == sig.facets.end()) continue;
            for (const auto& f : it->second)
                g.part.universals.push_back(
                    {{z}, {Clause{{GL::mem1(z, nm.facet(f, d).name, true),
                                   GL::mem1(z, nm.datatype_set(d).name)}}}});
        }
        out.push_back(std::move(g));
    }
    {  // xi7: the universal role is exactly the square of the individual domain.
        XiGroup g{7, {}};
        const std::string u = nm.role_leaf(r_universal())->name;
        g.part.universals.push_back(
            {{z1, z2},
             {Clause{{GL::mem1(z1, I, true), GL::mem1(z2, I, true), GL::mem3(z1, z2, u)}},
              Clause{{GL::mem3(z1, z2, u, true), GL::mem1(z1, I)}},
              Clause{{GL::mem3(z1, z2, u, true), GL::mem1(z2, I)}}}});
        out.push_back(std::move(g));
    }
    {  // xi8: abstract roles relate individuals.
        XiGroup g{8, {}};
        for (const auto& r : sig.abstract_roles) {
            const std::string rv = nm.role_leaf(r_name(r))->name;
            g.part.universals.push_back(
                {{z1, z2}, {Clause{{GL::mem3(z1, z2, rv, true), GL::mem1(z1, I)}},
                            Clause{{GL::mem3(z1, z2, rv, true), GL::mem1(z2, I)}}}});
        }
        out.push_back(std::move(g));
    }
    {  // xi9: concrete roles relate individuals to data values.
        XiGroup g{9, {}};
        for (const auto& t : sig.concrete_roles) {
            const std::string tv = nm.crole_leaf(p_name(t))->name;
            g.part.universals.push_back(
                {{z1, z2}, {Clause{{GL::mem3(z1, z2, tv, true), GL::mem1(z1, I)}},
                            Clause{{GL::mem3(z1, z2, tv, true), GL::mem1(z2, D)}}}});
        }
        out.push_back(std::move(g));
    }
    {  // xi10: individuals inhabit the individual domain, constants their datatype.
        XiGroup g{10, {}};
        for (const auto& a : sig.individuals)
            g.part.ground.push_back(GL::mem1(nm.individual(a).name, I));
        for (const auto& d : sig.datatypes) {
            auto it = sig.constants.find(d);
            if (it == sig.constants.end()) continue;
            for (const auto& v : it->second)
                g.part.ground.push_back(
                    GL::mem1(nm.constant_var({v, d}).name, nm.datatype_set(d).name));
        }
        out.push_back(std::move(g));
    }
    {  // xi11: nominal sets and data-range enumerations have exactly their
       // listed members.
        XiGroup g{11, {}};
        auto emit = [&](const SetVar& sv, const std::vector<std::string>& members) {
            Clause big{{GL::mem1(z, sv.name, true)}};
            std::vector<Clause> rest;
            for (const auto& m : members) {
                big.lits.push_back(GL::eq(z, m));
                rest.push_back(Clause{{GL::eq(z, m, true), GL::mem1(z, sv.name)}});
            }
            std::vector<Clause> matrix{std::move(big)};
            for (auto& c : rest) matrix.push_back(std::move(c));
            g.part.universals.push_back({{z}, std::move(matrix)});
        };
        for (const auto& [values, d] : sig.data_ranges) {
            std::vector<std::string> members;
            for (const auto& v : values) members.push_back(nm.constant_var({v, d}).name);
            emit(nm.data_range(values, d), members);
        }
        for (const auto& noms : sig.nominal_sets) {
            std::vector<std::string> members;
            for (const auto& a : noms) members.push_back(nm.individual(a).name);
            emit(nm.nominal_set(noms), members);
        }
        out.push_back(std::move(g));
    }
    {  // xi12: compound facet expressions match their zeta expansion.
        XiGroup g{12, {}};
        for (const auto& d : sig.datatypes) {
            auto it = sig.facet_exprs.find(d);
            if (it == sig.facet_exprs.end()) continue;
            for (const FacetExpr& fe : it->second) {
                const std::string psi = nm.facet_expr_set(fe).name;
                const std::vector<Clause> zeta_cnf = zeta(fe, nm);
                std::vector<Clause> matrix;
                // forward: membership in psi implies each zeta clause
                for (const auto& c : zeta_cnf) {
                    Clause cl{{GL::mem1(z, psi, true)}};
                    cl.lits.insert(cl.lits.end(), c.lits.begin(), c.lits.end());
                    matrix.push_back(std::move(cl));
                }
                // backward: the zeta clauses jointly imply membership; the
                // negated CNF distributes into one clause per literal choice
                std::vector<std::size_t> idx(zeta_cnf.size(), 0);
                bool done = zeta_cnf.empty();
                while (!done) {
                    Clause cl;
                    for (std::size_t i = 0; i < zeta_cnf.size(); ++i)
                        cl.lits.push_back(complement(zeta_cnf[i].lits[idx[i]]));
                    cl.lits.push_back(GL::mem1(z, psi));
                    matrix.push_back(std::move(cl));
                    std::size_t i = 0;
                    for (; i < idx.size(); ++i) {
                        if (++idx[i] < zeta_cnf[i].lits.size()) break;
                        idx[i] = 0;
                    }
                    if (i == idx.size()) done = true;
                }
                g.part.universals.push_back({{z}, std::move(matrix)});
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

// ── phi_KB assembly ─────────────────────────────────────────────────────────

namespace {

// Splits a universal into one universal per matrix clause, keeping only the
// quantifiers the clause mentions, with positional bound names.  This is the
// "quantifiers as inward as possible" normal form the expansion relies on.
std::vector<PurelyUniversal> push_inward(const PurelyUniversal& u) {
    std::vector<PurelyUniversal> out;
    for (const Clause& c : u.matrix) {
        const std::set<std::string> used = vars0(c);
        std::vector<std::string> kept;
        for (const auto& b : u.bound)
            if (used.count(b)) kept.push_back(b);
        // positional rename via temporaries to avoid clashes
        VarSubst to_tmp, to_final;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            to_tmp.l0[kept[i]] = "$tmp" + std::to_string(i + 1);
            to_final.l0["$tmp" + std::to_string(i + 1)] = zv(static_cast<int>(i) + 1);
        }
        Clause renamed = substitute(to_final, substitute(to_tmp, c));
        renamed.canonicalize();
        std::vector<std::string> bound;
        for (std::size_t i = 0; i < kept.size(); ++i) bound.push_back(zv(static_cast<int>(i) + 1));
        out.push_back({std::move(bound), {std::move(renamed)}});
    }
    return out;
}

}  // namespace

Translation build_phi_kb(const KnowledgeBase& kb) {
    Translation tr;
    tr.diagnostics = validate(kb);
    if (has_errors(tr.diagnostics)) return tr;

    tr.flattened = flatten(kb);
    tr.sig = signature(tr.flattened);

    Formula phi;
    for (const Statement* s : tr.flattened.all()) {
        ThetaResult th = theta_statement(*s, tr.naming);
        for (auto& d : th.diagnostics) tr.diagnostics.push_back(std::move(d));
        for (auto& l : th.formula.ground) phi.ground.push_back(std::move(l));
        for (auto& u : th.formula.universals) phi.universals.push_back(std::move(u));
    }
    for (auto& g : xi_constraints(tr.sig, tr.naming)) {
        for (auto& l : g.part.ground) phi.ground.push_back(std::move(l));
        for (auto& u : g.part.universals) phi.universals.push_back(std::move(u));
    }
    for (auto& l : datatype_facts(tr.sig, kb.dmap, tr.naming)) phi.ground.push_back(std::move(l));
    if (has_errors(tr.diagnostics)) return tr;

    // Normalize: single-clause universals, duplicates out, ground dedup.
    std::vector<PurelyUniversal> singles;
    for (const auto& u : phi.universals)
        for (auto& s : push_inward(u)) {
            if (std::find(singles.begin(), singles.end(), s) == singles.end())
                singles.push_back(std::move(s));
        }
    std::vector<GroundLiteral> ground;
    for (const auto& l : phi.ground)
        if (std::find(ground.begin(), ground.end(), l) == ground.end()) ground.push_back(l);

    // Rename quantified variables apart across the whole formula.
    int counter = 0;
    for (auto& u : singles) {
        VarSubst ren;
        std::vector<std::string> bound;
        for (const auto& b : u.bound) {
            std::string fresh = "$q" + std::to_string(++counter);
            ren.l0[b] = fresh;
            bound.push_back(fresh);
        }
        u.bound = std::move(bound);
        for (auto& c : u.matrix) c = substitute(ren, c);
    }
    // The $q names are internal placeholders; present them as $z1..$zN.
    for (auto& u : singles) {
        VarSubst ren;
        std::vector<std::string> bound;
        for (const auto& b : u.bound) {
            std::string fresh = "$z" + b.substr(2);
            ren.l0[b] = fresh;
            bound.push_back(fresh);
        }
        u.bound = std::move(bound);
        for (auto& c : u.matrix) c = substitute(ren, c);
    }

    tr.phi.ground = std::move(ground);
    tr.phi.universals = std::move(singles);
    return tr;
}

std::vector<GroundLiteral> theta_query(const HOQuery& q, NamingMap& nm) {
    std::vector<GroundLiteral> out;
    auto arg0 = [&](const QueryArg& a) -> std::string {
        switch (a.kind) {
            case QueryArg::Kind::Individual: return nm.individual(a.name).name;
            case QueryArg::Kind::Constant: return nm.constant_var(*a.value).name;
            case QueryArg::Kind::Variable:
                return nm.query_var(a.name, VarSort::Individual).name;
        }
        return a.name;
    };
    for (const HOLiteral& l : q.literals) {
        switch (l.shape) {
            case HOLiteral::Shape::Concept: {
                std::string set;
                if (l.predicate_is_var)
                    set = nm.query_var(l.predicate, VarSort::Concept).name;
                else if (l.predicate == "Thing")
                    set = nm.top().name;
                else if (l.predicate == "Nothing")
                    set = nm.bottom().name;
                else
                    set = nm.concept_leaf(c_name(l.predicate))->name;
                out.push_back(GroundLiteral::mem1(arg0(l.arg1), set, l.negated));
                break;
            }
            case HOLiteral::Shape::AbstractRole: {
                std::string set = l.predicate_is_var
                                      ? nm.query_var(l.predicate, VarSort::AbstractRole).name
                                      : nm.role_leaf(r_name(l.predicate))->name;
                out.push_back(GroundLiteral::mem3(arg0(l.arg1), arg0(l.arg2), set, l.negated));
                break;
            }
            case HOLiteral::Shape::ConcreteRole: {
                std::string set = l.predicate_is_var
                                      ? nm.query_var(l.predicate, VarSort::ConcreteRole).name
                                      : nm.crole_leaf(p_name(l.predicate))->name;
                out.push_back(GroundLiteral::mem3(arg0(l.arg1), arg0(l.arg2), set, l.negated));
                break;
            }
            case HOLiteral::Shape::Equality:
                out.push_back(GroundLiteral::eq(arg0(l.arg1), arg0(l.arg2), l.negated));
                break;
        }
    }
    return out;
}

std::optional<VarSubst> theta_substitution(const DLSubstitution& sigma, const NamingMap& nm) {
    using TK = DLSubstitution::Target::Kind;
    VarSubst out;
    for (const auto& [v, t] : sigma.map) {
        switch (t.kind) {
            case TK::Individual: {
                SetVar target{Level::L0, t.name};
                const auto* e = nm.find(target);
                if (!e || e->kind != NamingMap::Kind::Individual) return std::nullopt;
                out.l0[v] = target.name;
                break;
            }
            case TK::Constant: {
                SetVar target{Level::L0, t.value->value};
                const auto* e = nm.find(target);
                if (!e || e->kind != NamingMap::Kind::Constant) return std::nullopt;
                out.l0[v] = target.name;
                break;
            }
            case TK::Concept: {
                SetVar target{Level::L1, t.name};
                const auto* e = nm.find(target);
                if (!e || e->kind != NamingMap::Kind::Concept) return std::nullopt;
                out.l1[v] = target.name;
                break;
            }
            case TK::AbstractRole: {
                SetVar target{Level::L3, t.name};
                const auto* e = nm.find(target);
                if (!e || (e->kind != NamingMap::Kind::Role && e->kind != NamingMap::Kind::Universal))
                    return std::nullopt;
                out.l3[v] = target.name;
                break;
            }
            case TK::ConcreteRole: {
                SetVar target{Level::L3, t.name};
                const auto* e = nm.find(target);
                if (!e || e->kind != NamingMap::Kind::CRole) return std::nullopt;
                out.l3[v] = target.name;
                break;
            }
        }
    }
    return out;
}

std::string render_phi(const Formula& phi) {
    std::ostringstream o;
    for (const auto& l : phi.ground) o << render(l) << "\n";
    for (const auto& u : phi.universals) o << render(u) << "\n";
    return o.str();
}

std::vector<GroundLiteral> datatype_facts(const Signature& sig, const DatatypeMap& dmap,
                                          NamingMap& nm) {
    std::vector<GroundLiteral> out;
    // Declared facet extensions, pinned on constants occurring in the KB.
    for (const auto& d : sig.datatypes) {
        auto fit = sig.facets.find(d);
        auto cit = sig.constants.find(d);
        if (fit == sig.facets.end() || cit == sig.constants.end()) continue;
        const auto* decl = dmap.find(d);
        if (!decl) continue;
        for (const auto& f : fit->second) {
            const std::vector<std::string>* ext = nullptr;
            for (const auto& [fn, e] : decl->facets)
                if (fn == f) ext = &e;
            if (!ext) continue;
            for (const auto& v : cit->second) {
                bool in = std::find(ext->begin(), ext->end(), v) != ext->end();
                out.push_back(GroundLiteral::mem1(nm.constant_var({v, d}).name,
                                                  nm.facet(f, d).name, !in));
            }
        }
    }
    // Distinct constants denote distinct values.
    std::vector<std::string> all;
    for (const auto& d : sig.datatypes) {
        auto cit = sig.constants.find(d);
        if (cit == sig.constants.end()) continue;
        for (const auto& v : cit->second) all.push_back(nm.constant_var({v, d}).name);
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            out.push_back(GroundLiteral::eq(all[i], all[j], true));
    return out;
}

}  // namespace dl4r
