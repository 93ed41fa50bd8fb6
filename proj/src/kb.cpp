#include "dl4r/kb.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace dl4r {

// ── DatatypeMap ─────────────────────────────────────────────────────────────

const DatatypeMap::Datatype* DatatypeMap::find(const std::string& name) const {
    for (const auto& d : datatypes)
        if (d.name == name) return &d;
    return nullptr;
}

bool DatatypeMap::has_constant(const std::string& datatype, const std::string& value) const {
    const auto* d = find(datatype);
    if (!d) return false;
    return std::find(d->constants.begin(), d->constants.end(), value) != d->constants.end();
}

std::optional<std::string> DatatypeMap::facet_datatype(const std::string& facet) const {
    std::optional<std::string> found;
    for (const auto& d : datatypes)
        for (const auto& [f, ext] : d.facets) {
            (void)ext;
            if (f == facet) {
                if (found) return std::nullopt;  // ambiguous
                found = d.name;
            }
        }
    return found;
}

// ── term factories ──────────────────────────────────────────────────────────

namespace {
ConceptPtr mk_c(ConceptTerm t) { return std::make_shared<const ConceptTerm>(std::move(t)); }
RolePtr mk_r(RoleTerm t) { return std::make_shared<const RoleTerm>(std::move(t)); }
CRolePtr mk_p(CRoleTerm t) { return std::make_shared<const CRoleTerm>(std::move(t)); }
DataPtr mk_d(DataTerm t) { return std::make_shared<const DataTerm>(std::move(t)); }
}  // namespace

ConceptPtr c_name(std::string n) {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::Name;
    t.name = std::move(n);
    return mk_c(std::move(t));
}
ConceptPtr c_top() {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::Top;
    return mk_c(std::move(t));
}
ConceptPtr c_bottom() {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::Bottom;
    return mk_c(std::move(t));
}
ConceptPtr c_not(ConceptPtr c) {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::Not;
    t.lhs = std::move(c);
    return mk_c(std::move(t));
}
ConceptPtr c_or(ConceptPtr a, ConceptPtr b) {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::Or;
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return mk_c(std::move(t));
}
ConceptPtr c_and(ConceptPtr a, ConceptPtr b) {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::And;
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return mk_c(std::move(t));
}
ConceptPtr c_nominal(std::vector<std::string> individuals) {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::Nominal;
    t.individuals = std::move(individuals);
    return mk_c(std::move(t));
}
ConceptPtr c_exists_self(RolePtr r) {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::ExistsSelf;
    t.role = std::move(r);
    return mk_c(std::move(t));
}
ConceptPtr c_exists_value(RolePtr r, std::string individual) {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::ExistsValue;
    t.role = std::move(r);
    t.individuals = {std::move(individual)};
    return mk_c(std::move(t));
}
ConceptPtr c_exists_data(CRolePtr p, Constant e) {
    ConceptTerm t;
    t.kind = ConceptTerm::Kind::ExistsData;
    t.crole = std::move(p);
    t.constant = std::move(e);
    return mk_c(std::move(t));
}

RolePtr r_name(std::string n) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::Name;
    t.name = std::move(n);
    return mk_r(std::move(t));
}
RolePtr r_universal() {
    RoleTerm t;
    t.kind = RoleTerm::Kind::Universal;
    t.name = "U";
    return mk_r(std::move(t));
}
RolePtr r_inverse(RolePtr r) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::Inverse;
    t.lhs = std::move(r);
    return mk_r(std::move(t));
}
RolePtr r_not(RolePtr r) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::Not;
    t.lhs = std::move(r);
    return mk_r(std::move(t));
}
RolePtr r_or(RolePtr a, RolePtr b) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::Or;
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return mk_r(std::move(t));
}
RolePtr r_and(RolePtr a, RolePtr b) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::And;
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return mk_r(std::move(t));
}
RolePtr r_dom(RolePtr r, ConceptPtr c) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::DomRestr;
    t.lhs = std::move(r);
    t.c1 = std::move(c);
    return mk_r(std::move(t));
}
RolePtr r_ran(RolePtr r, ConceptPtr c) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::RanRestr;
    t.lhs = std::move(r);
    t.c1 = std::move(c);
    return mk_r(std::move(t));
}
RolePtr r_both(RolePtr r, ConceptPtr c1, ConceptPtr c2) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::BothRestr;
    t.lhs = std::move(r);
    t.c1 = std::move(c1);
    t.c2 = std::move(c2);
    return mk_r(std::move(t));
}
RolePtr r_id(ConceptPtr c) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::Id;
    t.c1 = std::move(c);
    return mk_r(std::move(t));
}
RolePtr r_product(ConceptPtr a, ConceptPtr b) {
    RoleTerm t;
    t.kind = RoleTerm::Kind::Product;
    t.c1 = std::move(a);
    t.c2 = std::move(b);
    return mk_r(std::move(t));
}

CRolePtr p_name(std::string n) {
    CRoleTerm t;
    t.kind = CRoleTerm::Kind::Name;
    t.name = std::move(n);
    return mk_p(std::move(t));
}
CRolePtr p_not(CRolePtr p) {
    CRoleTerm t;
    t.kind = CRoleTerm::Kind::Not;
    t.lhs = std::move(p);
    return mk_p(std::move(t));
}
CRolePtr p_or(CRolePtr a, CRolePtr b) {
    CRoleTerm t;
    t.kind = CRoleTerm::Kind::Or;
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return mk_p(std::move(t));
}
CRolePtr p_and(CRolePtr a, CRolePtr b) {
    CRoleTerm t;
    t.kind = CRoleTerm::Kind::And;
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return mk_p(std::move(t));
}
CRolePtr p_dom(CRolePtr p, ConceptPtr c) {
    CRoleTerm t;
    t.kind = CRoleTerm::Kind::DomRestr;
    t.lhs = std::move(p);
    t.c1 = std::move(c);
    return mk_p(std::move(t));
}
CRolePtr p_ran(CRolePtr p, DataPtr d) {
    CRoleTerm t;
    t.kind = CRoleTerm::Kind::RanRestr;
    t.lhs = std::move(p);
    t.t1 = std::move(d);
    return mk_p(std::move(t));
}
CRolePtr p_both(CRolePtr p, ConceptPtr c, DataPtr d) {
    CRoleTerm t;
    t.kind = CRoleTerm::Kind::BothRestr;
    t.lhs = std::move(p);
    t.c1 = std::move(c);
    t.t1 = std::move(d);
    return mk_p(std::move(t));
}

DataPtr d_facet(std::string facet, std::string datatype) {
    DataTerm t;
    t.kind = DataTerm::Kind::Facet;
    t.name = std::move(facet);
    t.datatype = std::move(datatype);
    return mk_d(std::move(t));
}
DataPtr d_enum(std::vector<std::string> values, std::string datatype) {
    DataTerm t;
    t.kind = DataTerm::Kind::Enum;
    t.values = std::move(values);
    t.datatype = std::move(datatype);
    return mk_d(std::move(t));
}
DataPtr d_datatype(std::string datatype) {
    DataTerm t;
    t.kind = DataTerm::Kind::DatatypeName;
    t.name = std::move(datatype);
    return mk_d(std::move(t));
}
DataPtr d_top(std::string datatype) {
    DataTerm t;
    t.kind = DataTerm::Kind::TopD;
    t.name = std::move(datatype);
    return mk_d(std::move(t));
}
DataPtr d_bot(std::string datatype) {
    DataTerm t;
    t.kind = DataTerm::Kind::BotD;
    t.name = std::move(datatype);
    return mk_d(std::move(t));
}
DataPtr d_singleton(Constant e) {
    DataTerm t;
    t.kind = DataTerm::Kind::Singleton;
    t.datatype = e.datatype;
    t.values = {e.value};
    return mk_d(std::move(t));
}
DataPtr d_not(DataPtr a) {
    DataTerm t;
    t.kind = DataTerm::Kind::Not;
    t.lhs = std::move(a);
    return mk_d(std::move(t));
}
DataPtr d_or(DataPtr a, DataPtr b) {
    DataTerm t;
    t.kind = DataTerm::Kind::Or;
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return mk_d(std::move(t));
}
DataPtr d_and(DataPtr a, DataPtr b) {
    DataTerm t;
    t.kind = DataTerm::Kind::And;
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return mk_d(std::move(t));
}

// ── printing ────────────────────────────────────────────────────────────────

namespace {

std::string quote(const std::string& v, const std::string& d) {
    return "\"" + v + "\"^" + d;
}

std::string paren_if_binary_c(const ConceptPtr& c) {
    std::string s = print(*c);
    return s;
}

}  // namespace

std::string print(const ConceptTerm& c) {
    using K = ConceptTerm::Kind;
    switch (c.kind) {
        case K::Name: return c.name;
        case K::Top: return "Thing";
        case K::Bottom: return "Nothing";
        case K::Not: return "~" + (c.lhs->kind == K::Name || c.lhs->kind == K::Top ||
                                   c.lhs->kind == K::Bottom || c.lhs->kind == K::Nominal
                                       ? print(*c.lhs)
                                       : "(" + print(*c.lhs) + ")");
        case K::Or: return "(" + paren_if_binary_c(c.lhs) + " | " + paren_if_binary_c(c.rhs) + ")";
        case K::And: return "(" + paren_if_binary_c(c.lhs) + " & " + paren_if_binary_c(c.rhs) + ")";
        case K::Nominal: {
            std::string out = "{";
            for (std::size_t i = 0; i < c.individuals.size(); ++i) {
                if (i) out += ",";
                out += c.individuals[i];
            }
            return out + "}";
        }
        case K::ExistsSelf: return "exists " + print(*c.role) + " . Self";
        case K::ExistsValue: return "exists " + print(*c.role) + " . {" + c.individuals.at(0) + "}";
        case K::ExistsData:
            return "exists " + print(*c.crole) + " . {" + quote(c.constant->value, c.constant->datatype) + "}";
    }
    return "?";
}

std::string print(const RoleTerm& r) {
    using K = RoleTerm::Kind;
    switch (r.kind) {
        case K::Name: return r.name;
        case K::Universal: return "U";
        case K::Inverse: return "inv(" + print(*r.lhs) + ")";
        case K::Not: return "~" + (r.lhs->kind == K::Name || r.lhs->kind == K::Universal
                                       ? print(*r.lhs)
                                       : "(" + print(*r.lhs) + ")");
        case K::Or: return "(" + print(*r.lhs) + " | " + print(*r.rhs) + ")";
        case K::And: return "(" + print(*r.lhs) + " & " + print(*r.rhs) + ")";
        case K::DomRestr: return "dom(" + print(*r.lhs) + ", " + print(*r.c1) + ")";
        case K::RanRestr: return "ran(" + print(*r.lhs) + ", " + print(*r.c1) + ")";
        case K::BothRestr:
            return "restr(" + print(*r.lhs) + ", " + print(*r.c1) + ", " + print(*r.c2) + ")";
        case K::Id: return "id(" + print(*r.c1) + ")";
        case K::Product: return "prod(" + print(*r.c1) + ", " + print(*r.c2) + ")";
    }
    return "?";
}

std::string print(const CRoleTerm& p) {
    using K = CRoleTerm::Kind;
    switch (p.kind) {
        case K::Name: return p.name;
        case K::Not:
            return "~" + (p.lhs->kind == K::Name ? print(*p.lhs) : "(" + print(*p.lhs) + ")");
        case K::Or: return "(" + print(*p.lhs) + " | " + print(*p.rhs) + ")";
        case K::And: return "(" + print(*p.lhs) + " & " + print(*p.rhs) + ")";
        case K::DomRestr: return "dom(" + print(*p.lhs) + ", " + print(*p.c1) + ")";
        case K::RanRestr: return "ran(" + print(*p.lhs) + ", " + print(*p.t1) + ")";
        case K::BothRestr:
            return "restr(" + print(*p.lhs) + ", " + print(*p.c1) + ", " + print(*p.t1) + ")";
    }
    return "?";
}

std::string print(const DataTerm& t) {
    using K = DataTerm::Kind;
    switch (t.kind) {
        case K::Facet: return t.name;
        case K::Enum:
        case K::Singleton: {
            std::string out = "{";
            for (std::size_t i = 0; i < t.values.size(); ++i) {
                if (i) out += ",";
                out += quote(t.values[i], t.datatype);
            }
            return out + "}";
        }
        case K::DatatypeName:
        case K::Defined: return t.name;
        case K::TopD: return "top(" + t.name + ")";
        case K::BotD: return "bot(" + t.name + ")";
        case K::Not:
            return "~" + (t.lhs->kind == K::Facet || t.lhs->kind == K::DatatypeName
                              ? print(*t.lhs)
                              : "(" + print(*t.lhs) + ")");
        case K::Or: return "(" + print(*t.lhs) + " | " + print(*t.rhs) + ")";
        case K::And: return "(" + print(*t.lhs) + " & " + print(*t.rhs) + ")";
    }
    return "?";
}

bool term_equal(const ConceptPtr& a, const ConceptPtr& b) {
    if (!a || !b) return !a && !b;
    return print(*a) == print(*b);
}
bool term_equal(const RolePtr& a, const RolePtr& b) {
    if (!a || !b) return !a && !b;
    return print(*a) == print(*b);
}
bool term_equal(const CRolePtr& a, const CRolePtr& b) {
    if (!a || !b) return !a && !b;
    return print(*a) == print(*b);
}
bool term_equal(const DataPtr& a, const DataPtr& b) {
    if (!a || !b) return !a && !b;
    return print(*a) == print(*b);
}

// ── statement factories ─────────────────────────────────────────────────────

Statement st_instance(std::string a, ConceptPtr c) {
    Statement s;
    s.kind = Statement::Kind::InstanceOf;
    s.a = std::move(a);
    s.c1 = std::move(c);
    return s;
}
Statement st_role_pair(std::string a, std::string b, RolePtr r, bool negated) {
    Statement s;
    s.kind = Statement::Kind::RolePair;
    s.a = std::move(a);
    s.b = std::move(b);
    s.r1 = std::move(r);
    s.negated = negated;
    return s;
}
Statement st_ind_eq(std::string a, std::string b) {
    Statement s;
    s.kind = Statement::Kind::IndEq;
    s.a = std::move(a);
    s.b = std::move(b);
    return s;
}
Statement st_ind_neq(std::string a, std::string b) {
    Statement s;
    s.kind = Statement::Kind::IndNeq;
    s.a = std::move(a);
    s.b = std::move(b);
    return s;
}
Statement st_data_instance(Constant e, DataPtr t) {
    Statement s;
    s.kind = Statement::Kind::DataInstance;
    s.value = std::move(e);
    s.t1 = std::move(t);
    return s;
}
Statement st_crole_pair(std::string a, Constant e, CRolePtr p, bool negated) {
    Statement s;
    s.kind = Statement::Kind::CRolePair;
    s.a = std::move(a);
    s.value = std::move(e);
    s.p1 = std::move(p);
    s.negated = negated;
    return s;
}
Statement st_concept_equiv(ConceptPtr a, ConceptPtr b) {
    Statement s;
    s.kind = Statement::Kind::ConceptEquiv;
    s.c1 = std::move(a);
    s.c2 = std::move(b);
    return s;
}
Statement st_concept_sub(ConceptPtr a, ConceptPtr b) {
    Statement s;
    s.kind = Statement::Kind::ConceptSub;
    s.c1 = std::move(a);
    s.c2 = std::move(b);
    return s;
}
Statement st_sub_forall_r(ConceptPtr c1, RolePtr r, ConceptPtr c2) {
    Statement s;
    s.kind = Statement::Kind::SubForallR;
    s.c1 = std::move(c1);
    s.r1 = std::move(r);
    s.c2 = std::move(c2);
    return s;
}
Statement st_exists_sub(RolePtr r, ConceptPtr c1, ConceptPtr c2) {
    Statement s;
    s.kind = Statement::Kind::ExistsSub;
    s.r1 = std::move(r);
    s.c1 = std::move(c1);
    s.c2 = std::move(c2);
    return s;
}
Statement st_atleast_sub(int n, RolePtr r, ConceptPtr c1, ConceptPtr c2) {
    Statement s;
    s.kind = Statement::Kind::AtLeastSub;
    s.n = n;
    s.r1 = std::move(r);
    s.c1 = std::move(c1);
    s.c2 = std::move(c2);
    return s;
}
Statement st_sub_atmost(ConceptPtr c1, int n, RolePtr r, ConceptPtr c2) {
    Statement s;
    s.kind = Statement::Kind::SubAtMost;
    s.c1 = std::move(c1);
    s.n = n;
    s.r1 = std::move(r);
    s.c2 = std::move(c2);
    return s;
}
Statement st_sub_forall_p(ConceptPtr c1, CRolePtr p, DataPtr t) {
    Statement s;
    s.kind = Statement::Kind::SubForallP;
    s.c1 = std::move(c1);
    s.p1 = std::move(p);
    s.t1 = std::move(t);
    return s;
}
Statement st_exists_sub_p(CRolePtr p, DataPtr t, ConceptPtr c) {
    Statement s;
    s.kind = Statement::Kind::ExistsSubP;
    s.p1 = std::move(p);
    s.t1 = std::move(t);
    s.c1 = std::move(c);
    return s;
}
Statement st_atleast_sub_p(int n, CRolePtr p, DataPtr t, ConceptPtr c) {
    Statement s;
    s.kind = Statement::Kind::AtLeastSubP;
    s.n = n;
    s.p1 = std::move(p);
    s.t1 = std::move(t);
    s.c1 = std::move(c);
    return s;
}
Statement st_sub_atmost_p(ConceptPtr c, int n, CRolePtr p, DataPtr t) {
    Statement s;
    s.kind = Statement::Kind::SubAtMostP;
    s.c1 = std::move(c);
    s.n = n;
    s.p1 = std::move(p);
    s.t1 = std::move(t);
    return s;
}
Statement st_data_equiv(DataPtr a, DataPtr b) {
    Statement s;
    s.kind = Statement::Kind::DataEquiv;
    s.t1 = std::move(a);
    s.t2 = std::move(b);
    return s;
}
Statement st_data_sub(DataPtr a, DataPtr b) {
    Statement s;
    s.kind = Statement::Kind::DataSub;
    s.t1 = std::move(a);
    s.t2 = std::move(b);
    return s;
}
Statement st_role_equiv(RolePtr a, RolePtr b) {
    Statement s;
    s.kind = Statement::Kind::RoleEquiv;
    s.r1 = std::move(a);
    s.r2 = std::move(b);
    return s;
}
Statement st_role_sub(RolePtr a, RolePtr b) {
    Statement s;
    s.kind = Statement::Kind::RoleSub;
    s.r1 = std::move(a);
    s.r2 = std::move(b);
    return s;
}
Statement st_chain(std::vector<RolePtr> chain, RolePtr r) {
    Statement s;
    s.kind = Statement::Kind::RoleChainSub;
    s.chain = std::move(chain);
    s.r1 = std::move(r);
    return s;
}
Statement st_role_prop(Statement::Kind k, RolePtr r) {
    Statement s;
    s.kind = k;
    s.r1 = std::move(r);
    return s;
}
Statement st_dis_a(RolePtr a, RolePtr b) {
    Statement s;
    s.kind = Statement::Kind::DisA;
    s.r1 = std::move(a);
    s.r2 = std::move(b);
    return s;
}
Statement st_crole_equiv(CRolePtr a, CRolePtr b) {
    Statement s;
    s.kind = Statement::Kind::CRoleEquiv;
    s.p1 = std::move(a);
    s.p2 = std::move(b);
    return s;
}
Statement st_crole_sub(CRolePtr a, CRolePtr b) {
    Statement s;
    s.kind = Statement::Kind::CRoleSub;
    s.p1 = std::move(a);
    s.p2 = std::move(b);
    return s;
}
Statement st_dis_c(CRolePtr a, CRolePtr b) {
    Statement s;
    s.kind = Statement::Kind::DisC;
    s.p1 = std::move(a);
    s.p2 = std::move(b);
    return s;
}
Statement st_fun_c(CRolePtr p) {
    Statement s;
    s.kind = Statement::Kind::FunC;
    s.p1 = std::move(p);
    return s;
}

std::string Statement::text() const {
    using K = Kind;
    std::ostringstream o;
    switch (kind) {
        case K::RoleEquiv: o << print(*r1) << " == " << print(*r2); break;
        case K::RoleSub: o << print(*r1) << " <= " << print(*r2); break;
        case K::RoleChainSub: {
            o << "chain(";
            for (std::size_t i = 0; i < chain.size(); ++i) {
                if (i) o << ", ";
                o << print(*chain[i]);
            }
            o << ") <= " << print(*r1);
            break;
        }
        case K::Sym: o << "Sym(" << print(*r1) << ")"; break;
        case K::Asym: o << "Asym(" << print(*r1) << ")"; break;
        case K::Ref: o << "Ref(" << print(*r1) << ")"; break;
        case K::Irref: o << "Irref(" << print(*r1) << ")"; break;
        case K::Tra: o << "Tra(" << print(*r1) << ")"; break;
        case K::FunA: o << "Fun(" << print(*r1) << ")"; break;
        case K::DisA: o << "Dis(" << print(*r1) << ", " << print(*r2) << ")"; break;
        case K::CRoleEquiv: o << print(*p1) << " == " << print(*p2); break;
        case K::CRoleSub: o << print(*p1) << " <= " << print(*p2); break;
        case K::DisC: o << "Dis(" << print(*p1) << ", " << print(*p2) << ")"; break;
        case K::FunC: o << "Fun(" << print(*p1) << ")"; break;
        case K::ConceptEquiv: o << print(*c1) << " == " << print(*c2); break;
        case K::ConceptSub: o << print(*c1) << " <= " << print(*c2); break;
        case K::SubForallR: o << print(*c1) << " <= forall " << print(*r1) << " . " << print(*c2); break;
        case K::ExistsSub: o << "exists " << print(*r1) << " . " << print(*c1) << " <= " << print(*c2); break;
        case K::AtLeastSub:
            o << "atleast(" << n << ", " << print(*r1) << ", " << print(*c1) << ") <= " << print(*c2);
            break;
        case K::SubAtMost:
            o << print(*c1) << " <= atmost(" << n << ", " << print(*r1) << ", " << print(*c2) << ")";
            break;
        case K::SubForallP: o << print(*c1) << " <= forall " << print(*p1) << " . " << print(*t1); break;
        case K::ExistsSubP: o << "exists " << print(*p1) << " . " << print(*t1) << " <= " << print(*c1); break;
        case K::AtLeastSubP:
            o << "atleast(" << n << ", " << print(*p1) << ", " << print(*t1) << ") <= " << print(*c1);
            break;
        case K::SubAtMostP:
            o << print(*c1) << " <= atmost(" << n << ", " << print(*p1) << ", " << print(*t1) << ")";
            break;
        case K::DataEquiv: o << print(*t1) << " == " << print(*t2); break;
        case K::DataSub: o << print(*t1) << " <= " << print(*t2); break;
        case K::InstanceOf: o << a << " : " << print(*c1); break;
        case K::RolePair:
            o << "(" << a << ", " << b << ") : " << (negated ? "~" : "");
            if (negated && r1->kind != RoleTerm::Kind::Name && r1->kind != RoleTerm::Kind::Universal)
                o << "(" << print(*r1) << ")";
            else
                o << print(*r1);
            break;
        case K::IndEq: o << a << " = " << b; break;
        case K::IndNeq: o << a << " != " << b; break;
        case K::DataInstance: o << "\"" << value->value << "\"^" << value->datatype << " : " << print(*t1); break;
        case K::CRolePair:
            o << "(" << a << ", \"" << value->value << "\"^" << value->datatype << ") : "
              << (negated ? "~" : "");
            if (negated && p1->kind != CRoleTerm::Kind::Name)
                o << "(" << print(*p1) << ")";
            else
                o << print(*p1);
            break;
    }
    return o.str();
}

bool statement_equal(const Statement& s, const Statement& t) {
    return s.kind == t.kind && s.text() == t.text();
}

// ── KnowledgeBase ───────────────────────────────────────────────────────────

void KnowledgeBase::add(Statement s) {
    using K = Statement::Kind;
    switch (s.kind) {
        case K::RoleEquiv:
        case K::RoleSub:
        case K::RoleChainSub:
        case K::Sym:
        case K::Asym:
        case K::Ref:
        case K::Irref:
        case K::Tra:
        case K::FunA:
        case K::DisA:
        case K::CRoleEquiv:
        case K::CRoleSub:
        case K::DisC:
        case K::FunC:
            rbox.push_back(std::move(s));
            break;
        case K::ConceptEquiv:
        case K::ConceptSub:
        case K::SubForallR:
        case K::ExistsSub:
        case K::AtLeastSub:
        case K::SubAtMost:
        case K::SubForallP:
        case K::ExistsSubP:
        case K::AtLeastSubP:
        case K::SubAtMostP:
        case K::DataEquiv:
        case K::DataSub:
            tbox.push_back(std::move(s));
            break;
        default:
            abox.push_back(std::move(s));
            break;
    }
}

std::vector<const Statement*> KnowledgeBase::all() const {
    std::vector<const Statement*> out;
    out.reserve(rbox.size() + tbox.size() + abox.size());
    for (const auto& s : rbox) out.push_back(&s);
    for (const auto& s : tbox) out.push_back(&s);
    for (const auto& s : abox) out.push_back(&s);
    return out;
}

bool kb_equal(const KnowledgeBase& a, const KnowledgeBase& b) {
    auto eq_vec = [](const std::vector<Statement>& x, const std::vector<Statement>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!statement_equal(x[i], y[i])) return false;
        return true;
    };
    return a.dmap == b.dmap && eq_vec(a.rbox, b.rbox) && eq_vec(a.tbox, b.tbox) &&
           eq_vec(a.abox, b.abox);
}

std::string print(const KnowledgeBase& kb) {
    std::ostringstream o;
    for (const auto& d : kb.dmap.datatypes) {
        o << "datatype " << d.name << " {\n  constants:";
        for (std::size_t i = 0; i < d.constants.size(); ++i)
            o << (i ? ", " : " ") << "\"" << d.constants[i] << "\"";
        o << ";\n";
        for (const auto& [f, ext] : d.facets) {
            o << "  facets: " << f << " = {";
            for (std::size_t i = 0; i < ext.size(); ++i) o << (i ? ", " : "") << "\"" << ext[i] << "\"";
            o << "};\n";
        }
        o << "}\n";
    }
    for (const auto& s : kb.rbox) o << s.text() << "\n";
    for (const auto& s : kb.tbox) o << s.text() << "\n";
    for (const auto& s : kb.abox) o << s.text() << "\n";
    return o.str();
}

// ── facet expression classifier ─────────────────────────────────────────────

namespace {

// Pure facet tree over one datatype?
bool pure_facet_tree(const DataPtr& t, std::string& datatype) {
    using K = DataTerm::Kind;
    switch (t->kind) {
        case K::Facet:
            if (datatype.empty()) datatype = t->datatype;
            return datatype == t->datatype;
        case K::Not: return pure_facet_tree(t->lhs, datatype);
        case K::Or:
        case K::And: return pure_facet_tree(t->lhs, datatype) && pure_facet_tree(t->rhs, datatype);
        default: return false;
    }
}

using FLit = FacetExpr::Lit;
using FClause = std::vector<FLit>;
using FCnf = std::vector<FClause>;

FCnf to_cnf(const DataPtr& t, bool negate) {
    using K = DataTerm::Kind;
    switch (t->kind) {
        case K::Facet: return {{FLit{t->name, negate}}};
        case K::Not: return to_cnf(t->lhs, !negate);
        case K::Or:
        case K::And: {
            const bool conj = (t->kind == K::And) != negate;
            FCnf a = to_cnf(t->lhs, negate);
            FCnf b = to_cnf(t->rhs, negate);
            if (conj) {
                a.insert(a.end(), b.begin(), b.end());
                return a;
            }
            FCnf out;
            for (const auto& ca : a)
                for (const auto& cb : b) {
                    FClause c = ca;
                    c.insert(c.end(), cb.begin(), cb.end());
                    out.push_back(std::move(c));
                }
            return out;
        }
        default: return {};
    }
}

std::string render_fcnf(const FCnf& cnf) {
    std::string out;
    for (std::size_t i = 0; i < cnf.size(); ++i) {
        if (i) out += " & ";
        const auto& cl = cnf[i];
        std::string body;
        for (std::size_t j = 0; j < cl.size(); ++j) {
            if (j) body += " | ";
            body += (cl[j].negated ? "~" : "") + cl[j].facet;
        }
        out += cl.size() > 1 ? "(" + body + ")" : body;
    }
    return out;
}

}  // namespace

std::optional<FacetExpr> facet_expr_of(const DataPtr& t) {
    if (!t) return std::nullopt;
    if (t->kind == DataTerm::Kind::Facet) return std::nullopt;  // base case, not compound
    std::string datatype;
    if (!pure_facet_tree(t, datatype)) return std::nullopt;
    FacetExpr fe;
    fe.datatype = datatype;
    fe.cnf = to_cnf(t, false);
    for (auto& cl : fe.cnf) {
        std::sort(cl.begin(), cl.end());
        cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    }
    std::sort(fe.cnf.begin(), fe.cnf.end());
    fe.cnf.erase(std::unique(fe.cnf.begin(), fe.cnf.end()), fe.cnf.end());
    fe.text = render_fcnf(fe.cnf);
    return fe;
}

bool has_errors(const std::vector<Diagnostic>& ds) {
    return std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) {
        return d.severity == Diagnostic::Severity::Error;
    });
}

// ── name-sort bookkeeping (validation + signature share the walk) ───────────

namespace {

enum class NameSort { Individual, Concept, ARole, CRole };

const char* sort_name(NameSort s) {
    switch (s) {
        case NameSort::Individual: return "individual";
        case NameSort::Concept: return "concept";
        case NameSort::ARole: return "abstract role";
        case NameSort::CRole: return "concrete role";
    }
    return "?";
}

struct Walker {
    const KnowledgeBase& kb;
    std::vector<Diagnostic>* diags;  // may be null (signature mode)
    Signature* sig;                  // may be null (validate mode)
    std::map<std::string, NameSort> sorts;

    void error(const std::string& msg) {
        if (diags) diags->push_back({Diagnostic::Severity::Error, msg, 0, 0, {}});
    }

    void name(const std::string& n, NameSort s) {
        auto it = sorts.find(n);
        if (it != sorts.end() && it->second != s) {
            error("name '" + n + "' used both as " + sort_name(it->second) + " and as " +
                  sort_name(s));
            return;
        }
        sorts.emplace(n, s);
        if (!sig) return;
        auto push_unique = [](std::vector<std::string>& v, const std::string& x) {
            if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
        };
        switch (s) {
            case NameSort::Individual: push_unique(sig->individuals, n); break;
            case NameSort::Concept: push_unique(sig->concepts, n); break;
            case NameSort::ARole: push_unique(sig->abstract_roles, n); break;
            case NameSort::CRole: push_unique(sig->concrete_roles, n); break;
        }
    }

    void datatype(const std::string& d) {
        if (!kb.dmap.find(d)) {
            error("datatype '" + d + "' is not declared");
            return;
        }
        if (sig) {
            auto& v = sig->datatypes;
            if (std::find(v.begin(), v.end(), d) == v.end()) v.push_back(d);
        }
    }

    void constant(const Constant& e) {
        datatype(e.datatype);
        if (!kb.dmap.has_constant(e.datatype, e.value))
            error("constant \"" + e.value + "\" is not declared for datatype '" + e.datatype + "'");
        if (sig) {
            auto& v = sig->constants[e.datatype];
            if (std::find(v.begin(), v.end(), e.value) == v.end()) v.push_back(e.value);
        }
    }

    void facet(const std::string& f, const std::string& d) {
        datatype(d);
        const auto* dt = kb.dmap.find(d);
        if (dt) {
            bool found = false;
            for (const auto& [fn, ext] : dt->facets) {
                (void)ext;
                if (fn == f) found = true;
            }
            if (!found) error("facet '" + f + "' is not declared for datatype '" + d + "'");
        }
        if (sig) {
            auto& v = sig->facets[d];
            if (std::find(v.begin(), v.end(), f) == v.end()) v.push_back(f);
        }
    }

    void concept_term(const ConceptPtr& c);
    void role_term(const RolePtr& r);
    void crole_term(const CRolePtr& p);
    void data_term(const DataPtr& t);
    void statement(const Statement& s);
    void run();
};

void Walker::concept_term(const ConceptPtr& c) {
    using K = ConceptTerm::Kind;
    switch (c->kind) {
        case K::Name: name(c->name, NameSort::Concept); break;
        case K::Top:
        case K::Bottom: break;
        case K::Not: concept_term(c->lhs); break;
        case K::Or:
        case K::And:
            concept_term(c->lhs);
            concept_term(c->rhs);
            break;
        case K::Nominal:
            if (c->individuals.empty()) error("nominal set must be nonempty");
            for (const auto& a : c->individuals) name(a, NameSort::Individual);
            if (sig) {
                auto& v = sig->nominal_sets;
                if (std::find(v.begin(), v.end(), c->individuals) == v.end())
                    v.push_back(c->individuals);
            }
            break;
        case K::ExistsSelf: role_term(c->role); break;
        case K::ExistsValue:
            role_term(c->role);
            name(c->individuals.at(0), NameSort::Individual);
            break;
        case K::ExistsData:
            crole_term(c->crole);
            constant(*c->constant);
            break;
    }
}

void Walker::role_term(const RolePtr& r) {
    using K = RoleTerm::Kind;
    switch (r->kind) {
        case K::Name: name(r->name, NameSort::ARole); break;
        case K::Universal: break;  // always in the signature
        case K::Inverse:
        case K::Not: role_term(r->lhs); break;
        case K::Or:
        case K::And:
            role_term(r->lhs);
            role_term(r->rhs);
            break;
        case K::DomRestr:
        case K::RanRestr:
            role_term(r->lhs);
            concept_term(r->c1);
            break;
        case K::BothRestr:
            role_term(r->lhs);
            concept_term(r->c1);
            concept_term(r->c2);
            break;
        case K::Id: concept_term(r->c1); break;
        case K::Product:
            concept_term(r->c1);
            concept_term(r->c2);
            break;
    }
}

void Walker::crole_term(const CRolePtr& p) {
    using K = CRoleTerm::Kind;
    switch (p->kind) {
        case K::Name: name(p->name, NameSort::CRole); break;
        case K::Not: crole_term(p->lhs); break;
        case K::Or:
        case K::And:
            crole_term(p->lhs);
            crole_term(p->rhs);
            break;
        case K::DomRestr:
            crole_term(p->lhs);
            concept_term(p->c1);
            break;
        case K::RanRestr:
            crole_term(p->lhs);
            data_term(p->t1);
            break;
        case K::BothRestr:
            crole_term(p->lhs);
            concept_term(p->c1);
            data_term(p->t1);
            break;
    }
}

void Walker::data_term(const DataPtr& t) {
    using K = DataTerm::Kind;
    switch (t->kind) {
        case K::Facet: facet(t->name, t->datatype); break;
        case K::Enum:
        case K::Singleton: {
            if (t->values.empty()) error("data range enumeration must be nonempty");
            for (const auto& v : t->values) constant({v, t->datatype});
            if (sig) {
                auto& v = sig->data_ranges;
                auto key = std::make_pair(t->values, t->datatype);
                if (std::find(v.begin(), v.end(), key) == v.end()) v.push_back(key);
            }
            break;
        }
        case K::DatatypeName:
        case K::TopD:
        case K::BotD: datatype(t->name); break;
        case K::Defined: break;
        case K::Not: data_term(t->lhs); break;
        case K::Or:
        case K::And:
            data_term(t->lhs);
            data_term(t->rhs);
            break;
    }
}

void Walker::statement(const Statement& s) {
    using K = Statement::Kind;
    if (s.c1) concept_term(s.c1);
    if (s.c2) concept_term(s.c2);
    if (s.r1) role_term(s.r1);
    if (s.r2) role_term(s.r2);
    for (const auto& r : s.chain) role_term(r);
    if (s.p1) crole_term(s.p1);
    if (s.p2) crole_term(s.p2);
    if (s.t1) data_term(s.t1);
    if (s.t2) data_term(s.t2);
    if (!s.a.empty()) name(s.a, NameSort::Individual);
    if (!s.b.empty()) name(s.b, NameSort::Individual);
    if (s.value) constant(*s.value);

    switch (s.kind) {
        case K::AtLeastSub:
        case K::SubAtMost:
        case K::AtLeastSubP:
        case K::SubAtMostP:
            if (s.n < 1) error("cardinality must be >= 1");
            break;
        case K::RoleChainSub: {
            // U is reserved and may not occur on the left of a chain.
            std::function<bool(const RolePtr&)> has_u = [&](const RolePtr& r) {
                if (r->kind == RoleTerm::Kind::Universal) return true;
                if (r->lhs && has_u(r->lhs)) return true;
                if (r->rhs && has_u(r->rhs)) return true;
                return false;
            };
            for (const auto& r : s.chain)
                if (has_u(r)) error("the universal role may not appear on the left of a chain");
            break;
        }
        default: break;
    }
}

void Walker::run() {
    // Declared datatype vocabulary participates in the sort table so that
    // cross-sort reuse (a concept named like a datatype, say) is caught.
    for (const auto& d : kb.dmap.datatypes) {
        auto it = sorts.find(d.name);
        if (it != sorts.end()) error("datatype name '" + d.name + "' reuses another name");
        for (const auto& [f, ext] : d.facets) {
            (void)ext;
            if (sorts.count(f)) error("facet name '" + f + "' reuses another name");
        }
    }
    for (const Statement* s : kb.all()) statement(*s);
}

}  // namespace

std::vector<Diagnostic> validate(const KnowledgeBase& kb) {
    std::vector<Diagnostic> out;

    // Datatype map invariants.
    std::map<std::string, std::string> owner;  // constant value -> datatype
    std::set<std::string> dnames;
    for (const auto& d : kb.dmap.datatypes) {
        if (!dnames.insert(d.name).second)
            out.push_back({Diagnostic::Severity::Error, "datatype '" + d.name + "' declared twice", 0, 0, {}});
        if (d.constants.empty())
            out.push_back({Diagnostic::Severity::Error,
                           "datatype '" + d.name + "' must declare at least one constant", 0, 0, {}});
        for (const auto& v : d.constants) {
            auto [it, fresh] = owner.emplace(v, d.name);
            if (!fresh && it->second != d.name)
                out.push_back({Diagnostic::Severity::Error,
                               "constant sets not disjoint: \"" + v + "\" declared for '" +
                                   it->second + "' and '" + d.name + "'", 0, 0, {}});
        }
        std::set<std::string> fnames;
        for (const auto& [f, ext] : d.facets) {
            if (!fnames.insert(f).second)
                out.push_back({Diagnostic::Severity::Error,
                               "facet '" + f + "' declared twice for datatype '" + d.name + "'", 0, 0, {}});
            for (const auto& v : ext)
                if (std::find(d.constants.begin(), d.constants.end(), v) == d.constants.end())
                    out.push_back({Diagnostic::Severity::Error,
                                   "facet '" + f + "' extension value \"" + v +
                                       "\" is not a constant of datatype '" + d.name + "'", 0, 0, {}});
        }
    }

    Walker w{kb, &out, nullptr, {}};
    // Reserve U as an abstract role name up front.
    w.sorts.emplace("U", NameSort::ARole);
    for (const auto& d : kb.dmap.datatypes) {
        w.sorts.emplace(d.name, NameSort::Concept);  // placeholder to catch reuse
        w.sorts.erase(d.name);
    }
    w.run();
    return out;
}

bool Signature::has_concept(const std::string& n) const {
    return std::find(concepts.begin(), concepts.end(), n) != concepts.end();
}

bool Signature::has_individual(const std::string& n) const {
    return std::find(individuals.begin(), individuals.end(), n) != individuals.end();
}

Signature signature(const KnowledgeBase& kb) {
    Signature sig;
    Walker w{kb, nullptr, &sig, {}};
    w.run();
    // U is reserved and always present.
    if (std::find(sig.abstract_roles.begin(), sig.abstract_roles.end(), "U") ==
        sig.abstract_roles.end())
        sig.abstract_roles.push_back("U");
    // Facet expressions are collected by the classifier below.
    for (const Statement* s : kb.all()) {
        std::vector<DataPtr> stack;
        if (s->t1) stack.push_back(s->t1);
        if (s->t2) stack.push_back(s->t2);
        // data terms also hide inside concrete role terms and exists-data
        std::function<void(const CRolePtr&)> scan_p = [&](const CRolePtr& p) {
            if (!p) return;
            if (p->t1) stack.push_back(p->t1);
            scan_p(p->lhs);
            scan_p(p->rhs);
        };
        scan_p(s->p1);
        scan_p(s->p2);
        while (!stack.empty()) {
            DataPtr t = stack.back();
            stack.pop_back();
            if (auto fe = facet_expr_of(t)) {
                auto& v = sig.facet_exprs[fe->datatype];
                bool seen = std::any_of(v.begin(), v.end(), [&](const FacetExpr& e) {
                    return e.text == fe->text;
                });
                if (!seen) v.push_back(std::move(*fe));
                continue;  // maximal subtree consumed
            }
            if (t->lhs) stack.push_back(t->lhs);
            if (t->rhs) stack.push_back(t->rhs);
        }
    }
    return sig;
}

}  // namespace dl4r
