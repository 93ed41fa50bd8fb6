#include "dl4r/query.hpp"

#include <algorithm>
#include <sstream>

namespace dl4r {

QueryArg QueryArg::ind(std::string n) {
    QueryArg a;
    a.kind = Kind::Individual;
    a.name = std::move(n);
    return a;
}

QueryArg QueryArg::var(std::string n) {
    QueryArg a;
    a.kind = Kind::Variable;
    a.name = std::move(n);
    return a;
}

QueryArg QueryArg::constant(Constant c) {
    QueryArg a;
    a.kind = Kind::Constant;
    a.value = std::move(c);
    return a;
}

std::string QueryArg::text() const {
    if (kind == Kind::Constant) return "\"" + value->value + "\"^" + value->datatype;
    return name;
}

std::string HOLiteral::text() const {
    std::string body;
    if (shape == Shape::Equality)
        body = arg1.text() + " = " + arg2.text();
    else if (shape == Shape::Concept)
        body = predicate + "(" + arg1.text() + ")";
    else
        body = predicate + "(" + arg1.text() + ", " + arg2.text() + ")";
    return negated ? "!" + body : body;
}

namespace {
HOLiteral make(HOLiteral::Shape shape, bool pred_var, std::string pred, QueryArg a1, QueryArg a2,
               bool neg) {
    HOLiteral l;
    l.shape = shape;
    l.negated = neg;
    l.predicate_is_var = pred_var;
    l.predicate = std::move(pred);
    l.arg1 = std::move(a1);
    l.arg2 = std::move(a2);
    return l;
}
}  // namespace

HOLiteral ho_concept(std::string pred, QueryArg w, bool neg) {
    return make(HOLiteral::Shape::Concept, false, std::move(pred), std::move(w), {}, neg);
}
HOLiteral ho_role(std::string pred, QueryArg w1, QueryArg w2, bool neg) {
    return make(HOLiteral::Shape::AbstractRole, false, std::move(pred), std::move(w1),
                std::move(w2), neg);
}
HOLiteral ho_crole(std::string pred, QueryArg w1, QueryArg u1, bool neg) {
    return make(HOLiteral::Shape::ConcreteRole, false, std::move(pred), std::move(w1),
                std::move(u1), neg);
}
HOLiteral ho_eq(QueryArg a, QueryArg b, bool neg) {
    return make(HOLiteral::Shape::Equality, false, "", std::move(a), std::move(b), neg);
}
HOLiteral ho_cvar(std::string var, QueryArg w, bool neg) {
    return make(HOLiteral::Shape::Concept, true, std::move(var), std::move(w), {}, neg);
}
HOLiteral ho_rvar(std::string var, QueryArg w1, QueryArg w2, bool neg) {
    return make(HOLiteral::Shape::AbstractRole, true, std::move(var), std::move(w1), std::move(w2),
                neg);
}
HOLiteral ho_pvar(std::string var, QueryArg w1, QueryArg u1, bool neg) {
    return make(HOLiteral::Shape::ConcreteRole, true, std::move(var), std::move(w1), std::move(u1),
                neg);
}

std::string HOQuery::text() const {
    if (literals.empty()) return "";
    std::string out;
    for (std::size_t i = 0; i < literals.size(); ++i) {
        if (i) out += " & ";
        out += literals[i].text();
    }
    return out;
}

std::vector<QueryVariable> QueryVars::all() const {
    std::vector<QueryVariable> out;
    for (const auto& v : individuals) out.push_back({v, VarSort::Individual});
    for (const auto& v : concepts) out.push_back({v, VarSort::Concept});
    for (const auto& v : abstract_roles) out.push_back({v, VarSort::AbstractRole});
    for (const auto& v : concrete_roles) out.push_back({v, VarSort::ConcreteRole});
    return out;
}

QueryVars variables(const HOQuery& q) {
    QueryVars out;
    for (const auto& l : q.literals) {
        if (l.predicate_is_var) {
            switch (l.shape) {
                case HOLiteral::Shape::Concept: out.concepts.insert(l.predicate); break;
                case HOLiteral::Shape::AbstractRole: out.abstract_roles.insert(l.predicate); break;
                case HOLiteral::Shape::ConcreteRole: out.concrete_roles.insert(l.predicate); break;
                default: break;
            }
        }
        if (l.arg1.is_var()) out.individuals.insert(l.arg1.name);
        if (l.shape != HOLiteral::Shape::Concept && l.arg2.is_var())
            out.individuals.insert(l.arg2.name);
    }
    return out;
}

std::string DLSubstitution::text() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : map) {
        if (!first) out += ", ";
        first = false;
        out += v + "/";
        out += t.kind == Target::Kind::Constant ? "\"" + t.value->value + "\"^" + t.value->datatype
                                                : t.name;
    }
    return out + "}";
}

std::optional<HOQuery> apply(const DLSubstitution& sigma, const HOQuery& q) {
    using TK = DLSubstitution::Target::Kind;
    HOQuery out;
    out.literals.reserve(q.literals.size());
    for (HOLiteral l : q.literals) {
        if (l.predicate_is_var) {
            auto it = sigma.map.find(l.predicate);
            if (it != sigma.map.end()) {
                const auto& t = it->second;
                bool ok = (l.shape == HOLiteral::Shape::Concept && t.kind == TK::Concept) ||
                          (l.shape == HOLiteral::Shape::AbstractRole && t.kind == TK::AbstractRole) ||
                          (l.shape == HOLiteral::Shape::ConcreteRole && t.kind == TK::ConcreteRole);
                if (!ok) return std::nullopt;
                l.predicate = t.name;
                l.predicate_is_var = false;
            }
        }
        auto subst_arg = [&](QueryArg& a) -> bool {
            if (!a.is_var()) return true;
            auto it = sigma.map.find(a.name);
            if (it == sigma.map.end()) return true;
            const auto& t = it->second;
            if (t.kind == TK::Individual)
                a = QueryArg::ind(t.name);
            else if (t.kind == TK::Constant)
                a = QueryArg::constant(*t.value);
            else
                return false;
            return true;
        };
        if (!subst_arg(l.arg1)) return std::nullopt;
        if (l.shape != HOLiteral::Shape::Concept && !subst_arg(l.arg2)) return std::nullopt;
        out.literals.push_back(std::move(l));
    }
    return out;
}

std::vector<Diagnostic> validate_query(const HOQuery& q, const KnowledgeBase& kb) {
    std::vector<Diagnostic> out;
    auto err = [&](const std::string& m) {
        out.push_back({Diagnostic::Severity::Error, m, 0, 0, {}});
    };

    // Variable position bookkeeping: a variable may not serve two sorts, and
    // an individual/data-value variable may not occur both in a position that
    // demands an individual and in one that demands a data value.
    std::map<std::string, std::string> sort_of;  // ?v -> description
    auto use = [&](const std::string& v, const std::string& sort) {
        auto [it, fresh] = sort_of.emplace(v, sort);
        if (!fresh && it->second != sort)
            err("variable " + v + " used both as " + it->second + " and as " + sort);
    };

    Signature sig = signature(kb);
    for (const auto& l : q.literals) {
        switch (l.shape) {
            case HOLiteral::Shape::Concept:
                if (l.predicate_is_var) use(l.predicate, "concept variable");
                if (l.arg1.is_var()) use(l.arg1.name, "individual variable");
                break;
            case HOLiteral::Shape::AbstractRole:
                if (l.predicate_is_var) use(l.predicate, "abstract-role variable");
                if (l.arg1.is_var()) use(l.arg1.name, "individual variable");
                if (l.arg2.is_var()) use(l.arg2.name, "individual variable");
                break;
            case HOLiteral::Shape::ConcreteRole:
                if (l.predicate_is_var) use(l.predicate, "concrete-role variable");
                if (l.arg1.is_var()) use(l.arg1.name, "individual variable");
                if (l.arg2.is_var()) use(l.arg2.name, "data-value variable");
                break;
            case HOLiteral::Shape::Equality:
                break;
        }
        auto check_arg = [&](const QueryArg& a, bool data_position) {
            if (a.kind == QueryArg::Kind::Individual && !sig.has_individual(a.name))
                err("individual '" + a.name + "' does not occur in the knowledge base");
            if (a.kind == QueryArg::Kind::Constant &&
                !kb.dmap.has_constant(a.value->datatype, a.value->value))
                err("constant \"" + a.value->value + "\" is not declared for datatype '" +
                    a.value->datatype + "'");
            (void)data_position;
        };
        check_arg(l.arg1, false);
        if (l.shape != HOLiteral::Shape::Concept) check_arg(l.arg2, l.shape == HOLiteral::Shape::ConcreteRole);
    }
    return out;
}

}  // namespace dl4r
