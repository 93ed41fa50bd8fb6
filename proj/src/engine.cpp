#include "dl4r/engine.hpp"

#include <algorithm>
#include <cassert>

namespace dl4r {

namespace {

bool is_query_var(const std::string& name) { return !name.empty() && name.front() == '?'; }

// Applies a match substitution to a template literal.
GroundLiteral apply_match(const MatchSubst& s, const GroundLiteral& l) {
    GroundLiteral out = l;
    auto sub = [&](std::string& f) {
        if (!is_query_var(f)) return;
        auto it = s.m.find(f);
        if (it != s.m.end()) f = it->second;
    };
    sub(out.x);
    if (l.kind != GroundLiteral::Kind::Mem1) sub(out.y);
    sub(out.set);
    return out;
}

bool is_ground_template(const GroundLiteral& l) {
    if (is_query_var(l.x)) return false;
    if (l.kind != GroundLiteral::Kind::Mem1 && is_query_var(l.y)) return false;
    if (l.kind != GroundLiteral::Kind::Eq && is_query_var(l.set)) return false;
    return true;
}

}  // namespace

BranchMatcher::BranchMatcher(const Branch& b, const EngineOptions& opts)
    : branch_(&b), opts_(opts) {
    lits_ = b.literals;
    // Reflexive-equality seeding: x = x holds for every branch variable, so
    // equality atoms can be answered by plain literal lookup.
    std::set<std::string> vars;
    for (const auto& l : b.literals) vars.merge(vars0(l));
    for (const auto& v : vars) {
        GroundLiteral r = GroundLiteral::eq(v, v);
        if (std::find(lits_.begin(), lits_.end(), r) == lits_.end()) lits_.push_back(r);
    }
    if (opts_.semantic_eq) model_ = branch_model(b);
}

std::vector<MatchSubst> BranchMatcher::match_literal(const GroundLiteral& tmpl) const {
    std::vector<MatchSubst> out;
    std::set<MatchSubst> seen;

    if (opts_.semantic_eq && tmpl.kind == GroundLiteral::Kind::Eq && model_) {
        // Evaluate equality atoms against the branch model: enumerate
        // candidate bindings over the branch's level-0 representatives.
        std::vector<std::string> dom = model_->elements;
        auto try_pair = [&](const std::string& vx, const std::string& vy) {
            GroundLiteral inst = tmpl;
            inst.x = vx;
            inst.y = vy;
            if (!covers(*model_, inst) || !evaluate(*model_, inst)) return;
            MatchSubst s;
            if (is_query_var(tmpl.x)) s.m[tmpl.x] = vx;
            if (is_query_var(tmpl.y)) s.m[tmpl.y] = vy;
            if (seen.insert(s).second) out.push_back(std::move(s));
        };
        const bool vx = is_query_var(tmpl.x), vy = is_query_var(tmpl.y);
        if (!vx && !vy) {
            try_pair(tmpl.x, tmpl.y);
        } else if (vx && vy) {
            if (tmpl.x == tmpl.y) {
                for (const auto& a : dom) try_pair(a, a);
            } else {
                for (const auto& a : dom)
                    for (const auto& c : dom) try_pair(a, c);
            }
        } else if (vx) {
            for (const auto& a : dom) try_pair(a, tmpl.y);
        } else {
            for (const auto& c : dom) try_pair(tmpl.x, c);
        }
        return out;
    }

    for (const auto& t : lits_) {
        if (t.kind != tmpl.kind || t.negated != tmpl.negated) continue;
        MatchSubst s;
        bool ok = true;
        auto unify = [&](const std::string& pat, const std::string& got) {
            if (!ok) return;
            if (is_query_var(pat)) {
                auto [it, fresh] = s.m.emplace(pat, got);
                if (!fresh && it->second != got) ok = false;
            } else if (pat != got) {
                ok = false;
            }
        };
        unify(tmpl.x, t.x);
        if (tmpl.kind != GroundLiteral::Kind::Mem1) unify(tmpl.y, t.y);
        if (tmpl.kind != GroundLiteral::Kind::Eq) unify(tmpl.set, t.set);
        if (ok && seen.insert(s).second) out.push_back(std::move(s));
    }
    return out;
}

std::set<MatchSubst> BranchMatcher::answer_branch(const std::vector<GroundLiteral>& psi,
                                                  MatchStats* stats) const {
    // The query is rewritten with the branch's equality substitution before
    // matching (the decision tree works on psi * sigma).
    VarSubst sub;
    sub.l0 = branch_->sigma;
    std::vector<GroundLiteral> rewritten;
    rewritten.reserve(psi.size());
    for (const auto& l : psi) rewritten.push_back(substitute(sub, l));

    std::set<MatchSubst> answers;
    struct Node {
        MatchSubst sigma_prime;
        std::size_t next;  // index of the conjunct to consume
    };
    std::vector<Node> stack;
    stack.push_back({{}, 0});
    if (stats) stats->pushes += 1;

    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        if (stats) stats->pops += 1;
        if (n.next == rewritten.size()) {
            if (stats) stats->leaves += 1;
            answers.insert(std::move(n.sigma_prime));
            continue;
        }
        const GroundLiteral conjunct = apply_match(n.sigma_prime, rewritten[n.next]);
        std::vector<MatchSubst> matches = match_literal(conjunct);
        if (stats) {
            stats->max_fanout = std::max(stats->max_fanout,
                                         static_cast<long long>(matches.size()));
            if (matches.empty() && n.next < rewritten.size()) stats->leaves += 1;  // dead end
        }
        for (auto& rho : matches) {
            Node child;
            child.sigma_prime = n.sigma_prime;
            for (auto& [k, v] : rho.m) child.sigma_prime.m.emplace(k, v);
            child.next = n.next + 1;
            stack.push_back(std::move(child));
            if (stats) stats->pushes += 1;
        }
    }
    return answers;
}

// ── decoding ────────────────────────────────────────────────────────────────

DLSubstitution DecodedAnswer::to_substitution() const {
    DLSubstitution s;
    s.map = bindings;
    return s;
}

std::string DecodedAnswer::text() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : bindings) {
        if (!first) out += ", ";
        first = false;
        out += v + "/";
        out += t.kind == DLSubstitution::Target::Kind::Constant
                   ? "\"" + t.value->value + "\"^" + t.value->datatype
                   : t.name;
    }
    return out + "}";
}

std::vector<DecodedAnswer> decode(const RawAnswer& ans, const HOQuery& q, const NamingMap& nm,
                                  const DecodeOptions& dopts) {
    using Target = DLSubstitution::Target;
    const QueryVars qv = variables(q);

    // Per query variable: the list of decodable targets (equality-class
    // expansion for level-0 bindings).
    std::vector<std::pair<std::string, std::vector<Target>>> choices;

    auto level0_targets = [&](const std::string& rep) {
        std::vector<Target> out;
        std::vector<std::string> names{rep};
        for (const auto& [from, to] : ans.sigma)
            if (to == rep) names.push_back(from);
        std::sort(names.begin(), names.end());
        for (const auto& n : names) {
            const auto* e = nm.find({Level::L0, n});
            if (!e) continue;
            if (e->kind == NamingMap::Kind::Individual)
                out.push_back({Target::Kind::Individual, n, std::nullopt});
            else if (e->kind == NamingMap::Kind::Constant)
                out.push_back({Target::Kind::Constant, n, e->value});
            else if (dopts.include_internal)
                out.push_back({Target::Kind::Individual, n, std::nullopt});
        }
        return out;
    };

    auto named_target = [&](const std::string& name, Level level,
                            VarSort sort) -> std::vector<Target> {
        const auto* e = nm.find({level, name});
        if (!e) return {};
        switch (sort) {
            case VarSort::Concept:
                if (e->kind == NamingMap::Kind::Concept)
                    return {{Target::Kind::Concept, name, std::nullopt}};
                break;
            case VarSort::AbstractRole:
                if (e->kind == NamingMap::Kind::Role || e->kind == NamingMap::Kind::Universal)
                    return {{Target::Kind::AbstractRole, name, std::nullopt}};
                break;
            case VarSort::ConcreteRole:
                if (e->kind == NamingMap::Kind::CRole)
                    return {{Target::Kind::ConcreteRole, name, std::nullopt}};
                break;
            default: break;
        }
        if (dopts.include_internal) {
            auto k = sort == VarSort::Concept ? Target::Kind::Concept
                     : sort == VarSort::AbstractRole ? Target::Kind::AbstractRole
                                                     : Target::Kind::ConcreteRole;
            return {{k, name, std::nullopt}};
        }
        return {};
    };

    auto add_choice = [&](const std::string& var, VarSort sort) -> bool {
        auto it = ans.sigma_prime.m.find(var);
        if (it == ans.sigma_prime.m.end()) return false;  // unbound: not a solution
        std::vector<Target> ts;
        if (sort == VarSort::Individual)
            ts = level0_targets(it->second);
        else
            ts = named_target(it->second, sort == VarSort::Concept ? Level::L1 : Level::L3, sort);
        if (ts.empty()) return false;
        choices.emplace_back(var, std::move(ts));
        return true;
    };

    for (const auto& v : qv.individuals)
        if (!add_choice(v, VarSort::Individual)) return {};
    for (const auto& v : qv.concepts)
        if (!add_choice(v, VarSort::Concept)) return {};
    for (const auto& v : qv.abstract_roles)
        if (!add_choice(v, VarSort::AbstractRole)) return {};
    for (const auto& v : qv.concrete_roles)
        if (!add_choice(v, VarSort::ConcreteRole)) return {};

    // Cartesian product over the per-variable alternatives.
    std::vector<DecodedAnswer> out;
    std::vector<std::size_t> pick(choices.size(), 0);
    for (;;) {
        DecodedAnswer d;
        d.branch_id = ans.branch_id;
        for (std::size_t i = 0; i < choices.size(); ++i)
            d.bindings.emplace(choices[i].first, choices[i].second[pick[i]]);
        out.push_back(std::move(d));
        std::size_t i = 0;
        for (; i < choices.size(); ++i) {
            if (++pick[i] < choices[i].second.size()) break;
            pick[i] = 0;
        }
        if (i == choices.size()) break;
    }
    return out;
}

AnswerSet answer_set(const Tableau& t, const std::vector<GroundLiteral>& psi, const HOQuery& q,
                     const NamingMap& nm, const EngineOptions& eopts, const DecodeOptions& dopts) {
    AnswerSet as;
    as.kb_consistent = !t.closed();
    if (!as.kb_consistent) return as;

    std::set<RawAnswer> raw;
    for (const Branch* b : t.open_branches()) {
        BranchMatcher matcher(*b, eopts);
        for (auto& sp : matcher.answer_branch(psi, &as.stats)) {
            RawAnswer ra;
            ra.branch_id = b->id;
            ra.sigma_prime = std::move(sp);
            ra.sigma = b->sigma;
            raw.insert(std::move(ra));
        }
    }
    as.raw.assign(raw.begin(), raw.end());

    std::vector<DecodedAnswer> decoded;
    for (const auto& ra : as.raw)
        for (auto& d : decode(ra, q, nm, dopts)) decoded.push_back(std::move(d));
    std::sort(decoded.begin(), decoded.end());
    decoded.erase(std::unique(decoded.begin(), decoded.end()), decoded.end());
    as.decoded = std::move(decoded);
    return as;
}

}  // namespace dl4r
