#include "dl4r/tableau.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

namespace dl4r {

// ── VarOrder ────────────────────────────────────────────────────────────────

int VarOrder::compare(const std::string& a, const std::string& b) const {
    auto ia = rank.find(a), ib = rank.find(b);
    const bool ha = ia != rank.end(), hb = ib != rank.end();
    if (ha && hb) return ia->second - ib->second;
    if (ha) return -1;  // ranked names precede unranked ones
    if (hb) return 1;
    return a.compare(b);
}

const std::string& VarOrder::min(const std::string& a, const std::string& b) const {
    return compare(a, b) <= 0 ? a : b;
}

VarOrder VarOrder::lexical() { return {}; }

VarOrder VarOrder::with_priority(const std::vector<std::string>& names) {
    VarOrder o;
    int i = 0;
    for (const auto& n : names) o.rank.emplace(n, i++);
    return o;
}

// ── trace ───────────────────────────────────────────────────────────────────

std::string TraceEvent::text() const {
    switch (kind) {
        case Kind::E:
            return "E " + std::to_string(index) + " clause#" + std::to_string(clause) + " -> " +
                   render(lit);
        case Kind::PB:
            return "PB " + std::to_string(index) + " lit " + render(lit);
        case Kind::Subst: return "SUBST " + render_var0(from) + " -> " + render_var0(to);
    }
    return "";
}

// ── Branch ──────────────────────────────────────────────────────────────────

bool Branch::append(const GroundLiteral& l) {
    if (set_.count(l)) return false;
    literals.push_back(l);
    set_.insert(l);
    if (set_.count(complement(l))) closed = true;
    if (l.negated && l.is_reflexive_eq()) closed = true;
    return true;
}

void Branch::rebuild_index() {
    set_.clear();
    closed = false;
    for (const auto& l : literals) {
        set_.insert(l);
        if (l.negated && l.is_reflexive_eq()) closed = true;
    }
    for (const auto& l : literals)
        if (set_.count(complement(l))) closed = true;
}

std::vector<std::string> Branch::level0_vars() const {
    std::set<std::string> vars;
    for (const auto& l : literals) vars.merge(vars0(l));
    for (const auto& c : clauses) vars.merge(vars0(c));
    for (const auto& [from, to] : sigma) {
        vars.insert(from);
        vars.insert(to);
    }
    return {vars.begin(), vars.end()};
}

bool Tableau::closed() const {
    return std::all_of(branches.begin(), branches.end(),
                       [](const Branch& b) { return b.closed; });
}

std::vector<const Branch*> Tableau::open_branches() const {
    std::vector<const Branch*> out;
    for (const auto& b : branches)
        if (!b.closed) out.push_back(&b);
    return out;
}

// ── rules ───────────────────────────────────────────────────────────────────

namespace {

// Lowest j such that the complements of all other disjuncts are present, or
// -1 when no such j exists.
int e_rule_index(const Branch& b, const Clause& c) {
    int missing = 0, last_missing = -1;
    for (std::size_t i = 0; i < c.lits.size(); ++i) {
        if (!b.has(complement(c.lits[i]))) {
            ++missing;
            last_missing = static_cast<int>(i);
            if (missing > 1) return -1;
        }
    }
    if (missing == 0) return 0;
    return last_missing;
}

// Lowest h whose complement is absent from the branch (the PB pivot).
int pb_index(const Branch& b, const Clause& c) {
    for (std::size_t i = 0; i < c.lits.size(); ++i)
        if (!b.has(complement(c.lits[i]))) return static_cast<int>(i);
    return -1;
}

}  // namespace

bool apply_E(Branch& b, const std::vector<Clause>& clauses, int ci, int j) {
    const Clause& c = clauses[ci];
    for (std::size_t i = 0; i < c.lits.size(); ++i) {
        if (static_cast<int>(i) == j) continue;
        if (!b.has(complement(c.lits[i]))) return false;  // premise set incomplete
    }
    b.append(c.lits[j]);
    b.fulfilled[ci] = 1;
    return true;
}

std::pair<Branch, Branch> apply_PB(const Branch& b, const std::vector<Clause>& clauses, int ci,
                                   int h) {
    const GroundLiteral& lit = clauses[ci].lits[h];
    Branch with_complement = b;
    with_complement.append(complement(lit));
    with_complement.pb_count[ci] += 1;
    Branch with_literal = b;
    with_literal.append(lit);
    with_literal.fulfilled[ci] = 1;
    with_literal.pb_count[ci] += 1;
    return {std::move(with_complement), std::move(with_literal)};
}

// ── saturation ──────────────────────────────────────────────────────────────

Tableau saturate(const Expansion& phi, const TableauOptions& opts) {
    Tableau t;
    t.clauses = phi.clauses;
    t.base = phi.ground;

    Branch root;
    root.id = 0;
    root.fulfilled.assign(t.clauses.size(), 0);
    root.pb_count.assign(t.clauses.size(), 0);
    for (const auto& l : phi.ground) root.append(l);

    int next_id = 1;
    std::vector<Branch> stack;
    stack.push_back(std::move(root));

    while (!stack.empty()) {
        Branch b = std::move(stack.back());
        stack.pop_back();

        for (;;) {
            if (b.closed) break;
            // first unfulfilled clause, refreshing fulfillment lazily
            int ci = -1;
            for (std::size_t i = 0; i < t.clauses.size(); ++i) {
                if (b.fulfilled[i]) continue;
                bool sat = false;
                for (const auto& l : t.clauses[i].lits)
                    if (b.has(l)) {
                        sat = true;
                        break;
                    }
                if (sat) {
                    b.fulfilled[i] = 1;
                    continue;
                }
                ci = static_cast<int>(i);
                break;
            }
            if (ci < 0) break;  // fulfilled

            const Clause& c = t.clauses[ci];
            const int j = e_rule_index(b, c);
            ++t.rule_applications;
            if (j >= 0) {
                apply_E(b, t.clauses, ci, j);
                if (opts.record_trace)
                    t.trace.push_back(
                        {TraceEvent::Kind::E, b.id, ci, j + 1, c.lits[j], "", ""});
            } else {
                const int h = pb_index(b, c);
                assert(h >= 0);
                if (opts.record_trace)
                    t.trace.push_back(
                        {TraceEvent::Kind::PB, b.id, ci, h + 1, complement(c.lits[h]), "", ""});
                auto [left, right] = apply_PB(b, t.clauses, ci, h);
                right.id = next_id++;
                if (static_cast<long long>(t.branches.size() + stack.size()) + 2 >
                    opts.max_branches) {
                    t.resource_exceeded = true;
                    t.branches.push_back(std::move(left));
                    t.branches.push_back(std::move(right));
                    while (!stack.empty()) {
                        t.branches.push_back(std::move(stack.back()));
                        stack.pop_back();
                    }
                    return t;
                }
                stack.push_back(std::move(right));
                b = std::move(left);
            }
        }
        t.branches.push_back(std::move(b));
    }
    std::sort(t.branches.begin(), t.branches.end(),
              [](const Branch& a, const Branch& b) { return a.id < b.id; });
    return t;
}

// ── equality normalization ──────────────────────────────────────────────────

void normalize_equalities(Branch& b, const std::vector<Clause>& clauses, const VarOrder& order,
                          std::vector<TraceEvent>* trace) {
    if (b.normalized) return;
    b.normalized = true;

    // Eq_theta: the positive equality literals, in branch order.
    std::vector<GroundLiteral> eqs;
    for (const auto& l : b.literals)
        if (l.kind == GroundLiteral::Kind::Eq && !l.negated) eqs.push_back(l);

    std::map<std::string, std::string> sigma;
    for (;;) {
        const GroundLiteral* pick = nullptr;
        for (const auto& e : eqs)
            if (e.x != e.y) {
                pick = &e;
                break;
            }
        if (!pick) break;
        const std::string z = order.min(pick->x, pick->y);
        const std::string w = pick->x == z ? pick->y : pick->x;
        // sigma := sigma . {w/z}; w is a current representative, so it cannot
        // occur among sigma's keys.
        for (auto& [from, to] : sigma)
            if (to == w) to = z;
        sigma[w] = z;
        if (trace) trace->push_back({TraceEvent::Kind::Subst, b.id, -1, 0, {}, w, z});
        VarSubst step;
        step.l0[w] = z;
        for (auto& e : eqs) e = substitute(step, e);
    }

    b.sigma = sigma;
    VarSubst full;
    full.l0 = sigma;

    std::vector<GroundLiteral> rewritten;
    rewritten.reserve(b.literals.size());
    for (const auto& l : b.literals) {
        GroundLiteral rl = substitute(full, l);
        if (std::find(rewritten.begin(), rewritten.end(), rl) == rewritten.end())
            rewritten.push_back(std::move(rl));
    }
    b.literals = std::move(rewritten);

    b.clauses.clear();
    b.clauses.reserve(clauses.size());
    for (const auto& c : clauses) {
        Clause rc = substitute(full, c);
        rc.canonicalize();
        b.clauses.push_back(std::move(rc));
    }
    b.rebuild_index();
}

Tableau run_tableau(const Expansion& phi, const TableauOptions& opts) {
    Tableau t = saturate(phi, opts);
    if (t.resource_exceeded) return t;
    for (auto& b : t.branches)
        if (!b.closed) normalize_equalities(b, t.clauses, opts.order,
                                            opts.record_trace ? &t.trace : nullptr);
    return t;
}

// ── branch model ────────────────────────────────────────────────────────────

std::optional<Interpretation> branch_model(const Branch& b) {
    if (b.closed) return std::nullopt;
    Interpretation m;
    std::set<std::string> reps;
    std::set<SetVar> sets;
    for (const auto& l : b.literals) {
        reps.merge(vars0(l));
        sets.merge(set_vars(l));
    }
    for (const auto& c : b.clauses) {
        reps.merge(vars0(c));
        sets.merge(set_vars(c));
    }
    std::map<std::string, int> index;
    for (const auto& v : reps) {
        int i = m.add_element(v);
        index.emplace(v, i);
        m.v0[v] = i;
    }
    // collapsed originals denote their representatives
    for (const auto& [from, to] : b.sigma) {
        auto it = index.find(to);
        if (it != index.end()) m.v0[from] = it->second;
    }
    for (const auto& sv : sets) {
        if (sv.level == Level::L1) m.v1[sv.name];
        if (sv.level == Level::L3) m.v3[sv.name];
    }
    for (const auto& l : b.literals) {
        if (l.negated) continue;
        if (l.kind == GroundLiteral::Kind::Mem1) m.v1[l.set].insert(index.at(l.x));
        if (l.kind == GroundLiteral::Kind::Mem3)
            m.v3[l.set].insert({index.at(l.x), index.at(l.y)});
    }
    return m;
}

}  // namespace dl4r
