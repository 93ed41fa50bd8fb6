#include "dl4r/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace dl4r::oracle {

namespace {

// ── atom universe ───────────────────────────────────────────────────────────

// Atoms are indexed integers.  Equality atoms are keyed on the unordered
// variable pair, which makes symmetry structural; reflexive equalities are
// folded away as constants.
struct AtomSpace {
    std::vector<std::string> vars;      // level-0, sorted
    std::vector<std::string> l1, l3;    // set variables, sorted
    std::map<std::string, int> var_ix;
    std::map<std::string, int> l1_ix, l3_ix;
    int n_eq{0}, n_m1{0};
    long long total{0};

    void build(const std::vector<GroundLiteral>& ground, const std::vector<Clause>& clauses,
               const std::vector<GroundLiteral>& extra) {
        std::set<std::string> v;
        std::set<std::string> s1, s3;
        auto scan = [&](const GroundLiteral& l) {
            v.merge(vars0(l));
            for (const auto& sv : set_vars(l))
                (sv.level == Level::L1 ? s1 : s3).insert(sv.name);
        };
        for (const auto& l : ground) scan(l);
        for (const auto& c : clauses)
            for (const auto& l : c.lits) scan(l);
        for (const auto& l : extra) scan(l);
        vars.assign(v.begin(), v.end());
        l1.assign(s1.begin(), s1.end());
        l3.assign(s3.begin(), s3.end());
        int i = 0;
        for (const auto& x : vars) var_ix[x] = i++;
        i = 0;
        for (const auto& x : l1) l1_ix[x] = i++;
        i = 0;
        for (const auto& x : l3) l3_ix[x] = i++;
        const long long n = static_cast<long long>(vars.size());
        n_eq = static_cast<int>(n * (n - 1) / 2);
        n_m1 = static_cast<int>(n * static_cast<long long>(l1.size()));
        total = n_eq + n_m1 + n * n * static_cast<long long>(l3.size());
    }

    // Atom ids.  Returns -1 for "constant true" (reflexive equality).
    int eq_atom(const std::string& a, const std::string& b) const {
        if (a == b) return -1;
        int i = var_ix.at(a), j = var_ix.at(b);
        if (i > j) std::swap(i, j);
        const int n = static_cast<int>(vars.size());
        // index into the strictly-upper-triangular enumeration
        return i * n - i * (i + 1) / 2 + (j - i - 1);
    }
    int m1_atom(const std::string& x, const std::string& s) const {
        return n_eq + var_ix.at(x) * static_cast<int>(l1.size()) + l1_ix.at(s);
    }
    int m3_atom(const std::string& x, const std::string& y, const std::string& s) const {
        const int n = static_cast<int>(vars.size());
        return n_eq + n_m1 +
               (var_ix.at(x) * n + var_ix.at(y)) * static_cast<int>(l3.size()) + l3_ix.at(s);
    }

    // Literal encoding: +(atom+1) positive, -(atom+1) negative; 0 never used.
    // Reflexive equalities return +/-INT_MAX sentinels handled by the caller.
    static constexpr int kTrue = std::numeric_limits<int>::max();

    int encode(const GroundLiteral& l) const {
        int a = -1;
        switch (l.kind) {
            case GroundLiteral::Kind::Eq: a = eq_atom(l.x, l.y); break;
            case GroundLiteral::Kind::Mem1: a = m1_atom(l.x, l.set); break;
            case GroundLiteral::Kind::Mem3: a = m3_atom(l.x, l.y, l.set); break;
        }
        if (a < 0) return l.negated ? -kTrue : kTrue;  // x = x
        return l.negated ? -(a + 1) : (a + 1);
    }
};

// ── solver ──────────────────────────────────────────────────────────────────

struct Solver {
    int natoms{0};
    std::vector<std::vector<int>> clauses;
    std::vector<std::vector<int>> occurs;  // per literal code: 2*atom (pos), 2*atom+1 (neg)
    long long budget{0};

    std::vector<signed char> value;  // -1 unknown, 0 false, 1 true
    std::vector<int> trail;
    std::vector<char> clause_sat;
    std::vector<int> sat_trail;

    bool add_clause(std::vector<int> lits) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (int l : lits)
            if (std::find(lits.begin(), lits.end(), -l) != lits.end()) return true;  // tautology
        if (lits.empty()) return false;  // empty clause: unsatisfiable input
        clauses.push_back(std::move(lits));
        return true;
    }

    void finalize() {
        occurs.assign(static_cast<std::size_t>(natoms) * 2, {});
        for (std::size_t ci = 0; ci < clauses.size(); ++ci)
            for (int l : clauses[ci])
                occurs[lit_code(l)].push_back(static_cast<int>(ci));
        value.assign(natoms, -1);
        clause_sat.assign(clauses.size(), 0);
    }

    static std::size_t lit_code(int l) {
        const int a = std::abs(l) - 1;
        return static_cast<std::size_t>(a) * 2 + (l < 0 ? 1 : 0);
    }

    bool lit_true(int l) const {
        const signed char v = value[std::abs(l) - 1];
        if (v < 0) return false;
        return (l > 0) == (v == 1);
    }
    bool lit_false(int l) const {
        const signed char v = value[std::abs(l) - 1];
        if (v < 0) return false;
        return (l > 0) == (v == 0);
    }

    // Assigns and propagates; returns false on conflict.
    bool assign(int l, std::vector<int>& pending) {
        const int a = std::abs(l) - 1;
        const signed char want = l > 0 ? 1 : 0;
        if (value[a] >= 0) return value[a] == want;
        value[a] = want;
        trail.push_back(a);
        for (int ci : occurs[lit_code(l)]) {
            if (!clause_sat[ci]) {
                clause_sat[ci] = 1;
                sat_trail.push_back(ci);
            }
        }
        for (int ci : occurs[lit_code(-l)]) {
            if (clause_sat[ci]) continue;
            int unassigned = 0, unit = 0;
            bool sat = false;
            for (int cl : clauses[ci]) {
                if (lit_true(cl)) {
                    sat = true;
                    break;
                }
                if (!lit_false(cl)) {
                    ++unassigned;
                    unit = cl;
                    if (unassigned > 1) break;
                }
            }
            if (sat) {
                clause_sat[ci] = 1;
                sat_trail.push_back(ci);
                continue;
            }
            if (unassigned == 0) return false;      // conflict
            if (unassigned == 1) pending.push_back(unit);
        }
        return true;
    }

    bool propagate(std::vector<int> pending) {
        while (!pending.empty()) {
            int l = pending.back();
            pending.pop_back();
            if (lit_true(l)) continue;
            if (lit_false(l)) return false;
            if (!assign(l, pending)) return false;
        }
        return true;
    }

    struct Mark {
        std::size_t trail, sat_trail;
    };
    Mark mark() const { return {trail.size(), sat_trail.size()}; }
    void undo(const Mark& m) {
        while (trail.size() > m.trail) {
            value[trail.back()] = -1;
            trail.pop_back();
        }
        while (sat_trail.size() > m.sat_trail) {
            clause_sat[sat_trail.back()] = 0;
            sat_trail.pop_back();
        }
    }

    // -2 exhausted (all clauses satisfied), otherwise a decision literal.
    int pick() const {
        for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
            if (clause_sat[ci]) continue;
            for (int l : clauses[ci])
                if (!lit_false(l)) return l;
            return 0;  // unreachable: an unsatisfied clause with all literals false
        }
        return -2;
    }

    enum class Res { Sat, Unsat, Budget };

    Res search() {
        if (--budget < 0) return Res::Budget;
        const int l = pick();
        if (l == -2) return Res::Sat;
        assert(l != 0);
        Mark m = mark();
        if (propagate({l})) {
            Res r = search();
            if (r != Res::Unsat) return r;
        }
        undo(m);
        if (propagate({-l})) {
            Res r = search();
            if (r != Res::Unsat) return r;
        }
        undo(m);
        return Res::Unsat;
    }
};

// Equality-theory axioms over the atom universe.
void add_equality_axioms(const AtomSpace& sp, Solver& s) {
    const auto& V = sp.vars;
    const int n = static_cast<int>(V.size());
    auto E = [&](int i, int j) { return sp.eq_atom(V[i], V[j]) + 1; };
    // transitivity (symmetry is structural)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                s.add_clause({-E(i, j), -E(j, k), E(i, k)});
                s.add_clause({-E(i, j), -E(i, k), E(j, k)});
                s.add_clause({-E(i, k), -E(j, k), E(i, j)});
            }
    // congruence for memberships
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            for (const auto& set : sp.l1) {
                const int mi = sp.m1_atom(V[i], set) + 1, mj = sp.m1_atom(V[j], set) + 1;
                s.add_clause({-E(i, j), -mi, mj});
                s.add_clause({-E(i, j), -mj, mi});
            }
            for (const auto& set : sp.l3)
                for (int c = 0; c < n; ++c) {
                    const int ai = sp.m3_atom(V[i], V[c], set) + 1;
                    const int aj = sp.m3_atom(V[j], V[c], set) + 1;
                    s.add_clause({-E(i, j), -ai, aj});
                    s.add_clause({-E(i, j), -aj, ai});
                    const int bi = sp.m3_atom(V[c], V[i], set) + 1;
                    const int bj = sp.m3_atom(V[c], V[j], set) + 1;
                    s.add_clause({-E(i, j), -bi, bj});
                    s.add_clause({-E(i, j), -bj, bi});
                }
        }
}

// Quotient interpretation from a satisfying assignment.
Interpretation extract_model(const AtomSpace& sp, const Solver& s) {
    const int n = static_cast<int>(sp.vars.size());
    std::vector<int> rep(n);
    for (int i = 0; i < n; ++i) rep[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int a = sp.eq_atom(sp.vars[i], sp.vars[j]);
            if (s.value[a] == 1) {
                const int ri = rep[i];
                for (int k = 0; k < n; ++k)
                    if (rep[k] == rep[j]) rep[k] = ri;
            }
        }
    Interpretation m;
    std::map<int, int> elem_of_rep;
    for (int i = 0; i < n; ++i) {
        if (!elem_of_rep.count(rep[i]))
            elem_of_rep[rep[i]] = m.add_element(sp.vars[rep[i]]);
        m.v0[sp.vars[i]] = elem_of_rep[rep[i]];
    }
    for (const auto& set : sp.l1) m.v1[set];
    for (const auto& set : sp.l3) m.v3[set];
    for (int i = 0; i < n; ++i)
        for (const auto& set : sp.l1)
            if (s.value[sp.m1_atom(sp.vars[i], set)] == 1) m.v1[set].insert(m.v0[sp.vars[i]]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& set : sp.l3)
                if (s.value[sp.m3_atom(sp.vars[i], sp.vars[j], set)] == 1)
                    m.v3[set].insert({m.v0[sp.vars[i]], m.v0[sp.vars[j]]});
    return m;
}

struct Instance {
    AtomSpace space;
    Solver solver;
    bool trivially_unsat{false};
    bool too_big{false};

    void build(const std::vector<GroundLiteral>& ground, const std::vector<Clause>& clauses,
               const std::vector<GroundLiteral>& universe_extra, const Options& opts) {
        space.build(ground, clauses, universe_extra);
        if (space.total > opts.max_atoms) {
            too_big = true;
            return;
        }
        solver.natoms = static_cast<int>(space.total);
        add_equality_axioms(space, solver);
        auto add = [&](std::vector<int> lits) {
            std::vector<int> kept;
            for (int l : lits) {
                if (l == AtomSpace::kTrue) return;  // clause true
                if (l == -AtomSpace::kTrue) continue;
                kept.push_back(l);
            }
            if (!solver.add_clause(std::move(kept))) trivially_unsat = true;
        };
        for (const auto& l : ground) add({space.encode(l)});
        for (const auto& c : clauses) {
            std::vector<int> lits;
            lits.reserve(c.lits.size());
            for (const auto& l : c.lits) lits.push_back(space.encode(l));
            add(std::move(lits));
        }
        solver.finalize();
    }

    SatResult solve(const std::vector<GroundLiteral>& assumptions, const Options& opts) {
        if (too_big) return {Status::Resource, std::nullopt};
        if (trivially_unsat) return {Status::Unsat, std::nullopt};
        solver.budget = opts.max_decisions;
        Solver::Mark m = solver.mark();
        std::vector<int> units;
        bool ok = true;
        for (const auto& l : assumptions) {
            const int code = space.encode(l);
            if (code == AtomSpace::kTrue) continue;
            if (code == -AtomSpace::kTrue) {
                ok = false;
                break;
            }
            units.push_back(code);
        }
        SatResult res;
        if (ok && solver.propagate(units)) {
            switch (solver.search()) {
                case Solver::Res::Sat:
                    res.status = Status::Sat;
                    res.witness = extract_model(space, solver);
                    break;
                case Solver::Res::Unsat: res.status = Status::Unsat; break;
                case Solver::Res::Budget: res.status = Status::Resource; break;
            }
        } else {
            res.status = Status::Unsat;
        }
        solver.undo(m);
        return res;
    }
};

bool is_query_var(const std::string& n) { return !n.empty() && n.front() == '?'; }

}  // namespace

SatResult satisfiable(const std::vector<GroundLiteral>& ground, const std::vector<Clause>& clauses,
                      const Options& opts) {
    Instance inst;
    inst.build(ground, clauses, {}, opts);
    return inst.solve({}, opts);
}

SatResult satisfiable_with(const Expansion& phi, const std::vector<GroundLiteral>& extra,
                           const Options& opts) {
    Instance inst;
    inst.build(phi.ground, phi.clauses, extra, opts);
    return inst.solve(extra, opts);
}

AnswerResult brute_answer_set(const Formula& phi, const std::vector<GroundLiteral>& psi,
                              const Options& opts) {
    AnswerResult out;
    Expansion ex = build_expansion(phi);
    if (ex.resource_exceeded) {
        out.status = Status::Resource;
        return out;
    }

    // Query variables by level, in first-occurrence order.
    std::vector<std::pair<std::string, Level>> qvars;
    auto note = [&](const std::string& n, Level lvl) {
        if (!is_query_var(n)) return;
        for (const auto& [v, l] : qvars)
            if (v == n) return;
        qvars.emplace_back(n, lvl);
    };
    for (const auto& l : psi) {
        note(l.x, Level::L0);
        if (l.kind != GroundLiteral::Kind::Mem1) note(l.y, Level::L0);
        if (l.kind == GroundLiteral::Kind::Mem1) note(l.set, Level::L1);
        if (l.kind == GroundLiteral::Kind::Mem3) note(l.set, Level::L3);
    }

    // Candidate pools: the variables of phi, plus the query's named symbols.
    std::set<std::string> v0;
    for (const auto& l : ex.ground) v0.merge(vars0(l));
    for (const auto& c : ex.clauses) v0.merge(vars0(c));
    std::vector<std::string> l0pool(v0.begin(), v0.end());
    std::set<SetVar> svars;
    for (const auto& c : ex.clauses) svars.merge(set_vars(c));
    for (const auto& l : ex.ground) svars.merge(set_vars(l));
    for (const auto& l : psi) {
        for (const auto& sv : set_vars(l))
            if (!is_query_var(sv.name)) svars.insert(sv);
        // named level-0 symbols of the query join the pool
        for (const auto& x : vars0(l))
            if (!is_query_var(x)) l0pool.push_back(x);
    }
    std::sort(l0pool.begin(), l0pool.end());
    l0pool.erase(std::unique(l0pool.begin(), l0pool.end()), l0pool.end());

    std::vector<std::string> l1pool, l3pool;
    for (const auto& sv : svars)
        (sv.level == Level::L1 ? l1pool : l3pool).push_back(sv.name);

    // Candidate counts.
    long long total = 1;
    for (const auto& [v, lvl] : qvars) {
        (void)v;
        const long long n = lvl == Level::L0   ? static_cast<long long>(l0pool.size())
                            : lvl == Level::L1 ? static_cast<long long>(l1pool.size())
                                               : static_cast<long long>(l3pool.size());
        if (n == 0) return out;  // no candidates: empty answer set
        total *= n;
        if (total > opts.max_candidates) {
            out.status = Status::Resource;
            return out;
        }
    }
    out.candidates = total;

    // Universe scan needs one representative instantiation so that query
    // atoms over variables are covered; every candidate stays inside it.
    std::vector<GroundLiteral> scan_extra;
    {
        Binding rep;
        for (const auto& [v, lvl] : qvars)
            rep[v] = lvl == Level::L0 ? l0pool.front()
                     : lvl == Level::L1 ? (l1pool.empty() ? "" : l1pool.front())
                                        : (l3pool.empty() ? "" : l3pool.front());
        for (const auto& l : psi) {
            VarSubst s;
            for (const auto& [v, lvl] : qvars) {
                if (lvl == Level::L0) s.l0[v] = rep[v];
                if (lvl == Level::L1) s.l1[v] = rep[v];
                if (lvl == Level::L3) s.l3[v] = rep[v];
            }
            scan_extra.push_back(substitute(s, l));
        }
    }

    Instance inst;
    inst.build(ex.ground, ex.clauses, scan_extra, opts);
    if (inst.too_big) {
        out.status = Status::Resource;
        return out;
    }

    // Odometer over the candidates.
    std::vector<std::size_t> pick(qvars.size(), 0);
    for (;;) {
        VarSubst s;
        Binding binding;
        for (std::size_t i = 0; i < qvars.size(); ++i) {
            const auto& [v, lvl] = qvars[i];
            const std::string& target = lvl == Level::L0   ? l0pool[pick[i]]
                                        : lvl == Level::L1 ? l1pool[pick[i]]
                                                           : l3pool[pick[i]];
            binding[v] = target;
            if (lvl == Level::L0) s.l0[v] = target;
            if (lvl == Level::L1) s.l1[v] = target;
            if (lvl == Level::L3) s.l3[v] = target;
        }
        std::vector<GroundLiteral> inst_psi;
        inst_psi.reserve(psi.size());
        for (const auto& l : psi) inst_psi.push_back(substitute(s, l));
        SatResult r = inst.solve(inst_psi, opts);
        if (r.status == Status::Resource) {
            out.status = Status::Resource;
            return out;
        }
        if (r.status == Status::Sat) out.answers.insert(binding);

        std::size_t i = 0;
        for (; i < qvars.size(); ++i) {
            if (++pick[i] < (qvars[i].second == Level::L0   ? l0pool.size()
                             : qvars[i].second == Level::L1 ? l1pool.size()
                                                            : l3pool.size()))
                break;
            pick[i] = 0;
        }
        if (i == qvars.size()) break;
    }
    return out;
}

}  // namespace dl4r::oracle
