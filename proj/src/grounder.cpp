#include "dl4r/grounder.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace dl4r {

std::vector<Clause> expand_one(const PurelyUniversal& S, const std::vector<std::string>& var0,
                               std::vector<Diagnostic>* diags) {
    if (!S.bound.empty() && var0.empty()) {
        if (diags)
            diags->push_back({Diagnostic::Severity::Warning,
                              "vacuous universal: no level-0 variables to instantiate", 0, 0, {}});
        return {};
    }
    std::set<Clause> out;
    const std::size_t n = S.bound.size();
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
        VarSubst s;
        for (std::size_t i = 0; i < n; ++i) s.l0[S.bound[i]] = var0[pick[i]];
        for (const Clause& c : S.matrix) {
            Clause inst = substitute(s, c);
            inst.canonicalize();
            out.insert(std::move(inst));
        }
        // odometer over var0^n
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++pick[i] < var0.size()) break;
            pick[i] = 0;
        }
        if (i == n) break;
    }
    return {out.begin(), out.end()};
}

Expansion build_expansion(const Formula& phi, long long max_instances) {
    Expansion ex;

    const std::set<std::string> v0 = vars0(phi);
    const std::vector<std::string> var0(v0.begin(), v0.end());
    ex.k = static_cast<int>(var0.size());
    ex.m = static_cast<int>(phi.universals.size());

    for (const auto& l : phi.ground)
        if (std::find(ex.ground.begin(), ex.ground.end(), l) == ex.ground.end())
            ex.ground.push_back(l);

    std::set<Clause> clauses;
    for (const auto& S : phi.universals) {
        const int n = static_cast<int>(S.bound.size());
        ex.r = std::max(ex.r, n);
        for (const auto& c : S.matrix) ex.ell = std::max(ex.ell, static_cast<int>(c.lits.size()));
        long long count = 1;
        for (int i = 0; i < n; ++i) count *= ex.k;
        ex.per_universal.push_back(count);
        ex.instances += count;
        if (ex.instances > max_instances) {
            ex.resource_exceeded = true;
            ex.diagnostics.push_back({Diagnostic::Severity::Error,
                                      "expansion exceeds the instance budget", 0, 0, {}});
            return ex;
        }
        for (auto& c : expand_one(S, var0, &ex.diagnostics)) clauses.insert(std::move(c));
    }
    ex.clauses.assign(clauses.begin(), clauses.end());
    return ex;
}

}  // namespace dl4r
