#include "lprev/stable_models.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace lprev {

GroundProgram gl_reduct(const GroundProgram& p, const Model& m) {
    GroundProgram out;
    for (const auto& r : p) {
        bool blocked = std::any_of(r.body.begin(), r.body.end(),
                                   [&](const Literal& l) { return !l.positive() && m.contains(l.atom); });
        if (blocked) continue;
        Rule d{r.name, r.head, {}, {}};
        for (const auto& l : r.body) {
            if (l.positive()) d.body.push_back(l);
        }
        out.push_back(std::move(d));
    }
    return out;
}

bool is_stable_model(const GroundProgram& p, const Model& m) {
    if (m.contains(Atom::bottom())) return false;
    return least_model(gl_reduct(p, m)) == m;
}

GroundSolver::GroundSolver(const GroundProgram& p) {
    rules_.reserve(p.size());
    for (const auto& r : p) {
        if (!r.is_ground()) throw GroundingError("solver expects a ground program");
        IndexedRule ir{intern(r.head), {}, {}};
        for (const auto& l : r.body) (l.positive() ? ir.pos : ir.neg).push_back(intern(l.atom));
        rules_.push_back(std::move(ir));
    }
    if (auto it = index_.find(Atom::bottom()); it != index_.end()) bottom_ = it->second;
}

int GroundSolver::intern(const Atom& a) {
    auto [it, fresh] = index_.emplace(a, static_cast<int>(atoms_.size()));
    if (fresh) atoms_.push_back(a);
    return it->second;
}

namespace {

enum class Value : std::uint8_t { Unknown, In, Out };

}  // namespace

std::vector<Model> GroundSolver::solve(const std::vector<bool>& enabled, std::size_t limit) const {
    std::vector<const IndexedRule*> active;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (enabled.empty() || enabled[i]) active.push_back(&rules_[i]);
    }
    const std::size_t n = atoms_.size();

    std::vector<int> naf_atoms;
    {
        std::vector<bool> seen(n, false);
        for (const auto* r : active) {
            for (int a : r->neg) {
                if (!seen[a]) {
                    seen[a] = true;
                    naf_atoms.push_back(a);
                }
            }
        }
        std::sort(naf_atoms.begin(), naf_atoms.end());
    }

    // Least model of the active rules whose naf atoms satisfy `allowed`.
    auto fixpoint = [&](const std::function<bool(int)>& naf_allows) {
        std::vector<bool> in(n, false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto* r : active) {
                if (in[r->head]) continue;
                bool fires = std::all_of(r->pos.begin(), r->pos.end(), [&](int a) { return in[a]; }) &&
                             std::all_of(r->neg.begin(), r->neg.end(), naf_allows);
                if (fires) {
                    in[r->head] = true;
                    changed = true;
                }
            }
        }
        return in;
    };

    std::vector<Model> models;
    std::vector<Value> value(n, Value::Unknown);

    std::function<void(std::vector<Value>)> search = [&](std::vector<Value> v) {
        if (limit && models.size() >= limit) return;
        std::vector<bool> lower, upper;
        for (;;) {
            lower = fixpoint([&](int a) { return v[a] == Value::Out; });
            upper = fixpoint([&](int a) { return v[a] != Value::In; });
            if (bottom_ >= 0 && lower[bottom_]) return;
            bool changed = false;
            for (int a : naf_atoms) {
                if (v[a] == Value::In && !upper[a]) return;
                if (v[a] == Value::Out && lower[a]) return;
                if (v[a] == Value::Unknown) {
                    if (lower[a]) {
                        v[a] = Value::In;
                        changed = true;
                    } else if (!upper[a]) {
                        v[a] = Value::Out;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        auto open = std::find_if(naf_atoms.begin(), naf_atoms.end(), [&](int a) { return v[a] == Value::Unknown; });
        if (open == naf_atoms.end()) {
            // Fully assigned: lower == upper is the candidate; re-verify.
            if (bottom_ >= 0 && lower[bottom_]) return;
            for (int a : naf_atoms) {
                if ((v[a] == Value::In) != static_cast<bool>(lower[a])) return;
            }
            Model m;
            for (std::size_t a = 0; a < n; ++a) {
                if (lower[a]) m.insert(atoms_[a]);
            }
            models.push_back(std::move(m));
            return;
        }
        auto with_in = v;
        with_in[*open] = Value::In;
        v[*open] = Value::Out;
        search(std::move(with_in));
        search(std::move(v));
    };
    search(value);
    std::sort(models.begin(), models.end());
    if (limit && models.size() > limit) models.resize(limit);
    return models;
}

namespace {

std::vector<Model> brute_force(const GroundProgram& p) {
    std::set<Atom> base;
    for (const auto& r : p) {
        base.insert(r.head);
        for (const auto& l : r.body) base.insert(l.atom);
    }
    base.erase(Atom::bottom());
    std::vector<Atom> hb(base.begin(), base.end());
    if (hb.size() > 24) throw std::length_error("brute-force enumeration limited to 24 atoms");
    std::vector<Model> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << hb.size()); ++mask) {
        Model m;
        for (std::size_t i = 0; i < hb.size(); ++i) {
            if (mask >> i & 1) m.insert(hb[i]);
        }
        if (is_stable_model(p, m)) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

namespace {

GroundProgram grounded(const Program& p) {
    bool ground_already = std::all_of(p.begin(), p.end(), [](const Rule& r) { return r.is_ground() && r.guards.empty(); });
    return ground_already ? p : ground(p, herbrand_constants(p));
}

}  // namespace

std::vector<Model> stable_models(const Program& p, Enumeration how) {
    GroundProgram g = grounded(p);
    if (how == Enumeration::BruteForce) return brute_force(g);
    return GroundSolver(g).solve();
}

bool is_consistent(const Program& p) { return !GroundSolver(grounded(p)).solve({}, 1).empty(); }

std::vector<Atom> ground_abducibles(const AbductiveFramework& af, const HerbrandUniverse& hu) {
    std::map<std::string, std::size_t> arity;
    for (const auto& r : af.program) {
        for (const auto& l : r.body) {
            if (af.abducibles.contains(l.atom.predicate)) arity.emplace(l.atom.predicate, l.atom.arity());
        }
    }
    std::vector<Atom> out;
    for (const auto& pred : af.abducibles) {
        auto it = arity.find(pred);
        std::size_t k = it == arity.end() ? 0 : it->second;
        Rule probe{"", Atom{pred, {}}, {}, {}};
        for (std::size_t i = 0; i < k; ++i) probe.head.args.push_back(Term::variable("V" + std::to_string(i)));
        for (auto& g : ground_rule(probe, hu)) out.push_back(std::move(g.head));
    }
    return out;
}

std::vector<GeneralizedStableModel> generalized_stable_models(const AbductiveFramework& af,
                                                              const std::optional<HerbrandUniverse>& hu_in) {
    HerbrandUniverse hu = hu_in ? *hu_in : herbrand_constants(af.program);
    GroundProgram gp = ground(af.program, hu);
    const std::size_t base = gp.size();
    std::vector<Atom> abducibles = ground_abducibles(af, hu);
    if (abducibles.size() > 24) throw std::length_error("too many ground abducibles to enumerate");
    for (const auto& a : abducibles) gp.push_back(Rule{"", a, {}, {}});
    GroundSolver solver(gp);

    std::vector<GeneralizedStableModel> out;
    const std::size_t k = abducibles.size();
    std::vector<bool> enabled(gp.size(), true);
    for (std::size_t size = 0; size <= k; ++size) {
        // Combinations of `size` abducibles in lexicographic index order.
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        for (;;) {
            std::fill(enabled.begin() + static_cast<std::ptrdiff_t>(base), enabled.end(), false);
            Theta theta;
            for (std::size_t i : pick) {
                enabled[base + i] = true;
                theta.insert(abducibles[i]);
            }
            for (auto& m : solver.solve(enabled)) out.push_back({theta, std::move(m)});
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == k - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

}  // namespace lprev
