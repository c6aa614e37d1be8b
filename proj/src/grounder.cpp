#include "lprev/grounder.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace lprev {

namespace {

void add_constants(const Atom& a, HerbrandUniverse& hu, std::unordered_set<std::string>& seen) {
    for (const auto& t : a.args) {
        if (t.is_constant() && seen.insert(t.name).second) hu.push_back(t);
    }
}

void add_constants(const Rule& r, HerbrandUniverse& hu, std::unordered_set<std::string>& seen) {
    add_constants(r.head, hu, seen);
    for (const auto& l : r.body) add_constants(l.atom, hu, seen);
    for (const auto& g : r.guards) {
        for (const auto& v : g.values) {
            if (seen.insert(v.name).second) hu.push_back(v);
        }
    }
}

bool blocked_by_guards(const Rule& r, const Substitution& s) {
    for (const auto& g : r.guards) {
        bool all_equal = true;
        for (std::size_t i = 0; i < g.vars.size() && all_equal; ++i) {
            all_equal = apply(s, g.vars[i]) == g.values[i];
        }
        if (all_equal) return true;
    }
    return false;
}

}  // namespace

HerbrandUniverse herbrand_constants(const Program& p) {
    HerbrandUniverse hu;
    std::unordered_set<std::string> seen;
    for (const auto& r : p) add_constants(r, hu, seen);
    return hu;
}

HerbrandUniverse herbrand_constants(const RevisionFramework& fw, const Rule& new_rule) {
    HerbrandUniverse hu;
    std::unordered_set<std::string> seen;
    bool has_vars = !new_rule.variables().empty();
    for (const Program* p : {&fw.persistent, &fw.temporal, &fw.backup}) {
        for (const auto& r : *p) {
            add_constants(r, hu, seen);
            has_vars = has_vars || !r.variables().empty();
        }
    }
    add_constants(new_rule, hu, seen);
    if (hu.empty() && has_vars) {
        throw GroundingError("cannot ground: rules contain variables but the language has no constants");
    }
    return hu;
}

std::vector<Rule> ground_rule(const Rule& r, const HerbrandUniverse& hu) {
    std::vector<Term> vars = r.variables();
    std::vector<Rule> out;
    if (vars.empty()) {
        if (!blocked_by_guards(r, {})) {
            Rule g = r;
            g.guards.clear();
            out.push_back(std::move(g));
        }
        return out;
    }
    if (hu.empty()) return out;
    std::vector<std::size_t> pick(vars.size(), 0);
    for (;;) {
        Substitution s;
        for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i].name, hu[pick[i]]);
        if (!blocked_by_guards(r, s)) {
            Rule g = apply(s, r);
            g.guards.clear();
            out.push_back(std::move(g));
        }
        // Odometer over hu^k; the last variable varies fastest.
        std::size_t i = vars.size();
        while (i > 0) {
            --i;
            if (++pick[i] < hu.size()) break;
            pick[i] = 0;
            if (i == 0) return out;
        }
    }
}

GroundProgram ground(const Program& p, const HerbrandUniverse& hu) {
    GroundProgram out;
    std::unordered_set<Rule> seen;
    for (const auto& r : p) {
        for (auto& g : ground_rule(r, hu)) {
            if (seen.insert(g).second) out.push_back(std::move(g));
        }
    }
    return out;
}

bool is_range_restricted(const Rule& r, const PredicateSet& abducibles) {
    std::vector<Term> safe;
    for (const auto& l : r.body) {
        if (!l.positive() || abducibles.contains(l.atom.predicate)) continue;
        for (const auto& t : l.atom.args) {
            if (t.is_variable()) safe.push_back(t);
        }
    }
    for (const auto& v : r.variables()) {
        if (std::find(safe.begin(), safe.end(), v) == safe.end()) return false;
    }
    return true;
}

RangeRestricted make_range_restricted(const Rule& r, const HerbrandUniverse& hu) {
    RangeRestricted out{r, {}};
    std::vector<Term> safe;
    for (const auto& l : r.body) {
        if (!l.positive()) continue;
        for (const auto& t : l.atom.args) {
            if (t.is_variable()) safe.push_back(t);
        }
    }
    bool changed = false;
    for (const auto& v : r.variables()) {
        if (std::find(safe.begin(), safe.end(), v) != safe.end()) continue;
        out.rule.body.push_back(Literal::pos(Atom{kDomain, {v}}));
        changed = true;
    }
    if (changed) {
        for (const auto& c : hu) out.dom_facts.push_back(Rule{"", Atom{kDomain, {c}}, {}, {}});
    }
    return out;
}

std::pair<RevisionFramework, Rule> make_range_restricted(const RevisionFramework& fw, const Rule& new_rule,
                                                         const HerbrandUniverse& hu) {
    RevisionFramework out;
    std::vector<Rule> dom_facts;
    auto convert = [&](const Program& in, Program& dst) {
        for (const auto& r : in) {
            auto rr = make_range_restricted(r, hu);
            if (dom_facts.empty()) dom_facts = std::move(rr.dom_facts);
            dst.push_back(std::move(rr.rule));
        }
    };
    convert(fw.persistent, out.persistent);
    convert(fw.temporal, out.temporal);
    convert(fw.backup, out.backup);
    auto rn = make_range_restricted(new_rule, hu);
    if (dom_facts.empty()) dom_facts = std::move(rn.dom_facts);
    out.persistent.insert(out.persistent.end(), dom_facts.begin(), dom_facts.end());
    return {std::move(out), std::move(rn.rule)};
}

Program negation_removed(const Program& p, const PredicateSet& abducibles) {
    Program out;
    for (const auto& r : p) {
        if (r.is_constraint()) continue;
        Rule d{r.name, r.head, {}, r.guards};
        for (const auto& l : r.body) {
            if (l.positive() && !abducibles.contains(l.atom.predicate)) d.body.push_back(l);
        }
        out.push_back(std::move(d));
    }
    return out;
}

std::set<Atom> least_model(const GroundProgram& p) {
    std::unordered_map<Atom, std::vector<std::size_t>> watchers;
    std::vector<std::size_t> pending(p.size(), 0);
    std::unordered_set<Atom> model;
    std::deque<Atom> queue;

    auto derive = [&](const Atom& a) {
        if (model.insert(a).second) queue.push_back(a);
    };
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Rule& r = p[i];
        if (!r.is_ground()) throw GroundingError("least_model expects a ground program");
        std::unordered_set<Atom> distinct;
        for (const auto& l : r.body) {
            if (!l.positive()) throw GroundingError("least_model expects a definite program");
            if (distinct.insert(l.atom).second) watchers[l.atom].push_back(i);
        }
        pending[i] = distinct.size();
        if (pending[i] == 0) derive(r.head);
    }
    while (!queue.empty()) {
        Atom a = std::move(queue.front());
        queue.pop_front();
        auto it = watchers.find(a);
        if (it == watchers.end()) continue;
        for (std::size_t i : it->second) {
            if (--pending[i] == 0) derive(p[i].head);
        }
    }
    return {model.begin(), model.end()};
}

GroundProgram relevant_ground_program(const Program& p, const PredicateSet& abducibles,
                                      const HerbrandUniverse& hu) {
    std::set<Atom> base = least_model(ground(negation_removed(p, abducibles), hu));
    GroundProgram out;
    for (auto& g : ground(p, hu)) {
        bool relevant = std::all_of(g.body.begin(), g.body.end(), [&](const Literal& l) {
            return !l.positive() || abducibles.contains(l.atom.predicate) || base.contains(l.atom);
        });
        if (relevant) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace lprev
