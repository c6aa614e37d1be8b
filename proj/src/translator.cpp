#include "lprev/translator.hpp"

#include <algorithm>
#include <map>

namespace lprev {

namespace {

Atom abducible_atom(const std::string& predicate, const Rule& rule, const std::vector<Term>* values) {
    Atom a{predicate, {}};
    if (values) {
        a.args = *values;
    } else {
        a.args = rule.variables();
    }
    return a;
}

Substitution instance_binding(const Rule& rule, const Atom& abducible) {
    std::vector<Term> vars = rule.variables();
    if (vars.size() != abducible.args.size()) {
        throw TranslationError("abducible " + abducible.predicate + " has arity " +
                               std::to_string(abducible.args.size()) + " but rule '" + rule.name + "' has " +
                               std::to_string(vars.size()) + " variables");
    }
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!abducible.args[i].is_constant()) throw TranslationError("abducible must be ground");
        s.bind(vars[i].name, abducible.args[i]);
    }
    return s;
}

Rule unnamed(Rule r) {
    r.name.clear();
    return r;
}

}  // namespace

std::string deletion_predicate(const std::string& rule_name) { return "del_" + rule_name; }
std::string addition_predicate(const std::string& rule_name) { return "add_" + rule_name; }

Atom deletion_abducible(const Rule& rule, const std::vector<Term>& instance_args) {
    return abducible_atom(deletion_predicate(rule.name), rule, &instance_args);
}

Atom addition_abducible(const Rule& rule, const std::vector<Term>& instance_args) {
    return abducible_atom(addition_predicate(rule.name), rule, &instance_args);
}

AbductiveFramework translate(const RevisionFramework& fw, const Rule& new_rule) {
    AbductiveFramework af;
    std::set<std::string> names;
    for (const Program* p : {&fw.temporal, &fw.backup}) {
        for (const auto& r : *p) {
            if (r.name.empty()) throw TranslationError("temporal and backup rules must be named");
            if (!names.insert(r.name).second) throw TranslationError("duplicate rule name '" + r.name + "'");
        }
    }
    for (const auto& r : fw.temporal) af.abducibles.insert(deletion_predicate(r.name));
    for (const auto& r : fw.backup) af.abducibles.insert(addition_predicate(r.name));

    auto check_collision = [&](const Atom& a) {
        if (af.abducibles.contains(a.predicate)) {
            throw TranslationError("predicate '" + a.predicate + "' collides with a generated abducible");
        }
    };
    auto check_rule = [&](const Rule& r) {
        check_collision(r.head);
        for (const auto& l : r.body) check_collision(l.atom);
    };
    for (const Program* p : {&fw.persistent, &fw.temporal, &fw.backup}) {
        for (const auto& r : *p) check_rule(r);
    }
    check_rule(new_rule);

    af.program = fw.persistent;
    af.program.push_back(new_rule);
    for (const auto& r : fw.temporal) {
        Rule t = r;
        t.body.push_back(Literal::neg(abducible_atom(deletion_predicate(r.name), r, nullptr)));
        af.program.push_back(std::move(t));
    }
    for (const auto& r : fw.backup) {
        Rule b = r;
        // The addition abducible goes right after the last positive literal.
        auto last_pos = std::find_if(b.body.rbegin(), b.body.rend(), [](const Literal& l) { return l.positive(); });
        auto at = last_pos == b.body.rend() ? b.body.begin() : last_pos.base();
        b.body.insert(at, Literal::pos(abducible_atom(addition_predicate(r.name), r, nullptr)));
        af.program.push_back(std::move(b));
    }
    return af;
}

Revision extract_revision(const Theta& theta, const RevisionFramework& fw) {
    std::map<std::string, const Rule*> deletes, adds;
    for (const auto& r : fw.temporal) deletes[deletion_predicate(r.name)] = &r;
    for (const auto& r : fw.backup) adds[addition_predicate(r.name)] = &r;

    Revision rev;
    rev.theta = theta;
    std::map<const Rule*, std::vector<std::vector<Term>>> excluded;
    std::vector<Rule> backup_instances;
    for (const auto& a : theta) {
        if (auto it = deletes.find(a.predicate); it != deletes.end()) {
            rev.deletions.push_back(unnamed(apply(instance_binding(*it->second, a), *it->second)));
            excluded[it->second].push_back(a.args);
        } else if (auto jt = adds.find(a.predicate); jt != adds.end()) {
            backup_instances.push_back(unnamed(apply(instance_binding(*jt->second, a), *jt->second)));
        } else {
            throw TranslationError("unknown abducible '" + a.predicate + "'");
        }
    }
    rev.additions = std::move(backup_instances);
    for (const auto& r : fw.temporal) {
        auto it = excluded.find(&r);
        if (it == excluded.end()) continue;
        std::vector<Term> vars = r.variables();
        // A variable-free rule has a single instance, already deleted.
        if (vars.empty()) continue;
        Rule guarded = r;
        for (const auto& values : it->second) guarded.guards.push_back(Disequality{vars, values});
        rev.additions.push_back(std::move(guarded));
    }
    return rev;
}

Theta theta_for(const std::vector<Rule>& deleted, const std::vector<Rule>& added, const RevisionFramework& fw,
                const HerbrandUniverse& hu) {
    Theta theta;
    auto collect = [&](const Program& part, const std::vector<Rule>& wanted, bool deletion) {
        std::set<Rule> want(wanted.begin(), wanted.end());
        for (const auto& r : part) {
            std::vector<Term> vars = r.variables();
            for (const auto& inst : ground_rule(r, hu)) {
                if (!want.contains(inst)) continue;
                // Recover the binding from the instance by unifying heads and bodies.
                std::optional<Substitution> s = unify(r.head, inst.head);
                for (std::size_t i = 0; s && i < r.body.size(); ++i) s = unify(r.body[i].atom, inst.body[i].atom, *s);
                if (!s) continue;
                std::vector<Term> args;
                for (const auto& v : vars) args.push_back(apply(*s, v));
                theta.insert(deletion ? deletion_abducible(r, args) : addition_abducible(r, args));
            }
        }
    };
    collect(fw.temporal, deleted, true);
    collect(fw.backup, added, false);
    return theta;
}

Program apply_revision(const Revision& rev, const RevisionFramework& fw, const Rule& new_rule) {
    auto instance_of = [](const Rule& general, const Rule& ground) {
        if (general.body.size() != ground.body.size()) return false;
        std::optional<Substitution> s = unify(general.head, ground.head);
        for (std::size_t i = 0; s && i < general.body.size(); ++i) {
            if (general.body[i].naf != ground.body[i].naf) return false;
            s = unify(general.body[i].atom, ground.body[i].atom, *s);
        }
        return s.has_value();
    };
    const bool by_theta = !rev.theta.empty();
    Program out = fw.persistent;
    out.push_back(new_rule);
    for (const auto& r : fw.temporal) {
        // Revisions built from abducibles name their rules; hand-built ones
        // are matched structurally.
        bool touched = by_theta ? std::any_of(rev.theta.begin(), rev.theta.end(),
                                              [&](const Atom& a) { return a.predicate == deletion_predicate(r.name); })
                                : std::any_of(rev.deletions.begin(), rev.deletions.end(),
                                              [&](const Rule& d) { return instance_of(r, d); });
        if (!touched) out.push_back(r);
    }
    out.insert(out.end(), rev.additions.begin(), rev.additions.end());
    return out;
}

InstancePair instance_pair(const Revision& rev, const RevisionFramework& fw) {
    InstancePair pair;
    pair.deleted.insert(rev.deletions.begin(), rev.deletions.end());
    std::map<std::string, const Rule*> adds;
    for (const auto& r : fw.backup) adds[addition_predicate(r.name)] = &r;
    for (const auto& a : rev.theta) {
        if (auto it = adds.find(a.predicate); it != adds.end()) {
            pair.added.insert(unnamed(apply(instance_binding(*it->second, a), *it->second)));
        }
    }
    return pair;
}

}  // namespace lprev
