#include "lprev/oracle.hpp"

#include <algorithm>

#include "lprev/syntax.hpp"

namespace lprev {

namespace {

std::vector<Rule> unique_instances(const Program& p, const HerbrandUniverse& hu) {
    std::vector<Rule> out;
    std::set<Rule> seen;
    for (auto& g : ground(p, hu)) {
        g.name.clear();
        if (seen.insert(g).second) out.push_back(std::move(g));
    }
    return out;
}

std::string describe(const std::set<Rule>& rules) {
    std::string out = "{";
    bool first = true;
    for (const auto& r : rules) {
        if (!first) out += "; ";
        first = false;
        out += render_clause(r);
    }
    return out + "}";
}

std::string describe(const InstancePair& p) { return "O=" + describe(p.deleted) + " I=" + describe(p.added); }

std::string describe(const Theta& t) {
    std::string out = "{";
    for (const auto& a : t) {
        if (out.size() > 1) out += ", ";
        out += render_atom(a);
    }
    return out + "}";
}

}  // namespace

bool dominates(const InstancePair& smaller, const InstancePair& larger) {
    auto subset = [](const std::set<Rule>& a, const std::set<Rule>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    return subset(smaller.deleted, larger.deleted) && subset(smaller.added, larger.added) && !(smaller == larger);
}

std::vector<InstancePair> minimal_pairs(std::vector<InstancePair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<InstancePair> out;
    for (const auto& p : pairs) {
        bool dominated = std::any_of(pairs.begin(), pairs.end(), [&](const InstancePair& q) { return dominates(q, p); });
        if (!dominated) out.push_back(p);
    }
    return out;
}

OracleReport brute_force_revisions(const RevisionFramework& fw, const Rule& r_new, std::size_t bound) {
    const HerbrandUniverse hu = herbrand_constants(fw, r_new);
    const std::vector<Rule> tmp = unique_instances(fw.temporal, hu);
    const std::vector<Rule> bck = unique_instances(fw.backup, hu);
    const std::size_t n = tmp.size() + bck.size();
    if (n > bound) {
        throw OracleBoundExceeded(std::to_string(n) + " revisable ground instances exceed the bound of " +
                                  std::to_string(bound));
    }
    Program fixed = fw.persistent;
    fixed.push_back(r_new);
    GroundProgram gp = ground(fixed, hu);
    const std::size_t base = gp.size();
    gp.insert(gp.end(), tmp.begin(), tmp.end());
    gp.insert(gp.end(), bck.begin(), bck.end());
    GroundSolver solver(gp);

    OracleReport report;
    std::vector<bool> enabled(gp.size(), true);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        InstancePair pair;
        for (std::size_t i = 0; i < n; ++i) {
            const bool chosen = mask >> i & 1;
            if (i < tmp.size()) {
                enabled[base + i] = !chosen;
                if (chosen) pair.deleted.insert(tmp[i]);
            } else {
                enabled[base + i] = chosen;
                if (chosen) pair.added.insert(bck[i - tmp.size()]);
            }
        }
        if (!solver.solve(enabled, 1).empty()) report.all_revisions.push_back(std::move(pair));
    }
    std::sort(report.all_revisions.begin(), report.all_revisions.end());
    report.minimal_revisions = minimal_pairs(report.all_revisions);
    return report;
}

ThetaReport brute_force_theta(const AbductiveFramework& af, const HerbrandUniverse& hu, std::size_t bound) {
    const std::vector<Atom> abducibles = ground_abducibles(af, hu);
    const std::size_t n = abducibles.size();
    if (n > bound) {
        throw OracleBoundExceeded(std::to_string(n) + " ground abducibles exceed the bound of " +
                                  std::to_string(bound));
    }
    GroundProgram gp = ground(af.program, hu);
    const std::size_t base = gp.size();
    for (const auto& a : abducibles) gp.push_back(Rule{"", a, {}, {}});
    GroundSolver solver(gp);

    ThetaReport report;
    std::vector<bool> enabled(gp.size(), true);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Theta theta;
        for (std::size_t i = 0; i < n; ++i) {
            enabled[base + i] = mask >> i & 1;
            if (enabled[base + i]) theta.insert(abducibles[i]);
        }
        if (!solver.solve(enabled, 1).empty()) report.all.push_back(std::move(theta));
    }
    std::sort(report.all.begin(), report.all.end());
    report.minimal = minimal_antichain(report.all);
    return report;
}

OracleReport cross_check(const RevisionFramework& fw, const Rule& r_new, const EngineOptions& options,
                         std::size_t bound) {
    OracleReport report = brute_force_revisions(fw, r_new, bound);
    std::set<InstancePair> engine;
    try {
        EngineOutcome outcome = revise(fw, r_new, options);
        for (const auto& rev : outcome.revisions) engine.insert(instance_pair(rev, fw));
    } catch (const Unrevisable&) {
        // An empty engine result is compared like any other.
    } catch (const RevisionError& e) {
        report.divergences.push_back(std::string("engine failed: ") + e.what());
    }
    const std::set<InstancePair> oracle(report.minimal_revisions.begin(), report.minimal_revisions.end());
    for (const auto& p : oracle) {
        if (!engine.contains(p)) report.divergences.push_back("missed by engine: " + describe(p));
    }
    for (const auto& p : engine) {
        if (!oracle.contains(p)) report.divergences.push_back("not minimal per oracle: " + describe(p));
    }
    report.agreement = report.divergences.empty();
    return report;
}

std::vector<std::string> soundness_violations(const RevisionFramework& fw, const Rule& r_new,
                                              const EngineOutcome& outcome, std::size_t bound) {
    const HerbrandUniverse hu = herbrand_constants(fw, r_new);
    const ThetaReport thetas = brute_force_theta(translate(fw, r_new), hu, bound);
    std::vector<std::string> out;
    for (const auto& theta : outcome.success_thetas) {
        bool extends = std::any_of(thetas.all.begin(), thetas.all.end(), [&](const Theta& t) {
            return std::includes(t.begin(), t.end(), theta.begin(), theta.end());
        });
        if (!extends) out.push_back("no generalized stable model includes " + describe(theta));
        if (!is_consistent(ground(apply_revision(extract_revision(theta, fw), fw, r_new), hu))) {
            out.push_back("revision for " + describe(theta) + " is inconsistent");
        }
    }
    return out;
}

namespace {

class Sampler {
public:
    Sampler(std::mt19937_64& rng, const RandomParams& params) : rng_(rng), params_(params) {
        const char* constant_names[] = {"a", "b", "c", "d", "e"};
        const char* predicate_names[] = {"p", "q", "r", "s", "t", "u"};
        std::size_t nc = between(1, std::min<std::size_t>(params.max_constants, 5));
        for (std::size_t i = 0; i < nc; ++i) constants_.push_back(Term::constant(constant_names[i]));
        std::size_t np = between(2, std::max<std::size_t>(2, std::min<std::size_t>(params.max_predicates, 6)));
        for (std::size_t i = 0; i < np; ++i) {
            predicates_.emplace_back(predicate_names[i], between(0, params.max_arity));
        }
    }

    std::size_t between(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    Atom atom(bool ground) {
        const auto& [name, arity] = predicates_[between(0, predicates_.size() - 1)];
        Atom a{name, {}};
        for (std::size_t i = 0; i < arity; ++i) {
            if (!ground && chance(0.6)) {
                a.args.push_back(Term::variable(i == 0 ? "X" : "Y" + std::to_string(i)));
            } else {
                a.args.push_back(constants_[between(0, constants_.size() - 1)]);
            }
        }
        return a;
    }

    Rule rule(bool ground, std::size_t min_body) {
        Rule r;
        r.head = atom(ground);
        std::size_t len = between(min_body, params_.max_body);
        for (std::size_t i = 0; i < len; ++i) r.body.push_back({atom(ground), chance(params_.naf_probability)});
        return r;
    }

    Rule constraint() {
        Rule r;
        r.head = Atom::bottom();
        std::size_t len = between(1, std::min<std::size_t>(2, params_.max_body));
        for (std::size_t i = 0; i < len; ++i) r.body.push_back({atom(chance(0.5)), chance(params_.naf_probability / 2)});
        return r;
    }

private:
    std::mt19937_64& rng_;
    const RandomParams& params_;
    std::vector<Term> constants_;
    std::vector<std::pair<std::string, std::size_t>> predicates_;
};

bool distinct_instances(const Program& p, const HerbrandUniverse& hu) {
    std::set<Rule> seen;
    for (const auto& r : p) {
        for (const auto& g : ground_rule(r, hu)) {
            if (!seen.insert(g).second) return false;
        }
    }
    return true;
}

}  // namespace

RandomInstance random_framework(std::mt19937_64& rng, const RandomParams& params) {
    for (;;) {
        Sampler s(rng, params);
        RandomInstance inst;
        auto& fw = inst.framework;
        const std::size_t total = s.between(3, std::max<std::size_t>(3, params.max_rules));
        const std::size_t facts = s.between(1, 2);
        for (std::size_t i = 0; i < facts; ++i) fw.persistent.push_back(Rule{"", s.atom(true), {}, {}});
        std::size_t name = 0;
        for (std::size_t i = facts; i < total; ++i) {
            Rule r = s.rule(false, 1);
            const std::size_t kind = i == facts ? 1 : s.between(0, 2);
            if (kind == 0) {
                fw.persistent.push_back(std::move(r));
            } else {
                r.name = "phi" + std::to_string(++name);
                (kind == 1 ? fw.temporal : fw.backup).push_back(std::move(r));
            }
        }
        inst.new_rule = s.chance(0.7) ? s.constraint() : s.rule(false, 1);

        std::set<Rule> all;
        bool duplicate = false;
        for (const Program* p : {&fw.persistent, &fw.temporal, &fw.backup}) {
            for (const auto& r : *p) duplicate = duplicate || !all.insert(r).second;
        }
        if (duplicate || all.contains(inst.new_rule)) continue;
        try {
            check_arities({&fw.persistent, &fw.temporal, &fw.backup});
            const HerbrandUniverse hu = herbrand_constants(fw, inst.new_rule);
            if (!distinct_instances(fw.temporal, hu) || !distinct_instances(fw.backup, hu)) continue;
            if (ground(fw.temporal, hu).size() + ground(fw.backup, hu).size() > params.bound) continue;
            Program before = fw.persistent;
            before.insert(before.end(), fw.temporal.begin(), fw.temporal.end());
            if (!is_consistent(ground(before, hu))) continue;
            before.push_back(inst.new_rule);
            if (is_consistent(ground(before, hu))) continue;
            if (params.require_revisable &&
                brute_force_revisions(fw, inst.new_rule, params.bound).minimal_revisions.empty()) {
                continue;
            }
        } catch (const std::exception&) {
            continue;
        }
        return inst;
    }
}

Program random_ground_program(std::mt19937_64& rng, std::size_t max_atoms, std::size_t max_rules,
                              std::size_t max_body, double naf_probability) {
    auto between = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    const std::size_t n = between(1, max_atoms);
    auto atom = [&] { return Atom{"p" + std::to_string(between(0, n - 1)), {}}; };
    Program p;
    const std::size_t rules = between(1, max_rules);
    for (std::size_t i = 0; i < rules; ++i) {
        Rule r;
        r.head = chance(0.12) ? Atom::bottom() : atom();
        std::size_t len = between(r.head.is_bottom() ? 1 : 0, max_body);
        for (std::size_t j = 0; j < len; ++j) r.body.push_back({atom(), chance(naf_probability)});
        p.push_back(std::move(r));
    }
    return p;
}

}  // namespace lprev
