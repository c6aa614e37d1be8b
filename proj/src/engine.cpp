#include "lprev/engine.hpp"

#include <algorithm>

#include "lprev/stable_models.hpp"
#include "lprev/syntax.hpp"

namespace lprev {

namespace {

template <class T>
void append(std::vector<T>& out, std::vector<T>&& more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<Rule> ground_all(const Rule& r, const HerbrandUniverse& hu) {
    std::vector<Rule> out;
    for (auto& g : ground_rule(r, hu)) {
        g.name.clear();
        out.push_back(std::move(g));
    }
    return out;
}

void push_unique(std::vector<Rule>& out, std::set<Rule>& seen, std::vector<Rule>&& rules) {
    for (auto& r : rules) {
        if (seen.insert(r).second) out.push_back(std::move(r));
    }
}

}  // namespace

const char* abbreviation(Procedure p) {
    switch (p) {
        case Procedure::RuleCon: return "rc";
        case Procedure::LiteralCon: return "lc";
        case Procedure::Derive: return "dr";
        case Procedure::DeletedCon: return "dc";
        case Procedure::Select: return "select";
    }
    return "?";
}

std::string format_trace_line(const TraceRecord& r) {
    std::string out = r.index;
    if (!out.empty()) out += ' ';
    out += abbreviation(r.proc);
    out += '(' + r.argument + ')';
    if (r.proc == Procedure::Select) return out;
    out += " Δ={";
    for (std::size_t i = 0; i < r.delta.size(); ++i) {
        if (i) out += ", ";
        out += render_literal(r.delta[i]);
    }
    out += '}';
    return out;
}

std::vector<Rule> resolve(const Literal& l, const Program& p, const HerbrandUniverse& hu) {
    std::vector<Rule> out;
    std::set<Rule> seen;
    for (const auto& r : p) {
        if (l.naf) {
            if (auto s = unify(r.head, l.atom)) {
                Rule res = apply(*s, r);
                res.head = Atom::bottom();
                push_unique(out, seen, ground_all(res, hu));
            }
        }
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (r.body[i].naf != l.naf) continue;
            auto s = unify(r.body[i].atom, l.atom);
            if (!s) continue;
            Rule res = r;
            res.body.erase(res.body.begin() + static_cast<std::ptrdiff_t>(i));
            push_unique(out, seen, ground_all(apply(*s, res), hu));
        }
    }
    return out;
}

std::vector<Rule> del(const Literal& l, const Program& p, const HerbrandUniverse& hu) {
    const Literal c = complement(l);
    std::vector<Rule> out;
    std::set<Rule> seen;
    for (const auto& r : p) {
        for (const auto& b : r.body) {
            if (b.naf != c.naf) continue;
            if (auto s = unify(b.atom, c.atom)) push_unique(out, seen, ground_all(apply(*s, r), hu));
        }
    }
    return out;
}

std::vector<SearchState> unique_by_delta(std::vector<SearchState> states) {
    std::vector<SearchState> out;
    std::set<std::set<Literal>> seen;
    for (auto& s : states) {
        if (seen.insert(s.delta.literals()).second) out.push_back(std::move(s));
    }
    return out;
}

ProofSearch::ProofSearch(AbductiveFramework af, HerbrandUniverse hu, EngineOptions options)
    : af_(std::move(af)), hu_(std::move(hu)), options_(options) {
    m0_ = least_model(ground(negation_removed(af_.program, af_.abducibles), hu_));
    omega_ = relevant_ground_program(af_.program, af_.abducibles, hu_);
    for (const auto& r : omega_) by_head_[r.head].push_back(&r);
}

std::vector<Rule> ProofSearch::relevant_instances(const Rule& r) {
    Rule key = r;
    key.name.clear();
    if (auto it = instance_cache_.find(key); it != instance_cache_.end()) return it->second;

    const bool known = std::find(af_.program.begin(), af_.program.end(), key) != af_.program.end();
    std::set<Atom> model;
    if (!known) {
        Program extended = af_.program;
        extended.push_back(key);
        model = least_model(ground(negation_removed(extended, af_.abducibles), hu_));
    }
    const std::set<Atom>& m = known ? m0_ : model;
    std::vector<Rule> out;
    for (auto& g : ground_all(key, hu_)) {
        bool relevant = std::all_of(g.body.begin(), g.body.end(), [&](const Literal& l) {
            return !l.positive() || is_abducible(l.atom) || m.contains(l.atom);
        });
        if (relevant) out.push_back(std::move(g));
    }
    instance_cache_.emplace(key, out);
    return out;
}

const std::vector<Rule>& ProofSearch::resolvents(const Literal& l) {
    auto it = resolve_cache_.find(l);
    if (it == resolve_cache_.end()) it = resolve_cache_.emplace(l, resolve(l, af_.program, hu_)).first;
    return it->second;
}

const std::vector<Rule>& ProofSearch::deleted(const Literal& l) {
    auto it = del_cache_.find(l);
    if (it == del_cache_.end()) it = del_cache_.emplace(l, del(l, af_.program, hu_)).first;
    return it->second;
}

void ProofSearch::tick() {
    if (++steps_ > options_.step_budget) {
        throw NonTermination("step budget of " + std::to_string(options_.step_budget) + " calls exhausted");
    }
}

void ProofSearch::enter(SearchState& s, Procedure p, std::string argument) const {
    if (!options_.record_trace) return;
    std::vector<int> path;
    if (!s.frames.empty()) {
        auto& parent = s.frames.back();
        path = parent.path;
        path.push_back(++parent.children);
    }
    std::string index;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) index += '.';
        index += std::to_string(path[i]);
    }
    s.trace.push_back({std::move(index), p, std::move(argument), s.delta.display_order()});
    s.frames.push_back({p, std::move(path), 0});
}

void ProofSearch::leave(SearchState& s) const {
    if (options_.record_trace) s.frames.pop_back();
}

void ProofSearch::leave(std::vector<SearchState>& states) const {
    for (auto& s : states) leave(s);
}

// Calls that return at once are only worth a trace line inside derive,
// where they mark the progress through the selected rule body.
void ProofSearch::trivial(SearchState& s, Procedure p, std::string argument) const {
    if (!options_.record_trace || s.frames.empty() || s.frames.back().proc != Procedure::Derive) return;
    enter(s, p, std::move(argument));
    leave(s);
}

std::vector<SearchState> ProofSearch::rule_con(const Rule& r, const SearchState& in) {
    tick();
    CallKey key{Procedure::RuleCon, r, {}, in.delta.literals(), in.checked, {}};
    key.rule.name.clear();
    if (memoize()) {
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    SearchState s = in;
    enter(s, Procedure::RuleCon, render_clause(r));
    std::vector<SearchState> states{std::move(s)};
    for (const auto& inst : relevant_instances(r)) {
        std::vector<SearchState> next;
        for (const auto& st : states) append(next, satisfy(inst, st));
        states = unique_by_delta(std::move(next));
        if (states.empty()) break;
    }
    leave(states);
    if (memoize()) memo_.emplace(std::move(key), states);
    return states;
}

// One ground instance: falsify some body literal after making every earlier
// one true, or make the whole body true and assume the head.
std::vector<SearchState> ProofSearch::satisfy(const Rule& ground, const SearchState& s) {
    std::vector<SearchState> results;
    std::vector<SearchState> frontier{s};
    for (const auto& l : ground.body) {
        std::vector<SearchState> next;
        for (const auto& f : frontier) {
            append(results, falsify(l, f));
            append(next, make_true(l, f));
        }
        frontier = unique_by_delta(std::move(next));
    }
    for (const auto& f : frontier) append(results, literal_con(Literal::pos(ground.head), f));
    return unique_by_delta(std::move(results));
}

std::vector<SearchState> ProofSearch::falsify(const Literal& l, const SearchState& s) {
    if (l.positive()) return literal_con(complement(l), s);
    std::vector<SearchState> out;
    for (auto& [sub, st] : derive(l.atom, s)) out.push_back(std::move(st));
    return out;
}

std::vector<SearchState> ProofSearch::make_true(const Literal& l, const SearchState& s) {
    if (!l.positive() || is_abducible(l.atom)) return literal_con(l, s);
    std::vector<SearchState> out;
    for (auto& [sub, st] : derive(l.atom, s)) out.push_back(std::move(st));
    return out;
}

std::vector<SearchState> ProofSearch::literal_con(const Literal& l, const SearchState& in) {
    tick();
    if (!memoize()) return literal_con_impl(l, in);
    CallKey key{Procedure::LiteralCon, {}, l, in.delta.literals(), in.checked, {}};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto out = literal_con_impl(l, in);
    memo_.emplace(std::move(key), out);
    return out;
}

std::vector<SearchState> ProofSearch::literal_con_impl(const Literal& l, const SearchState& in) {
    if (l.atom.is_bottom()) {
        if (!l.naf) return {};
        SearchState s = in;
        trivial(s, Procedure::LiteralCon, render_literal(l));
        return {s};
    }
    if (in.delta.contains(l)) {
        SearchState s = in;
        trivial(s, Procedure::LiteralCon, render_literal(l));
        return {s};
    }
    if (in.delta.conflicts(l)) return {};

    SearchState s = in;
    enter(s, Procedure::LiteralCon, render_literal(l));
    s.delta.insert(l);
    std::vector<SearchState> states{std::move(s)};
    for (const auto& r : resolvents(l)) {
        std::vector<SearchState> next;
        for (const auto& st : states) append(next, rule_con(r, st));
        states = unique_by_delta(std::move(next));
        if (states.empty()) return {};
    }
    for (const auto& r : options_.skip_deleted_con ? std::vector<Rule>{} : deleted(l)) {
        std::vector<SearchState> next;
        for (const auto& st : states) append(next, deleted_con(r, st));
        states = unique_by_delta(std::move(next));
        if (states.empty()) return {};
    }
    leave(states);
    return states;
}

std::vector<std::pair<Substitution, SearchState>> ProofSearch::derive(const Atom& p, const SearchState& s) {
    return derive_chain(p, s, {});
}

std::vector<std::pair<Substitution, SearchState>> ProofSearch::derive_chain(const Atom& p, const SearchState& in,
                                                                           const std::vector<Atom>& chain) {
    tick();
    if (!memoize()) return derive_impl(p, in, chain);
    CallKey key{Procedure::Derive, {}, Literal::pos(p), in.delta.literals(), in.checked, chain};
    if (auto it = derive_memo_.find(key); it != derive_memo_.end()) return it->second;
    auto out = derive_impl(p, in, chain);
    derive_memo_.emplace(std::move(key), out);
    return out;
}

std::vector<std::pair<Substitution, SearchState>> ProofSearch::derive_impl(const Atom& p, const SearchState& in,
                                                                          const std::vector<Atom>& chain) {
    if (p.is_bottom()) return {};
    if (p.is_ground()) {
        if (in.delta.contains(Literal::pos(p))) {
            SearchState s = in;
            trivial(s, Procedure::Derive, render_atom(p));
            return {{Substitution{}, std::move(s)}};
        }
        if (in.delta.conflicts(Literal::pos(p))) return {};
    }
    if (is_abducible(p)) {
        // An abducible has no rules; deriving it means assuming it.
        SearchState s = in;
        enter(s, Procedure::Derive, render_atom(p));
        std::vector<std::pair<Substitution, SearchState>> out;
        for (auto& st : literal_con(Literal::pos(p), s)) {
            leave(st);
            out.emplace_back(Substitution{}, std::move(st));
        }
        return out;
    }
    // A positive cycle can never be grounded in a least model.
    if (std::find(chain.begin(), chain.end(), p) != chain.end()) return {};

    SearchState base = in;
    enter(base, Procedure::Derive, render_atom(p));
    std::vector<Atom> deeper = chain;
    deeper.push_back(p);

    std::vector<const Rule*> candidates;
    if (p.is_ground()) {
        if (auto it = by_head_.find(p); it != by_head_.end()) candidates = it->second;
    } else {
        for (const auto& r : omega_) {
            if (r.head.predicate == p.predicate) candidates.push_back(&r);
        }
    }

    std::vector<std::pair<Substitution, SearchState>> out;
    std::set<std::pair<std::map<std::string, Term>, std::set<Literal>>> seen;
    for (const Rule* g : candidates) {
        auto theta = unify(p, g->head);
        if (!theta) continue;
        SearchState s = base;
        enter(s, Procedure::Select, render_clause(*g));
        leave(s);
        BodyPartition parts = partition_body(*g, af_.abducibles);
        std::vector<SearchState> states{std::move(s)};
        for (const auto& b : parts.pos) {
            std::vector<SearchState> next;
            for (const auto& st : states) {
                for (auto& [sub, st2] : derive_chain(b.atom, st, deeper)) next.push_back(std::move(st2));
            }
            states = unique_by_delta(std::move(next));
        }
        for (const auto& b : g->body) {
            if (b.positive() && !is_abducible(b.atom)) continue;
            std::vector<SearchState> next;
            for (const auto& st : states) append(next, literal_con(b, st));
            states = unique_by_delta(std::move(next));
        }
        std::vector<SearchState> next;
        for (const auto& st : states) append(next, literal_con(Literal::pos(g->head), st));
        for (auto& st : unique_by_delta(std::move(next))) {
            leave(st);
            if (seen.emplace(theta->bindings(), st.delta.literals()).second) out.emplace_back(*theta, std::move(st));
        }
    }
    return out;
}

std::vector<SearchState> ProofSearch::deleted_con(const Rule& r, const SearchState& in) {
    tick();
    if (!memoize()) return deleted_con_impl(r, in);
    CallKey key{Procedure::DeletedCon, r, {}, in.delta.literals(), in.checked, {}};
    key.rule.name.clear();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto out = deleted_con_impl(r, in);
    memo_.emplace(std::move(key), out);
    return out;
}

std::vector<SearchState> ProofSearch::deleted_con_impl(const Rule& r, const SearchState& in) {
    SearchState s = in;
    enter(s, Procedure::DeletedCon, render_clause(r));
    Rule key = r;
    key.name.clear();
    if (!s.checked.insert(key).second) {
        leave(s);
        return {s};
    }
    std::vector<SearchState> states{std::move(s)};
    for (const auto& inst : relevant_instances(r)) {
        std::vector<SearchState> next;
        for (const auto& st : states) {
            for (auto& [sub, st2] : derive(inst.head, st)) next.push_back(std::move(st2));
            append(next, literal_con(Literal::neg(inst.head), st));
        }
        states = unique_by_delta(std::move(next));
        if (states.empty()) return {};
    }
    leave(states);
    return states;
}

EngineOutcome revise(const RevisionFramework& fw, const Rule& r_new, const EngineOptions& options) {
    const HerbrandUniverse hu = herbrand_constants(fw, r_new);
    Program before = fw.persistent;
    before.insert(before.end(), fw.temporal.begin(), fw.temporal.end());
    if (!is_consistent(ground(before, hu))) {
        throw InitialInconsistent("persistent and temporal rules have no stable model");
    }

    auto [restricted, restricted_new] = make_range_restricted(fw, r_new, hu);
    ProofSearch search(translate(restricted, restricted_new), hu, options);

    EngineOutcome outcome;
    outcome.successes = search.rule_con(restricted_new, SearchState{});
    outcome.steps = search.steps();
    if (outcome.successes.empty()) throw Unrevisable("no revision makes the new rule consistent");

    for (const auto& s : outcome.successes) {
        outcome.success_thetas.push_back(positive_abducibles(s.delta, search.framework().abducibles));
    }
    outcome.minimal_thetas = minimal_antichain(outcome.success_thetas);
    for (const auto& theta : outcome.minimal_thetas) {
        Revision rev = extract_revision(theta, fw);
        outcome.verified.push_back(is_consistent(ground(apply_revision(rev, fw, r_new), hu)));
        outcome.revisions.push_back(std::move(rev));
    }
    return outcome;
}

}  // namespace lprev
