#include "lprev/core.hpp"

#include <algorithm>

namespace lprev {

namespace {

void collect_vars(const Atom& a, std::vector<Term>& out) {
    for (const auto& t : a.args) {
        if (t.is_variable() && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
}

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

Literal complement(const Literal& l) { return {l.atom, !l.naf}; }

bool Rule::is_ground() const {
    return head.is_ground() &&
           std::all_of(body.begin(), body.end(), [](const Literal& l) { return l.is_ground(); });
}

std::vector<Term> Rule::variables() const {
    std::vector<Term> vars;
    collect_vars(head, vars);
    for (const auto& l : body) collect_vars(l.atom, vars);
    for (const auto& g : guards) {
        for (const auto& v : g.vars) {
            if (v.is_variable() && std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
    }
    return vars;
}

std::strong_ordering Rule::operator<=>(const Rule& o) const {
    if (auto c = head <=> o.head; c != 0) return c;
    if (auto c = body <=> o.body; c != 0) return c;
    return guards <=> o.guards;
}

bool Rule::operator==(const Rule& o) const {
    return head == o.head && body == o.body && guards == o.guards;
}

BodyPartition partition_body(const Rule& r, const PredicateSet& abducibles) {
    BodyPartition parts;
    for (const auto& l : r.body) {
        if (abducibles.contains(l.atom.predicate)) {
            parts.abd.push_back(l);
        } else if (l.positive()) {
            parts.pos.push_back(l);
        } else {
            parts.neg.push_back(l);
        }
    }
    return parts;
}

std::optional<Term> Substitution::lookup(const std::string& var) const {
    auto it = bindings_.find(var);
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
}

void Substitution::bind(const std::string& var, Term value) { bindings_[var] = std::move(value); }

Substitution Substitution::compose(const Substitution& s) const {
    Substitution out;
    for (const auto& [var, term] : bindings_) {
        Term image = apply(s, term);
        if (!(image.is_variable() && image.name == var)) out.bindings_[var] = image;
    }
    for (const auto& [var, term] : s.bindings_) {
        if (!bindings_.contains(var)) out.bindings_[var] = term;
    }
    return out;
}

Term apply(const Substitution& s, const Term& t) {
    if (!t.is_variable()) return t;
    if (auto v = s.lookup(t.name)) return *v;
    return t;
}

Atom apply(const Substitution& s, const Atom& a) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(apply(s, t));
    return out;
}

Literal apply(const Substitution& s, const Literal& l) { return {apply(s, l.atom), l.naf}; }

Rule apply(const Substitution& s, const Rule& r) {
    Rule out;
    out.name = r.name;
    out.head = apply(s, r.head);
    out.body.reserve(r.body.size());
    for (const auto& l : r.body) out.body.push_back(apply(s, l));
    for (const auto& g : r.guards) {
        Disequality d;
        for (const auto& v : g.vars) d.vars.push_back(apply(s, v));
        d.values = g.values;
        out.guards.push_back(std::move(d));
    }
    return out;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b, Substitution base) {
    if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        Term x = apply(base, a.args[i]);
        Term y = apply(base, b.args[i]);
        if (x == y) continue;
        Substitution step;
        if (x.is_variable()) {
            step.bind(x.name, y);
        } else if (y.is_variable()) {
            step.bind(y.name, x);
        } else {
            return std::nullopt;
        }
        base = base.compose(step);
    }
    return base;
}

void Delta::insert(const Literal& l) {
    if (members_.contains(l)) return;
    if (conflicts(l)) throw ModelError("inconsistent assumption set");
    members_.insert(l);
    order_.push_back(l);
}

std::vector<Literal> Delta::display_order() const {
    std::vector<Literal> out;
    out.reserve(order_.size());
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
        if (it->positive()) out.push_back(*it);
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
        if (!it->positive()) out.push_back(*it);
    }
    return out;
}

Theta positive_abducibles(const Delta& delta, const PredicateSet& abducibles) {
    Theta theta;
    for (const auto& l : delta.literals()) {
        if (l.positive() && abducibles.contains(l.atom.predicate)) theta.insert(l.atom);
    }
    return theta;
}

std::vector<Theta> minimal_antichain(std::vector<Theta> sets) {
    std::sort(sets.begin(), sets.end(), [](const Theta& a, const Theta& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<Theta> out;
    for (auto& s : sets) {
        bool dominated = std::any_of(out.begin(), out.end(), [&](const Theta& m) {
            return std::includes(s.begin(), s.end(), m.begin(), m.end());
        });
        if (!dominated) out.push_back(std::move(s));
    }
    return out;
}

void check_arities(const std::vector<const Program*>& programs) {
    std::map<std::string, std::size_t> arity;
    auto visit = [&](const Atom& a) {
        if (a.predicate == kBottom && !a.args.empty()) {
            throw ModelError("predicate 'bot' is reserved and must be nullary");
        }
        auto [it, fresh] = arity.emplace(a.predicate, a.args.size());
        if (!fresh && it->second != a.args.size()) {
            throw ModelError("arity clash for predicate '" + a.predicate + "': used with " +
                             std::to_string(it->second) + " and " + std::to_string(a.args.size()) +
                             " arguments");
        }
    };
    for (const auto* p : programs) {
        for (const auto& r : *p) {
            visit(r.head);
            for (const auto& l : r.body) {
                if (l.atom.is_bottom()) throw ModelError("'bot' may not occur in a rule body");
                visit(l.atom);
            }
        }
    }
}

}  // namespace lprev

std::size_t std::hash<lprev::Atom>::operator()(const lprev::Atom& a) const noexcept {
    std::size_t h = std::hash<std::string>{}(a.predicate);
    for (const auto& t : a.args) {
        h = lprev::mix(h, std::hash<std::string>{}(t.name) * 2 + (t.is_variable() ? 1 : 0));
    }
    return h;
}

std::size_t std::hash<lprev::Rule>::operator()(const lprev::Rule& r) const noexcept {
    std::size_t h = std::hash<lprev::Atom>{}(r.head);
    for (const auto& l : r.body) h = lprev::mix(h, std::hash<lprev::Literal>{}(l));
    for (const auto& g : r.guards) {
        for (const auto& v : g.values) h = lprev::mix(h, std::hash<std::string>{}(v.name));
    }
    return h;
}
