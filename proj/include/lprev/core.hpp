// Symbolic model of function-free normal logic programs: terms, atoms,
// literals, rules, programs, revision frameworks, substitutions and the
// assumption sets used by the abductive proof search.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lprev {

/// Name of the reserved nullary predicate standing for contradiction.
inline constexpr const char* kBottom = "bot";
/// Reserved predicate enumerating the Herbrand universe.
inline constexpr const char* kDomain = "dom";

/// Raised when a program violates a structural invariant (arity clash,
/// reserved predicate misuse, duplicate rule names, ...).
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Term {
    enum class Kind : std::uint8_t { Constant, Variable };

    Kind kind = Kind::Constant;
    std::string name;

    static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }
    static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }

    bool is_variable() const { return kind == Kind::Variable; }
    bool is_constant() const { return kind == Kind::Constant; }

    auto operator<=>(const Term&) const = default;
    bool operator==(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    static Atom bottom() { return {kBottom, {}}; }

    bool is_bottom() const { return predicate == kBottom && args.empty(); }
    bool is_ground() const;
    std::size_t arity() const { return args.size(); }

    auto operator<=>(const Atom&) const = default;
    bool operator==(const Atom&) const = default;
};

/// A positive atom or its negation-as-failure.
struct Literal {
    Atom atom;
    bool naf = false;

    static Literal pos(Atom a) { return {std::move(a), false}; }
    static Literal neg(Atom a) { return {std::move(a), true}; }

    bool positive() const { return !naf; }
    bool is_ground() const { return atom.is_ground(); }

    auto operator<=>(const Literal&) const = default;
    bool operator==(const Literal&) const = default;
};

Literal complement(const Literal& l);

/// Guard `(x1,...,xk) != (c1,...,ck)`: the rule instance is blocked when
/// every listed variable is bound to the matching constant.
struct Disequality {
    std::vector<Term> vars;
    std::vector<Term> values;

    auto operator<=>(const Disequality&) const = default;
    bool operator==(const Disequality&) const = default;
};

struct Rule {
    std::string name;  // empty for anonymous rules
    Atom head;
    std::vector<Literal> body;
    std::vector<Disequality> guards;

    bool is_constraint() const { return head.is_bottom(); }
    bool is_fact() const { return body.empty() && guards.empty(); }
    bool is_ground() const;

    /// Variables in order of first occurrence, head first then body.
    std::vector<Term> variables() const;

    // Structural identity ignores the name so rule sets behave as sets of
    // clauses.
    std::strong_ordering operator<=>(const Rule& o) const;
    bool operator==(const Rule& o) const;
};

using Program = std::vector<Rule>;
using PredicateSet = std::set<std::string>;

struct RevisionFramework {
    Program persistent;
    Program temporal;
    Program backup;
};

struct AbductiveFramework {
    Program program;
    PredicateSet abducibles;
};

struct BodyPartition {
    std::vector<Literal> pos;  // positive, non-abducible
    std::vector<Literal> neg;  // naf, non-abducible
    std::vector<Literal> abd;  // abducible, either sign
};

BodyPartition partition_body(const Rule& r, const PredicateSet& abducibles);

class Substitution {
public:
    Substitution() = default;

    static Substitution identity() { return {}; }

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    const std::map<std::string, Term>& bindings() const { return bindings_; }

    std::optional<Term> lookup(const std::string& var) const;
    void bind(const std::string& var, Term value);

    /// `compose(s)` yields the substitution equivalent to applying `*this`
    /// first and `s` afterwards.
    Substitution compose(const Substitution& s) const;

    bool operator==(const Substitution&) const = default;

private:
    std::map<std::string, Term> bindings_;
};

Term apply(const Substitution& s, const Term& t);
Atom apply(const Substitution& s, const Atom& a);
Literal apply(const Substitution& s, const Literal& l);
Rule apply(const Substitution& s, const Rule& r);

/// Most general unifier of two atoms extending `base`, if any.
std::optional<Substitution> unify(const Atom& a, const Atom& b, Substitution base = {});

/// Consistent set of ground literals assumed along one search branch.
/// Remembers insertion order for display; membership is set based.
class Delta {
public:
    bool contains(const Literal& l) const { return members_.contains(l); }
    bool conflicts(const Literal& l) const { return members_.contains(complement(l)); }

    /// Adds `l`; throws ModelError if the complement is present.
    void insert(const Literal& l);

    std::size_t size() const { return order_.size(); }
    bool empty() const { return order_.empty(); }
    const std::vector<Literal>& insertion_order() const { return order_; }
    const std::set<Literal>& literals() const { return members_; }

    /// Positive literals newest first, then naf literals newest first.
    std::vector<Literal> display_order() const;

    bool operator==(const Delta& o) const { return members_ == o.members_; }

private:
    std::vector<Literal> order_;
    std::set<Literal> members_;
};

using Theta = std::set<Atom>;

/// Subset-minimal members of `sets`, deduplicated, ordered by size then
/// lexicographically.
std::vector<Theta> minimal_antichain(std::vector<Theta> sets);

/// Positive literals of `delta` whose predicate is abducible.
Theta positive_abducibles(const Delta& delta, const PredicateSet& abducibles);

/// Checks that every predicate is used with a single arity and that `bot`
/// is nullary and never occurs in a body.
void check_arities(const std::vector<const Program*>& programs);

}  // namespace lprev

template <>
struct std::hash<lprev::Atom> {
    std::size_t operator()(const lprev::Atom& a) const noexcept;
};

template <>
struct std::hash<lprev::Literal> {
    std::size_t operator()(const lprev::Literal& l) const noexcept {
        return std::hash<lprev::Atom>{}(l.atom) * 2 + (l.naf ? 1 : 0);
    }
};

template <>
struct std::hash<lprev::Rule> {
    std::size_t operator()(const lprev::Rule& r) const noexcept;
};
