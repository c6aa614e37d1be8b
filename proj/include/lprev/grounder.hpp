// Herbrand machinery: constant collection, exhaustive grounding, the
// range-restriction transform, the definite program obtained by dropping
// negation and abducibles, its least model, and the relevant ground program.
#pragma once

#include <set>
#include <vector>

#include "lprev/core.hpp"

namespace lprev {

/// Constants of the language in order of first occurrence.
using HerbrandUniverse = std::vector<Term>;

/// Variable-free rules without duplicates, in generation order.
using GroundProgram = std::vector<Rule>;

class GroundingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Constants occurring anywhere in the persistent, temporal and backup parts
/// and in `new_rule`. Throws GroundingError when no constant exists but some
/// rule has a variable.
HerbrandUniverse herbrand_constants(const RevisionFramework& fw, const Rule& new_rule);
HerbrandUniverse herbrand_constants(const Program& p);

/// All ground instances of `r` over `hu`, skipping instances excluded by the
/// rule's guards. The result carries no guards.
std::vector<Rule> ground_rule(const Rule& r, const HerbrandUniverse& hu);

GroundProgram ground(const Program& p, const HerbrandUniverse& hu);

struct RangeRestricted {
    Rule rule;
    std::vector<Rule> dom_facts;
};

/// A rule is range-restricted when each of its variables occurs in a positive
/// non-abducible body literal.
bool is_range_restricted(const Rule& r, const PredicateSet& abducibles = {});

/// Appends `dom(V)` for every offending variable V and emits `dom(c).` for
/// each constant of `hu`. Range-restricted rules come back unchanged with no
/// facts.
RangeRestricted make_range_restricted(const Rule& r, const HerbrandUniverse& hu);

/// Applies make_range_restricted to every rule; the dom facts (emitted once)
/// join the persistent part.
std::pair<RevisionFramework, Rule> make_range_restricted(const RevisionFramework& fw, const Rule& new_rule,
                                                         const HerbrandUniverse& hu);

/// Drops integrity constraints and strips naf and abducible literals.
Program negation_removed(const Program& p, const PredicateSet& abducibles);

/// Least fixpoint of the immediate consequence operator. Rejects programs
/// containing naf literals.
std::set<Atom> least_model(const GroundProgram& p);

/// Ground instances of `p` whose positive non-abducible body atoms all lie in
/// the least model of the negation-removed program.
GroundProgram relevant_ground_program(const Program& p, const PredicateSet& abducibles,
                                      const HerbrandUniverse& hu);

}  // namespace lprev
