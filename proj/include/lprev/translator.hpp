// Translation of a revision framework into an abductive framework, and the
// reverse direction: reading a revision off a set of abducibles.
//
// A temporal rule named `n` becomes `head :- body, not del_n(x)` and a backup
// rule named `n` becomes `head :- pos, add_n(x), neg`, where x lists the
// rule's variables by first occurrence. Assuming `del_n(c)` retracts the
// instance for x = c; assuming `add_n(c)` enables the backup instance.
#pragma once

#include <string>
#include <vector>

#include "lprev/core.hpp"
#include "lprev/grounder.hpp"

namespace lprev {

class TranslationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string deletion_predicate(const std::string& rule_name);
std::string addition_predicate(const std::string& rule_name);

/// Abducible atom for the instance of `rule` selected by `instance_args`
/// (values for the rule's variable tuple).
Atom deletion_abducible(const Rule& rule, const std::vector<Term>& instance_args);
Atom addition_abducible(const Rule& rule, const std::vector<Term>& instance_args);

AbductiveFramework translate(const RevisionFramework& fw, const Rule& new_rule);

struct Revision {
    std::vector<Rule> deletions;  // ground temporal instances
    std::vector<Rule> additions;  // ground backup instances, then guarded temporal rules
    Theta theta;
};

Revision extract_revision(const Theta& theta, const RevisionFramework& fw);

/// Inverse of extract_revision for explicit (deleted, added) instance sets.
Theta theta_for(const std::vector<Rule>& deleted, const std::vector<Rule>& added, const RevisionFramework& fw,
                const HerbrandUniverse& hu);

/// Persistent rules, the new rule, temporal rules without deletions, then
/// the additions.
Program apply_revision(const Revision& rev, const RevisionFramework& fw, const Rule& new_rule);

/// Ground deletion and addition instances of a revision, as used by the
/// definition-level view (guarded rules are not instances).
struct InstancePair {
    std::set<Rule> deleted;
    std::set<Rule> added;

    auto operator<=>(const InstancePair&) const = default;
    bool operator==(const InstancePair&) const = default;
};

InstancePair instance_pair(const Revision& rev, const RevisionFramework& fw);

}  // namespace lprev
