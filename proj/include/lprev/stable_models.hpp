// Stable model semantics: Gelfond-Lifschitz reduct, model enumeration,
// consistency and generalized stable models of abductive frameworks.
#pragma once

#include <optional>
#include <set>
#include <vector>

#include "lprev/grounder.hpp"

namespace lprev {

using Model = std::set<Atom>;

struct GeneralizedStableModel {
    Theta theta;
    Model model;
};

enum class Enumeration {
    Branching,   // branch on naf atoms with bound propagation
    BruteForce,  // every subset of the Herbrand base; reference only
};

/// Rules of `p` whose naf atoms are all outside `m`, with the naf literals
/// deleted.
GroundProgram gl_reduct(const GroundProgram& p, const Model& m);

/// True when `m` equals the least model of its reduct and excludes bot.
bool is_stable_model(const GroundProgram& p, const Model& m);

/// Stable-model solver over a fixed ground program. Individual rules can be
/// switched off per query, which lets callers explore many sub-programs of
/// one grounding without re-interning it.
class GroundSolver {
public:
    explicit GroundSolver(const GroundProgram& p);

    /// Stable models of the enabled rules (all rules when `enabled` is empty),
    /// sorted. `limit` = 0 means no limit.
    std::vector<Model> solve(const std::vector<bool>& enabled = {}, std::size_t limit = 0) const;

    std::size_t rule_count() const { return rules_.size(); }

private:
    struct IndexedRule {
        int head;
        std::vector<int> pos;
        std::vector<int> neg;
    };

    int intern(const Atom& a);

    std::vector<Atom> atoms_;
    std::map<Atom, int> index_;
    std::vector<IndexedRule> rules_;
    int bottom_ = -1;
};

/// All stable models in lexicographic order. Non-ground rules are grounded
/// over the program's own constants first.
std::vector<Model> stable_models(const Program& p, Enumeration how = Enumeration::Branching);

bool is_consistent(const Program& p);

/// Every generalized stable model, enumerating abducible sets by ascending
/// cardinality. `hu` defaults to the constants of the program.
std::vector<GeneralizedStableModel> generalized_stable_models(
    const AbductiveFramework& af, const std::optional<HerbrandUniverse>& hu = std::nullopt);

/// Ground abducible atoms of `af` over `hu`, predicates in sorted order.
std::vector<Atom> ground_abducibles(const AbductiveFramework& af, const HerbrandUniverse& hu);

}  // namespace lprev
