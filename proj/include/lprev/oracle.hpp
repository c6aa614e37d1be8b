// Naive reference implementations used to validate the proof search. Only
// the model, grounder, stable-model and translator layers are shared with
// the engine; nothing here walks the search procedures.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lprev/engine.hpp"
#include "lprev/stable_models.hpp"
#include "lprev/translator.hpp"

namespace lprev {

class OracleBoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleReport {
    std::vector<InstancePair> all_revisions;
    std::vector<InstancePair> minimal_revisions;
    bool agreement = true;
    std::vector<std::string> divergences;
};

/// (O, I) pairs of ground temporal and backup instances over which the
/// revised program is consistent, and their minimal antichain.
OracleReport brute_force_revisions(const RevisionFramework& fw, const Rule& r_new, std::size_t bound = 16);

/// Componentwise subset order with at least one strict inclusion.
bool dominates(const InstancePair& smaller, const InstancePair& larger);

std::vector<InstancePair> minimal_pairs(std::vector<InstancePair> pairs);

struct ThetaReport {
    std::vector<Theta> all;  // every Theta with a generalized stable model
    std::vector<Theta> minimal;
};

/// Every subset of the ground abducibles of `af` over `hu` that admits a
/// generalized stable model.
ThetaReport brute_force_theta(const AbductiveFramework& af, const HerbrandUniverse& hu, std::size_t bound = 16);

/// Runs the engine and compares its minimal revisions, read as instance
/// pairs, with brute_force_revisions.
OracleReport cross_check(const RevisionFramework& fw, const Rule& r_new, const EngineOptions& options = {},
                         std::size_t bound = 16);

/// For each engine success: its positive abducibles must extend to a
/// generalized stable model, and the revision they encode must be
/// consistent. Returns one message per violation.
std::vector<std::string> soundness_violations(const RevisionFramework& fw, const Rule& r_new,
                                              const EngineOutcome& outcome, std::size_t bound = 16);

struct RandomParams {
    std::size_t max_constants = 3;
    std::size_t max_predicates = 4;
    std::size_t max_arity = 1;
    std::size_t max_rules = 6;
    std::size_t max_body = 3;
    double naf_probability = 0.4;
    std::size_t bound = 16;
    bool require_revisable = true;  // reject instances the oracle cannot revise
};

struct RandomInstance {
    RevisionFramework framework;
    Rule new_rule;
};

/// Rejection-samples a framework whose persistent and temporal parts are
/// consistent and become inconsistent once the new rule is added.
RandomInstance random_framework(std::mt19937_64& rng, const RandomParams& params = {});

/// Random ground program over at most `max_atoms` propositional atoms,
/// integrity constraints included.
Program random_ground_program(std::mt19937_64& rng, std::size_t max_atoms = 12, std::size_t max_rules = 14,
                              std::size_t max_body = 3, double naf_probability = 0.4);

}  // namespace lprev
