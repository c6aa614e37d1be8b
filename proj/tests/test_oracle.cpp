#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "lprev/oracle.hpp"

using namespace lprev;
using namespace lprev::testing;

namespace {

InstancePair pair(const std::vector<std::string>& deleted, const std::vector<std::string>& added) {
    InstancePair p;
    for (const auto& r : deleted) p.deleted.insert(parse_rule(r));
    for (const auto& r : added) p.added.insert(parse_rule(r));
    return p;
}

bool has(const std::vector<InstancePair>& v, const InstancePair& p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

TEST(Oracle, CarsRevisions) {
    auto pf = cars();
    OracleReport r = brute_force_revisions(pf.framework, *pf.new_rule);
    InstancePair drop = pair({"r(c1) :- c(c1), not b(c1)."}, {});
    InstancePair add = pair({}, {"b(c1) :- c(c1), not r(c1)."});
    EXPECT_EQ(r.minimal_revisions.size(), 2u);
    EXPECT_TRUE(has(r.minimal_revisions, drop));
    EXPECT_TRUE(has(r.minimal_revisions, add));
    EXPECT_TRUE(has(r.all_revisions, pair({"r(c1) :- c(c1), not b(c1)."}, {"b(c1) :- c(c1), not r(c1)."})));
    EXPECT_FALSE(has(r.all_revisions, InstancePair{}));
    EXPECT_FALSE(has(r.all_revisions, pair({"r(c2) :- c(c2), not b(c2)."}, {})));
}

TEST(Oracle, ConsistentAdditionNeedsNothing) {
    auto pf = parse_framework("#persistent\nc(c1).\n#temporal\nphi1: r(X) :- c(X), not b(X).\n#new\nc(c3).");
    OracleReport r = brute_force_revisions(pf.framework, *pf.new_rule);
    EXPECT_EQ(r.minimal_revisions, std::vector<InstancePair>{InstancePair{}});
}

TEST(Oracle, Dominance) {
    InstancePair a = pair({"p."}, {});
    InstancePair b = pair({"p."}, {"q."});
    EXPECT_TRUE(dominates(a, b));
    EXPECT_FALSE(dominates(b, a));
    EXPECT_FALSE(dominates(a, a));
    EXPECT_FALSE(dominates(a, pair({}, {"q."})));
    EXPECT_EQ(minimal_pairs({b, a, a}), std::vector<InstancePair>{a});
}

TEST(Oracle, ThetaEnumerationOnCars) {
    auto pf = cars();
    AbductiveFramework af = translate(pf.framework, *pf.new_rule);
    HerbrandUniverse hu = herbrand_constants(pf.framework, *pf.new_rule);
    ThetaReport t = brute_force_theta(af, hu);
    EXPECT_EQ(t.minimal, (std::vector<Theta>{atoms({"add_phi2(c1)"}), atoms({"del_phi1(c1)"})}));
    EXPECT_EQ(t.all.size(), 12u);  // 3 choices for c1 that fix the constraint, 4 free for c2
}

TEST(Oracle, BoundExceeded) {
    auto pf = cars();
    EXPECT_THROW(brute_force_revisions(pf.framework, *pf.new_rule, 3), OracleBoundExceeded);
    AbductiveFramework af = translate(pf.framework, *pf.new_rule);
    EXPECT_THROW(brute_force_theta(af, herbrand_constants(pf.framework, *pf.new_rule), 3), OracleBoundExceeded);
}

TEST(Oracle, CrossCheckCars) {
    auto pf = cars();
    OracleReport r = cross_check(pf.framework, *pf.new_rule);
    EXPECT_TRUE(r.agreement);
    EXPECT_TRUE(r.divergences.empty());
}

TEST(Oracle, CrossCheckRandom) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 60; ++i) {
        auto inst = random_framework(rng);
        OracleReport r = cross_check(inst.framework, inst.new_rule);
        EXPECT_TRUE(r.agreement) << render_framework(inst.framework, inst.new_rule);
        EXPECT_TRUE(soundness_violations(inst.framework, inst.new_rule, revise(inst.framework, inst.new_rule)).empty());
    }
}

// Without the deleted_con calls the search accepts assumptions that break
// rules already satisfied; the oracle has to notice on some instance.
TEST(Oracle, CatchesTheDeletedConMutation) {
    EngineOptions broken;
    broken.skip_deleted_con = true;
    bool caught = false;
    for (std::uint64_t seed = 1; seed <= 20 && !caught; ++seed) {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < 100 && !caught; ++i) {
            auto inst = random_framework(rng);
            caught = !cross_check(inst.framework, inst.new_rule, broken).agreement;
        }
    }
    EXPECT_TRUE(caught);
}

TEST(Oracle, MinimalRevisionsFormAnAntichain) {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 40; ++i) {
        auto inst = random_framework(rng);
        auto m = brute_force_revisions(inst.framework, inst.new_rule).minimal_revisions;
        for (const auto& a : m)
            for (const auto& b : m) EXPECT_FALSE(dominates(a, b));
    }
}

TEST(Oracle, GeneratorHonoursItsContract) {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 30; ++i) {
        auto inst = random_framework(rng);
        const auto& fw = inst.framework;
        HerbrandUniverse hu = herbrand_constants(fw, inst.new_rule);
        Program base = fw.persistent;
        base.insert(base.end(), fw.temporal.begin(), fw.temporal.end());
        EXPECT_TRUE(is_consistent(ground(base, hu)));
        base.push_back(inst.new_rule);
        EXPECT_FALSE(is_consistent(ground(base, hu)));
        EXPECT_FALSE(fw.temporal.empty());
    }
}
