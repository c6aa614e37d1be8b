#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace lprev;
using namespace lprev::testing;

TEST(Syntax, ParsesCarsFramework) {
    auto pf = cars();
    ASSERT_EQ(pf.framework.persistent.size(), 2u);
    ASSERT_EQ(pf.framework.temporal.size(), 1u);
    ASSERT_EQ(pf.framework.backup.size(), 1u);
    EXPECT_EQ(pf.framework.temporal[0].name, "phi1");
    EXPECT_EQ(pf.framework.backup[0].name, "phi2");
    ASSERT_TRUE(pf.new_rule);
    EXPECT_TRUE(pf.new_rule->is_constraint());
    EXPECT_EQ(render_rule(*pf.new_rule), ":- r(c1).");
    EXPECT_EQ(render_rule(pf.framework.temporal[0]), "r(X) :- c(X), not b(X).");
}

TEST(Syntax, DataFileMatchesInlineFixture) {
    auto a = parse_framework(read_file(data_path("cars.lp")));
    auto b = cars();
    EXPECT_EQ(render_framework(a.framework, a.new_rule), render_framework(b.framework, b.new_rule));
}

TEST(Syntax, AutomaticNames) {
    auto pf = parse_framework("#temporal\np :- not q.\ntmp1: q :- not p.\n#backup\nr.\n");
    EXPECT_EQ(pf.framework.temporal[0].name, "tmp2");
    EXPECT_EQ(pf.framework.temporal[1].name, "tmp1");
    EXPECT_EQ(pf.framework.backup[0].name, "bck1");
    EXPECT_FALSE(pf.new_rule);
}

TEST(Syntax, BottomForms) {
    EXPECT_TRUE(parse_rule(":- p, not q.").is_constraint());
    EXPECT_TRUE(parse_rule("bot :- p.").is_constraint());
    Rule empty_ic = parse_rule("bot.");
    EXPECT_TRUE(empty_ic.is_constraint());
    EXPECT_EQ(render_rule(empty_ic), "bot.");
}

TEST(Syntax, Guards) {
    Rule r = parse_rule("r(X) :- c(X), not b(X), X != c1.");
    ASSERT_EQ(r.guards.size(), 1u);
    EXPECT_EQ(render_rule(r), "r(X) :- c(X), not b(X), X != c1.");
    Rule t = parse_rule("p(X, Y) :- q(X, Y), (X, Y) != (a, b).");
    ASSERT_EQ(t.guards.size(), 1u);
    EXPECT_EQ(t.guards[0].vars.size(), 2u);
    EXPECT_EQ(parse_rule(render_rule(t)), t);
}

TEST(Syntax, Errors) {
    EXPECT_THROW(parse_framework("p."), ParseError);
    EXPECT_THROW(parse_framework("#persistent\ndom(a)."), ParseError);
    EXPECT_THROW(parse_framework("#temporal\np(X) :- q(X), X != a."), ParseError);
    EXPECT_THROW(parse_framework("#new\n:- p.\n:- q."), ParseError);
    EXPECT_THROW(parse_framework("#new\n"), ParseError);
    EXPECT_THROW(parse_framework("#other\np."), ParseError);
    EXPECT_THROW(parse_framework("#temporal\nn: p.\n#backup\nn: q."), ModelError);
    EXPECT_THROW(parse_framework("#persistent\np(a).\nq :- p(a, b)."), ModelError);
    EXPECT_THROW(parse_rule("p :- q"), ParseError);
    EXPECT_THROW(parse_rule("P :- q."), ParseError);
    EXPECT_THROW(parse_rule("p :- bot."), ModelError);
}

TEST(Syntax, ErrorPositions) {
    try {
        parse_framework("#persistent\np(a).\nq(a :- p.\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GT(e.column(), 1u);
    }
}

TEST(Syntax, CommentsAndWhitespace) {
    auto pf = parse_framework("% header\n#persistent   % trailing\n  p(a) .  q(b).\n");
    EXPECT_EQ(pf.framework.persistent.size(), 2u);
}

TEST(Syntax, RenderParseRoundTrip) {
    std::mt19937_64 rng(11);
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const char* preds[] = {"p", "q", "r_1", "s"};
    const char* terms[] = {"a", "b2", "X", "Y", "_Z", "c1"};
    for (int i = 0; i < 300; ++i) {
        Rule r;
        auto atom = [&] {
            Atom a{preds[pick(4)], {}};
            if (a.predicate != "p") {
                a.args.push_back(parse_atom(std::string("t(") + terms[pick(6)] + ")").args[0]);
            }
            return a;
        };
        r.head = pick(5) == 0 ? Atom::bottom() : atom();
        std::size_t len = pick(4);
        for (std::size_t j = 0; j < len; ++j) r.body.push_back({atom(), pick(2) == 0});
        if (!r.variables().empty() && pick(3) == 0) {
            r.guards.push_back({{r.variables()[0]}, {Term::constant("a")}});
        }
        Rule back = parse_rule(render_rule(r));
        EXPECT_EQ(back, r) << render_rule(r);
        EXPECT_EQ(render_rule(back), render_rule(r));
    }
}

TEST(Syntax, FrameworkRoundTrip) {
    auto pf = cars();
    auto again = parse_framework(render_framework(pf.framework, pf.new_rule));
    EXPECT_EQ(again.framework.temporal, pf.framework.temporal);
    EXPECT_EQ(again.framework.temporal[0].name, "phi1");
    EXPECT_EQ(*again.new_rule, *pf.new_rule);
}
