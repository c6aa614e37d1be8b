#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "helpers.hpp"

using namespace lprev::testing;

namespace {

struct Invocation {
    int status;
    std::string out;
};

Invocation run(const std::string& args) {
    std::string cmd = std::string(LPREV_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("lprev_cli_" + name + ".lp");
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST(Cli, Revise) {
    Invocation r = run("revise " + data_path("cars.lp"));
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("revision 1"), std::string::npos);
    EXPECT_NE(r.out.find("revision 2"), std::string::npos);
    EXPECT_NE(r.out.find("theta: {del_phi1(c1)}"), std::string::npos);
    EXPECT_NE(r.out.find("theta: {add_phi2(c1)}"), std::string::npos);
    EXPECT_NE(r.out.find("add: r(X) :- c(X), not b(X), X != c1."), std::string::npos);
}

TEST(Cli, ReviseJson) {
    Invocation r = run("revise --json --all " + data_path("nonminimal.lp"));
    ASSERT_EQ(r.status, 0);
    auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc.at("revisions").size(), 1u);
    EXPECT_EQ(doc["revisions"][0].at("theta"), nlohmann::json::array({"del_phi1(a)"}));
    EXPECT_TRUE(doc["revisions"][0].at("verified").get<bool>());
    ASSERT_EQ(doc.at("non_minimal").size(), 1u);
    EXPECT_EQ(doc["non_minimal"][0].at("theta").size(), 2u);
}

TEST(Cli, Trace) {
    Invocation r = run("trace " + data_path("cars.lp"));
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("% branch 1"), std::string::npos);
    EXPECT_NE(r.out.find("1.1.1.1 select(c(c1))"), std::string::npos);
    EXPECT_NE(r.out.find("1.3 dc(:- r(c1))"), std::string::npos);
}

TEST(Cli, ModelsAndGround) {
    Invocation m = run("models " + data_path("cars.lp"));
    EXPECT_EQ(m.status, 1);
    EXPECT_NE(m.out.find("no stable models"), std::string::npos);

    Invocation a = run("models --abduce --json " + data_path("cars.lp"));
    EXPECT_EQ(a.status, 0);
    std::set<nlohmann::json> thetas;
    for (const auto& m : nlohmann::json::parse(a.out)) thetas.insert(m.at("theta"));
    EXPECT_EQ(thetas.size(), 12u);

    Invocation g = run("ground --json " + data_path("cars.lp"));
    EXPECT_EQ(g.status, 0);
    auto doc = nlohmann::json::parse(g.out);
    EXPECT_EQ(doc.at("constants"), nlohmann::json::array({"c1", "c2"}));
    EXPECT_EQ(doc.at("temporal").size(), 2u);
}

TEST(Cli, Check) {
    Invocation r = run("check " + data_path("cars.lp"));
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out).at("agreement").get<bool>());
    EXPECT_EQ(run("check --oracle-bound 2 " + data_path("cars.lp")).status, 2);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("revise " + temp_file("stuck", "#persistent\np.\n#new\n:- p.\n")).status, 1);
    EXPECT_EQ(run("revise --step-budget 5 " + data_path("cars.lp")).status, 1);
    EXPECT_EQ(run("revise " + temp_file("bad", "#persistent\np(a :- q.\n")).status, 2);
    EXPECT_EQ(run("revise " + temp_file("nonew", "#persistent\np.\n")).status, 2);
    EXPECT_EQ(run("revise " + temp_file("incons", "#persistent\np :- not p.\n#new\nq.\n")).status, 2);
    EXPECT_EQ(run("revise /nonexistent/file.lp").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("").status, 2);
}
