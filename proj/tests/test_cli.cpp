#include "wkat/cli.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

using wkat::run_cli;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "wkat");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("wkat_cli_" + name);
    std::ofstream(path) << body;
    return path.string();
}

TEST(Cli, EquivSliding) {
    const auto r = cli({"equiv", "-e1", "(a b)* a", "-e2", "a (b a)*", "--bound", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("AgreeUpTo(4)"), std::string::npos) << r.out;
}

TEST(Cli, EquivDistinguisher) {
    const auto r = cli({"equiv", "-e1", "a", "-e2", "a @ {2}", "--semiring", "TROP3", "--bound", "2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("Distinguisher <p,q> a <p,q>: 0 vs 2"), std::string::npos) << r.out;
}

TEST(Cli, SkiRental) {
    const auto r = cli({"srp", "--days", "3", "--price", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("optimal cost 2\n"), std::string::npos) << r.out;
    const auto j = cli({"srp", "--days", "3", "--price", "2", "--json"});
    EXPECT_EQ(j.code, 0);
    EXPECT_EQ(nlohmann::json::parse(j.out)["optimal_cost"], "2");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({"equiv", "-e1", "a"}).code, 2);
    EXPECT_EQ(cli({"interp", "-e", "a", "--nope"}).code, 2);
    const auto p = cli({"interp", "-e", "(a"});
    EXPECT_EQ(p.code, 2);
    EXPECT_FALSE(p.err.empty());
    EXPECT_EQ(cli({"interp", "-e", "a", "--semiring", "NOSUCH"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
}

TEST(Cli, CheckSemiring) {
    const auto ok = cli({"check-semiring", "TROP3"});
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("zero-bounded"), std::string::npos);
    const std::string bad = temp_file("badbool.sr", "semiring BADBOOL\nelements 0 1\nzero 0\none 1\n"
                                                     "add 0 0 0\nadd 0 1 1\nadd 1 0 1\nadd 1 1 1\n"
                                                     "mul 0 0 0\nmul 0 1 0\nmul 1 0 0\nmul 1 1 1\n"
                                                     "leq 1 0\nleq 0 0\nleq 1 1\n");
    const auto r = cli({"check-semiring", bad});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("zero-bounded"), std::string::npos);
    const auto j = cli({"check-semiring", bad, "--json"});
    EXPECT_FALSE(nlohmann::json::parse(j.out)["copi"].get<bool>());
}

TEST(Cli, NormalizeRefusesNonIntegral) {
    const std::string sat = temp_file("sat3.sr", "semiring SAT3\nelements 0 1 many\nzero 0\none 1\n"
                                                 "add 0 0 0\nadd 0 1 1\nadd 0 many many\n"
                                                 "add 1 0 1\nadd 1 1 many\nadd 1 many many\n"
                                                 "add many 0 many\nadd many 1 many\nadd many many many\n"
                                                 "mul 0 0 0\nmul 0 1 0\nmul 0 many 0\n"
                                                 "mul 1 0 0\nmul 1 1 1\nmul 1 many many\n"
                                                 "mul many 0 0\nmul many 1 many\nmul many many many\n"
                                                 "leq 0 0\nleq 0 1\nleq 0 many\nleq 1 1\nleq 1 many\nleq many many\n");
    const auto r = cli({"normalize", "-e", "a", "--semiring", sat});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("many"), std::string::npos) << r.err;
}

TEST(Cli, NormalizeAndInterp) {
    const auto n = cli({"normalize", "-e", "a", "--tests", "p"});
    EXPECT_EQ(n.code, 0);
    EXPECT_NE(n.out.find("p a p + p a ~p + ~p a p + ~p a ~p"), std::string::npos) << n.out;

    const auto i = cli({"interp", "-e", "p a", "--actions", "a", "--tests", "p", "--bound", "2"});
    EXPECT_EQ(i.code, 0);
    EXPECT_NE(i.out.find("<p> a <p>  1\n<p> a <~p>  1\n"), std::string::npos) << i.out;

    const auto f = cli({"interp", "-e", "a", "--free", "--actions", "a", "--tests", "p", "--json"});
    EXPECT_EQ(f.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(f.out).is_object());
}

TEST(Cli, EvalAndRun) {
    const std::string ts = temp_file("srp.ts", "semiring TROP6\nstates 0 1 2 3\n"
                                               "rel a 1 0 0\nrel a 2 1 0\nrel a 3 2 0\n"
                                               "rel b 0 0 0\nrel b 1 0 0\nrel b 2 0 0\nrel b 3 0 0\n"
                                               "sat p 1 2 3\n");
    const std::string prog = temp_file("srp.prog", "while p do { a; choice { add 1 } or { add 2; b } }\n");
    const auto r = cli({"run", "--prog", prog, "--ts", ts, "--actions", "a,b", "--tests", "p"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("3 -> 0 : 2\n"), std::string::npos) << r.out;

    const auto e = cli({"eval", "--ts", ts, "-e", "p", "--actions", "a,b", "--tests", "p"});
    EXPECT_EQ(e.code, 0);
    EXPECT_NE(e.out.find("matrix over TROP6 (4 states, 3 nonzero)"), std::string::npos) << e.out;

    EXPECT_EQ(cli({"eval", "--ts", "/nonexistent.ts", "-e", "p"}).code, 2);
}

TEST(Cli, CayleyCheck) {
    const auto r = cli({"cayley-check", "-e", "(p a)* ~p", "--actions", "a", "--tests", "p", "--bound", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("agree"), std::string::npos);
}

TEST(Cli, SelftestIsDeterministic) {
    const auto a = cli({"selftest", "--seed", "7", "--samples", "5"});
    const auto b = cli({"selftest", "--seed", "7", "--samples", "5"});
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    const auto j = cli({"selftest", "--seed", "7", "--samples", "5", "--json"});
    EXPECT_TRUE(nlohmann::json::parse(j.out)["ok"].get<bool>());
}

} // namespace
