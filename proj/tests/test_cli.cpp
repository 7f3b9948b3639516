#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <sys/wait.h>

#include "merodiv/cli.hpp"

using namespace merodiv;
using nlohmann::json;

namespace {

struct Invocation {
    int code = -1;
    std::string out;
};

// Black-box run of the installed binary; arguments are single-quoted for the shell.
Invocation run_binary(const std::vector<std::string> &args) {
    std::string cmd = MERODIV_CLI_PATH;
    for (const auto &a : args) cmd += " '" + a + "'";
    cmd += " 2>/dev/null";
    Invocation r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Invocation run_inproc(const std::vector<std::string> &args) {
    std::vector<const char *> argv{"merodiv"};
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Invocation r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    return r;
}

json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    return json::parse(run_inproc(args).out);
}

}  // namespace

TEST(CliDivisor, Examples) {
    const json a = run_json({"divisor", "(z^2-1)/(z-1)"});
    EXPECT_EQ(a["schema"], 1);
    EXPECT_EQ(a["command"], "divisor");
    EXPECT_EQ(a["result"]["d"], 1);
    EXPECT_EQ(a["result"]["numerator"]["text"], "z + 1");
    EXPECT_EQ(a["result"]["denominator"]["text"], "1");
    EXPECT_EQ(a["result"]["m"], 1);
    EXPECT_EQ(a["result"]["n"], 0);

    EXPECT_EQ(run_json({"divisor", "(z-1)/(z+1)^2"})["result"]["d"], -1);

    const Invocation e = run_inproc({"divisor", "exp(z)"});
    EXPECT_EQ(e.code, 3);
    EXPECT_NE(run_json({"divisor", "exp(z)"})["error"]["message"].get<std::string>().find("classify"), std::string::npos);
}

TEST(CliClassify, Examples) {
    const json r = run_json({"classify", "(z^2+1)/(z-2)"});
    EXPECT_EQ(r["result"]["verdict"]["kind"], "rational");
    EXPECT_EQ(r["result"]["verdict"]["d"], 1);
    EXPECT_EQ(r["result"]["exact"]["d"], 1);
    EXPECT_EQ(r["result"]["agrees"], true);
    EXPECT_EQ(r["result"]["probes"].size(), 6u);

    const json g = run_json({"classify", "exp(2*z)*(z-1)"});
    EXPECT_EQ(g["result"]["verdict"]["kind"], "not_rational");
    EXPECT_EQ(g["result"]["verdict"]["reason"], "growth");
    EXPECT_FALSE(g["result"].contains("exact"));

    const json c = run_json({"classify", "z^0"});
    EXPECT_EQ(c["result"]["verdict"]["d"], 0);
    EXPECT_EQ(c["result"]["agrees"], true);
}

TEST(CliClassify, TextHasTableAndSelfCheck) {
    const Invocation r = run_inproc({"classify", "(z-1)/(z+1)^2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("radius"), std::string::npos);
    EXPECT_NE(r.out.find("verdict: Rational(-1)"), std::string::npos);
    EXPECT_NE(r.out.find("self-check: exact d = -1"), std::string::npos);
    EXPECT_NE(r.out.find(": agree"), std::string::npos);
    // one table row per probe
    const json j = run_json({"classify", "(z-1)/(z+1)^2"});
    std::size_t rows = 0;
    std::istringstream lines(r.out);
    for (std::string line; std::getline(lines, line);)
        if (!line.empty() && std::isdigit(static_cast<unsigned char>(line[0]))) ++rows;
    EXPECT_EQ(rows, j["result"]["probes"].size());
}

TEST(CliClassify, FlagsReachTheSchedule) {
    const json r = run_json({"--r0", "3", "--growth", "3", "--steps", "4", "classify", "z^2"});
    ASSERT_EQ(r["result"]["probes"].size(), 4u);
    EXPECT_EQ(r["result"]["probes"][0]["radius"], 3.0);
    EXPECT_EQ(r["result"]["probes"][1]["radius"], 9.0);
    EXPECT_EQ(r["params"]["steps"], 4);
}

TEST(CliWinding, Examples) {
    EXPECT_EQ(run_json({"--radius", "3", "winding", "(z^2+1)/(z-2)"})["result"]["nearest_int"], 1);
    EXPECT_EQ(run_json({"--radius", "1.5", "winding", "(z^2+1)/(z-2)"})["result"]["nearest_int"], 2);
    EXPECT_EQ(run_json({"--radius", "2", "winding", "z^5"})["result"]["nearest_int"], 5);
    const json shifted = run_json({"--radius", "1", "--center", "5", "0", "winding", "(z-1)*(z-5)"});
    EXPECT_EQ(shifted["result"]["nearest_int"], 1);
    EXPECT_EQ(shifted["params"]["center"], json::array({5.0, 0.0}));
}

TEST(CliFta, Examples) {
    const json a = run_json({"fta", "z^4-1"});
    EXPECT_EQ(a["result"]["degree"], 4);
    EXPECT_EQ(a["result"]["count"], 4);
    EXPECT_EQ(a["result"]["pass"], true);
    const json b = run_json({"fta", "7"});
    EXPECT_EQ(b["result"]["count"], 0);
    EXPECT_EQ(b["result"]["pass"], true);
    EXPECT_EQ(run_inproc({"fta", "1/z"}).code, 3);
}

TEST(CliErrors, ParseErrorCarriesOffset) {
    const Invocation r = run_inproc({"--format", "json", "divisor", "z^(3"});
    EXPECT_EQ(r.code, 2);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["error"]["kind"], "parse");
    EXPECT_EQ(j["error"]["offset"], 2);
    EXPECT_FALSE(j["error"]["expected"].empty());
}

TEST(CliErrors, UsageErrors) {
    EXPECT_EQ(run_inproc({}).code, 1);
    EXPECT_EQ(run_inproc({"bogus", "z"}).code, 1);
    EXPECT_EQ(run_inproc({"--nodes", "48", "winding", "z"}).code, 1);
    EXPECT_EQ(run_inproc({"--steps", "2", "classify", "z"}).code, 1);
    EXPECT_EQ(run_inproc({"--radius", "-1", "winding", "z"}).code, 1);
    EXPECT_EQ(run_inproc({"--format", "xml", "divisor", "z"}).code, 1);
}

TEST(CliErrors, LeadingMinusAfterDoubleDash) {
    const Invocation r = run_inproc({"--format", "json", "divisor", "--", "-z^3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["result"]["d"], 3);
}

TEST(CliJson, ContainsEveryTextNumber) {
    const json j = run_json({"--radius", "3", "winding", "(z^2+1)/(z-2)"});
    for (const char *key : {"raw", "nearest_int", "residual", "nodes", "radius_used", "delta", "converged"})
        EXPECT_TRUE(j["result"].contains(key)) << key;
    const json c = run_json({"classify", "z+1"});
    for (const auto &p : c["result"]["probes"])
        for (const char *key : {"radius", "mean", "spread", "winding"}) EXPECT_TRUE(p.contains(key)) << key;
}

TEST(CliBinary, ExitCodes) {
    EXPECT_EQ(run_binary({"divisor", "(z^2-1)/(z-1)"}).code, 0);
    EXPECT_EQ(run_binary({"classify", "exp(z)"}).code, 0);
    EXPECT_EQ(run_binary({"divisor", "z^(3"}).code, 2);
    EXPECT_EQ(run_binary({"classify", "z+*2"}).code, 2);
    EXPECT_EQ(run_binary({"divisor", "exp(z)"}).code, 3);
    EXPECT_EQ(run_binary({"fta", "1/z"}).code, 3);
    EXPECT_EQ(run_binary({"--radius", "1", "winding", "1/((z-1)*(z-1.013)*(z-1.026)*(z-1.039))"}).code, 4);
    EXPECT_EQ(run_binary({"classify", "1/(z-z)"}).code, 4);
}

TEST(CliBinary, JsonMatchesInProcess) {
    const std::vector<std::string> args{"--format", "json", "classify", "(z^3-1)/(z+0.5)"};
    EXPECT_EQ(run_binary(args).out, run_inproc(args).out);
}
