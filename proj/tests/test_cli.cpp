#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "toricdef/errors.hpp"

using namespace toricdef;
using toricdef::cli::Report;
using toricdef::cli::RunConfig;

namespace {

const std::string fixtures = TORICDEF_FIXTURES;
const std::string exe = TORICDEF_EXE;

std::string tmp_file(const std::string& name, const std::string& content) {
    auto path = (std::filesystem::temp_directory_path() / ("toricdef_cli_" + name)).string();
    std::ofstream(path) << content;
    return path;
}

std::string interval_file(int m) {
    return tmp_file("interval" + std::to_string(m) + ".poly", "dim 1\nvertex 0\nvertex " + std::to_string(m) + "\n");
}

Report run(const std::string& command, const std::string& input, RunConfig cfg = {}) {
    cfg.command = command;
    cfg.input = input;
    return cli::run(cfg);
}

std::map<std::string, std::string> data(const Report& r) {
    return {r.data.begin(), r.data.end()};
}

// Parses the tail of a rendered report, independently of Report::data.
std::map<std::string, std::string> tail(const std::string& text) {
    std::map<std::string, std::string> kv;
    auto pos = text.find("---data---\n");
    EXPECT_NE(pos, std::string::npos);
    std::istringstream in(text.substr(pos + 11));
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

struct Proc {
    int code = 0;
    std::string out;
};

Proc shell(const std::string& args) {
    Proc p;
    std::string cmd = exe + " " + args + " 2>&1";
    FILE* f = popen(cmd.c_str(), "r");
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) p.out.append(buf.data(), n);
    int status = pclose(f);
    p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return p;
}

}  // namespace

TEST(Cli, AnalyzeHouse) {
    auto r = run("analyze", fixtures + "/house.poly");
    auto kv = tail(r.render());
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(kv["t1"], "2,1,0,0,0");
    EXPECT_EQ(kv["t0b"], "2,1,0,0,0");
    EXPECT_EQ(kv["t2.general"], "0,0,1,0,0");
    EXPECT_EQ(kv["t2.lattice3d"], "0,0,1,0,0");
    EXPECT_EQ(kv["t2.closedform3d"], "0,0,1,0,0");
    EXPECT_EQ(kv["invariants"], "2,2,2,3");
    EXPECT_EQ(kv["seed"], "1");
}

TEST(Cli, AnalyzeTriangleIsZero) {
    auto kv = data(run("analyze", fixtures + "/triangle.poly"));
    for (auto key : {"t1", "t0b", "t2.general", "t2.lattice3d", "t2.closedform3d"}) {
        std::string v = kv.at(key);
        for (char ch : v) EXPECT_TRUE(ch == '0' || ch == ',') << key << "=" << v;
    }
}

TEST(Cli, KmaxOverride) {
    RunConfig cfg;
    cfg.kmax = 2;
    EXPECT_EQ(data(run("t1", fixtures + "/house.poly", cfg))["t1"], "2,1");
}

TEST(Cli, MalformedInput) {
    auto bad = tmp_file("bad.poly", "dim 2\nvertex 0 0\nvertex 1 x\n");
    EXPECT_THROW(run("analyze", bad), ParseError);
    auto p = shell("analyze " + bad);
    EXPECT_EQ(p.code, 2);
    EXPECT_NE(p.out.find("line 3"), std::string::npos) << p.out;
}

TEST(Cli, BaseIdealHouse) {
    auto kv = data(run("base-ideal", fixtures + "/house.poly"));
    EXPECT_EQ(kv["basis"], "T21,T31,T32");
    EXPECT_EQ(kv["ib.count"], "5");
    EXPECT_EQ(kv["ib_reduced.count"], "1");
    EXPECT_EQ(parse_polynomial(kv["ib_reduced.1"]), parse_polynomial("T21*T32"));
    EXPECT_EQ(kv["w"], "0,0,1,0,0");
}

TEST(Cli, BaseIdealIntervalAndTriangle) {
    auto kv = data(run("base-ideal", interval_file(4)));
    EXPECT_EQ(kv["basis"], "T12,T13,T14");
    EXPECT_EQ(kv["ib_reduced.count"], "0");
    kv = data(run("base-ideal", fixtures + "/triangle.poly"));
    EXPECT_EQ(kv["basis"], "");
    EXPECT_EQ(kv["ib_reduced.count"], "0");
}

TEST(Cli, FamilyInterval) {
    auto kv = data(run("family", fixtures + "/interval3.poly"));
    bool found = false;
    for (int i = 1; i <= std::stoi(kv["family.count"]); ++i)
        found = found || parse_polynomial(kv["family." + std::to_string(i)]) ==
                             parse_polynomial("x1*x2 - t^3 - T12*t - T13");
    EXPECT_TRUE(found);
}

TEST(Cli, FamilyHouseAndEmptyBound) {
    auto kv = data(run("family", fixtures + "/house.poly"));
    EXPECT_GT(std::stoi(kv["family.count"]), 0);
    RunConfig cfg;
    cfg.degree_bound = 0;
    EXPECT_EQ(data(run("family", fixtures + "/house.poly", cfg))["family.count"], "0");
}

TEST(Cli, MinkowskiHouse) {
    auto kv = data(run("minkowski", fixtures + "/house.poly"));
    EXPECT_EQ(kv["maximal.count"], "2");
    EXPECT_EQ(kv["correspondence"], "verified");
    EXPECT_EQ(kv["maximal.1.dim"], "2");
    EXPECT_EQ(kv["maximal.2.dim"], "2");
    EXPECT_NE(kv["maximal.1.component"], kv["maximal.2.component"]);
}

TEST(Cli, MinkowskiTriangleAndSquare) {
    EXPECT_EQ(data(run("minkowski", fixtures + "/triangle.poly"))["indecomposable"], "yes");
    auto r = run("minkowski", fixtures + "/square2.poly");
    EXPECT_EQ(r.exit_code, 0);
    // two unit squares: each carries one unit of every edge
    EXPECT_NE(r.text.find("n=(1,1,1,1) vertices (0,0) (1,0) (1,1) (0,1)"), std::string::npos);
    auto kv = data(r);
    EXPECT_EQ(kv["maximal.1.generalized"], "yes");
    EXPECT_EQ(kv["maximal.1.g"], "ok");
}

TEST(Cli, MinkowskiCubeUnsupported) {
    EXPECT_THROW(run("minkowski", fixtures + "/cube.poly"), UnsupportedError);
    EXPECT_EQ(shell("minkowski " + fixtures + "/cube.poly").code, 3);
}

TEST(Cli, VerifyPasses) {
    for (auto path : {fixtures + "/house.poly", interval_file(5), fixtures + "/triangle.poly", fixtures + "/square2.poly"}) {
        auto r = run("verify", path);
        EXPECT_EQ(r.exit_code, 0) << r.text;
        EXPECT_EQ(data(r)["failed"], "0");
    }
}

TEST(Cli, VerifyCorruptedFixture) {
    auto r = run("verify", fixtures + "/house_bad_face.poly");
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.text.find("FAIL two-face-closure"), std::string::npos);
    auto p = shell("verify " + fixtures + "/house_bad_face.poly");
    EXPECT_EQ(p.code, 2);
    EXPECT_NE(p.out.find("FAIL two-face-closure"), std::string::npos) << p.out;
}

TEST(Cli, VerifyIsDeterministic) {
    RunConfig cfg;
    cfg.seed = 12345;
    auto a = run("verify", fixtures + "/house.poly", cfg).render();
    auto b = run("verify", fixtures + "/house.poly", cfg).render();
    EXPECT_EQ(a, b);
    EXPECT_EQ(tail(a)["seed"], "12345");
    EXPECT_EQ(shell("verify " + fixtures + "/house.poly --seed 7").out,
              shell("verify " + fixtures + "/house.poly --seed 7").out);
}

TEST(Cli, ExportCas) {
    auto out = (std::filesystem::temp_directory_path() / "toricdef_cli_house.cas.txt").string();
    RunConfig cfg;
    cfg.out = out;
    auto r = run("export-cas", fixtures + "/house.poly", cfg);
    EXPECT_EQ(r.exit_code, 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str().rfind("ring R = 0, (x1,", 0), 0u);
    EXPECT_NE(ss.str().find("ideal Ib = T32*T21;"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(shell("--help").code, 0);
    EXPECT_EQ(shell("").code, 2);
    EXPECT_EQ(shell("analyze " + fixtures + "/house.poly --strategy nope").code, 2);
    EXPECT_EQ(shell("analyze /nonexistent/file.poly").code, 2);
    EXPECT_EQ(shell("t2 " + fixtures + "/cube.poly").code, 3);
    EXPECT_EQ(shell("base-ideal " + fixtures + "/interval3.poly --strategy minimal-width").code, 3);
    EXPECT_EQ(shell("t1 " + fixtures + "/house.poly").code, 0);
}
