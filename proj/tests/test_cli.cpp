#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome run(const std::string& args) {
    static const std::string cache = (std::filesystem::temp_directory_path() / "tightpoly-cli-test-cache").string();
    std::string cmd = std::string(TIGHTPOLY_CLI_PATH) + " " + args + " 2>/dev/null";
    if (args.find("--no-cache") == std::string::npos && args.find("--cache-dir") == std::string::npos &&
        args.find(' ') != std::string::npos) {
        // Subcommand options go after the subcommand name.
        auto sp = cmd.find(' ', std::string(TIGHTPOLY_CLI_PATH).size() + 1);
        cmd.insert(sp, " --cache-dir " + cache);
    }
    Outcome o;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return o;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) o.out.append(buf.data(), got);
    int status = pclose(p);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

bool has(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("escalate --m 2 --n 1").code, 2);
    EXPECT_EQ(run("escalate --m 4 --n 0").code, 2);
    EXPECT_EQ(run("criterion --m 4 --n 3 --bound 5").code, 2);
    EXPECT_EQ(run("escalate --m 4 --n 1 --format xml").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("tables --id 12").code, 2);
}

TEST(Cli, CriterionTriangular) {
    auto o = run("criterion --m 3 --n 1 --bound 10000 --format json -q");
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, "{\"m\":3,\"n\":1,\"cs\":[1,2,4,5,8],\"gamma\":8}\n");
    auto md = run("criterion --m 3 --n 1 --bound 10000 -q");
    EXPECT_TRUE(has(md.out, "{1,2,4,5,8}")) << md.out;
}

TEST(Cli, CriterionFamilies) {
    EXPECT_TRUE(has(run("criterion --m 9 --n 4 --format csv -q").out, "9,4,4;5;6;7;8;23;25;27;28;32;33,33"));
    EXPECT_TRUE(has(run("criterion --m 4 --n 7 --format csv -q").out, "4,7,7;8;9;10;11;12;13;14,14"));
}

TEST(Cli, CriterionWitnesses) {
    auto o = run("criterion --m 3 --n 1 --bound 10000 --witnesses -q");
    EXPECT_EQ(o.code, 0);
    EXPECT_TRUE(has(o.out, "witness g=1: (2,2,2,3) misses exactly 1")) << o.out;
    EXPECT_TRUE(has(o.out, "witness g=8: (1,1,3,9,9,9,10,11,12,13,14,15,16,17) misses exactly 8")) << o.out;
}

TEST(Cli, CriterionWitnessesJson) {
    auto o = run("criterion --m 3 --n 1 --bound 10000 --witnesses --format json -q");
    EXPECT_EQ(o.code, 0);
    EXPECT_TRUE(has(o.out, "\"gamma\":8,\"witness_bound\":10000,\"witnesses\":{\"1\":[2,2,2,3],")) << o.out;
    EXPECT_EQ(o.out.find("witness g="), std::string::npos);
}

TEST(Cli, EscalateSingleCandidate) {
    auto o = run("escalate --m 5 --n 4 --bound 10000 --format csv -q");
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, "length,prefix,values,range_lo,range_hi,exceptions\n4,4;5;6,7,,,\n");
}

TEST(Cli, EscalateJsonIsDeterministicAcrossJobs) {
    auto a = run("escalate --m 7 --n 2 --bound 50000 --format json -q --no-cache --jobs 1");
    auto b = run("escalate --m 7 --n 2 --bound 50000 --format json -q --no-cache --jobs 4");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(has(a.out, "tightpoly.escalation/1"));
}

TEST(Cli, DepthGuardExitCode) {
    auto o = run("escalate --m 4 --n 1 --bound 1000 --max-depth 2 -q --no-cache");
    EXPECT_EQ(o.code, 3);
}

TEST(Cli, Verify) {
    auto lagrange = run("verify --m 4 --n 1 --bound 10000 -q 1,1,1,1");
    EXPECT_EQ(lagrange.code, 0);
    EXPECT_TRUE(has(lagrange.out, "tight: yes")) << lagrange.out;
    EXPECT_TRUE(has(lagrange.out, "new: yes")) << lagrange.out;

    auto three = run("verify --m 4 --n 1 --bound 10000 -q 1,1,1");
    EXPECT_TRUE(has(three.out, "tight: no (misses 7)")) << three.out;

    auto five = run("verify --m 4 --n 1 --bound 10000 -q 1,1,1,1,1");
    EXPECT_TRUE(has(five.out, "new: no")) << five.out;

    auto low = run("verify --m 4 --n 2 --bound 10000 -q 1,1,1,1");
    EXPECT_TRUE(has(low.out, "tight: no (represents 1)")) << low.out;

    EXPECT_EQ(run("verify --m 4 --n 1 -q 1,x").code, 2);
}

TEST(Cli, TablesGamma) {
    auto o = run("tables --id 1 --subset 3,4,8 -q");
    EXPECT_EQ(o.code, 0);
    EXPECT_TRUE(has(o.out, "| gamma_m | 8 | 15 | 60 |")) << o.out;
    EXPECT_TRUE(has(o.out, "table 1: 3 rows, 0 mismatches (match)")) << o.out;
}

TEST(Cli, TablesCandidates) {
    auto two = run("tables --id 2 -q");
    EXPECT_EQ(two.code, 0);
    EXPECT_TRUE(has(two.out, "table 2: 5 rows, 0 mismatches")) << two.out;
    EXPECT_TRUE(has(two.out, "4 ≤ a_4 ≤ 141, a_4 ≠ 6,7,9,140")) << two.out;
    auto five = run("tables --id 5 -q");
    EXPECT_EQ(five.code, 0);
    EXPECT_TRUE(has(five.out, "table 5: 11 rows, 0 mismatches")) << five.out;
    EXPECT_TRUE(has(five.out, "4 ≤ a_4 ≤ 131")) << five.out;
}

TEST(Cli, TablesCriterionSubset) {
    auto o = run("tables --id 4 --subset 3:1,4:1,4:5 -q");
    EXPECT_EQ(o.code, 0);
    EXPECT_TRUE(has(o.out, "table 4: 3 rows, 0 mismatches")) << o.out;
}
