#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace eaifd::testing;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + std::string(EAIFD_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    const int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

} // namespace

TEST(Cli, InitUpdateFdsCheck) {
    TempDir dir;
    const auto state = dir / "st";
    const auto t1 = data_file("example_base.csv");
    const auto t2 = data_file("example_delta.csv");
    auto r = run("init --input " + q(t1) + " --state " + q(state));
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("|F| = 7"), std::string::npos);

    EXPECT_EQ(run("init --input " + q(t1) + " --state " + q(state)).code, 3);

    r = run("update --delta " + q(t2) + " --state " + q(state));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "- SMajor->SDorm\n+ SGrade,SMajor->SDorm\n");

    r = run("fds --state " + q(state));
    EXPECT_NE(r.out.find("SGrade,SMajor->SDorm\n"), std::string::npos);
    EXPECT_EQ(r.out.find("\nSMajor->SDorm\n"), std::string::npos);

    EXPECT_EQ(run("check --input " + q(t1) + " --delta " + q(t2) + " --state " + q(state)).code, 0);
    EXPECT_EQ(run("check --input " + q(t1) + " --state " + q(state)).code, 4);

    r = run("fds --state " + q(state) + " --format jsonlike");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.front(), '[');
    EXPECT_EQ(run("mht --state " + q(state)).code, 0);
}

TEST(Cli, EmptyDeltaAndSchemaMismatch) {
    TempDir dir;
    const auto state = dir / "st";
    ASSERT_EQ(run("init --input " + q(data_file("example_base.csv")) + " --state " + q(state)).code, 0);
    const auto before = run("fds --state " + q(state)).out;

    write_text(dir / "empty.csv", "SNO,SName,SAge,SGrade,SMajor,SDorm\n");
    auto r = run("update --delta " + q(dir / "empty.csv") + " --state " + q(state));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "no change\n");

    write_text(dir / "bad.csv", "SNO,Other\nx,y\n");
    EXPECT_EQ(run("update --delta " + q(dir / "bad.csv") + " --state " + q(state)).code, 2);
    EXPECT_EQ(run("fds --state " + q(state)).out, before);
}

TEST(Cli, CrashBeforeSwapLeavesPriorState) {
    TempDir dir;
    const auto state = dir / "st";
    ASSERT_EQ(run("init --input " + q(data_file("example_base.csv")) + " --state " + q(state)).code, 0);
    const auto before = run("fds --state " + q(state)).out;
    const auto r = run("update --delta " + q(data_file("example_delta.csv")) + " --state " + q(state),
                       "EAIFD_CRASH_BEFORE_SWAP=1");
    EXPECT_NE(r.code, 0);
    EXPECT_EQ(run("fds --state " + q(state)).out, before);
    EXPECT_EQ(run("update --delta " + q(data_file("example_delta.csv")) + " --state " + q(state)).code, 0);
}

TEST(Cli, DeterministicAcrossRunsAndSeeds) {
    TempDir dir;
    const auto iris = data_file("iris.csv");
    const auto a = run("init --input " + q(iris) + " --state " + q(dir / "a") + " --seed 1");
    ASSERT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("|F| = 4"), std::string::npos);
    ASSERT_EQ(run("init --input " + q(iris) + " --state " + q(dir / "b") + " --seed 1").code, 0);
    ASSERT_EQ(run("init --input " + q(iris) + " --state " + q(dir / "c") + " --seed 99").code, 0);
    const auto fa = run("fds --state " + q(dir / "a")).out;
    EXPECT_EQ(fa, run("fds --state " + q(dir / "b")).out);
    EXPECT_EQ(fa, run("fds --state " + q(dir / "c")).out);
    EXPECT_EQ(fa, run("oracle --input " + q(iris)).out);
}

TEST(Cli, UsageAndDataErrors) {
    TempDir dir;
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("init --state " + q(dir / "s")).code, 1);
    EXPECT_EQ(run("init --input " + q(data_file("iris.csv")) + " --state " + q(dir / "s") + " --epsilon 2").code, 1);
    write_text(dir / "ragged.csv", "a,b\n1\n");
    EXPECT_EQ(run("init --input " + q(dir / "ragged.csv") + " --state " + q(dir / "t")).code, 2);
    EXPECT_EQ(run("fds --state " + q(dir / "nothing")).code, 3);
}

TEST(Cli, BenchWritesReport) {
    TempDir dir;
    write_text(dir / "cfg.json", R"({"batches": 1, "datasets": [{"id": "iris", "path": ")" +
                                     data_file("iris.csv").string() + R"(", "n": 147, "m": 5, "fds": 4}]})");
    const auto r = run("bench --config " + q(dir / "cfg.json") + " --output " + q(dir / "out.csv"));
    ASSERT_EQ(r.code, 0);
    const auto csv = read_text(dir / "out.csv");
    EXPECT_NE(csv.find("iris,ok,147,5,4,4,exact-match,equal"), std::string::npos) << csv;
}
