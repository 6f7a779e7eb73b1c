#include "eaifd/error.hpp"
#include "eaifd/state_io.hpp"

#include "fixtures.hpp"
#include "random_data.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

using namespace eaifd;
using namespace eaifd::testing;
namespace fs = std::filesystem;

namespace {

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> out;
    const fs::path v = dir / current_version(dir);
    for (const auto& e : fs::directory_iterator(v)) out[e.path().filename().string()] = read_text(e.path());
    return out;
}

Session sample_session() {
    std::mt19937_64 rng(12);
    const auto table = random_table(rng, {120, 6, 1, 6, 0.2});
    auto s = Session::initialize(encode_table(slice(table, 0, 100), "NA"), Params{0.3, 0.75, 9});
    s.apply_rows({table.rows.begin() + 100, table.rows.end()});
    return s;
}

} // namespace

TEST(StateIo, RoundTripIsDeepAndByteIdentical) {
    TempDir dir;
    const Session s = sample_session();
    save_session(dir.path(), s);
    const auto first = snapshot(dir.path());
    const Session loaded = load_session(dir.path());
    EXPECT_EQ(loaded.relation(), s.relation());
    EXPECT_EQ(loaded.state(), s.state());
    EXPECT_EQ(loaded.generation(), s.generation());
    save_session(dir.path(), loaded);
    EXPECT_EQ(snapshot(dir.path()), first);
    EXPECT_EQ(current_version(dir.path()), "v000002");
    EXPECT_FALSE(fs::exists(dir / "v000001"));
}

TEST(StateIo, LoadedSessionKeepsUpdating) {
    TempDir dir;
    std::mt19937_64 rng(5);
    const auto table = random_table(rng, {90, 5, 1, 4, 0.1});
    auto live = Session::initialize(encode_table(slice(table, 0, 70)), Params{});
    save_session(dir.path(), live);
    auto loaded = load_session(dir.path());
    const std::vector<std::vector<std::string>> rest(table.rows.begin() + 70, table.rows.end());
    live.apply_rows(rest);
    loaded.apply_rows(rest);
    EXPECT_EQ(live.state(), loaded.state());
}

TEST(StateIo, MissingAndCorruptState) {
    TempDir dir;
    EXPECT_FALSE(state_exists(dir.path()));
    EXPECT_THROW(load_session(dir.path()), StateError);
    save_session(dir.path(), sample_session());
    const fs::path mht = dir / current_version(dir.path()).string() / "mht.bin";
    std::string bytes = read_text(mht);
    bytes[bytes.size() / 2] ^= 0x5a;
    write_text(mht, bytes);
    EXPECT_THROW(load_session(dir.path()), StateError);
}

TEST(StateIo, GenerationMismatchIsDetected) {
    TempDir dir;
    save_session(dir.path(), sample_session());
    const fs::path manifest = dir / current_version(dir.path()).string() / "manifest.txt";
    std::string text = read_text(manifest);
    const auto pos = text.find("generation 1");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 12, "generation 7");
    write_text(manifest, text);
    EXPECT_THROW(load_session(dir.path()), StateError);
}

TEST(StateIo, InterruptedSaveKeepsPriorState) {
    TempDir dir;
    auto s = Session::initialize(ingest_csv(data_file("example_base.csv")), Params{});
    save_session(dir.path(), s);
    const auto before = snapshot(dir.path());
    s.apply_csv(data_file("example_delta.csv"));

    const pid_t pid = ::fork();
    ASSERT_GE(pid, 0);
    if (pid == 0) {
        save_session(dir.path(), s, SaveHooks{[] { ::_exit(9); }});
        ::_exit(0);
    }
    int status = 0;
    ::waitpid(pid, &status, 0);
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 9);

    EXPECT_EQ(snapshot(dir.path()), before);
    const auto loaded = load_session(dir.path());
    EXPECT_EQ(loaded.relation().rows(), 6u);
    // The next save replaces the half-written version directory.
    save_session(dir.path(), s);
    EXPECT_EQ(load_session(dir.path()).relation().rows(), 10u);
}

TEST(StateIo, LockIsExclusive) {
    TempDir dir;
    StateLock held(dir.path());
    const pid_t pid = ::fork();
    ASSERT_GE(pid, 0);
    if (pid == 0) {
        try {
            StateLock again(dir.path());
            ::_exit(0);
        } catch (const StateError&) {
            ::_exit(3);
        }
    }
    int status = 0;
    ::waitpid(pid, &status, 0);
    EXPECT_EQ(WEXITSTATUS(status), 3);
}
