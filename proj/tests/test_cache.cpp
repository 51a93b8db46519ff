#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "tightpoly/cache.hpp"
#include "tightpoly/serialize.hpp"

using namespace tightpoly;
namespace fs = std::filesystem;

namespace {

class CacheTest : public ::testing::Test {
protected:
    void SetUp() override {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("tightpoly-cache-test-" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string read_file(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    void write_file(const fs::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out << text;
    }

    fs::path dir_;
};

EscalationResult run_with(TruantStore* store) {
    EscalationOptions opts;
    opts.store = store;
    return run_escalation(7, 2, 20000, opts);
}

}  // namespace

TEST_F(CacheTest, FileNameAndHeader) {
    FileTruantCache cache(dir_, 7, 2, 20000);
    EXPECT_EQ(cache.path().filename(), "truants_m7_n2_b20000.txt");
    EXPECT_EQ(read_file(cache.path()), "# tightpoly truants v1 m=7 n=2 bound=20000\n");
}

TEST_F(CacheTest, WarmRunMatchesColdRun) {
    const auto reference = run_escalation(7, 2, 20000);
    std::size_t stored = 0;
    {
        FileTruantCache cache(dir_, 7, 2, 20000);
        EXPECT_EQ(run_with(&cache), reference);
        stored = cache.size();
        EXPECT_GT(stored, 0u);
    }
    FileTruantCache warm(dir_, 7, 2, 20000);
    EXPECT_EQ(warm.size(), stored);
    EXPECT_EQ(warm.discarded(), 0u);
    EXPECT_EQ(run_with(&warm), reference);
    EXPECT_GT(warm.hits(), 0u);
    EXPECT_EQ(warm.misses(), 0u);
    EXPECT_EQ(warm.size(), stored);
    EXPECT_EQ(emit_candidates(run_with(&warm), Format::json), emit_candidates(reference, Format::json));
}

TEST_F(CacheTest, CorruptLinesAreDiscarded) {
    fs::path p;
    {
        FileTruantCache cache(dir_, 7, 2, 20000);
        run_with(&cache);
        p = cache.path();
    }
    std::string text = read_file(p);
    text += "garbage line\n2,x 5\n2,3 -4\n2,3\n2,3 4 5\n";
    write_file(p, text);
    FileTruantCache cache(dir_, 7, 2, 20000);
    EXPECT_EQ(cache.discarded(), 5u);
    EXPECT_EQ(run_with(&cache), run_escalation(7, 2, 20000));
}

TEST_F(CacheTest, TruncatedTailIsDiscardedAndFileStaysValid) {
    fs::path p;
    {
        FileTruantCache cache(dir_, 7, 2, 20000);
        p = cache.path();
    }
    // Unterminated lines never count, even when they happen to parse.
    write_file(p, read_file(p) + "2,3 4\n2 3");
    {
        FileTruantCache cache(dir_, 7, 2, 20000);
        EXPECT_EQ(cache.discarded(), 1u);
        EXPECT_EQ(cache.size(), 1u);
        EXPECT_EQ(cache.lookup(CoeffVector{2}), std::nullopt);
        cache.store(CoeffVector{2}, TruantResult::finite(3));
    }
    FileTruantCache reread(dir_, 7, 2, 20000);
    EXPECT_EQ(reread.discarded(), 0u);
    EXPECT_EQ(reread.size(), 2u);
    EXPECT_EQ(reread.lookup(CoeffVector{2}), TruantResult::finite(3));
}

TEST_F(CacheTest, HeaderMismatchDiscardsFile) {
    fs::path p = dir_ / FileTruantCache::file_name(7, 2, 20000);
    write_file(p, "# tightpoly truants v1 m=7 n=2 bound=999\n2 3\n");
    FileTruantCache cache(dir_, 7, 2, 20000);
    EXPECT_EQ(cache.size(), 0u);
    EXPECT_EQ(read_file(p), "# tightpoly truants v1 m=7 n=2 bound=20000\n");
}

TEST_F(CacheTest, AboveBoundRecordsRoundTrip) {
    {
        FileTruantCache cache(dir_, 4, 1, 100);
        cache.store(CoeffVector{1, 1, 1, 1}, TruantResult::above_bound());
        cache.store(CoeffVector{1, 1, 1}, TruantResult::finite(7));
    }
    FileTruantCache cache(dir_, 4, 1, 100);
    EXPECT_EQ(cache.lookup(CoeffVector{1, 1, 1, 1}), TruantResult::above_bound());
    EXPECT_EQ(cache.lookup(CoeffVector{1, 1, 1}), TruantResult::finite(7));
    EXPECT_EQ(cache.lookup(CoeffVector{1}), std::nullopt);
}
