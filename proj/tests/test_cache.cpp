#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fpl/cache.hpp"

using namespace fpl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("fplcount-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST(Checksum, KnownDigests) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Record, RoundTrip) {
    for (auto basis : {Basis::kReduced, Basis::kFull}) {
        const GroundState g = ground_vector(5, basis);
        const auto back = parse_ground_state(serialize_ground_state(g), 5, basis);
        ASSERT_TRUE(back);
        EXPECT_EQ(back->components(), g.components());
        EXPECT_EQ(back->labels(), g.labels());
        EXPECT_EQ(back->orbit_sizes(), g.orbit_sizes());
    }
}

TEST(Record, RejectsTamperingAndMismatches) {
    const GroundState g = ground_vector(4, Basis::kReduced);
    std::string text = serialize_ground_state(g);
    EXPECT_FALSE(parse_ground_state(text, 5, Basis::kReduced));
    EXPECT_FALSE(parse_ground_state(text, 4, Basis::kFull));
    const auto pos = text.find("\"7\"");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 3, "\"8\"");
    EXPECT_FALSE(parse_ground_state(text, 4, Basis::kReduced));
    EXPECT_FALSE(parse_ground_state("not json", 4, Basis::kReduced));
}

TEST(Record, ComponentsAreDecimalStrings) {
    const auto j = nlohmann::json::parse(serialize_ground_state(ground_vector(4, Basis::kReduced)));
    for (const auto& e : j["payload"]["entries"]) EXPECT_TRUE(e["component"].is_string());
    EXPECT_EQ(j["payload"]["version"], kCacheFormatVersion);
}

TEST(Store, SolvesOnceThenHitsDisk) {
    const fs::path dir = fresh_dir("store");
    StoreOptions opt;
    opt.cache_dir = dir;
    {
        GroundStateStore s(opt);
        EXPECT_EQ(s.get(6).weighted_sum(), 7436);
        s.get(6);
        EXPECT_EQ(s.solved(), 1);
        EXPECT_EQ(s.cache_hits(), 0);
        EXPECT_TRUE(fs::exists(*s.path_for(6, Basis::kReduced)));
    }
    GroundStateStore again(opt);
    EXPECT_EQ(again.get(6).weighted_sum(), 7436);
    EXPECT_EQ(again.solved(), 0);
    EXPECT_EQ(again.cache_hits(), 1);
    const std::string before = slurp(*again.path_for(6, Basis::kReduced));
    GroundStateStore third(opt);
    third.get(6);
    EXPECT_EQ(slurp(*third.path_for(6, Basis::kReduced)), before);
    for (const auto& e : fs::directory_iterator(dir)) EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos);
    fs::remove_all(dir);
}

TEST(Store, CorruptFileIsRecomputed) {
    const fs::path dir = fresh_dir("corrupt");
    StoreOptions opt;
    opt.cache_dir = dir;
    GroundStateStore s(opt);
    atomic_write(*s.path_for(5, Basis::kReduced), "{\"payload\": {}, \"checksum\": \"sha256:00\"}");
    EXPECT_EQ(s.get(5).weighted_sum(), 429);
    EXPECT_EQ(s.solved(), 1);
    EXPECT_TRUE(parse_ground_state(slurp(*s.path_for(5, Basis::kReduced)), 5, Basis::kReduced));
    fs::remove_all(dir);
}

TEST(Store, NoDirectoryMeansMemoryOnly) {
    GroundStateStore s;
    EXPECT_FALSE(s.path_for(3, Basis::kReduced));
    EXPECT_EQ(s.get(3).weighted_sum(), 7);
    EXPECT_EQ(&s.get(3), &s.get(3));
}

TEST(CacheDir, EnvironmentOverride) {
    ::setenv(kCacheDirEnv, "/tmp/somewhere-fpl", 1);
    EXPECT_EQ(default_cache_dir(), fs::path("/tmp/somewhere-fpl"));
    ::unsetenv(kCacheDirEnv);
    ::setenv("XDG_DATA_HOME", "/tmp/xdg", 1);
    EXPECT_EQ(default_cache_dir(), fs::path("/tmp/xdg/fplcount"));
    ::unsetenv("XDG_DATA_HOME");
}
