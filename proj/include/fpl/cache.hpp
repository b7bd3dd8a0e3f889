#pragma once

#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <unistd.h>

#include <json.hpp>

#include "fpl/bigint.hpp"
#include "fpl/errors.hpp"
#include "fpl/link_pattern.hpp"
#include "fpl/tl_ground.hpp"

namespace fpl {

inline constexpr const char* kCacheDirEnv = "FPLCOUNT_CACHE_DIR";
inline constexpr int kCacheFormatVersion = 1;

inline std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

// $FPLCOUNT_CACHE_DIR, else $XDG_DATA_HOME/fplcount, else ~/.local/share/fplcount.
inline std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_DATA_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "fplcount";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".local" / "share" / "fplcount";
    return std::filesystem::temp_directory_path() / "fplcount";
}

// Writes next to the target and renames over it.
inline void atomic_write(const std::filesystem::path& target, const std::string& content) {
    std::filesystem::create_directories(target.parent_path());
    const auto tmp = target.parent_path() /
                     (target.filename().string() + ".tmp." + std::to_string(static_cast<long>(::getpid())));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto " + target.string() + ": " + ec.message());
    }
}

// ---------------------------------------------------------------------------
// Ground-state records: {"payload": {...}, "checksum": "sha256:<hex of payload dump>"}

inline nlohmann::json ground_state_payload(const GroundState& g) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t k = 0; k < g.size(); ++k)
        entries.push_back({{"pattern", pattern_to_dyck(g.labels()[k]).parens()},
                           {"orbit_size", g.orbit_sizes()[k]},
                           {"component", to_string(g.components()[k])}});
    return {{"format", "fplcount-ground-state"},
            {"version", kCacheFormatVersion},
            {"n", g.n()},
            {"basis", to_string(g.basis())},
            {"entries", std::move(entries)}};
}

inline std::string serialize_ground_state(const GroundState& g) {
    const nlohmann::json payload = ground_state_payload(g);
    nlohmann::json record = {{"payload", payload}, {"checksum", "sha256:" + sha256_hex(payload.dump())}};
    return record.dump(1) + "\n";
}

// Empty when the record is malformed, of another version, or fails its checksum.
inline std::optional<GroundState> parse_ground_state(const std::string& text, int n, Basis basis) {
    const auto record = nlohmann::json::parse(text, nullptr, false);
    if (record.is_discarded() || !record.is_object() || !record.contains("payload") || !record.contains("checksum"))
        return std::nullopt;
    const auto& payload = record["payload"];
    if (!record["checksum"].is_string() || record["checksum"].get<std::string>() != "sha256:" + sha256_hex(payload.dump()))
        return std::nullopt;
    try {
        if (payload.at("format") != "fplcount-ground-state" || payload.at("version") != kCacheFormatVersion ||
            payload.at("n") != n || payload.at("basis") != to_string(basis))
            return std::nullopt;
        std::vector<LinkPattern> labels;
        std::vector<int> sizes;
        std::vector<BigRational> comps;
        for (const auto& e : payload.at("entries")) {
            labels.push_back(dyck_to_pattern(DyckWord::parse(e.at("pattern").get<std::string>())));
            sizes.push_back(e.at("orbit_size").get<int>());
            BigRational v(e.at("component").get<std::string>());
            v.canonicalize();
            comps.push_back(v);
        }
        return GroundState(n, basis, std::move(labels), std::move(sizes), std::move(comps));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

struct StoreOptions {
    std::optional<std::filesystem::path> cache_dir; // no disk cache when empty
    GroundOptions ground;
};

// Ground states and orbit indices by size, filled lazily: memory, then disk,
// then an exact solve (written back to disk).
class GroundStateStore {
public:
    explicit GroundStateStore(StoreOptions opt = {}) : opt_(std::move(opt)) {}

    const StoreOptions& options() const { return opt_; }

    const GroundState& get(int n, Basis basis = Basis::kReduced) {
        require_positive_size(n, "ground state");
        std::lock_guard lock(mutex_);
        auto& slot = basis == Basis::kReduced ? reduced_[n] : full_[n];
        if (slot) return *slot;
        if (auto disk = load(n, basis)) {
            ++hits_;
            slot = std::make_unique<GroundState>(std::move(*disk));
            return *slot;
        }
        slot = std::make_unique<GroundState>(ground_vector(n, basis, opt_.ground));
        ++solved_;
        save(*slot);
        return *slot;
    }

    // Orbit index with members, for inclusive sums.
    const OrbitIndex& orbit_index(int n) {
        std::lock_guard lock(mutex_);
        auto& slot = indices_[n];
        if (!slot) slot = std::make_unique<OrbitIndex>(n);
        return *slot;
    }

    int cache_hits() const { return hits_; }
    int solved() const { return solved_; }

    std::optional<std::filesystem::path> path_for(int n, Basis basis) const {
        if (!opt_.cache_dir) return std::nullopt;
        return *opt_.cache_dir / ("ground-n" + std::to_string(n) + "-" + to_string(basis) + ".json");
    }

private:
    std::optional<GroundState> load(int n, Basis basis) const {
        const auto path = path_for(n, basis);
        if (!path || !std::filesystem::exists(*path)) return std::nullopt;
        std::ifstream in(*path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_ground_state(buf.str(), n, basis);
    }

    void save(const GroundState& g) const {
        const auto path = path_for(g.n(), g.basis());
        if (!path) return;
        try {
            atomic_write(*path, serialize_ground_state(g));
        } catch (const std::exception&) {
            // an unwritable cache only costs a recomputation next time
        }
    }

    StoreOptions opt_;
    std::mutex mutex_;
    std::map<int, std::unique_ptr<GroundState>> reduced_;
    std::map<int, std::unique_ptr<GroundState>> full_;
    std::map<int, std::unique_ptr<OrbitIndex>> indices_;
    int hits_ = 0;
    int solved_ = 0;
};

} // namespace fpl
