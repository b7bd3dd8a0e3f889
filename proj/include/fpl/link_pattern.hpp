#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fpl/errors.hpp"

namespace fpl {

inline void require_positive_size(int n, const char* what) {
    if (n < 1) throw DomainError(std::string(what) + ": size must be >= 1, got " + std::to_string(n));
    if (n > 127) throw DomainError(std::string(what) + ": size above 127 is not supported");
}

// Noncrossing perfect matching of the 2n boundary points of a disk.
//
// Points are stored 0-based (0 .. 2n-1, counterclockwise); all text forms use
// the 1-based labels 1 .. 2n. The partner array is a fixed-point-free
// noncrossing involution.
class LinkPattern {
public:
    LinkPattern() = default;

    static LinkPattern from_partners(std::vector<std::uint8_t> partners) {
        LinkPattern p;
        p.partner_ = std::move(partners);
        p.validate();
        return p;
    }

    // Arches given as 1-based label pairs.
    static LinkPattern from_arches(int n, const std::vector<std::pair<int, int>>& arches) {
        require_positive_size(n, "LinkPattern");
        if (static_cast<int>(arches.size()) != n)
            throw DomainError("LinkPattern: expected " + std::to_string(n) + " arches");
        std::vector<std::uint8_t> partners(2 * n, 0xff);
        for (auto [a, b] : arches) {
            if (a < 1 || b < 1 || a > 2 * n || b > 2 * n || a == b)
                throw DomainError("LinkPattern: bad arch (" + std::to_string(a) + "," + std::to_string(b) + ")");
            if (partners[a - 1] != 0xff || partners[b - 1] != 0xff)
                throw DomainError("LinkPattern: point used twice");
            partners[a - 1] = static_cast<std::uint8_t>(b - 1);
            partners[b - 1] = static_cast<std::uint8_t>(a - 1);
        }
        return from_partners(std::move(partners));
    }

    // (1,2n)(2,2n-1)...: the fully nested pattern.
    static LinkPattern nested(int n) {
        require_positive_size(n, "nested");
        std::vector<std::uint8_t> partners(2 * n);
        for (int i = 0; i < 2 * n; ++i) partners[i] = static_cast<std::uint8_t>(2 * n - 1 - i);
        return from_partners(std::move(partners));
    }

    // (1,2)(3,4)...(2n-1,2n): n level-one arches.
    static LinkPattern small_arches(int n) {
        require_positive_size(n, "small_arches");
        std::vector<std::uint8_t> partners(2 * n);
        for (int i = 0; i < 2 * n; ++i) partners[i] = static_cast<std::uint8_t>(i ^ 1);
        return from_partners(std::move(partners));
    }

    int size() const { return static_cast<int>(partner_.size() / 2); }
    int points() const { return static_cast<int>(partner_.size()); }

    int partner(int i) const { return partner_[static_cast<std::size_t>(i)]; }
    std::span<const std::uint8_t> partners() const { return partner_; }

    // 0-based endpoints.
    bool has_arch(int i, int j) const {
        return i >= 0 && i < points() && partner(i) == j;
    }

    // 1-based (i < j) pairs, sorted by i.
    std::vector<std::pair<int, int>> arches() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < points(); ++i)
            if (partner(i) > i) out.emplace_back(i + 1, partner(i) + 1);
        return out;
    }

    // "(1 6)(2 3)(4 5)"
    std::string pair_list() const {
        std::string s;
        for (auto [a, b] : arches()) s += "(" + std::to_string(a) + " " + std::to_string(b) + ")";
        return s;
    }

    std::string_view key() const {
        return {reinterpret_cast<const char*>(partner_.data()), partner_.size()};
    }

    friend bool operator==(const LinkPattern&, const LinkPattern&) = default;
    friend auto operator<=>(const LinkPattern& a, const LinkPattern& b) {
        return a.partner_ <=> b.partner_;
    }

private:
    void validate() const {
        const int m = points();
        if (m == 0 || m % 2 != 0) throw DomainError("LinkPattern: need an even, positive number of points");
        require_positive_size(m / 2, "LinkPattern");
        for (int i = 0; i < m; ++i) {
            const int j = partner_[i];
            if (j >= m) throw DomainError("LinkPattern: point " + std::to_string(i + 1) + " is unmatched");
            if (j == i) throw DomainError("LinkPattern: fixed point " + std::to_string(i + 1));
            if (partner_[j] != i) throw DomainError("LinkPattern: partner map is not an involution");
        }
        // Noncrossing: arches close in stack order.
        std::vector<int> stack;
        for (int i = 0; i < m; ++i) {
            if (partner_[i] > i) {
                stack.push_back(i);
            } else {
                if (stack.empty() || stack.back() != partner_[i])
                    throw DomainError("LinkPattern: arches cross");
                stack.pop_back();
            }
        }
    }

    std::vector<std::uint8_t> partner_;
};

struct LinkPatternHash {
    std::size_t operator()(const LinkPattern& p) const noexcept {
        return std::hash<std::string_view>{}(p.key());
    }
};

// ---------------------------------------------------------------------------
// Dihedral group of order 4n acting on the 2n boundary points.

// i -> rotation + i (or rotation - i when reflected), mod 2n.
struct DihedralElement {
    int points = 2;
    int rotation = 0;
    bool reflected = false;

    static DihedralElement identity(int n) { return {2 * n, 0, false}; }
    static DihedralElement rotate(int n, int k) { return {2 * n, ((k % (2 * n)) + 2 * n) % (2 * n), false}; }
    static DihedralElement reflect(int n) { return {2 * n, 0, true}; }

    int apply(int i) const {
        const int v = reflected ? rotation - i : rotation + i;
        return ((v % points) + points) % points;
    }

    // (g * h)(i) = g(h(i))
    friend DihedralElement operator*(const DihedralElement& g, const DihedralElement& h) {
        if (g.points != h.points) throw DomainError("dihedral elements of different sizes");
        const int rot = g.reflected ? g.rotation - h.rotation : g.rotation + h.rotation;
        return {g.points, ((rot % g.points) + g.points) % g.points, g.reflected != h.reflected};
    }

    friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
};

inline std::vector<DihedralElement> dihedral_group(int n) {
    require_positive_size(n, "dihedral_group");
    std::vector<DihedralElement> g;
    g.reserve(4 * n);
    for (int reflected = 0; reflected < 2; ++reflected)
        for (int r = 0; r < 2 * n; ++r) g.push_back({2 * n, r, reflected != 0});
    return g;
}

inline LinkPattern act(const DihedralElement& g, const LinkPattern& p) {
    if (g.points != p.points()) throw DomainError("act: group element and pattern have different sizes");
    std::vector<std::uint8_t> out(p.points());
    for (int i = 0; i < p.points(); ++i)
        out[g.apply(i)] = static_cast<std::uint8_t>(g.apply(p.partner(i)));
    return LinkPattern::from_partners(std::move(out));
}

namespace detail {

// Calls f(image_partners) for each of the 4n images, without validation.
template <class F>
void for_each_image(const LinkPattern& p, std::vector<std::uint8_t>& buf, F&& f) {
    const int m = p.points();
    buf.resize(m);
    for (int reflected = 0; reflected < 2; ++reflected) {
        for (int r = 0; r < m; ++r) {
            for (int i = 0; i < m; ++i) {
                const int gi = reflected ? (r - i + m) % m : (r + i) % m;
                const int gj = reflected ? (r - p.partner(i) + m) % m : (r + p.partner(i)) % m;
                buf[gi] = static_cast<std::uint8_t>(gj);
            }
            f(buf);
        }
    }
}

} // namespace detail

// Lexicographically minimal partner array over the dihedral orbit.
inline LinkPattern canonical(const LinkPattern& p) {
    std::vector<std::uint8_t> buf;
    std::vector<std::uint8_t> best(p.partners().begin(), p.partners().end());
    detail::for_each_image(p, buf, [&](const std::vector<std::uint8_t>& img) {
        if (img < best) best = img;
    });
    return LinkPattern::from_partners(std::move(best));
}

inline int orbit_size(const LinkPattern& p) {
    std::vector<std::uint8_t> buf;
    const std::vector<std::uint8_t> self(p.partners().begin(), p.partners().end());
    int stabilizer = 0;
    detail::for_each_image(p, buf, [&](const std::vector<std::uint8_t>& img) {
        if (img == self) ++stabilizer;
    });
    return 2 * p.points() / stabilizer;
}

// ---------------------------------------------------------------------------
// Dyck words. Reading the boundary counterclockwise from a basepoint, a point
// is an up-step when it is the first visited endpoint of its arch.

class DyckWord {
public:
    DyckWord() = default;
    explicit DyckWord(std::vector<bool> up) : up_(std::move(up)) {}

    // Accepts "UDUD" or "()()".
    static DyckWord parse(std::string_view text) {
        std::vector<bool> up;
        for (char c : text) {
            if (c == 'U' || c == 'u' || c == '(') up.push_back(true);
            else if (c == 'D' || c == 'd' || c == ')') up.push_back(false);
            else throw DomainError("DyckWord: unexpected character '" + std::string(1, c) + "'");
        }
        return DyckWord(std::move(up));
    }

    std::size_t length() const { return up_.size(); }
    bool up(std::size_t i) const { return up_[i]; }
    const std::vector<bool>& steps() const { return up_; }

    bool balanced() const {
        int h = 0;
        for (bool s : up_) {
            h += s ? 1 : -1;
            if (h < 0) return false;
        }
        return h == 0;
    }

    std::string str() const {
        std::string s;
        for (bool u : up_) s += u ? 'U' : 'D';
        return s;
    }

    std::string parens() const {
        std::string s;
        for (bool u : up_) s += u ? '(' : ')';
        return s;
    }

    DyckWord& operator+=(const DyckWord& o) {
        up_.insert(up_.end(), o.up_.begin(), o.up_.end());
        return *this;
    }
    friend DyckWord operator+(DyckWord a, const DyckWord& b) { return a += b; }

    friend bool operator==(const DyckWord&, const DyckWord&) = default;

private:
    std::vector<bool> up_;
};

inline DyckWord up_steps(int k) { return DyckWord(std::vector<bool>(static_cast<std::size_t>(k), true)); }
inline DyckWord down_steps(int k) { return DyckWord(std::vector<bool>(static_cast<std::size_t>(k), false)); }

// basepoint is a 1-based label.
inline DyckWord pattern_to_dyck(const LinkPattern& p, int basepoint = 1) {
    const int m = p.points();
    if (basepoint < 1 || basepoint > m) throw DomainError("pattern_to_dyck: basepoint out of range");
    std::vector<bool> up(m);
    const int start = basepoint - 1;
    for (int k = 0; k < m; ++k) {
        const int i = (start + k) % m;
        const int j = p.partner(i);
        const int dist = (j - start + m) % m;
        up[k] = dist > k;
    }
    return DyckWord(std::move(up));
}

// Inverse of pattern_to_dyck: the word is read starting at `basepoint`.
inline LinkPattern dyck_to_pattern(const DyckWord& w, int basepoint = 1) {
    if (w.length() == 0 || !w.balanced()) throw DomainError("dyck_to_pattern: word is not a nonempty balanced word");
    const int m = static_cast<int>(w.length());
    if (basepoint < 1 || basepoint > m) throw DomainError("dyck_to_pattern: basepoint out of range");
    std::vector<std::uint8_t> partners(m);
    std::vector<int> stack;
    const int start = basepoint - 1;
    for (int k = 0; k < m; ++k) {
        const int i = (start + k) % m;
        if (w.up(k)) {
            stack.push_back(i);
        } else {
            const int j = stack.back();
            stack.pop_back();
            partners[i] = static_cast<std::uint8_t>(j);
            partners[j] = static_cast<std::uint8_t>(i);
        }
    }
    return LinkPattern::from_partners(std::move(partners));
}

// Accepts either the balanced-parenthesis word ("(()())", basepoint 1) or an
// explicit pair list ("(1 6)(2 3)(4 5)", commas allowed).
inline LinkPattern parse_link_pattern(std::string_view text) {
    std::string compact;
    bool has_digit = false;
    for (char c : text) {
        if (c >= '0' && c <= '9') has_digit = true;
        if (c != ' ' && c != '\t' && c != '\n') compact += c;
    }
    if (!has_digit) return dyck_to_pattern(DyckWord::parse(compact));

    std::vector<std::pair<int, int>> arches;
    std::vector<int> nums;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) nums.push_back(std::stoi(cur));
        cur.clear();
    };
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            cur += c;
        } else if (c == ' ' || c == ',' || c == '\t') {
            flush();
        } else if (c == '(') {
            flush();
            nums.clear();
        } else if (c == ')') {
            flush();
            if (nums.size() != 2) throw DomainError("parse_link_pattern: each pair needs two labels");
            arches.emplace_back(nums[0], nums[1]);
            nums.clear();
        } else {
            throw DomainError("parse_link_pattern: unexpected character '" + std::string(1, c) + "'");
        }
    }
    if (arches.empty()) throw DomainError("parse_link_pattern: no arches");
    return LinkPattern::from_arches(static_cast<int>(arches.size()), arches);
}

// ---------------------------------------------------------------------------
// Enumeration and orbits.

// Calls f(pattern) for each of the C_n patterns, in Dyck-word order.
template <class F>
void for_each_link_pattern(int n, F&& f) {
    require_positive_size(n, "enumerate_link_patterns");
    std::vector<bool> word(2 * n);
    std::function<void(int, int, int)> rec = [&](int pos, int opens, int height) {
        if (pos == 2 * n) {
            f(dyck_to_pattern(DyckWord(word)));
            return;
        }
        if (opens < n) {
            word[pos] = true;
            rec(pos + 1, opens + 1, height + 1);
        }
        if (height > 0) {
            word[pos] = false;
            rec(pos + 1, opens, height - 1);
        }
    };
    rec(0, 0, 0);
}

// All C_n patterns, sorted lexicographically by partner array.
inline std::vector<LinkPattern> enumerate_link_patterns(int n) {
    std::vector<LinkPattern> out;
    for_each_link_pattern(n, [&](LinkPattern p) { out.push_back(std::move(p)); });
    std::sort(out.begin(), out.end());
    return out;
}

struct Orbit {
    LinkPattern representative;
    std::vector<LinkPattern> members; // empty when the index was built without members
    int count = 0;

    int size() const { return count; }
};

// Dihedral orbits of the size-n patterns, sorted by canonical representative.
// Without members only representatives and sizes are stored, which keeps
// large n affordable; lookups then canonicalise.
class OrbitIndex {
public:
    explicit OrbitIndex(int n, bool keep_members = true) : n_(n), keep_members_(keep_members) {
        require_positive_size(n, "orbits");
        std::unordered_map<std::string, std::vector<LinkPattern>> groups;
        std::vector<LinkPattern> reps;
        std::unordered_map<std::string, int> counts;
        for_each_link_pattern(n, [&](LinkPattern p) {
            ++total_;
            LinkPattern rep = canonical(p);
            std::string key(rep.key());
            auto [it, fresh] = counts.emplace(key, 0);
            if (fresh) reps.push_back(rep);
            ++it->second;
            if (keep_members) groups[key].push_back(std::move(p));
        });
        std::sort(reps.begin(), reps.end());
        orbits_.resize(reps.size());
        for (std::size_t k = 0; k < reps.size(); ++k) {
            std::string key(reps[k].key());
            rep_index_.emplace(key, static_cast<int>(k));
            orbits_[k].representative = reps[k];
            orbits_[k].count = counts.at(key);
            if (keep_members) {
                auto& members = groups.at(key);
                std::sort(members.begin(), members.end());
                for (const auto& p : members) pattern_orbit_.emplace(std::string(p.key()), static_cast<int>(k));
                orbits_[k].members = std::move(members);
            }
        }
    }

    int n() const { return n_; }
    bool has_members() const { return keep_members_; }
    const std::vector<Orbit>& orbits() const { return orbits_; }
    std::size_t pattern_count() const { return total_; }

    int orbit_of(const LinkPattern& p) const {
        if (p.size() != n_) throw DomainError("orbit_of: pattern of the wrong size");
        if (keep_members_) return pattern_orbit_.at(std::string(p.key()));
        return rep_index_.at(std::string(canonical(p).key()));
    }

    int nested_orbit() const { return orbit_of(LinkPattern::nested(n_)); }

private:
    int n_;
    bool keep_members_;
    std::size_t total_ = 0;
    std::vector<Orbit> orbits_;
    std::unordered_map<std::string, int> rep_index_;
    std::unordered_map<std::string, int> pattern_orbit_;
};

inline std::vector<Orbit> orbits(int n) { return OrbitIndex(n).orbits(); }

} // namespace fpl
