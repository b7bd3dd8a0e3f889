#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "fpl/bigint.hpp"
#include "fpl/errors.hpp"
#include "fpl/link_pattern.hpp"

namespace fpl {

// Which alternate half of the 4n external links is occupied. The external
// links are listed clockwise starting with the up-link of the top-left vertex
// (index 0) and ending with its left-link (index 4n-1).
enum class BoundaryParity {
    kCornerLeft, // odd indices occupied: the left-link of the top-left vertex
    kCornerUp,   // even indices occupied: the up-link of the top-left vertex
};

inline const char* to_string(BoundaryParity p) {
    return p == BoundaryParity::kCornerLeft ? "corner-left" : "corner-up";
}

enum class Direction { kUp = 0, kRight = 1, kDown = 2, kLeft = 3 };

// n x n grid with its 4n external links.
struct GridGeometry {
    int n = 1;
    BoundaryParity parity = BoundaryParity::kCornerLeft;

    int external_count() const { return 4 * n; }

    bool external_occupied(int t) const {
        return (t % 2 == 1) == (parity == BoundaryParity::kCornerLeft);
    }

    // Clockwise index of the external link leaving (r, c) in direction d.
    int external_index(int r, int c, Direction d) const {
        switch (d) {
        case Direction::kUp: return c;
        case Direction::kRight: return n + r;
        case Direction::kDown: return 3 * n - 1 - c;
        case Direction::kLeft: return 4 * n - 1 - r;
        }
        return -1;
    }

    // Occupied external links, counterclockwise, starting from the occupied
    // link of the top-left vertex. Position k carries boundary label k+1.
    std::vector<int> labelled_externals() const {
        std::vector<int> out;
        const int start = parity == BoundaryParity::kCornerLeft ? 4 * n - 1 : 0;
        for (int k = 0; k < 4 * n; ++k) {
            const int t = (start - k + 4 * n) % (4 * n);
            if (external_occupied(t)) out.push_back(t);
        }
        return out;
    }

    // Sublattice on which a horizontal straight segment maps to +1.
    bool even_vertex(int r, int c) const {
        return ((r + c) % 2 == 0) == (parity == BoundaryParity::kCornerLeft);
    }
};

// Edge occupancy of one configuration. horizontal(r, c) is the edge entering
// column c of row r from the left (c = 0 and c = n are external links);
// vertical(r, c) is the edge entering row r of column c from above (r = 0 and
// r = n are external links).
class FplConfiguration {
public:
    explicit FplConfiguration(GridGeometry g)
        : geom_(g),
          horizontal_(static_cast<std::size_t>(g.n * (g.n + 1)), false),
          vertical_(static_cast<std::size_t>((g.n + 1) * g.n), false) {
        for (int r = 0; r < g.n; ++r) {
            set_horizontal(r, 0, g.external_occupied(g.external_index(r, 0, Direction::kLeft)));
            set_horizontal(r, g.n, g.external_occupied(g.external_index(r, g.n - 1, Direction::kRight)));
        }
        for (int c = 0; c < g.n; ++c) {
            set_vertical(0, c, g.external_occupied(g.external_index(0, c, Direction::kUp)));
            set_vertical(g.n, c, g.external_occupied(g.external_index(g.n - 1, c, Direction::kDown)));
        }
    }

    const GridGeometry& geometry() const { return geom_; }
    int n() const { return geom_.n; }

    bool horizontal(int r, int c) const { return horizontal_[r * (geom_.n + 1) + c]; }
    bool vertical(int r, int c) const { return vertical_[r * geom_.n + c]; }
    void set_horizontal(int r, int c, bool v) { horizontal_[r * (geom_.n + 1) + c] = v; }
    void set_vertical(int r, int c, bool v) { vertical_[r * geom_.n + c] = v; }

    bool edge(int r, int c, Direction d) const {
        switch (d) {
        case Direction::kUp: return vertical(r, c);
        case Direction::kDown: return vertical(r + 1, c);
        case Direction::kLeft: return horizontal(r, c);
        case Direction::kRight: return horizontal(r, c + 1);
        }
        return false;
    }

    int degree(int r, int c) const {
        return edge(r, c, Direction::kUp) + edge(r, c, Direction::kRight) + edge(r, c, Direction::kDown) +
               edge(r, c, Direction::kLeft);
    }

    bool valid() const {
        for (int r = 0; r < n(); ++r)
            for (int c = 0; c < n(); ++c)
                if (degree(r, c) != 2) return false;
        for (int t = 0; t < geom_.external_count(); ++t)
            if (external(t) != geom_.external_occupied(t)) return false;
        return true;
    }

    bool external(int t) const {
        const int n = geom_.n;
        if (t < n) return vertical(0, t);
        if (t < 2 * n) return horizontal(t - n, n);
        if (t < 3 * n) return vertical(n, 3 * n - 1 - t);
        return horizontal(4 * n - 1 - t, 0);
    }

    // Internal horizontal edges row-major, internal vertical edges
    // row-major, then the 4n external links clockwise from the top-left.
    std::string bit_string() const {
        std::string s;
        const int n = geom_.n;
        for (int r = 0; r < n; ++r)
            for (int c = 1; c < n; ++c) s += horizontal(r, c) ? '1' : '0';
        for (int r = 1; r < n; ++r)
            for (int c = 0; c < n; ++c) s += vertical(r, c) ? '1' : '0';
        for (int t = 0; t < 4 * n; ++t) s += external(t) ? '1' : '0';
        return s;
    }

    friend bool operator==(const FplConfiguration& a, const FplConfiguration& b) {
        return a.geom_.n == b.geom_.n && a.geom_.parity == b.geom_.parity && a.horizontal_ == b.horizontal_ &&
               a.vertical_ == b.vertical_;
    }

private:
    GridGeometry geom_;
    std::vector<bool> horizontal_;
    std::vector<bool> vertical_;
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration: row-major backtracking over vertices, choosing the
// right and down edges so that each vertex has degree two.

namespace detail {

template <class F>
void fpl_backtrack(FplConfiguration& cfg, int vertex, int stop, F& visit) {
    const int n = cfg.n();
    if (vertex == stop) {
        visit(cfg);
        return;
    }
    const int r = vertex / n;
    const int c = vertex % n;
    const int need = 2 - cfg.edge(r, c, Direction::kUp) - cfg.edge(r, c, Direction::kLeft);
    if (need < 0) return;
    const bool right_fixed = c == n - 1;
    const bool down_fixed = r == n - 1;
    for (int right = 0; right <= 1; ++right) {
        if (right_fixed && right != static_cast<int>(cfg.horizontal(r, n))) continue;
        const int down = need - right;
        if (down < 0 || down > 1) continue;
        if (down_fixed && down != static_cast<int>(cfg.vertical(n, c))) continue;
        const bool old_right = cfg.horizontal(r, c + 1);
        const bool old_down = cfg.vertical(r + 1, c);
        if (!right_fixed) cfg.set_horizontal(r, c + 1, right != 0);
        if (!down_fixed) cfg.set_vertical(r + 1, c, down != 0);
        fpl_backtrack(cfg, vertex + 1, stop, visit);
        if (!right_fixed) cfg.set_horizontal(r, c + 1, old_right);
        if (!down_fixed) cfg.set_vertical(r + 1, c, old_down);
    }
}

} // namespace detail

template <class F>
void for_each_fpl(int n, BoundaryParity parity, F&& visit) {
    require_positive_size(n, "enumerate_fpl");
    FplConfiguration cfg(GridGeometry{n, parity});
    detail::fpl_backtrack(cfg, 0, n * n, visit);
}

inline std::vector<FplConfiguration> enumerate_fpl(int n, BoundaryParity parity = BoundaryParity::kCornerLeft) {
    std::vector<FplConfiguration> out;
    for_each_fpl(n, parity, [&](const FplConfiguration& c) { out.push_back(c); });
    return out;
}

// Same traversal split over threads by the first-row choices. Each worker gets
// its own visitor (made by make_visitor(worker_index)); the callback order
// within a worker is the sequential order.
template <class MakeVisitor>
void for_each_fpl_parallel(int n, BoundaryParity parity, int threads, MakeVisitor&& make_visitor) {
    require_positive_size(n, "enumerate_fpl");
    FplConfiguration cfg(GridGeometry{n, parity});
    std::vector<FplConfiguration> prefixes;
    auto collect = [&](const FplConfiguration& c) { prefixes.push_back(c); };
    detail::fpl_backtrack(cfg, 0, n, collect);
    threads = std::max(1, std::min<int>(threads, static_cast<int>(prefixes.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            auto visit = make_visitor(w);
            for (std::size_t k = static_cast<std::size_t>(w); k < prefixes.size(); k += static_cast<std::size_t>(threads)) {
                FplConfiguration local = prefixes[k];
                detail::fpl_backtrack(local, n, n * n, visit);
            }
        });
    }
    for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Alternating-sign matrices.

class AsmMatrix {
public:
    AsmMatrix() = default;
    AsmMatrix(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
        if (n < 1 || static_cast<int>(entries_.size()) != n * n) throw DomainError("AsmMatrix: wrong shape");
    }

    int n() const { return n_; }
    int operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r * n_ + c)]; }
    const std::vector<int>& entries() const { return entries_; }

    // Every row and column has partial sums in {0, 1} ending at 1.
    bool valid() const {
        for (int line = 0; line < n_; ++line) {
            int row_sum = 0;
            int col_sum = 0;
            for (int k = 0; k < n_; ++k) {
                const int a = (*this)(line, k);
                const int b = (*this)(k, line);
                if (a < -1 || a > 1 || b < -1 || b > 1) return false;
                row_sum += a;
                col_sum += b;
                if (row_sum < 0 || row_sum > 1 || col_sum < 0 || col_sum > 1) return false;
            }
            if (row_sum != 1 || col_sum != 1) return false;
        }
        return true;
    }

    std::string str() const {
        std::string s;
        for (int r = 0; r < n_; ++r) {
            s += r ? ";" : "";
            for (int c = 0; c < n_; ++c) {
                s += c ? " " : "";
                s += std::to_string((*this)(r, c));
            }
        }
        return s;
    }

    friend bool operator==(const AsmMatrix&, const AsmMatrix&) = default;
    friend auto operator<=>(const AsmMatrix& a, const AsmMatrix& b) { return a.entries_ <=> b.entries_; }

private:
    int n_ = 0;
    std::vector<int> entries_;
};

// Straight horizontal segment: +1 on the even sublattice, -1 on the odd one;
// vertical segments the opposite; corners 0.
inline AsmMatrix fpl_to_asm(const FplConfiguration& cfg) {
    const int n = cfg.n();
    std::vector<int> entries(static_cast<std::size_t>(n * n), 0);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (cfg.degree(r, c) != 2)
                throw DomainError("fpl_to_asm: vertex (" + std::to_string(r) + "," + std::to_string(c) +
                                  ") does not have degree 2");
            const int sign = cfg.geometry().even_vertex(r, c) ? 1 : -1;
            if (cfg.edge(r, c, Direction::kLeft) && cfg.edge(r, c, Direction::kRight)) entries[r * n + c] = sign;
            else if (cfg.edge(r, c, Direction::kUp) && cfg.edge(r, c, Direction::kDown)) entries[r * n + c] = -sign;
        }
    }
    return AsmMatrix(n, std::move(entries));
}

inline FplConfiguration asm_to_fpl(const AsmMatrix& m, BoundaryParity parity = BoundaryParity::kCornerLeft) {
    if (!m.valid()) throw DomainError("asm_to_fpl: input is not an alternating-sign matrix: " + m.str());
    const int n = m.n();
    FplConfiguration cfg(GridGeometry{n, parity});
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const bool left = cfg.edge(r, c, Direction::kLeft);
            const bool up = cfg.edge(r, c, Direction::kUp);
            const int sign = cfg.geometry().even_vertex(r, c) ? 1 : -1;
            bool right = false;
            bool down = false;
            if (m(r, c) * sign == 1) {
                if (!left || up) throw DomainError("asm_to_fpl: inconsistent horizontal segment");
                right = true;
            } else if (m(r, c) * sign == -1) {
                if (left || !up) throw DomainError("asm_to_fpl: inconsistent vertical segment");
                down = true;
            } else {
                right = !left;
                down = !up;
            }
            if (c == n - 1) {
                if (right != cfg.horizontal(r, n)) throw DomainError("asm_to_fpl: right boundary mismatch");
            } else {
                cfg.set_horizontal(r, c + 1, right);
            }
            if (r == n - 1) {
                if (down != cfg.vertical(n, c)) throw DomainError("asm_to_fpl: bottom boundary mismatch");
            } else {
                cfg.set_vertical(r + 1, c, down);
            }
        }
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Connectivity of the occupied external links.

inline LinkPattern boundary_pattern(const FplConfiguration& cfg) {
    const GridGeometry& g = cfg.geometry();
    const int n = g.n;
    const std::vector<int> ext = g.labelled_externals();
    std::vector<int> label_of(static_cast<std::size_t>(4 * n), -1);
    for (std::size_t k = 0; k < ext.size(); ++k) label_of[ext[k]] = static_cast<int>(k);

    // Vertex and inward direction for each external link.
    auto entry = [&](int t, int& r, int& c, Direction& from) {
        if (t < n) { r = 0; c = t; from = Direction::kUp; }
        else if (t < 2 * n) { r = t - n; c = n - 1; from = Direction::kRight; }
        else if (t < 3 * n) { r = n - 1; c = 3 * n - 1 - t; from = Direction::kDown; }
        else { r = 4 * n - 1 - t; c = 0; from = Direction::kLeft; }
    };

    std::vector<std::uint8_t> partners(ext.size(), 0xff);
    for (std::size_t k = 0; k < ext.size(); ++k) {
        if (partners[k] != 0xff) continue;
        int r = 0, c = 0;
        Direction from = Direction::kUp;
        entry(ext[k], r, c, from);
        for (int steps = 0;; ++steps) {
            if (steps > 4 * n * n) throw StructuralFailure("boundary_pattern: path does not terminate");
            Direction out = from;
            for (int d = 0; d < 4; ++d) {
                const auto dir = static_cast<Direction>(d);
                if (dir != from && cfg.edge(r, c, dir)) {
                    out = dir;
                    break;
                }
            }
            if (out == from) throw DomainError("boundary_pattern: dead end at a vertex");
            int nr = r, nc = c;
            switch (out) {
            case Direction::kUp: --nr; break;
            case Direction::kDown: ++nr; break;
            case Direction::kLeft: --nc; break;
            case Direction::kRight: ++nc; break;
            }
            if (nr < 0 || nr >= n || nc < 0 || nc >= n) {
                const int t = g.external_index(r, c, out);
                const int other = label_of[t];
                if (other < 0) throw DomainError("boundary_pattern: path leaves through an unoccupied link");
                partners[k] = static_cast<std::uint8_t>(other);
                partners[other] = static_cast<std::uint8_t>(k);
                break;
            }
            r = nr;
            c = nc;
            from = static_cast<Direction>((static_cast<int>(out) + 2) % 4);
        }
    }
    // Planarity guarantees noncrossing; from_partners re-checks it.
    return LinkPattern::from_partners(std::move(partners));
}

// ---------------------------------------------------------------------------
// Counting.

inline constexpr int kDefaultEnumerationLimit = 7;

struct EnumerationOptions {
    int max_n = kDefaultEnumerationLimit;
    int threads = 1;
    BoundaryParity parity = BoundaryParity::kCornerLeft;
};

inline void check_enumeration_guard(int n, const EnumerationOptions& opt) {
    require_positive_size(n, "FPL enumeration");
    if (n > opt.max_n)
        throw GuardRefusal("exhaustive FPL enumeration at n=" + std::to_string(n) + " refused", opt.max_n);
}

inline std::uint64_t count_fpl(int n, const EnumerationOptions& opt = {}) {
    check_enumeration_guard(n, opt);
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(std::max(1, opt.threads)), 0);
    for_each_fpl_parallel(n, opt.parity, opt.threads, [&](int w) {
        return [&partial, w](const FplConfiguration&) { ++partial[w]; };
    });
    std::uint64_t total = 0;
    for (auto v : partial) total += v;
    return total;
}

// A_n(pi) for every pattern realised at least once.
inline std::map<LinkPattern, std::uint64_t> count_by_pattern(int n, const EnumerationOptions& opt = {}) {
    check_enumeration_guard(n, opt);
    std::vector<std::map<LinkPattern, std::uint64_t>> partial(static_cast<std::size_t>(std::max(1, opt.threads)));
    for_each_fpl_parallel(n, opt.parity, opt.threads, [&](int w) {
        return [&partial, w](const FplConfiguration& c) { ++partial[w][boundary_pattern(c)]; };
    });
    std::map<LinkPattern, std::uint64_t> merged;
    for (auto& m : partial)
        for (auto& [p, v] : m) merged[p] += v;
    return merged;
}

// prod_{j=0..n-1} (3j+1)! / (n+j)!, via A_{k+1} = A_k (3k+1)! k! / ((2k)! (2k+1)!)
inline BigInt a_total(int n) {
    if (n < 1) throw DomainError("a_total: n must be positive");
    BigInt a = 1;
    for (int k = 1; k < n; ++k)
        a = require_integer(make_rational(a * factorial(3 * k + 1) * factorial(k), factorial(2 * k) * factorial(2 * k + 1)),
                            "A_" + std::to_string(k + 1));
    return a;
}

} // namespace fpl
