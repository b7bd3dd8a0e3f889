#pragma once

// Deliberately naive re-implementations used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Partners = std::vector<int>; // 0-based partner of each point

inline mpz_class binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline mpz_class catalan(long n) { return binom(2 * n, n) / (n + 1); }

inline mpz_class fact(long n) {
    mpz_class r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// All noncrossing perfect matchings of 2n points on a circle, by recursion on
// the partner of point 0.
inline std::vector<Partners> matchings(int n) {
    std::function<std::vector<std::vector<std::pair<int, int>>>(int, int)> rec = [&](int lo, int hi) {
        std::vector<std::vector<std::pair<int, int>>> out;
        if (lo > hi) {
            out.push_back({});
            return out;
        }
        for (int j = lo + 1; j <= hi; j += 2)
            for (const auto& inner : rec(lo + 1, j - 1))
                for (const auto& outer : rec(j + 1, hi)) {
                    auto v = inner;
                    v.insert(v.end(), outer.begin(), outer.end());
                    v.emplace_back(lo, j);
                    out.push_back(std::move(v));
                }
        return out;
    };
    std::vector<Partners> res;
    for (const auto& arcs : rec(0, 2 * n - 1)) {
        Partners p(2 * n);
        for (auto [a, b] : arcs) {
            p[a] = b;
            p[b] = a;
        }
        res.push_back(p);
    }
    return res;
}

inline Partners rotate(const Partners& p, int k) {
    const int m = static_cast<int>(p.size());
    Partners q(m);
    for (int i = 0; i < m; ++i) q[(i + k) % m] = (p[i] + k) % m;
    return q;
}

inline Partners reflect(const Partners& p) {
    const int m = static_cast<int>(p.size());
    Partners q(m);
    for (int i = 0; i < m; ++i) q[(m - i) % m] = (m - p[i]) % m;
    return q;
}

// Orbits as sets, by closing under one rotation and one reflection.
inline std::vector<std::set<Partners>> orbits(int n) {
    std::vector<std::set<Partners>> out;
    std::set<Partners> seen;
    for (const auto& p : matchings(n)) {
        if (seen.count(p)) continue;
        std::set<Partners> orbit{p};
        std::vector<Partners> todo{p};
        while (!todo.empty()) {
            Partners q = todo.back();
            todo.pop_back();
            for (const Partners& r : {rotate(q, 1), reflect(q)})
                if (orbit.insert(r).second) todo.push_back(r);
        }
        seen.insert(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

// e_i (0-based i, acting on points i and i+1 mod 2n), loop weight 1.
inline Partners tl(const Partners& p, int i) {
    const int m = static_cast<int>(p.size());
    const int j = (i + 1) % m;
    if (p[i] == j) return p;
    Partners q = p;
    const int a = p[i], b = p[j];
    q[i] = j;
    q[j] = i;
    q[a] = b;
    q[b] = a;
    return q;
}

// Kernel of a dense rational matrix by Gauss-Jordan; returns a basis.
inline std::vector<std::vector<mpq_class>> kernel(std::vector<std::vector<mpq_class>> a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int k = r; k < rows; ++k)
            if (a[k][c] != 0) {
                piv = k;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        const mpq_class inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (int k = 0; k < rows; ++k) {
            if (k == r || a[k][c] == 0) continue;
            const mpq_class f = a[k][c];
            for (int j = 0; j < cols; ++j) a[k][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<mpq_class>> basis;
    for (int free = 0; free < cols; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
        std::vector<mpq_class> v(cols, 0);
        v[free] = 1;
        for (int k = 0; k < static_cast<int>(pivot_col.size()); ++k) v[pivot_col[k]] = -a[k][free];
        basis.push_back(v);
    }
    return basis;
}

// Full-basis eigenvector of sum_i e_i at 2n, scaled so the nested pattern is 1.
inline std::map<Partners, mpq_class> ground_state(int n) {
    const auto pats = matchings(n);
    std::map<Partners, int> idx;
    for (int k = 0; k < static_cast<int>(pats.size()); ++k) idx[pats[k]] = k;
    const int dim = static_cast<int>(pats.size());
    std::vector<std::vector<mpq_class>> h(dim, std::vector<mpq_class>(dim, 0));
    for (int c = 0; c < dim; ++c) {
        h[c][c] -= 2 * n;
        for (int i = 0; i < 2 * n; ++i) h[idx.at(tl(pats[c], i))][c] += 1;
    }
    const auto ker = kernel(h);
    if (ker.size() != 1) return {};
    Partners nested(2 * n);
    for (int i = 0; i < 2 * n; ++i) nested[i] = 2 * n - 1 - i;
    const mpq_class scale = ker[0][idx.at(nested)];
    std::map<Partners, mpq_class> out;
    for (int k = 0; k < dim; ++k) out[pats[k]] = ker[0][k] / scale;
    return out;
}

// Alternating-sign matrices by cell-wise backtracking on partial sums.
inline std::vector<std::vector<int>> asms(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> m(n * n, 0), col(n, 0);
    std::function<void(int, int)> rec = [&](int cell, int row_sum) {
        if (cell == n * n) {
            out.push_back(m);
            return;
        }
        const int r = cell / n, c = cell % n;
        for (int v : {-1, 0, 1}) {
            const int rs = row_sum + v, cs = col[c] + v;
            if (rs < 0 || rs > 1 || cs < 0 || cs > 1) continue;
            if (c == n - 1 && rs != 1) continue;
            if (r == n - 1 && cs != 1) continue;
            m[cell] = v;
            col[c] = cs;
            rec(cell + 1, c == n - 1 ? 0 : rs);
            col[c] -= v;
            m[cell] = 0;
        }
    };
    rec(0, 0);
    return out;
}

// Standard Young tableaux of shape rows, by removing corners.
inline mpz_class tableaux(std::vector<int> rows) {
    while (!rows.empty() && rows.back() == 0) rows.pop_back();
    if (rows.empty()) return 1;
    mpz_class total = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i + 1 < rows.size() && rows[i + 1] == rows[i]) continue;
        auto next = rows;
        --next[i];
        total += tableaux(next);
    }
    return total;
}

// Plane partitions fitting in an a x b x c box, brute force.
inline long plane_partitions(int a, int b, int c) {
    if (a == 0 || b == 0) return 1;
    std::vector<int> h(a * b, 0);
    long count = 0;
    std::function<void(int)> rec = [&](int cell) {
        if (cell == a * b) {
            ++count;
            return;
        }
        const int i = cell / b, j = cell % b;
        int hi = c;
        if (i > 0) hi = std::min(hi, h[(i - 1) * b + j]);
        if (j > 0) hi = std::min(hi, h[i * b + j - 1]);
        for (int v = 0; v <= hi; ++v) {
            h[cell] = v;
            rec(cell + 1);
        }
    };
    rec(0);
    return count;
}

inline mpq_class eval(const std::vector<mpq_class>& ascending, const mpq_class& x) {
    mpq_class v = 0;
    for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) v = v * x + *it;
    return v;
}

} // namespace oracle
