#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fpl/bigint.hpp"
#include "fpl/errors.hpp"

namespace fpl {

// Square matrix with small nonnegative integer entries, stored by column.
class SparseIntMatrix {
public:
    using Column = std::vector<std::pair<int, std::int64_t>>; // (row, value), rows ascending

    SparseIntMatrix() = default;
    explicit SparseIntMatrix(int dim) : columns_(static_cast<std::size_t>(dim)) {}

    int dim() const { return static_cast<int>(columns_.size()); }

    void add(int row, int col, std::int64_t v) {
        auto& column = columns_[static_cast<std::size_t>(col)];
        auto it = std::lower_bound(column.begin(), column.end(), row,
                                   [](const auto& e, int r) { return e.first < r; });
        if (it != column.end() && it->first == row) it->second += v;
        else column.insert(it, {row, v});
    }

    std::int64_t at(int row, int col) const {
        const auto& column = columns_[static_cast<std::size_t>(col)];
        auto it = std::lower_bound(column.begin(), column.end(), row,
                                   [](const auto& e, int r) { return e.first < r; });
        return it != column.end() && it->first == row ? it->second : 0;
    }

    const Column& column(int col) const { return columns_[static_cast<std::size_t>(col)]; }

    std::int64_t column_sum(int col) const {
        std::int64_t s = 0;
        for (const auto& e : column(col)) s += e.second;
        return s;
    }

    std::size_t nonzeros() const {
        std::size_t k = 0;
        for (const auto& c : columns_) k += c.size();
        return k;
    }

    template <class T>
    std::vector<T> multiply(const std::vector<T>& x) const {
        std::vector<T> y(x.size(), T(0));
        for (int c = 0; c < dim(); ++c)
            for (const auto& [r, v] : column(c)) y[r] += x[c] * static_cast<long>(v);
        return y;
    }

private:
    std::vector<Column> columns_;
};

namespace detail {

using SparseRow = std::vector<std::pair<int, BigInt>>; // (column, value), columns ascending

inline const BigInt* find_entry(const SparseRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, int c) { return e.first < c; });
    return it != row.end() && it->first == col ? &it->second : nullptr;
}

// Divide the row by the gcd of its entries.
inline void make_primitive(SparseRow& row) {
    BigInt g = 0;
    for (const auto& e : row) {
        g = gcd(g, e.second);
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

// target <- (p/g) target - (a/g) pivot_row, where a is target's entry in the
// pivot column and g = gcd(p, a).
inline void eliminate(SparseRow& target, const SparseRow& pivot_row, const BigInt& p, const BigInt& a) {
    const BigInt g = gcd(p, a);
    const BigInt ft = p / g;
    const BigInt fp = a / g;
    SparseRow out;
    out.reserve(target.size() + pivot_row.size());
    auto it = target.begin();
    auto jt = pivot_row.begin();
    BigInt v;
    while (it != target.end() || jt != pivot_row.end()) {
        if (jt == pivot_row.end() || (it != target.end() && it->first < jt->first)) {
            out.emplace_back(it->first, ft * it->second);
            ++it;
        } else if (it == target.end() || jt->first < it->first) {
            out.emplace_back(jt->first, -fp * jt->second);
            ++jt;
        } else {
            v = ft * it->second - fp * jt->second;
            if (v != 0) out.emplace_back(it->first, v);
            ++it;
            ++jt;
        }
    }
    make_primitive(out);
    target = std::move(out);
}

} // namespace detail

struct KernelResult {
    int rank = 0;
    std::vector<BigInt> vector; // primitive integer generator (when the kernel is one-dimensional)
};

// Integer kernel of (M - shift * I) by fraction-free sparse elimination.
//
// Each elimination step combines rows with integer multipliers only and then
// divides the row by its content, so no fractions ever appear.
// Back substitution keeps an integer vector and rescales it whenever a pivot
// does not divide the accumulated sum.
//
// Throws StructuralFailure unless the kernel is exactly one-dimensional.
inline KernelResult integer_kernel(const SparseIntMatrix& m, std::int64_t shift) {
    using detail::SparseRow;
    const int dim = m.dim();
    std::vector<SparseRow> rows(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) {
        bool diag = false;
        for (const auto& [r, v] : m.column(c)) {
            std::int64_t val = v;
            if (r == c) {
                val -= shift;
                diag = true;
            }
            if (val != 0) rows[r].emplace_back(c, BigInt(static_cast<long>(val)));
        }
        if (!diag && shift != 0) rows[c].emplace_back(c, BigInt(static_cast<long>(-shift)));
    }
    for (auto& r : rows) std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<char> active(static_cast<std::size_t>(dim), 1);
    std::vector<char> pivoted_col(static_cast<std::size_t>(dim), 0);
    std::vector<int> col_count(static_cast<std::size_t>(dim), 0);
    for (const auto& r : rows)
        for (const auto& e : r) ++col_count[e.first];
    std::vector<std::pair<int, int>> pivots; // (row, col) in elimination order

    for (;;) {
        // Markowitz-style choice among the shortest rows: the entry whose
        // column is least populated, then the smallest magnitude.
        std::size_t min_len = 0;
        for (int r = 0; r < dim; ++r) {
            if (!active[r]) continue;
            if (rows[r].empty()) {
                active[r] = 0;
                continue;
            }
            if (min_len == 0 || rows[r].size() < min_len) min_len = rows[r].size();
        }
        if (min_len == 0) break;
        int best_row = -1;
        std::size_t best_k = 0;
        for (int r = 0; r < dim; ++r) {
            if (!active[r] || rows[r].size() != min_len) continue;
            for (std::size_t k = 0; k < rows[r].size(); ++k) {
                if (best_row < 0) {
                    best_row = r;
                    best_k = k;
                    continue;
                }
                const auto& cand = rows[r][k];
                const auto& best = rows[best_row][best_k];
                const int cc = col_count[cand.first];
                const int bc = col_count[best.first];
                if (cc < bc || (cc == bc && mpz_cmpabs(cand.second.get_mpz_t(), best.second.get_mpz_t()) < 0)) {
                    best_row = r;
                    best_k = k;
                }
            }
        }
        const SparseRow& prow = rows[best_row];
        const int pcol = prow[best_k].first;
        const BigInt pval = prow[best_k].second;
        active[best_row] = 0;
        pivoted_col[pcol] = 1;
        pivots.emplace_back(best_row, pcol);
        for (const auto& e : prow) --col_count[e.first];
        for (int r = 0; r < dim; ++r) {
            if (!active[r]) continue;
            const BigInt* a = detail::find_entry(rows[r], pcol);
            if (!a) continue;
            for (const auto& e : rows[r]) --col_count[e.first];
            detail::eliminate(rows[r], prow, pval, BigInt(*a));
            for (const auto& e : rows[r]) ++col_count[e.first];
        }
    }

    KernelResult result;
    result.rank = static_cast<int>(pivots.size());
    const int nullity = dim - result.rank;
    if (nullity != 1)
        throw StructuralFailure("kernel of the shifted matrix has dimension " + std::to_string(nullity) +
                                " (expected 1, matrix dimension " + std::to_string(dim) + ")");
    int free_col = -1;
    for (int c = 0; c < dim; ++c)
        if (!pivoted_col[c]) free_col = c;

    std::vector<BigInt> x(static_cast<std::size_t>(dim), BigInt(0));
    x[free_col] = 1;
    BigInt sum, g, q;
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        const auto [r, c] = *it;
        sum = 0;
        BigInt p = 0;
        for (const auto& [col, v] : rows[r]) {
            if (col == c) p = v;
            else if (x[col] != 0) sum += v * x[col];
        }
        g = gcd(sum, p);
        q = p / g;
        if (q != 1)
            for (auto& xv : x)
                if (xv != 0) xv *= q;
        x[c] = -(sum / g);
    }
    BigInt content = 0;
    for (const auto& v : x) content = gcd(content, v);
    if (content > 1)
        for (auto& v : x) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    result.vector = std::move(x);
    return result;
}

// ---------------------------------------------------------------------------
// Multimodular route for large bases: a kernel vector of M - shift * I modulo
// word-sized primes by Wiedemann's method, combined by Chinese remaindering.
// A candidate is accepted only when (M - shift * I) x = 0 holds exactly over
// the integers and x is strictly positive; for a nonnegative irreducible M
// this makes shift the Perron root, so the rational kernel is spanned by x.

// Strong connectivity of the directed graph with an edge c -> r per entry.
inline bool is_irreducible(const SparseIntMatrix& m) {
    const int dim = m.dim();
    if (dim == 0) return false;
    std::vector<std::vector<int>> fwd(static_cast<std::size_t>(dim)), bwd(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c)
        for (const auto& [r, v] : m.column(c)) {
            if (v < 0) return false;
            if (v == 0) continue;
            fwd[c].push_back(r);
            bwd[r].push_back(c);
        }
    auto reaches_all = [dim](const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(static_cast<std::size_t>(dim), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == dim;
    };
    return reaches_all(fwd) && reaches_all(bwd);
}

namespace detail {

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    for (a %= p; e; e >>= 1) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

// (M - shift * I) mod p in compressed rows; p < 2^31, entries of M below 2^24.
class ModularOperator {
public:
    ModularOperator(const SparseIntMatrix& m, std::int64_t shift, std::uint64_t p)
        : dim_(m.dim()), p_(p), start_(static_cast<std::size_t>(m.dim()) + 1, 0) {
        std::int64_t sp = shift % static_cast<std::int64_t>(p);
        if (sp < 0) sp += static_cast<std::int64_t>(p);
        neg_shift_ = (p - static_cast<std::uint64_t>(sp)) % p;
        for (int c = 0; c < dim_; ++c)
            for (const auto& e : m.column(c)) {
                if (e.second < 0 || e.second >= (1 << 24))
                    throw DomainError("multimodular kernel: entries must lie in [0, 2^24)");
                ++start_[static_cast<std::size_t>(e.first) + 1];
            }
        for (int r = 0; r < dim_; ++r) start_[r + 1] += start_[r];
        cols_.resize(start_.back());
        vals_.resize(start_.back());
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        for (int c = 0; c < dim_; ++c)
            for (const auto& [r, v] : m.column(c)) {
                cols_[fill[r]] = c;
                vals_[fill[r]++] = static_cast<std::uint64_t>(v);
            }
    }

    void apply(const std::vector<std::uint64_t>& x, std::vector<std::uint64_t>& y) const {
        y.resize(x.size());
        for (int r = 0; r < dim_; ++r) {
            std::uint64_t acc = neg_shift_ * x[r] % p_;
            for (std::size_t k = start_[r]; k < start_[r + 1]; ++k) acc += vals_[k] * x[cols_[k]];
            y[r] = acc % p_;
        }
    }

private:
    int dim_;
    std::uint64_t p_;
    std::uint64_t neg_shift_ = 0;
    std::vector<std::size_t> start_;
    std::vector<int> cols_;
    std::vector<std::uint64_t> vals_;
};

// Berlekamp-Massey: connection polynomial c (c[0] = 1) of the sequence.
inline std::vector<std::uint64_t> berlekamp_massey(const std::vector<std::uint64_t>& s, std::uint64_t p) {
    std::vector<std::uint64_t> c{1}, b{1};
    std::size_t len = 0;
    std::size_t shift = 1;
    std::uint64_t last = 1;
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::uint64_t d = 0;
        for (std::size_t i = 0; i <= len && i < c.size(); ++i) d = (d + c[i] * s[k - i]) % p;
        if (d == 0) {
            ++shift;
            continue;
        }
        const std::uint64_t coef = d * invmod(last, p) % p;
        std::vector<std::uint64_t> t = c;
        if (c.size() < b.size() + shift) c.resize(b.size() + shift, 0);
        for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] = (c[i + shift] + p - coef * b[i] % p) % p;
        if (2 * len <= k) {
            len = k + 1 - len;
            b = std::move(t);
            last = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    c.resize(len + 1, 0);
    return c;
}

} // namespace detail

// Kernel vector of (M - shift * I) mod p with x[anchor] = 1, for p < 2^31.
// Empty when this prime (or the random projections) fail; callers retry.
inline std::vector<std::uint64_t> modular_kernel(const SparseIntMatrix& m, std::int64_t shift, std::uint64_t p,
                                                 int anchor, std::uint64_t seed = 1) {
    const int dim = m.dim();
    const detail::ModularOperator op(m, shift, p);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, p - 1);
    std::vector<std::uint64_t> u(static_cast<std::size_t>(dim)), b(static_cast<std::size_t>(dim));
    for (auto& v : u) v = dist(rng);
    for (auto& v : b) v = dist(rng);

    // s_k = u . A^k b
    std::vector<std::uint64_t> seq;
    seq.reserve(2 * static_cast<std::size_t>(dim) + 2);
    std::vector<std::uint64_t> cur = b, next;
    for (int k = 0; k < 2 * dim + 2; ++k) {
        std::uint64_t dot = 0;
        for (int i = 0; i < dim; ++i) dot = (dot + u[i] * cur[i]) % p;
        seq.push_back(dot);
        op.apply(cur, next);
        cur.swap(next);
    }
    // minimal polynomial f(z) = sum_i c[i] z^(L-i); strip the factor z^v.
    const auto c = detail::berlekamp_massey(seq, p);
    const std::size_t len = c.size() - 1;
    std::size_t low = 0;
    while (low < len && c[len - low] == 0) ++low;
    if (low == 0) return {};
    // g(z) = f(z) / z^low, y = g(A) b by Horner
    std::vector<std::uint64_t> y(static_cast<std::size_t>(dim), 0);
    for (std::size_t i = 0; i + low <= len; ++i) {
        op.apply(y, next);
        for (int r = 0; r < dim; ++r) next[r] = (next[r] + c[i] * b[r]) % p;
        y.swap(next);
    }
    auto is_zero = [](const std::vector<std::uint64_t>& v) {
        return std::all_of(v.begin(), v.end(), [](std::uint64_t e) { return e == 0; });
    };
    for (std::size_t k = 0; k < low; ++k) {
        if (is_zero(y)) return {};
        op.apply(y, next);
        if (is_zero(next)) break;
        y.swap(next);
    }
    op.apply(y, next);
    if (is_zero(y) || !is_zero(next) || y[anchor] == 0) return {};
    const std::uint64_t scale = detail::invmod(y[anchor], p);
    for (auto& v : y) v = v * scale % p;
    return y;
}

// Integral kernel vector with x[anchor] = 1 assembled over several primes.
inline std::vector<BigInt> multimodular_kernel(const SparseIntMatrix& m, std::int64_t shift, int anchor,
                                               int max_primes = 64) {
    if (!is_irreducible(m)) throw StructuralFailure("multimodular kernel needs a nonnegative irreducible matrix");
    BigInt modulus = 1;
    std::vector<BigInt> residues(static_cast<std::size_t>(m.dim()), BigInt(0));
    BigInt prime = BigInt(1) << 31;
    int used = 0;
    for (int attempt = 0; attempt < 2 * max_primes && used < max_primes; ++attempt) {
        do prime -= 1;
        while (mpz_probab_prime_p(prime.get_mpz_t(), 30) == 0);
        const std::uint64_t p = prime.get_ui();
        const auto xp = modular_kernel(m, shift, p, anchor, static_cast<std::uint64_t>(attempt) + 1);
        if (xp.empty()) continue;
        ++used;
        const std::uint64_t minv = detail::invmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
        for (std::size_t k = 0; k < residues.size(); ++k) {
            const std::uint64_t rk = mpz_fdiv_ui(residues[k].get_mpz_t(), p);
            const std::uint64_t t = (xp[k] + p - rk) % p * minv % p;
            residues[k] += modulus * BigInt(static_cast<unsigned long>(t));
        }
        modulus *= prime;
        if (std::any_of(residues.begin(), residues.end(), [](const BigInt& v) { return v == 0; })) continue;
        const auto hx = m.multiply(residues);
        bool exact = true;
        for (std::size_t k = 0; k < residues.size() && exact; ++k)
            exact = hx[k] == residues[k] * static_cast<long>(shift);
        if (exact) return residues;
    }
    throw StructuralFailure("no positive integral kernel vector normalised at the anchor was found with " +
                            std::to_string(used) + " primes");
}

} // namespace fpl
