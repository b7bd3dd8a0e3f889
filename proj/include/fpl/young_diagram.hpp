#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "fpl/bigint.hpp"
#include "fpl/link_pattern.hpp"

namespace fpl {

// Partition with weakly decreasing positive rows; {} is the empty diagram.
class YoungDiagram {
public:
    YoungDiagram() = default;

    explicit YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i] < 1) throw DomainError("YoungDiagram: rows must be positive");
            if (i > 0 && rows_[i] > rows_[i - 1]) throw DomainError("YoungDiagram: rows must be weakly decreasing");
        }
    }

    // rows x cols rectangle; empty when either side is zero.
    static YoungDiagram rectangle(int rows, int cols) {
        if (rows <= 0 || cols <= 0) return {};
        return YoungDiagram(std::vector<int>(static_cast<std::size_t>(rows), cols));
    }

    // (k-1, k-2, ..., 1)
    static YoungDiagram staircase(int k) {
        std::vector<int> rows;
        for (int r = k - 1; r >= 1; --r) rows.push_back(r);
        return YoungDiagram(std::move(rows));
    }

    // "3,2,1"; the empty string is the empty diagram.
    static YoungDiagram parse(std::string_view text) {
        std::vector<int> rows;
        std::string cur;
        for (char c : text) {
            if (c >= '0' && c <= '9') {
                cur += c;
            } else if (c == ',') {
                if (cur.empty()) throw DomainError("YoungDiagram: empty row in '" + std::string(text) + "'");
                rows.push_back(std::stoi(cur));
                cur.clear();
            } else if (c != ' ' && c != '(' && c != ')') {
                throw DomainError("YoungDiagram: unexpected character '" + std::string(1, c) + "'");
            }
        }
        if (!cur.empty()) rows.push_back(std::stoi(cur));
        return YoungDiagram(std::move(rows));
    }

    const std::vector<int>& rows() const { return rows_; }
    int row_count() const { return static_cast<int>(rows_.size()); }
    bool empty() const { return rows_.empty(); }
    int boxes() const { return std::accumulate(rows_.begin(), rows_.end(), 0); }

    int column_length(int j) const {
        int c = 0;
        while (c < row_count() && rows_[c] > j) ++c;
        return c;
    }

    YoungDiagram transpose() const {
        std::vector<int> cols;
        const int width = empty() ? 0 : rows_.front();
        for (int j = 0; j < width; ++j) cols.push_back(column_length(j));
        return YoungDiagram(std::move(cols));
    }

    // Representative of {Y, Y^T}: first row at least as long as first column.
    YoungDiagram canonical() const {
        if (empty() || rows_.front() >= row_count()) return *this;
        return transpose();
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(rows_[i]);
        }
        return s;
    }

    friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
    friend auto operator<=>(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ <=> b.rows_; }

private:
    std::vector<int> rows_;
};

inline BigInt hook_product(const YoungDiagram& y) {
    BigInt prod = 1;
    const auto& rows = y.rows();
    for (int i = 0; i < y.row_count(); ++i) {
        for (int j = 0; j < rows[i]; ++j) {
            const int arm = rows[i] - j - 1;
            const int leg = y.column_length(j) - i - 1;
            prod *= arm + leg + 1;
        }
    }
    return prod;
}

// Number of standard tableaux of shape y.
inline BigInt dim_sym(const YoungDiagram& y) {
    const BigInt f = factorial(y.boxes());
    const BigInt h = hook_product(y);
    if (f % h != 0) throw StructuralFailure("hook product does not divide |Y|! for " + y.str());
    return f / h;
}

// dim(Y) / |Y|! = 1 / hook_product(Y)
inline BigRational dim_ratio(const YoungDiagram& y) { return BigRational(1, 1) / BigRational(hook_product(y)); }

// F(Y): every diagram obtained by adding one box, ordered by the row receiving it.
inline std::vector<YoungDiagram> add_box(const YoungDiagram& y) {
    std::vector<YoungDiagram> out;
    const auto& rows = y.rows();
    for (int i = 0; i <= y.row_count(); ++i) {
        const int len = i < y.row_count() ? rows[i] : 0;
        if (i > 0 && rows[i - 1] == len) continue;
        std::vector<int> next = rows;
        if (i < y.row_count()) ++next[i];
        else next.push_back(1);
        out.emplace_back(std::move(next));
    }
    return out;
}

// All partitions of k, in reverse lexicographic order ((k) first).
inline std::vector<YoungDiagram> partitions(int k) {
    std::vector<YoungDiagram> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int max_part) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int part = std::min(left, max_part); part >= 1; --part) {
            cur.push_back(part);
            rec(left - part, part);
            cur.pop_back();
        }
    };
    rec(k, k);
    return out;
}

// ---------------------------------------------------------------------------
// Dyck word <-> complementary diagram inside the staircase.
//
// With u_1 < ... < u_n the 0-based positions of the up-steps, the k-th
// column offset from the maximal word U^n D^n is u_k - (k-1); the nonzero
// offsets, sorted decreasingly, are the rows of the diagram.

inline YoungDiagram dyck_to_young(const DyckWord& w) {
    if (!w.balanced()) throw DomainError("dyck_to_young: word is not balanced");
    std::vector<int> rows;
    int k = 0;
    for (std::size_t pos = 0; pos < w.length(); ++pos) {
        if (!w.up(pos)) continue;
        const int offset = static_cast<int>(pos) - k;
        if (offset > 0) rows.push_back(offset);
        ++k;
    }
    std::sort(rows.rbegin(), rows.rend());
    return YoungDiagram(std::move(rows));
}

// Smallest number of arches whose staircase contains y; the corresponding
// word has no arch enclosing all the others.
inline int min_arches(const YoungDiagram& y) {
    int r = 0;
    for (int i = 0; i < y.row_count(); ++i) r = std::max(r, y.rows()[i] + i + 1);
    return r;
}

// Word of length 2*arches whose complementary diagram is y.
inline DyckWord young_to_dyck(const YoungDiagram& y, int arches) {
    if (arches < min_arches(y))
        throw DomainError("young_to_dyck: diagram " + y.str() + " needs at least " +
                          std::to_string(min_arches(y)) + " arches");
    std::vector<int> offsets(static_cast<std::size_t>(arches), 0);
    for (int i = 0; i < y.row_count(); ++i) offsets[arches - 1 - i] = y.rows()[i];
    std::vector<bool> up(static_cast<std::size_t>(2 * arches), false);
    for (int k = 0; k < arches; ++k) up[offsets[k] + k] = true;
    return DyckWord(std::move(up));
}

// Cluster y anchored at point 1, then n - r - r' parallel arches separating it
// from cluster yp: the word w(y) U^m w(yp) D^m.
inline LinkPattern pattern_from_young_pair(const YoungDiagram& y, const YoungDiagram& yp, int n) {
    require_positive_size(n, "pattern_from_young_pair");
    const int r = min_arches(y);
    const int rp = min_arches(yp);
    const int m = n - r - rp;
    if (m < 0)
        throw DomainError("pattern_from_young_pair: n=" + std::to_string(n) + " is smaller than " +
                          std::to_string(r) + " + " + std::to_string(rp) + " arches");
    DyckWord w = young_to_dyck(y, r) + up_steps(m) + young_to_dyck(yp, rp) + down_steps(m);
    return dyck_to_pattern(w);
}

} // namespace fpl
