#pragma once

#include <string>
#include <vector>

#include "fpl/bigint.hpp"
#include "fpl/errors.hpp"
#include "fpl/link_pattern.hpp"

namespace fpl {

// Power series truncated after x^order, exact rational coefficients.
class RationalSeries {
public:
    explicit RationalSeries(int order) : coeffs_(static_cast<std::size_t>(check(order)) + 1, BigRational(0)) {}

    static RationalSeries constant(int order, const BigRational& c) {
        RationalSeries s(order);
        s.coeffs_[0] = c;
        return s;
    }

    static RationalSeries monomial(int order, int power, const BigRational& c = 1) {
        RationalSeries s(order);
        if (power >= 0 && power <= order) s.coeffs_[static_cast<std::size_t>(power)] = c;
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const BigRational& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    BigRational& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<BigRational>& coefficients() const { return coeffs_; }

    RationalSeries& operator+=(const RationalSeries& o) {
        same_order(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }

    RationalSeries& operator-=(const RationalSeries& o) {
        same_order(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }

    RationalSeries& operator*=(const BigRational& c) {
        for (auto& v : coeffs_) v *= c;
        return *this;
    }

    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }
    friend RationalSeries operator*(RationalSeries a, const BigRational& c) { return a *= c; }
    friend RationalSeries operator*(const BigRational& c, RationalSeries a) { return a *= c; }

    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
        a.same_order(b);
        RationalSeries r(a.order());
        const int n = a.order();
        for (int i = 0; i <= n; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (int j = 0; i + j <= n; ++j)
                if (b.coeffs_[j] != 0) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return r;
    }

    // x -> x^k
    RationalSeries substitute(int k) const {
        if (k < 1) throw DomainError("RationalSeries::substitute: power must be positive");
        RationalSeries r(order());
        for (int i = 0; i * k <= order(); ++i) r.coeffs_[i * k] = coeffs_[i];
        return r;
    }

    RationalSeries inverse() const {
        if (coeffs_[0] == 0) throw DomainError("RationalSeries::inverse: zero constant term");
        RationalSeries r(order());
        const BigRational inv0 = BigRational(1) / coeffs_[0];
        r.coeffs_[0] = inv0;
        for (int k = 1; k <= order(); ++k) {
            BigRational s = 0;
            for (int j = 1; j <= k; ++j) s += coeffs_[j] * r.coeffs_[k - j];
            r.coeffs_[k] = -s * inv0;
        }
        return r;
    }

    RationalSeries pow(int e) const {
        if (e < 0) throw DomainError("RationalSeries::pow: negative exponent");
        RationalSeries r = constant(order(), 1);
        RationalSeries b = *this;
        for (; e; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }

    // Drops x^0 and divides by x; the top coefficient becomes 0.
    RationalSeries divide_by_x() const {
        if (coeffs_[0] != 0) throw DomainError("RationalSeries::divide_by_x: nonzero constant term");
        RationalSeries r(order());
        for (int k = 1; k <= order(); ++k) r.coeffs_[k - 1] = coeffs_[k];
        return r;
    }

    RationalSeries truncate(int order) const {
        RationalSeries r(order);
        for (int k = 0; k <= std::min(order, this->order()); ++k) r.coeffs_[k] = coeffs_[k];
        return r;
    }

    friend bool operator==(const RationalSeries&, const RationalSeries&) = default;

private:
    static int check(int order) {
        if (order < 0) throw DomainError("RationalSeries: negative order");
        return order;
    }

    void same_order(const RationalSeries& o) const {
        if (o.order() != order()) throw DomainError("RationalSeries: mismatched orders");
    }

    std::vector<BigRational> coeffs_;
};

inline long euler_phi(long m) {
    if (m < 1) throw DomainError("euler_phi: argument must be positive");
    long result = m;
    long rest = m;
    for (long p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        while (rest % p == 0) rest /= p;
        result -= result / p;
    }
    if (rest > 1) result -= result / rest;
    return result;
}

inline BigInt catalan(long n) { return binomial(2 * n, n) / (n + 1); }

// c(x) = sum_{n>=0} C_n x^(n+1)
inline RationalSeries catalan_series(int order) {
    if (order < 1) throw DomainError("catalan_series: order must be at least 1");
    RationalSeries c(order);
    for (int n = 0; n + 1 <= order; ++n) c[n + 1] = BigRational(catalan(n));
    return c;
}

// a(x) = x / (1 - x - c(x^2))
inline RationalSeries a_series(int order) {
    if (order < 1) throw DomainError("a_series: order must be at least 1");
    const RationalSeries x = RationalSeries::monomial(order, 1);
    const RationalSeries denom = RationalSeries::constant(order, 1) - x - catalan_series(order).substitute(2);
    return x * denom.inverse();
}

// How the even-n reflection term (1/4)(y^2 z_2^((n-2)/2) + z_2^(n/2)) is bracketed:
// kQuarterBoth puts both terms under 1/4; kQuarterFirst only the first.
enum class ReflectionReading { kQuarterBoth, kQuarterFirst };

// z[i] holds z_i for i = 1..n (z[0] unused).
inline RationalSeries modified_cycle_index(int n, const std::vector<RationalSeries>& z, const RationalSeries& y,
                                           ReflectionReading reading = ReflectionReading::kQuarterBoth) {
    require_positive_size(n, "modified_cycle_index");
    if (static_cast<int>(z.size()) <= std::max(n, 2)) throw DomainError("modified_cycle_index: need z_1..z_n and z_2");
    const int order = y.order();
    RationalSeries r(order);
    for (int i = 1; i <= n; ++i)
        if (n % i == 0) r += z[i].pow(n / i) * make_rational(euler_phi(i), 2L * n);
    if (n % 2) {
        r += (y * z[2].pow((n - 1) / 2)) * BigRational(1, 2);
    } else if (reading == ReflectionReading::kQuarterBoth) {
        r += (y.pow(2) * z[2].pow((n - 2) / 2) + z[2].pow(n / 2)) * BigRational(1, 4);
    } else {
        r += (y.pow(2) * z[2].pow((n - 2) / 2)) * BigRational(1, 4);
        r += z[2].pow(n / 2);
    }
    return r;
}

namespace detail {

// Computed sum has the orbit counts one power of x too high; returns it unshifted.
inline RationalSeries raw_tree_series(int order, ReflectionReading reading) {
    const RationalSeries c = catalan_series(order);
    const RationalSeries a = a_series(order);
    const RationalSeries x = RationalSeries::monomial(order, 1);
    std::vector<RationalSeries> z;
    z.reserve(static_cast<std::size_t>(order) + 2);
    z.emplace_back(order);
    for (int i = 1; i <= std::max(order, 2); ++i) z.push_back(c.substitute(i));
    RationalSeries r(order);
    for (int n = 1; n <= order; ++n) r += x * modified_cycle_index(n, z, a, reading);
    return r - modified_cycle_index(2, z, a, reading) + c.substitute(2);
}

} // namespace detail

// T(x) = sum_n O_n x^n to the given order.
inline RationalSeries unrooted_tree_series(int order, ReflectionReading reading = ReflectionReading::kQuarterBoth) {
    if (order < 1) throw DomainError("unrooted_tree_series: order must be at least 1");
    const RationalSeries t = detail::raw_tree_series(order + 1, reading).divide_by_x().truncate(order);
    for (int k = 0; k <= order; ++k)
        if (!is_integer(t[k]) || t[k] < 0)
            throw StructuralFailure("tree series coefficient of x^" + std::to_string(k) +
                                    " is not a nonnegative integer: " + to_string(t[k]));
    return t;
}

inline constexpr int kDefaultBurnsideLimit = 11;

// Burnside: average number of patterns fixed by each of the 4n group elements.
inline BigInt o_n_direct(int n, int max_n = kDefaultBurnsideLimit) {
    require_positive_size(n, "o_n_direct");
    if (n > max_n) throw GuardRefusal("orbit count at n=" + std::to_string(n) + " refused", max_n);
    const auto group = dihedral_group(n);
    std::vector<long> fixed(group.size(), 0);
    for_each_link_pattern(n, [&](const LinkPattern& p) {
        for (std::size_t g = 0; g < group.size(); ++g)
            if (act(group[g], p) == p) ++fixed[g];
    });
    BigInt total = 0;
    for (long f : fixed) total += f;
    if (total % static_cast<long>(group.size()) != 0)
        throw StructuralFailure("Burnside sum is not divisible by the group order");
    return total / static_cast<long>(group.size());
}

} // namespace fpl
