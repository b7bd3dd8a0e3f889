#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fpl/bigint.hpp"
#include "fpl/errors.hpp"
#include "fpl/link_pattern.hpp"
#include "fpl/sparse_kernel.hpp"

namespace fpl {

// Periodic Temperley-Lieb generator e_i at loop weight 1, acting on the
// pattern. i is a 1-based label; e_{2n} joins points 2n and 1.
inline LinkPattern apply_ei(int i, const LinkPattern& p) {
    const int m = p.points();
    if (i < 1 || i > m) throw DomainError("apply_ei: generator index " + std::to_string(i) + " out of range");
    const int a = i - 1;
    const int b = i % m;
    if (p.partner(a) == b) return p;
    const int j = p.partner(a);
    const int k = p.partner(b);
    std::vector<std::uint8_t> out(p.partners().begin(), p.partners().end());
    out[a] = static_cast<std::uint8_t>(b);
    out[b] = static_cast<std::uint8_t>(a);
    out[j] = static_cast<std::uint8_t>(k);
    out[k] = static_cast<std::uint8_t>(j);
    return LinkPattern::from_partners(std::move(out));
}

inline constexpr int kDefaultFullBasisLimit = 9;
inline constexpr int kDefaultReducedBasisLimit = 12;

namespace detail {

// Runs body(begin, end) over [0, count) split into contiguous blocks.
template <class Body>
void parallel_blocks(std::size_t count, int threads, Body&& body) {
    threads = std::max(1, threads);
    if (threads == 1 || count < 64) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t block = (count + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = static_cast<std::size_t>(t) * block;
        const std::size_t hi = std::min(count, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace detail

// H = sum_i e_i in the basis enumerate_link_patterns(n):
// entry (b, a) = #{ i : e_i pi_a = pi_b }.
inline SparseIntMatrix build_hamiltonian(int n, int max_n = kDefaultFullBasisLimit, int threads = 1) {
    require_positive_size(n, "build_hamiltonian");
    if (n > max_n) throw GuardRefusal("full-basis Hamiltonian at n=" + std::to_string(n) + " refused", max_n);
    const auto patterns = enumerate_link_patterns(n);
    std::unordered_map<std::string_view, int> index;
    for (std::size_t k = 0; k < patterns.size(); ++k) index.emplace(patterns[k].key(), static_cast<int>(k));

    std::vector<std::vector<int>> targets(patterns.size());
    detail::parallel_blocks(patterns.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t a = lo; a < hi; ++a)
            for (int i = 1; i <= 2 * n; ++i) targets[a].push_back(index.at(apply_ei(i, patterns[a]).key()));
    });
    SparseIntMatrix h(static_cast<int>(patterns.size()));
    for (std::size_t a = 0; a < patterns.size(); ++a)
        for (int b : targets[a]) h.add(b, static_cast<int>(a), 1);
    return h;
}

// Hamiltonian on dihedral orbits. With rep(o') the canonical representative,
// entry (o', o) = sum_{a in o} #{ i : e_i pi_a = rep(o') }
//              = |o| / |o'| * #{ i : e_i rep(o) lies in o' }.
inline SparseIntMatrix build_reduced_hamiltonian(const OrbitIndex& index, int threads = 1) {
    const int n = index.n();
    const auto& orbits = index.orbits();
    std::vector<std::vector<int>> targets(orbits.size());
    detail::parallel_blocks(orbits.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t o = lo; o < hi; ++o)
            for (int i = 1; i <= 2 * n; ++i)
                targets[o].push_back(index.orbit_of(apply_ei(i, orbits[o].representative)));
    });
    SparseIntMatrix h(static_cast<int>(orbits.size()));
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        std::vector<std::pair<int, std::int64_t>> hits;
        for (int t : targets[o]) hits.emplace_back(t, 1);
        std::sort(hits.begin(), hits.end());
        for (std::size_t k = 0; k < hits.size();) {
            std::size_t e = k;
            std::int64_t count = 0;
            while (e < hits.size() && hits[e].first == hits[k].first) count += hits[e++].second;
            const int target = hits[k].first;
            const std::int64_t num = static_cast<std::int64_t>(orbits[o].size()) * count;
            const std::int64_t den = orbits[static_cast<std::size_t>(target)].size();
            if (num % den != 0) throw StructuralFailure("reduced Hamiltonian entry is not integral");
            h.add(target, static_cast<int>(o), num / den);
            k = e;
        }
    }
    return h;
}

inline SparseIntMatrix build_reduced_hamiltonian(int n, int max_n = kDefaultReducedBasisLimit, int threads = 1) {
    require_positive_size(n, "build_reduced_hamiltonian");
    if (n > max_n) throw GuardRefusal("reduced Hamiltonian at n=" + std::to_string(n) + " refused", max_n);
    return build_reduced_hamiltonian(OrbitIndex(n), threads);
}

// ---------------------------------------------------------------------------

enum class Basis { kFull, kReduced };

inline const char* to_string(Basis b) { return b == Basis::kFull ? "full" : "reduced"; }

// Perron-Frobenius eigenvector of H at eigenvalue 2n, normalised so that the
// nested pattern has component 1. In the reduced basis, labels are the
// canonical orbit representatives; in the full basis, all patterns.
class GroundState {
public:
    GroundState(int n, Basis basis, std::vector<LinkPattern> labels, std::vector<int> orbit_sizes,
                std::vector<BigRational> components)
        : n_(n), basis_(basis), labels_(std::move(labels)), sizes_(std::move(orbit_sizes)),
          components_(std::move(components)) {
        if (labels_.size() != components_.size() || labels_.size() != sizes_.size())
            throw DomainError("GroundState: inconsistent lengths");
        for (std::size_t k = 0; k < labels_.size(); ++k) index_.emplace(std::string(labels_[k].key()), static_cast<int>(k));
    }

    int n() const { return n_; }
    Basis basis() const { return basis_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<LinkPattern>& labels() const { return labels_; }
    const std::vector<int>& orbit_sizes() const { return sizes_; }
    const std::vector<BigRational>& components() const { return components_; }

    bool all_integer() const {
        return std::all_of(components_.begin(), components_.end(), [](const BigRational& v) { return is_integer(v); });
    }

    bool all_positive() const {
        return std::all_of(components_.begin(), components_.end(), [](const BigRational& v) { return v > 0; });
    }

    // Position of p's entry (p's orbit in the reduced basis).
    int position(const LinkPattern& p) const {
        if (p.size() != n_) throw DomainError("GroundState: pattern of size " + std::to_string(p.size()) +
                                              " queried at n=" + std::to_string(n_));
        const LinkPattern key = basis_ == Basis::kReduced ? canonical(p) : p;
        return index_.at(std::string(key.key()));
    }

    const BigRational& value(const LinkPattern& p) const { return components_[static_cast<std::size_t>(position(p))]; }

    // sum over all patterns of the component
    BigRational weighted_sum() const {
        BigRational s = 0;
        for (std::size_t k = 0; k < components_.size(); ++k) s += components_[k] * sizes_[k];
        return s;
    }

    BigRational max_component() const { return *std::max_element(components_.begin(), components_.end()); }

private:
    int n_;
    Basis basis_;
    std::vector<LinkPattern> labels_;
    std::vector<int> sizes_;
    std::vector<BigRational> components_;
    std::unordered_map<std::string, int> index_;
};

// kAuto: fraction-free elimination up to kFractionFreeLimit orbits or
// patterns, multimodular with exact verification above.
enum class KernelSolver { kAuto, kFractionFree, kMultimodular };

inline constexpr int kFractionFreeLimit = 2000;

struct GroundOptions {
    int max_full_n = kDefaultFullBasisLimit;
    int max_reduced_n = kDefaultReducedBasisLimit;
    int threads = 1;
    KernelSolver solver = KernelSolver::kAuto;
};

namespace detail {

inline std::vector<BigRational> normalise_at(const std::vector<BigInt>& kernel, std::size_t anchor) {
    if (kernel[anchor] == 0) throw StructuralFailure("Perron vector vanishes on the nested pattern");
    std::vector<BigRational> out;
    out.reserve(kernel.size());
    for (const auto& v : kernel) out.push_back(make_rational(v, kernel[anchor]));
    for (std::size_t k = 0; k < out.size(); ++k)
        if (out[k] <= 0)
            throw StructuralFailure("Perron vector component " + std::to_string(k) + " is not positive: " +
                                    to_string(out[k]));
    return out;
}

inline void check_eigen_equation(const SparseIntMatrix& h, const std::vector<BigInt>& x, long eigenvalue) {
    const auto hx = h.multiply(x);
    for (std::size_t k = 0; k < x.size(); ++k)
        if (hx[k] != x[k] * eigenvalue)
            throw StructuralFailure("eigen-equation fails at component " + std::to_string(k));
}

// Kernel of H - eigenvalue scaled to be integral, positive at anchor.
inline std::vector<BigInt> solve_ground(const SparseIntMatrix& h, long eigenvalue, int anchor, KernelSolver solver) {
    if (solver == KernelSolver::kAuto)
        solver = h.dim() <= kFractionFreeLimit ? KernelSolver::kFractionFree : KernelSolver::kMultimodular;
    std::vector<BigInt> x = solver == KernelSolver::kFractionFree ? integer_kernel(h, eigenvalue).vector
                                                                  : multimodular_kernel(h, eigenvalue, anchor);
    check_eigen_equation(h, x, eigenvalue);
    return x;
}

} // namespace detail

inline GroundState ground_vector(int n, Basis basis, const GroundOptions& opt = {}) {
    require_positive_size(n, "ground_vector");
    const long eigenvalue = 2L * n;
    if (basis == Basis::kFull) {
        const SparseIntMatrix h = build_hamiltonian(n, opt.max_full_n, opt.threads);
        const auto patterns = enumerate_link_patterns(n);
        const auto nested = std::find(patterns.begin(), patterns.end(), LinkPattern::nested(n)) - patterns.begin();
        const auto x = detail::solve_ground(h, eigenvalue, static_cast<int>(nested), opt.solver);
        auto comps = detail::normalise_at(x, static_cast<std::size_t>(nested));
        return GroundState(n, basis, patterns, std::vector<int>(patterns.size(), 1), std::move(comps));
    }
    if (n > opt.max_reduced_n)
        throw GuardRefusal("reduced ground state at n=" + std::to_string(n) + " refused", opt.max_reduced_n);
    const OrbitIndex index(n, false);
    const SparseIntMatrix h = build_reduced_hamiltonian(index, opt.threads);
    const auto x = detail::solve_ground(h, eigenvalue, index.nested_orbit(), opt.solver);
    std::vector<LinkPattern> reps;
    std::vector<int> sizes;
    for (const auto& o : index.orbits()) {
        reps.push_back(o.representative);
        sizes.push_back(o.size());
    }
    auto comps = detail::normalise_at(x, static_cast<std::size_t>(index.nested_orbit()));
    return GroundState(n, basis, std::move(reps), std::move(sizes), std::move(comps));
}

// Exact integer component of p's orbit.
inline BigInt component(const GroundState& g, const LinkPattern& p) {
    const BigRational& v = g.value(p);
    if (!is_integer(v))
        throw StructuralFailure("component of " + pattern_to_dyck(p).parens() + " at n=" + std::to_string(g.n()) +
                                " is not an integer: " + to_string(v));
    return v.get_num();
}

inline bool arches_cross(std::pair<int, int> a, std::pair<int, int> b) {
    auto [i, j] = std::minmax(a.first, a.second);
    auto [k, l] = std::minmax(b.first, b.second);
    return (i < k && k < j && j < l) || (k < i && i < l && l < j);
}

// Sum of the components of every pattern containing all the required arches
// (1-based label pairs).
inline BigRational inclusive_sum(const GroundState& g, const OrbitIndex& index,
                                 const std::vector<std::pair<int, int>>& required) {
    const int m = 2 * g.n();
    for (std::size_t a = 0; a < required.size(); ++a) {
        const auto [i, j] = required[a];
        if (i < 1 || j < 1 || i > m || j > m || i == j) throw DomainError("inclusive_count: arch out of range");
        for (std::size_t b = 0; b < a; ++b) {
            if (arches_cross(required[a], required[b])) throw DomainError("inclusive_count: required arches cross");
            const auto [k, l] = required[b];
            if (i == k || i == l || j == k || j == l) throw DomainError("inclusive_count: required arches share a point");
        }
    }
    if (!index.has_members()) throw DomainError("inclusive_count: orbit index was built without members");
    BigRational total = 0;
    for (const auto& orbit : index.orbits()) {
        for (const auto& p : orbit.members) {
            bool ok = true;
            for (auto [i, j] : required)
                if (!p.has_arch(i - 1, j - 1)) {
                    ok = false;
                    break;
                }
            if (ok) total += g.value(p);
        }
    }
    return total;
}

inline BigInt inclusive_count(const GroundState& g, const OrbitIndex& index,
                              const std::vector<std::pair<int, int>>& required) {
    return require_integer(inclusive_sum(g, index, required), "inclusive count");
}

} // namespace fpl
