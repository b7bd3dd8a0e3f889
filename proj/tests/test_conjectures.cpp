#include <gtest/gtest.h>

#include <filesystem>

#include "fpl/conjectures.hpp"
#include "oracles.hpp"

using namespace fpl;

namespace {

GroundStateStore& store() {
    static GroundStateStore s;
    return s;
}

BigRational Q(long a, long b = 1) { return make_rational(a, b); }

} // namespace

TEST(ClosedForms, Superfactorial) {
    EXPECT_EQ(superfactorial(-1), 1);
    EXPECT_EQ(superfactorial(0), 1);
    EXPECT_EQ(superfactorial(3), 12);
    EXPECT_EQ(superfactorial(5), 34560);
    EXPECT_THROW(superfactorial(-2), DomainError);
    for (long m = 1; m <= 12; ++m) {
        mpz_class r = 1;
        for (long k = 1; k <= m; ++k) r *= oracle::fact(k);
        EXPECT_EQ(superfactorial(m), r);
    }
}

TEST(ClosedForms, Conj3Values) {
    for (long p = 0; p <= 5; ++p) EXPECT_EQ(conj3(p, 0, 0), 1);
    EXPECT_EQ(conj3(1, 1, 1), 2);
    EXPECT_EQ(conj3(2, 1, 1), 3);
    EXPECT_THROW(conj3(-1, 1, 1), DomainError);
}

TEST(ClosedForms, MacMahonMatchesPlanePartitionCount) {
    EXPECT_EQ(macmahon(0, 3, 4), 1);
    EXPECT_EQ(macmahon(1, 1, 1), 2);
    EXPECT_EQ(macmahon(2, 2, 2), 20);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c) EXPECT_EQ(macmahon(a, b, c), oracle::plane_partitions(a, b, c));
}

TEST(ClosedForms, Conj3FormsAgree) {
    for (long p = 0; p <= 8; ++p)
        for (long q = 0; q <= 8; ++q)
            for (long r = 0; r <= 8; ++r) {
                EXPECT_EQ(conj3(p, q, r), macmahon(p, q, r));
                EXPECT_EQ(conj3(p, q, r), conj3_binomial(p, q, r));
            }
}

TEST(ClosedForms, Conj4And5) {
    EXPECT_EQ(conj4(1, 1, 1), 7);
    EXPECT_EQ(conj4(1, 0, 0), 1);
    EXPECT_EQ(conj5(1, 0, 0), 1);
    EXPECT_TRUE(is_integer(conj5(1, 1, 1)));
    for (long p = 1; p <= 6; ++p)
        for (long q = 0; q <= 6; ++q)
            for (long r = 0; r <= 6; ++r) {
                EXPECT_EQ(conj4(p, q, r), conj4(p, r, q));
                EXPECT_TRUE(is_integer(conj5(p, q, r)));
            }
    EXPECT_NE(conj5(1, 1, 2), conj5(1, 2, 1));
    EXPECT_THROW(conj4(0, 1, 1), DomainError);
    EXPECT_THROW(conj5(0, 1, 1), DomainError);
}

TEST(ClosedForms, Conj3Patterns) {
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(conj3_pattern(n, 0, 0), LinkPattern::nested(n));
    EXPECT_EQ(canonical(conj3_pattern(1, 1, 1)), canonical(LinkPattern::small_arches(3)));
    EXPECT_EQ(store().get(4).value(conj3_pattern(2, 1, 1)), 3);
    EXPECT_THROW(conj3_pattern(0, 0, 0), DomainError);
}

TEST(ClosedForms, Conj3AgainstGroundState) {
    for (long n = 1; n <= 8; ++n)
        for (long p = 0; p <= n; ++p)
            for (long q = 0; p + q <= n; ++q)
                EXPECT_EQ(conj3(p, q, n - p - q), store().get(static_cast<int>(n)).value(conj3_pattern(p, q, n - p - q)));
}

TEST(ClosedForms, Conj4And5AgainstGroundState) {
    for (long n = 2; n <= 9; ++n)
        for (long p = 1; p + 1 <= n; ++p)
            for (long q = 0; p + q + 1 <= n; ++q) {
                const long r = n - 1 - p - q;
                EXPECT_EQ(conj4(p, q, r), store().get(static_cast<int>(n)).value(conj4_pattern(p, q, r)));
                if (p + q + 2 <= n && r >= 1)
                    EXPECT_EQ(conj5(p, q, r - 1), store().get(static_cast<int>(n)).value(conj5_pattern(p, q, r - 1)));
            }
}

TEST(ClosedForms, InclusiveFamilies) {
    for (long n = 1; n <= 10; ++n) EXPECT_EQ(a_np(n, 0), BigRational(a_total(static_cast<int>(n))));
    EXPECT_EQ(a_np(3, 1), 3);
    EXPECT_EQ(a_np(4, 1), 17);
    EXPECT_EQ(c_n(3), 2);
    EXPECT_THROW(a_np(5, 4), DomainError);
    EXPECT_THROW(c_n(2), DomainError);
    for (long n = 3; n <= 200; ++n) {
        for (int p = 0; p <= 3; ++p) EXPECT_TRUE(is_integer(a_np(n, p)));
        EXPECT_TRUE(is_integer(c_n(n)));
        EXPECT_TRUE(is_integer(d_n(n)));
        const auto v = corollary_and_p12(n);
        EXPECT_TRUE(is_integer(v.corollary) && is_integer(v.p12_first) && is_integer(v.p12_second));
        EXPECT_EQ(v.corollary, c_n(n) - a_np(n, 2));
    }
}

TEST(ClosedForms, InclusiveAgainstGroundState) {
    for (int n = 3; n <= 8; ++n) {
        const auto& g = store().get(n);
        const auto& idx = store().orbit_index(n);
        EXPECT_EQ(inclusive_sum(g, idx, {{1, 2}}), a_np(n, 1));
        EXPECT_EQ(inclusive_sum(g, idx, {{1, 4}, {2, 3}}), a_np(n, 2));
        EXPECT_EQ(inclusive_sum(g, idx, {{1, 6}, {2, 5}, {3, 4}}), a_np(n, 3));
        EXPECT_EQ(inclusive_sum(g, idx, {{1, 2}, {3, 4}}), c_n(n));
        EXPECT_EQ(inclusive_sum(g, idx, {{1, 6}, {2, 3}, {4, 5}}), corollary_and_p12(n).p12_first);
        EXPECT_EQ(inclusive_sum(g, idx, {{1, 4}, {2, 3}, {5, 6}}), corollary_and_p12(n).p12_second);
    }
}

TEST(ClosedForms, AppendixPolynomialsMatchFactoredForms) {
    auto f = [](int k, long n) -> mpq_class {
        const mpq_class x = n;
        switch (k) {
        case 1: return (x - 2) / 6 * (2 * x * x - 5 * x + 9);
        case 2: return (x - 1) * (x - 3) / 180 * oracle::eval({540, -394, 155, -32, 4}, x);
        case 3: return (x - 1) * (x - 3) * (x - 4) / 720 * oracle::eval({840, -522, 197, -38, 5}, x);
        case 4: return (x - 1) * (x - 4) / 20160 * oracle::eval({146160, -136740, 68924, -21865, 4639, -635, 45}, x);
        case 5: return (x - 1) * (x - 2) * (x - 3) * (x - 4) / 2880 * oracle::eval({1440, -802, 275, -46, 5}, x);
        default: return (x - 4) / 2520 * oracle::eval({18270, -17403, 9343, -3378, 853, -135, 10}, x);
        }
    };
    for (int k = 1; k <= 6; ++k)
        for (long n = -5; n <= 30; ++n) EXPECT_EQ(appendix_a(k, n), f(k, n)) << "k=" << k << " n=" << n;
    EXPECT_EQ(appendix_a(1, 3), 2);
    EXPECT_EQ(appendix_a(2, 3), 0);
    EXPECT_THROW(appendix_a(7, 3), DomainError);
}

TEST(Polynomial, ArithmeticAndPrinting) {
    const auto p = RationalPolynomial::from_integers({1, -2, 3}); // 3n^2 - 2n + 1
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p(Q(2)), 9);
    EXPECT_EQ(p.str(), "3 n^2 - 2 n + 1");
    EXPECT_EQ((p * RationalPolynomial::linear_root(1)).degree(), 3);
    EXPECT_EQ((p + Q(-1) * p).degree(), -1);
    EXPECT_EQ(RationalPolynomial().str(), "0");
    EXPECT_EQ((Q(1, 2) * RationalPolynomial::from_integers({0, 1})).str(), "1/2 n");
}

TEST(Polynomial, FitRecoversAndReportsMismatches) {
    const auto p = RationalPolynomial({Q(1, 3), Q(-2), Q(0), Q(5, 7)});
    std::vector<std::pair<long, BigRational>> data;
    for (long n = 2; n <= 9; ++n) data.emplace_back(n, p(Q(n)));
    auto fit = fit_polynomial(data, 3);
    EXPECT_EQ(fit.polynomial, p);
    EXPECT_TRUE(fit.exact());
    EXPECT_EQ(fit.held_out, 4);
    data.back().second += 1;
    fit = fit_polynomial(data, 3);
    ASSERT_EQ(fit.mismatches.size(), 1u);
    EXPECT_EQ(fit.mismatches[0].n, 9);
    EXPECT_THROW(fit_polynomial(data, 8), DomainError);
    data.push_back(data.front());
    EXPECT_THROW(fit_polynomial(data, 2), DomainError);
}

TEST(Polynomial, FitOnGroundStateData) {
    std::vector<std::pair<long, BigRational>> nested;
    for (int n = 1; n <= 8; ++n) nested.emplace_back(n, store().get(n).value(LinkPattern::nested(n)));
    const auto c = fit_polynomial(nested, 0);
    EXPECT_EQ(c.polynomial, RationalPolynomial::from_integers({1}));
    EXPECT_TRUE(c.exact());

    std::vector<std::pair<long, BigRational>> first;
    for (int n = 3; n <= 8; ++n)
        first.emplace_back(n, store().get(n).value(pattern_from_young_pair(YoungDiagram({2, 1}), YoungDiagram(), n)));
    const auto f = fit_polynomial(first, 3);
    EXPECT_TRUE(f.exact());
    EXPECT_EQ(f.polynomial, appendix_polynomial(1));

    std::vector<std::pair<long, BigRational>> square;
    for (int n = 4; n <= 9; ++n)
        square.emplace_back(n, store().get(n).value(pattern_from_young_pair(YoungDiagram({2, 2}), YoungDiagram(), n)));
    const auto s = fit_polynomial(square, 4);
    EXPECT_TRUE(s.exact());
    EXPECT_EQ(s.polynomial.leading(), Q(2, 24));
}

TEST(YoungPairPolynomials, SinglePairReports) {
    const auto empty = verify_conj6_7(YoungDiagram(), YoungDiagram(), store(), 6);
    EXPECT_TRUE(empty.pass());
    const auto one = verify_conj6_7(YoungDiagram({1}), YoungDiagram(), store(), 5);
    EXPECT_TRUE(one.pass());
    EXPECT_EQ(one.count(CaseStatus::kMismatch), 0);
    EXPECT_THROW(verify_conj6_7(YoungDiagram({2, 2}), YoungDiagram(), store(), 6), GuardRefusal);
}

TEST(YoungPairPolynomials, RectanglesAgainstBinomialForm) {
    for (int p = 1; p <= 2; ++p)
        for (int q = 1; q <= 3; ++q)
            for (int n = p + q; n <= 8; ++n)
                EXPECT_EQ(store().get(n).value(pattern_from_young_pair(YoungDiagram::rectangle(p, q), YoungDiagram(), n)),
                          conj3(p, q, n - p - q));
}

TEST(Identity, DimensionRecursion) {
    for (int k = 0; k <= 10; ++k)
        for (const auto& y : k ? partitions(k) : std::vector<YoungDiagram>{YoungDiagram()}) {
            BigRational s = 0;
            for (const auto& z : add_box(y)) s += dim_ratio(z);
            EXPECT_EQ(s, dim_ratio(y)) << y.str();
        }
}

TEST(Identification, ArchSetsAndFamilies) {
    EXPECT_EQ(closed_arch_sets(1).size(), 1u);
    EXPECT_EQ(closed_arch_sets(2).size(), 3u);
    EXPECT_EQ(nested_arches(2).str(), "{(1,4),(2,3)}");
    EXPECT_EQ(adjacent_arches(2).str(), "{(1,2),(3,4)}");
    EXPECT_EQ(dyck_words(4).size(), 14u);
    const auto fam = block_family(DyckWord::parse("UUDD"));
    EXPECT_FALSE(fam.at(1));
    EXPECT_EQ(pattern_to_dyck(*fam.at(4)).str(), "UDUDUUDD");
}

TEST(Identification, InclusiveSearchFindsAdjacentPairForCn) {
    const auto id = identify_inclusive(c_n, 3, 8, closed_arch_sets(2), store());
    ASSERT_TRUE(id.unique());
    EXPECT_EQ(id.matches[0], "{(1,2),(3,4)}");
}

TEST(Identification, NestedNotAdjacentForHigherP) {
    const Formula f = [](long n) { return a_np(n, 2); };
    const auto nested = identify_inclusive(f, 3, 8, {nested_arches(2)}, store());
    const auto adjacent = identify_inclusive(f, 3, 8, {adjacent_arches(2)}, store());
    EXPECT_EQ(nested.matches.size(), 1u);
    EXPECT_TRUE(adjacent.matches.empty());
}

TEST(Identification, YoungPairSearchForFirstAppendixFormula) {
    const auto id = identify_pattern([](long n) { return appendix_a(1, n); }, 1, 9, 0, young_pair_families(3), store());
    EXPECT_EQ(id.matches.size(), 2u);
    for (const auto& m : id.matches) EXPECT_NE(m.find("(2,1)"), std::string::npos);
}

TEST(Identification, BlockFamilyForCorollaryAndPairForCn) {
    const Formula cor = [](long n) { return corollary_and_p12(n).corollary; };
    const auto id = identify_pattern(cor, 3, 8, 1, block_families(4), store());
    ASSERT_TRUE(id.unique());
    const auto pairs = identify_family_pair(c_n, 3, 8, 1, block_families(4), store());
    EXPECT_FALSE(pairs.empty());
}

TEST(Reports, JsonShapeAndPass) {
    VerificationReport r{"conjX", "n=1..2", {}, {}};
    r.compare("a", Q(1), Q(1));
    r.skip("b", "why");
    EXPECT_TRUE(r.pass());
    auto j = to_json(r);
    EXPECT_EQ(j["conjecture"], "conjX");
    EXPECT_EQ(j["cases"][0]["status"], "match");
    EXPECT_EQ(j["cases"][0]["formula_value"], "1");
    EXPECT_EQ(j["cases"][1]["status"], "skipped");
    EXPECT_EQ(j["pass"], true);
    r.compare("c", Q(1), Q(2));
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(to_json(r)["pass"], false);
}

TEST(VerifyAll, AllPassAtSix) {
    const auto reports = verify_all(6, store());
    EXPECT_EQ(reports.size(), verification_ids().size());
    for (const auto& r : reports) EXPECT_TRUE(r.pass()) << r.conjecture;
    const auto& c3 = reports[3];
    ASSERT_EQ(c3.conjecture, "conj3");
    const auto it = std::find_if(c3.cases.begin(), c3.cases.end(), [](const auto& c) { return c.params == "(1,1,1)"; });
    ASSERT_NE(it, c3.cases.end());
    EXPECT_EQ(it->formula_value, "2");
    EXPECT_EQ(it->data_value, "2");
}

TEST(VerifyAll, SelectionAndThreads) {
    const auto one = verify_all(6, store(), {"conj2"});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_TRUE(one[0].pass());
    const auto a = verify_all(6, store(), {"conj3", "series", "conj2"}, 3);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_EQ(a[0].conjecture, "conj2");
    EXPECT_EQ(a[1].conjecture, "conj3");
    EXPECT_EQ(a[2].conjecture, "series");
    EXPECT_THROW(verify_all(6, store(), {"nope"}), DomainError);
}
