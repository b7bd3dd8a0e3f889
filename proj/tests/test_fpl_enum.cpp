#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fpl/fpl_enum.hpp"
#include "oracles.hpp"

using namespace fpl;

TEST(FplEnum, SmallCounts) {
    EXPECT_EQ(enumerate_fpl(1).size(), 1u);
    EXPECT_EQ(enumerate_fpl(4).size(), 42u);
    EXPECT_EQ(count_fpl(2), 2u);
}

TEST(FplEnum, CountsMatchAsmBacktracking) {
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(count_fpl(n), oracle::asms(n).size()) << "n=" << n;
}

TEST(FplEnum, CountsMatchProductFormula) {
    // prod_{j=0}^{n-1} (3j+1)! / (n+j)!
    for (int n = 1; n <= 12; ++n) {
        mpz_class num = 1, den = 1;
        for (int j = 0; j < n; ++j) {
            num *= oracle::fact(3 * j + 1);
            den *= oracle::fact(n + j);
        }
        EXPECT_EQ(a_total(n), num / den) << "n=" << n;
    }
    EXPECT_EQ(a_total(7), 218348);
    EXPECT_EQ(a_total(11), mpz_class("31095744852375"));
}

TEST(FplEnum, EveryConfigurationIsValid) {
    for (int n = 1; n <= 5; ++n)
        for (auto parity : {BoundaryParity::kCornerLeft, BoundaryParity::kCornerUp}) {
            std::set<std::string> seen;
            for (const auto& c : enumerate_fpl(n, parity)) {
                EXPECT_TRUE(c.valid());
                EXPECT_TRUE(seen.insert(c.bit_string()).second);
            }
            EXPECT_EQ(seen.size(), oracle::asms(n).size());
        }
}

TEST(FplEnum, ThreadCountDoesNotChangeResults) {
    EnumerationOptions one, three;
    three.threads = 3;
    EXPECT_EQ(count_by_pattern(5, one), count_by_pattern(5, three));
    EXPECT_EQ(count_fpl(5, three), 429u);
}

TEST(FplEnum, Guard) {
    EXPECT_THROW(count_fpl(8), GuardRefusal);
    EnumerationOptions small;
    small.max_n = 3;
    EXPECT_THROW(count_fpl(4, small), GuardRefusal);
    try {
        count_fpl(4, small);
    } catch (const GuardRefusal& e) {
        EXPECT_EQ(e.limit(), 3);
        EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
    }
}

TEST(Asm, UnitCase) {
    const auto c = enumerate_fpl(1);
    EXPECT_EQ(fpl_to_asm(c[0]).entries(), std::vector<int>{1});
    EXPECT_EQ(asm_to_fpl(AsmMatrix(1, {1})), c[0]);
    EXPECT_EQ(boundary_pattern(c[0]), LinkPattern::nested(1));
}

TEST(Asm, PermutationMatricesAtTwo) {
    std::set<std::string> fpls;
    for (const auto& m : {AsmMatrix(2, {1, 0, 0, 1}), AsmMatrix(2, {0, 1, 1, 0})}) fpls.insert(asm_to_fpl(m).bit_string());
    std::set<std::string> all;
    for (const auto& c : enumerate_fpl(2)) all.insert(c.bit_string());
    EXPECT_EQ(fpls, all);
}

TEST(Asm, BijectionOntoOracleSet) {
    for (int n = 1; n <= 5; ++n)
        for (auto parity : {BoundaryParity::kCornerLeft, BoundaryParity::kCornerUp}) {
            std::set<std::vector<int>> image;
            for (const auto& c : enumerate_fpl(n, parity)) {
                const AsmMatrix m = fpl_to_asm(c);
                EXPECT_TRUE(m.valid());
                EXPECT_EQ(asm_to_fpl(m, parity), c);
                image.insert(m.entries());
            }
            const auto all = oracle::asms(n);
            EXPECT_EQ(image, std::set<std::vector<int>>(all.begin(), all.end())) << "n=" << n;
        }
}

TEST(Asm, ValidityChecks) {
    EXPECT_FALSE(AsmMatrix(2, {1, 1, 0, 0}).valid());
    EXPECT_TRUE(AsmMatrix(3, {0, 1, 0, 1, -1, 1, 0, 1, 0}).valid());
    EXPECT_FALSE(AsmMatrix(3, {-1, 1, 1, 1, 0, 0, 1, 0, 0}).valid());
    EXPECT_THROW(asm_to_fpl(AsmMatrix(2, {1, 1, 0, 0})), DomainError);
}

TEST(BoundaryPattern, PerPatternCountsAtThree) {
    const auto counts = count_by_pattern(3);
    ASSERT_EQ(counts.size(), 5u);
    std::multiset<std::uint64_t> values;
    for (const auto& [p, v] : counts) values.insert(v);
    EXPECT_EQ(values, (std::multiset<std::uint64_t>{1, 1, 1, 2, 2}));
    EXPECT_EQ(counts.at(LinkPattern::small_arches(3)), 2u);
    EXPECT_EQ(counts.at(LinkPattern::nested(3)), 1u);
}

TEST(BoundaryPattern, OrbitValuesAtFour) {
    const auto counts = count_by_pattern(4);
    const OrbitIndex idx(4);
    std::map<std::uint64_t, int> value_to_size;
    for (const auto& o : idx.orbits()) value_to_size[counts.at(o.representative)] = o.size();
    EXPECT_EQ(value_to_size, (std::map<std::uint64_t, int>{{1, 4}, {3, 8}, {7, 2}}));
    EXPECT_EQ(count_by_pattern(1), (std::map<LinkPattern, std::uint64_t>{{LinkPattern::nested(1), 1}}));
}

TEST(BoundaryPattern, WielandInvarianceBothParities) {
    for (int n = 1; n <= 6; ++n)
        for (auto parity : {BoundaryParity::kCornerLeft, BoundaryParity::kCornerUp}) {
            EnumerationOptions opt;
            opt.parity = parity;
            const auto counts = count_by_pattern(n, opt);
            std::uint64_t total = 0;
            for (const auto& [p, v] : counts) {
                total += v;
                for (const auto& g : dihedral_group(n)) {
                    const auto it = counts.find(act(g, p));
                    ASSERT_NE(it, counts.end());
                    EXPECT_EQ(it->second, v);
                }
            }
            EXPECT_EQ(mpz_class(static_cast<unsigned long>(total)), a_total(n));
        }
}

#ifdef FPL_SLOW_TESTS
TEST(FplEnumSlow, SevenMatchesProductAndIsInvariant) {
    const auto counts = count_by_pattern(7);
    std::uint64_t total = 0;
    for (const auto& [p, v] : counts) {
        total += v;
        EXPECT_EQ(counts.at(act(DihedralElement::rotate(7, 1), p)), v);
    }
    EXPECT_EQ(total, 218348u);
}
#endif
