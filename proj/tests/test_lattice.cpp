#include <gtest/gtest.h>

#include <random>
#include <set>

#include "delpezzo/lattice.hpp"

using namespace delpezzo;

namespace {

PicClass random_class(std::mt19937_64& g, int r, int spread = 4) {
    std::vector<Coeff> c(static_cast<std::size_t>(r) + 1);
    for (auto& x : c) x = static_cast<Coeff>(g() % static_cast<std::uint64_t>(2 * spread + 1)) - spread;
    return PicClass(r, c);
}

}  // namespace

TEST(Lattice, IntersectionExamples) {
    const PicClass l0 = PicClass::basis(5, 0), l1 = PicClass::basis(5, 1), l2 = PicClass::basis(5, 2);
    EXPECT_EQ(intersect(l0, l0), 1);
    EXPECT_EQ(intersect(l1, l1), -1);
    EXPECT_EQ(intersect(l1, l2), 0);
    const PicClass line12 = l0 - l1 - l2;
    EXPECT_EQ(self_intersection(line12), -1);
    EXPECT_EQ(degree(line12), 1);
    EXPECT_EQ(intersect(line12, l1), 1);
}

TEST(Lattice, CanonicalClass) {
    for (int r = kMinR; r <= kMaxR; ++r) {
        const PicClass k = canonical_class(r);
        EXPECT_EQ(k[0], -3);
        EXPECT_EQ(self_intersection(k), 9 - r);
        EXPECT_EQ(degree(anticanonical_class(r)), 9 - r);
        EXPECT_EQ(degree(PicClass::basis(r, 0)), 3);
    }
}

TEST(Lattice, FormIsSymmetricAndBilinear) {
    std::mt19937_64 g(1);
    for (int trial = 0; trial < 300; ++trial) {
        const int r = kMinR + static_cast<int>(g() % 6);
        const PicClass a = random_class(g, r), b = random_class(g, r), c = random_class(g, r);
        const Coeff s = static_cast<Coeff>(g() % 7) - 3;
        EXPECT_EQ(intersect(a, b), intersect(b, a));
        EXPECT_EQ(intersect(s * a + b, c), s * intersect(a, c) + intersect(b, c));
    }
}

TEST(Lattice, ReflectionsAreInvolutiveIsometriesFixingK) {
    std::mt19937_64 g(2);
    for (int r = kMinR; r <= kMaxR; ++r) {
        const PicClass k = canonical_class(r);
        for (const auto& alpha : simple_roots(r)) {
            EXPECT_EQ(self_intersection(alpha), -2);
            EXPECT_EQ(intersect(alpha, k), 0);
            EXPECT_EQ(reflect(k, alpha), k);
            EXPECT_EQ(reflect(alpha, alpha), -alpha);
            for (int t = 0; t < 20; ++t) {
                const PicClass x = random_class(g, r), y = random_class(g, r);
                EXPECT_EQ(reflect(reflect(x, alpha), alpha), x);
                EXPECT_EQ(intersect(reflect(x, alpha), reflect(y, alpha)), intersect(x, y));
            }
        }
    }
}

TEST(Lattice, ReflectionRejectsNonRoots) {
    EXPECT_THROW(reflect(PicClass::basis(4, 1), PicClass::basis(4, 0)), DomainError);
}

TEST(Lattice, SimpleRootsAreNested) {
    for (int r = kMinR + 1; r <= kMaxR; ++r) {
        const auto small = simple_roots(r - 1), big = simple_roots(r);
        ASSERT_EQ(big.size(), static_cast<std::size_t>(r));
        for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(embed_blowdown(small[i]), big[i]);
    }
}

TEST(Lattice, DynkinEdgesAgreeWithPairings) {
    for (int r = kMinR; r <= kMaxR; ++r) {
        const auto a = simple_roots(r);
        std::set<std::pair<int, int>> computed;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j) {
                const Coeff p = intersect(a[i], a[j]);
                ASSERT_TRUE(p == 0 || p == 1) << "r=" << r;
                if (p == 1) computed.emplace(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
            }
        const auto listed = dynkin_edges(r);
        const std::set<std::pair<int, int>> listed_set(listed.begin(), listed.end());
        EXPECT_EQ(computed, listed_set) << "r=" << r;
    }
    // E8: the chain 1-2-4-5-6-7-8 with 3 attached to 4.
    const auto e8 = dynkin_edges(8);
    const std::set<std::pair<int, int>> expected{{1, 2}, {2, 4}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}};
    const std::set<std::pair<int, int>> e8_set(e8.begin(), e8.end());
    EXPECT_EQ(e8_set, expected);
}

TEST(Lattice, BlowdownEmbeddingAndContraction) {
    const PicClass d(4, {3, -1, -1, 0, -2});
    const PicClass up = embed_blowdown(d);
    EXPECT_EQ(up, PicClass(5, {3, -1, -1, 0, -2, 0}));
    EXPECT_EQ(contract_last(up), d);
    EXPECT_THROW(contract_last(PicClass::basis(5, 5)), ContractionError);
    EXPECT_THROW(embed_blowdown(PicClass::zero(8)), DomainError);
}

TEST(Lattice, SurfaceIndexRangeEnforced) {
    EXPECT_THROW(simple_roots(2), DomainError);
    EXPECT_THROW(simple_roots(9), DomainError);
    EXPECT_THROW(intersect(PicClass::zero(3), PicClass::zero(4)), DimensionError);
}

TEST(Lattice, OverflowIsDetected) {
    const Coeff big = std::numeric_limits<Coeff>::max() / 2 + 1;
    const PicClass a(3, {big, 0, 0, 0});
    EXPECT_THROW(a + a, ArithmeticOverflow);
    EXPECT_THROW(intersect(a, a), ArithmeticOverflow);
}

TEST(Lattice, Formatting) {
    EXPECT_EQ(PicClass(3, {3, -1, -1, -1}).to_string(), "3l0-l1-l2-l3");
    EXPECT_EQ(PicClass::zero(3).to_string(), "0");
    EXPECT_EQ(PicClass(3, {0, 1, -2, 0}).to_string(), "l1-2l2");
}
