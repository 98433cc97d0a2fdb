#include <gtest/gtest.h>

#include <random>
#include <set>

#include "delpezzo/weyl.hpp"

using namespace delpezzo;

TEST(Weyl, OrbitOfLastPointIsExceptionalSet) {
    for (int r = kMinR; r <= kMaxR; ++r)
        EXPECT_EQ(orbit(PicClass::basis(r, r)).sorted_elements(), exceptional_curves(r)) << r;
}

TEST(Weyl, OrbitOfFirstSimpleRootIsRootSet) {
    // For r = 3 the root system A2 x A1 is reducible, so one orbit is not enough.
    for (int r = 4; r <= kMaxR; ++r) EXPECT_EQ(orbit(simple_roots(r)[0]).sorted_elements(), roots(r)) << r;
    std::set<std::vector<Coeff>> r3;
    for (const auto& a : simple_roots(3)) {
        const auto orb = orbit(a);
        for (const auto& x : orb.elements()) r3.insert(x.coeffs());
    }
    EXPECT_EQ(r3.size(), roots(3).size());
}

TEST(Weyl, OrbitOfLinePencilIsRulingSet) {
    for (int r = kMinR; r <= kMaxR; ++r) {
        std::vector<PicClass> classes;
        for (const auto& ru : rulings(r)) classes.push_back(ru.cls);
        EXPECT_EQ(orbit(PicClass::basis(r, 0) - PicClass::basis(r, 1)).sorted_elements(), classes) << r;
    }
}

TEST(Weyl, WordsRoundTripOnRandomTargets) {
    std::mt19937_64 g(17);
    for (int r = kMinR; r <= kMaxR; ++r) {
        const PicClass seed = PicClass::basis(r, r);
        const auto o = orbit(seed);
        for (int t = 0; t < 100; ++t) {
            const PicClass& target = o.elements()[g() % o.size()];
            const auto w = o.word(target);
            EXPECT_EQ(apply_word(seed, w), target);
            for (int i : w) EXPECT_TRUE(i >= 1 && i <= r);
        }
        EXPECT_TRUE(o.word(seed).empty());
    }
}

TEST(Weyl, WordsAreShortest) {
    // BFS depth equals the word length, and a neighbor differs by at most one.
    const auto o = orbit(PicClass::basis(6, 6));
    for (const auto& x : o.elements()) {
        const auto w = o.word(x);
        for (const auto& a : simple_roots(6)) {
            const auto wy = o.word(reflect(x, a));
            EXPECT_LE(wy.size(), w.size() + 1);
            EXPECT_LE(w.size(), wy.size() + 1);
        }
    }
}

TEST(Weyl, WordToAndNotInOrbit) {
    const PicClass e = PicClass(6, {2, -1, -1, -1, -1, -1, 0});
    const auto w = word_to(PicClass::basis(6, 6), e);
    EXPECT_EQ(apply_word(PicClass::basis(6, 6), w), e);
    EXPECT_THROW(orbit(PicClass::basis(6, 6)).word(PicClass::basis(6, 0)), NotInOrbit);
    EXPECT_THROW(orbit(PicClass::basis(8, 8), 100), OrbitOverflow);
    EXPECT_THROW(apply_word(PicClass::basis(4, 1), {5}), DomainError);
}

TEST(Weyl, WeightMapKernelIsCanonicalLine) {
    for (int r = kMinR; r <= kMaxR; ++r) {
        const auto k = weight_map_kernel(r);
        ASSERT_EQ(k.size(), 1u);
        const PicClass kc = canonical_class(r);
        for (std::size_t j = 0; j < k[0].size(); ++j)
            EXPECT_EQ(k[0][j] * Rat(static_cast<long>(kc[0])), k[0][0] * Rat(static_cast<long>(kc[j])));
    }
}

TEST(Weyl, WeightsSeparateExceptionalCurves) {
    for (int r = 4; r <= 7; ++r) {
        const auto c = exceptional_weight_census(r);
        EXPECT_TRUE(c.injective);
        EXPECT_EQ(c.nonzero_weights, fundamental_dimension(r));
        EXPECT_EQ(c.nonzero_weights, exceptional_curves(r).size());
    }
    const auto c8 = exceptional_weight_census(8);
    EXPECT_EQ(c8.nonzero_weights, 240u);
    EXPECT_EQ(c8.zero_multiplicity, 8u);
    EXPECT_EQ(c8.total(), 248u);
}

TEST(Weyl, WeylGroupPreservesExceptionalSet) {
    for (int r = kMinR; r <= kMaxR; ++r) {
        std::set<std::vector<Coeff>> ex;
        for (const auto& e : exceptional_curves(r)) ex.insert(e.coeffs());
        for (const auto& a : simple_roots(r))
            for (const auto& e : exceptional_curves(r)) EXPECT_TRUE(ex.contains(reflect(e, a).coeffs()));
    }
}

TEST(Weyl, DisjointCurvesCount) {
    for (int r = 4; r <= kMaxR; ++r)
        for (const auto& e : exceptional_curves(r))
            EXPECT_EQ(disjoint_curves(e).size(), exceptional_curves(r - 1).size()) << e.to_string();
}

TEST(Weyl, ContractionAlongAnyCurveGivesSmallerSurface) {
    for (int r = 4; r <= 7; ++r)
        for (const auto& e : exceptional_curves(r)) EXPECT_EQ(contract_along(e), exceptional_curves(r - 1));
    EXPECT_THROW(contract_along(PicClass::basis(5, 0)), DomainError);
}
