#include <gtest/gtest.h>

#include <map>
#include <set>

#include "delpezzo/enumeration.hpp"

using namespace delpezzo;

namespace {

// Plain box search: every class with |m0| <= 10 and |c_i| <= 6.
std::vector<PicClass> box_search(int r, Coeff self_int, Coeff deg) {
    std::vector<PicClass> out;
    std::vector<Coeff> c(static_cast<std::size_t>(r) + 1, 0);
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == c.size()) {
            PicClass d(r, c);
            if (self_intersection(d) == self_int && degree(d) == deg) out.push_back(d);
            return;
        }
        const Coeff bound = pos == 0 ? 10 : 6;
        for (Coeff v = -bound; v <= bound; ++v) {
            c[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    sort_canonical(out);
    return out;
}

}  // namespace

TEST(Enumeration, ExceptionalCounts) {
    const std::size_t expected[] = {6, 10, 16, 27, 56, 240};
    for (int r = kMinR; r <= kMaxR; ++r) {
        EXPECT_EQ(exceptional_curves(r).size(), expected[r - kMinR]);
        EXPECT_EQ(exceptional_count_table(r), expected[r - kMinR]);
        for (const auto& e : exceptional_curves(r)) EXPECT_TRUE(is_exceptional(e));
    }
}

TEST(Enumeration, FamilyRouteAgreesWithLatticeSearch) {
    for (int r = kMinR; r <= kMaxR; ++r) EXPECT_EQ(exceptional_curves(r), lattice_solutions(r, -1, 1)) << r;
}

TEST(Enumeration, LatticeSearchAgreesWithBoxSearch) {
    for (int r = kMinR; r <= 5; ++r) {
        EXPECT_EQ(lattice_solutions(r, -1, 1), box_search(r, -1, 1)) << r;
        EXPECT_EQ(lattice_solutions(r, -2, 0), box_search(r, -2, 0)) << r;
        EXPECT_EQ(lattice_solutions(r, 0, 2), box_search(r, 0, 2)) << r;
    }
}

TEST(Enumeration, DegreeEightBreakdownByLineDegree) {
    std::map<Coeff, std::size_t> by_m0;
    for (const auto& e : lattice_solutions(8, -1, 1)) ++by_m0[e[0]];
    const std::map<Coeff, std::size_t> expected{{0, 8}, {1, 28}, {2, 56}, {3, 56}, {4, 56}, {5, 28}, {6, 8}};
    EXPECT_EQ(by_m0, expected);
}

TEST(Enumeration, ClassifyFamilyExamples) {
    EXPECT_EQ(classify_family(PicClass::basis(4, 3)).to_string(), "Point{3}");
    EXPECT_EQ(classify_family(PicClass(4, {1, -1, -1, 0, 0})).to_string(), "Line{1,2}");
    EXPECT_EQ(classify_family(PicClass(5, {2, -1, -1, -1, -1, -1})).to_string(), "Conic{1,2,3,4,5}");
    EXPECT_EQ(classify_family(PicClass(7, {3, -2, -1, -1, -1, -1, -1, -1})).to_string(), "CubicDouble{double=1}");
    EXPECT_EQ(classify_family(PicClass(8, {6, -3, -2, -2, -2, -2, -2, -2, -2})).to_string(), "SexticTriple{triple=1}");
    EXPECT_EQ(classify_family(PicClass(8, {5, -2, -2, -2, -2, -2, -2, -1, -1})).to_string(),
              "QuinticSixDouble{simple=7,8}");
    EXPECT_THROW(classify_family(PicClass(4, {1, -1, 0, 0, 0})), ClassificationError);
    for (int r = kMinR; r <= kMaxR; ++r)
        for (const auto& e : exceptional_curves(r)) EXPECT_EQ(classify_family(e).to_class(), e);
}

TEST(Enumeration, RootCounts) {
    const std::size_t expected[] = {8, 20, 40, 72, 126, 240};
    for (int r = kMinR; r <= kMaxR; ++r) {
        const auto& rs = roots(r);
        EXPECT_EQ(rs.size(), expected[r - kMinR]);
        for (const auto& a : rs) {
            EXPECT_EQ(self_intersection(a), -2);
            EXPECT_EQ(degree(a), 0);
        }
    }
}

TEST(Enumeration, RootsAreDifferencesOfDisjointCurves) {
    // Every root is E - E' for disjoint exceptional E, E'.
    for (int r = kMinR; r <= 7; ++r) {
        std::set<std::vector<Coeff>> diffs;
        const auto& ex = exceptional_curves(r);
        for (const auto& a : ex)
            for (const auto& b : ex)
                if (a != b && intersect(a, b) == 0) diffs.insert((a - b).coeffs());
        std::set<std::vector<Coeff>> rs;
        for (const auto& a : roots(r)) rs.insert(a.coeffs());
        EXPECT_EQ(diffs, rs) << r;
    }
}

TEST(Enumeration, RulingCountsAndFibers) {
    const std::size_t expected[] = {3, 5, 10, 27, 126, 2160};
    for (int r = kMinR; r <= kMaxR; ++r) {
        const auto& rs = rulings(r);
        EXPECT_EQ(rs.size(), expected[r - kMinR]) << r;
        for (const auto& ru : rs) {
            EXPECT_EQ(self_intersection(ru.cls), 0);
            EXPECT_EQ(degree(ru.cls), 2);
            ASSERT_EQ(ru.fibers.size(), static_cast<std::size_t>(r - 1));
            for (const auto& f : ru.fibers) {
                EXPECT_EQ(f.first + f.second, ru.cls);
                EXPECT_EQ(intersect(f.first, f.second), 1);
            }
        }
    }
}

TEST(Enumeration, RulingsAtFourPoints) {
    const auto& rs = rulings(4);
    ASSERT_EQ(rs.size(), 5u);
    // Lines through p1: fibers (l0-l1-li) + li for i = 2, 3, 4.
    const PicClass d(4, {1, -1, 0, 0, 0});
    auto it = std::find_if(rs.begin(), rs.end(), [&](const Ruling& x) { return x.cls == d; });
    ASSERT_NE(it, rs.end());
    std::set<std::vector<Coeff>> got;
    for (const auto& f : it->fibers) got.insert(f.first.coeffs()), got.insert(f.second.coeffs());
    std::set<std::vector<Coeff>> want;
    for (int i = 2; i <= 4; ++i) {
        want.insert(PicClass::basis(4, i).coeffs());
        want.insert((d - PicClass::basis(4, i)).coeffs());
    }
    EXPECT_EQ(got, want);
    // the conic pencil through all four points
    EXPECT_TRUE(std::any_of(rs.begin(), rs.end(), [](const Ruling& x) {
        return x.cls == PicClass(4, {2, -1, -1, -1, -1});
    }));
}

TEST(Enumeration, PairsSummingToMinusTwoK) {
    const PicClass two_k = 2 * anticanonical_class(8);
    const auto pairs = pairs_with_intersection(8, 3, two_k);
    EXPECT_EQ(pairs.size(), 120u);
    for (const auto& p : pairs) {
        EXPECT_EQ(p.first + p.second, two_k);
        EXPECT_EQ(intersect(p.first, p.second), 3);
    }
    EXPECT_TRUE(pairs_with_intersection(8, 3, anticanonical_class(8)).empty());
}

TEST(Enumeration, AnticanonicalDecompositions) {
    for (int r = 4; r <= 7; ++r) {
        EXPECT_TRUE(verify_anticanonical_decompositions(r));
        for (const auto& parts : displayed_anticanonical_decompositions(r)) {
            PicClass sum = PicClass::zero(r);
            for (const auto& p : parts) {
                EXPECT_EQ(self_intersection(p), -1);
                sum += p;
            }
            EXPECT_EQ(sum, anticanonical_class(r));
        }
    }
    EXPECT_THROW(displayed_anticanonical_decompositions(3), DomainError);
}

TEST(Enumeration, NefExamples) {
    EXPECT_TRUE(is_nef(anticanonical_class(6)));
    EXPECT_TRUE(is_nef(PicClass::basis(6, 0)));
    EXPECT_FALSE(is_nef(PicClass::basis(6, 1)));
    for (const auto& ru : rulings(5)) EXPECT_TRUE(is_nef(ru.cls));
}

TEST(Enumeration, CanonicalOrderIsDegreeThenLexicographic) {
    for (int r = kMinR; r <= kMaxR; ++r) {
        const auto& ex = exceptional_curves(r);
        for (std::size_t i = 1; i < ex.size(); ++i) EXPECT_TRUE(canonical_compare(ex[i - 1], ex[i]) < 0);
    }
}
