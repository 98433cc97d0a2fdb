#include <gtest/gtest.h>

#include <random>

#include "delpezzo/plane_poly.hpp"
#include "delpezzo/qmatrix.hpp"
#include "delpezzo/rational.hpp"

using namespace delpezzo;

namespace {

// Cofactor expansion along the first row.
Rat det_cofactor(const QMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Rat acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        QMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        const Rat term = m(0, j) * det_cofactor(minor);
        acc += (j % 2 == 0) ? term : Rat(-term);
    }
    return acc;
}

// Textbook elimination over Q with division.
std::size_t rank_naive(QMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(p, k));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const Rat f = m(i, c) / m(r, c);
            for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
        }
        ++r;
    }
    return r;
}

QMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols, bool fractions) {
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            Rat v(static_cast<long>(g() % 11) - 5, fractions ? static_cast<long>(g() % 4) + 1 : 1L);
            v.canonicalize();
            m(i, j) = v;
        }
    return m;
}

}  // namespace

TEST(Rational, ParseAcceptsIntegersAndFractions) {
    EXPECT_EQ(parse_rat("7"), Rat(7));
    EXPECT_EQ(parse_rat("-3/6"), Rat(-1, 2));
    EXPECT_THROW(parse_rat("1.5"), InputError);
    EXPECT_THROW(parse_rat("1/0"), InputError);
    EXPECT_THROW(parse_rat(""), InputError);
}

TEST(QMatrix, DeterminantMatchesCofactorExpansion) {
    std::mt19937_64 g(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const QMatrix m = random_matrix(g, n, n, trial % 2 == 1);
        EXPECT_EQ(determinant(m), det_cofactor(m));
    }
}

TEST(QMatrix, DeterminantSmallExamples) {
    EXPECT_EQ(determinant(QMatrix{{1, 2}, {3, 4}}), Rat(-2));
    EXPECT_EQ(determinant(QMatrix{{0, 1}, {1, 0}}), Rat(-1));
    EXPECT_EQ(determinant(QMatrix{{1, 2}, {2, 4}}), Rat(0));
    EXPECT_EQ(determinant(QMatrix{{Rat(1, 2), 0}, {0, Rat(2, 3)}}), Rat(1, 3));
    EXPECT_THROW(determinant(QMatrix(2, 3)), DimensionError);
}

TEST(QMatrix, RankMatchesNaiveElimination) {
    std::mt19937_64 g(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 1 + g() % 6, cols = 1 + g() % 6;
        QMatrix m = random_matrix(g, rows, cols, trial % 3 == 0);
        if (rows > 2) {  // force a dependency now and then
            for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * 3 - m(1, j);
        }
        EXPECT_EQ(rank(m), rank_naive(m));
    }
}

TEST(QMatrix, NullspaceIsKernelWithRankNullity) {
    std::mt19937_64 g(9);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t rows = 1 + g() % 5, cols = 1 + g() % 7;
        const QMatrix m = random_matrix(g, rows, cols, trial % 2 == 0);
        const auto ns = nullspace(m);
        ASSERT_EQ(ns.size() + rank(m), cols);
        for (const auto& v : ns)
            for (const Rat& x : m * v) EXPECT_EQ(sgn(x), 0);
        if (!ns.empty()) {
            EXPECT_EQ(rank(QMatrix::from_rows(ns, cols)), ns.size());
        }
    }
}

TEST(QMatrix, NullspaceOfFourPlanePointsIsSignedMinorVector) {
    // Columns are four points; the kernel is spanned by the alternating 3x3 minors.
    const QMatrix m{{1, 0, 0, 2}, {0, 1, 0, 3}, {0, 0, 1, 5}};
    const auto ns = nullspace(m);
    ASSERT_EQ(ns.size(), 1u);
    const QVector expected{-2, -3, -5, 1};
    EXPECT_EQ(ns[0], expected);
}

TEST(QMatrix, RowReduceGivesReducedEchelon) {
    const QMatrix m{{2, 4, 6}, {1, 2, 4}};
    const Echelon e = row_reduce(m);
    ASSERT_EQ(e.rank(), 2u);
    EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(e.rref.row(0), (QVector{1, 2, 0}));
    EXPECT_EQ(e.rref.row(1), (QVector{0, 0, 1}));
}

TEST(QMatrix, PlueckerQuadricsHoldOnRandomMinors) {
    std::mt19937_64 g(21);
    for (int trial = 0; trial < 50; ++trial) {
        const QMatrix m = random_matrix(g, 3, 5, trial % 2 == 0);
        auto p = [&](int a, int b, int c) {
            QMatrix s(3, 3);
            const int col[3] = {a, b, c};
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) s(i, j) = m(i, static_cast<std::size_t>(col[j] - 1));
            return det_cofactor(s);
        };
        for (int e = 1; e <= 5; ++e) {
            std::vector<int> o;
            for (int k = 1; k <= 5; ++k)
                if (k != e) o.push_back(k);
            const Rat q = p(o[0], o[1], e) * p(o[2], o[3], e) - p(o[0], o[2], e) * p(o[1], o[3], e) +
                          p(o[0], o[3], e) * p(o[1], o[2], e);
            EXPECT_EQ(sgn(q), 0) << "common column " << e;
        }
    }
}

TEST(PlanePoly, ArithmeticAndEvaluation) {
    const auto x = PlanePoly::variable(Var::X), y = PlanePoly::variable(Var::Y), z = PlanePoly::variable(Var::Z);
    const PlanePoly p = x * x - y * z;
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p.to_string(), "x^2 - y*z");
    EXPECT_EQ(p.evaluate({Rat(2), Rat(1), Rat(3)}), Rat(1));
    EXPECT_EQ((x + y) * (x - y), x * x - y * y);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_THROW(x + x * y, DimensionError);
    EXPECT_THROW(evaluate(p, {Rat(0), Rat(0), Rat(0)}), DomainError);
}

TEST(PlanePoly, PartialsAndEuler) {
    const auto x = PlanePoly::variable(Var::X), y = PlanePoly::variable(Var::Y), z = PlanePoly::variable(Var::Z);
    const PlanePoly f = Rat(3) * x * x * y - Rat(1, 2) * y * z * z + z * z * z;
    EXPECT_EQ(partial(f, Var::X), Rat(6) * x * y);
    EXPECT_EQ(partial(f, Var::Z), Rat(-1) * y * z + Rat(3) * z * z);
    // Euler: x f_x + y f_y + z f_z = deg * f
    EXPECT_EQ(x * f.partial(Var::X) + y * f.partial(Var::Y) + z * f.partial(Var::Z), Rat(3) * f);
}

TEST(PlanePoly, MonomialOrderingAndCoefficientVectors) {
    const auto monos = monomials_of_degree(2);
    ASSERT_EQ(monos.size(), 6u);
    EXPECT_EQ(monos.front(), (Monomial{2, 0, 0}));
    EXPECT_EQ(monos.back(), (Monomial{0, 0, 2}));
    for (std::size_t k = 0; k < monos.size(); ++k) EXPECT_EQ(monomial_index(monos[k]), k);
    for (std::size_t k = 1; k < monos.size(); ++k) EXPECT_TRUE(grlex_greater(monos[k - 1], monos[k]));
    const QVector c{1, Rat(-2, 3), 0, 4, 0, 5};
    EXPECT_EQ(PlanePoly::from_coefficients(2, c).coefficients(), c);
}

TEST(PlanePoly, IntegerFormProductMatchesRationalProduct) {
    std::mt19937_64 g(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto rnd = [&](int d) {
            QVector c(monomial_count(d));
            for (auto& v : c) {
                v = Rat(static_cast<long>(g() % 9) - 4, static_cast<long>(g() % 3) + 1);
                v.canonicalize();
            }
            return PlanePoly::from_coefficients(d, c);
        };
        const PlanePoly a = rnd(static_cast<int>(g() % 4)), b = rnd(static_cast<int>(g() % 4));
        if (a.is_zero() || b.is_zero()) continue;
        const auto [sa, fa] = primitive_part(a);
        const auto [sb, fb] = primitive_part(b);
        const IntForm prod = multiply(fa, fb);
        QVector c;
        for (const auto& v : prod.coeffs) c.push_back(Rat(v) * sa * sb);
        EXPECT_EQ(PlanePoly::from_coefficients(prod.degree, c), a * b);
    }
}
