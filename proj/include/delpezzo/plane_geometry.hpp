#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "delpezzo/enumeration.hpp"
#include "delpezzo/errors.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/plane_poly.hpp"
#include "delpezzo/qmatrix.hpp"
#include "delpezzo/rational.hpp"

namespace delpezzo {

/// Scales a nonzero triple so that its first nonzero coordinate is 1.
inline PlanePoint normalize_point(PlanePoint p) {
    std::size_t k = 0;
    while (k < 3 && sgn(p[k]) == 0) ++k;
    if (k == 3) throw InputError("(0:0:0) is not a projective point");
    const Rat inv = 1 / p[k];
    for (auto& c : p) c *= inv;
    return p;
}

inline std::string point_to_string(const PlanePoint& p) {
    return "(" + to_string(p[0]) + ":" + to_string(p[1]) + ":" + to_string(p[2]) + ")";
}

/// r points of P^2 to be blown up. Coordinates are normalized and pairwise
/// distinct; general position is checked separately by validate_general_position.
class PointConfig {
public:
    PointConfig() = default;
    PointConfig(int r, std::vector<PlanePoint> points, std::optional<std::uint64_t> seed = std::nullopt)
        : r_(r), seed_(seed) {
        require_surface_index(r);
        if (points.size() != static_cast<std::size_t>(r))
            throw InputError("expected " + std::to_string(r) + " points, got " + std::to_string(points.size()));
        for (auto& p : points) points_.push_back(normalize_point(p));
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (points_[i] == points_[j])
                    throw InputError("points p" + std::to_string(i + 1) + " and p" + std::to_string(j + 1) +
                                     " coincide");
    }

    int r() const { return r_; }
    const std::vector<PlanePoint>& points() const { return points_; }
    const PlanePoint& point(int i) const { return points_.at(static_cast<std::size_t>(i - 1)); }  // 1-based
    std::optional<std::uint64_t> seed() const { return seed_; }

    // The first k points, as a configuration for X_k.
    PointConfig prefix(int k) const {
        return PointConfig(k, std::vector<PlanePoint>(points_.begin(), points_.begin() + k), seed_);
    }

    friend bool operator==(const PointConfig&, const PointConfig&) = default;

private:
    int r_ = 0;
    std::vector<PlanePoint> points_;
    std::optional<std::uint64_t> seed_;
};

// ---------------------------------------------------------------------------
// Interpolation
// ---------------------------------------------------------------------------

namespace detail {

inline Rat power(const Rat& base, int e) {
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

inline long falling(int n, int k) {
    long f = 1;
    for (int t = 0; t < k; ++t) f *= n - t;
    return f;
}

// Appends the b(b+1)/2 linear conditions "every partial of order b-1 vanishes at p"
// on the coefficients of a degree-d form, over monomials_of_degree(d).
inline void append_multiplicity_rows(std::vector<QVector>& rows, const std::vector<Monomial>& monos,
                                     const PlanePoint& p, int b) {
    if (b <= 0) return;
    const int order = b - 1;
    int d = 0;
    if (!monos.empty()) d = monos.front()[0] + monos.front()[1] + monos.front()[2];
    std::array<std::vector<Rat>, 3> pw;
    for (int v = 0; v < 3; ++v)
        for (int e = 0; e <= d; ++e) pw[static_cast<std::size_t>(v)].push_back(power(p[static_cast<std::size_t>(v)], e));
    for (const Monomial& der : monomials_of_degree(order)) {
        QVector row(monos.size());
        for (std::size_t k = 0; k < monos.size(); ++k) {
            const Monomial& m = monos[k];
            if (m[0] < der[0] || m[1] < der[1] || m[2] < der[2]) continue;
            Rat c = falling(m[0], der[0]) * falling(m[1], der[1]) * falling(m[2], der[2]);
            for (int v = 0; v < 3; ++v) c *= pw[static_cast<std::size_t>(v)][static_cast<std::size_t>(m[v] - der[v])];
            row[k] = c;
        }
        rows.push_back(std::move(row));
    }
}

}  // namespace detail

/// Basis of degree-`degree` forms vanishing to order >= mults[i] at p_{i+1}.
/// The basis is the reduced echelon form over grlex-descending monomials, so
/// each element has leading coefficient 1 and distinct leading monomials.
inline std::vector<PlanePoly> interpolate(int degree, const std::vector<int>& mults, const PointConfig& cfg) {
    if (degree < 0) throw DomainError("negative interpolation degree");
    if (mults.size() > cfg.points().size()) throw DimensionError("more multiplicities than points");
    const auto monos = monomials_of_degree(degree);
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < mults.size(); ++i) {
        if (mults[i] < 0) throw DomainError("negative multiplicity");
        detail::append_multiplicity_rows(rows, monos, cfg.points()[i], mults[i]);
    }
    std::vector<QVector> kernel;
    if (rows.empty()) {
        for (std::size_t k = 0; k < monos.size(); ++k) {
            QVector v(monos.size());
            v[k] = 1;
            kernel.push_back(std::move(v));
        }
    } else {
        kernel = nullspace(QMatrix::from_rows(rows, monos.size()));
    }
    std::vector<PlanePoly> out;
    if (kernel.empty()) return out;
    for (auto& v : echelon_basis(kernel, monos.size())) out.push_back(PlanePoly::from_coefficients(degree, v));
    return out;
}

/// Interpolation data of a class: degree m_0 and multiplicities m_i = -coeff_i.
/// Negative multiplicities (positive l_i coefficients) impose nothing.
inline std::vector<int> class_multiplicities(const PicClass& d) {
    std::vector<int> m;
    for (int i = 1; i <= d.r(); ++i) m.push_back(static_cast<int>(std::max<Coeff>(0, d.multiplicity(i))));
    return m;
}

inline std::vector<PlanePoly> interpolation_space(const PicClass& d, const PointConfig& cfg) {
    if (d.r() != cfg.r()) throw DimensionError("class and configuration live on different surfaces");
    if (d.line_degree() < 0) return {};
    return interpolate(static_cast<int>(d.line_degree()), class_multiplicities(d), cfg);
}

// ---------------------------------------------------------------------------
// General position
// ---------------------------------------------------------------------------

enum class ViolationKind { Collinear, CoConic, NodalCubic };

inline const char* violation_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::Collinear: return "collinear";
        case ViolationKind::CoConic: return "co-conic";
        case ViolationKind::NodalCubic: return "nodal-cubic";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    std::vector<int> points;  // 1-based; for NodalCubic: the double point first, the extra point last
    std::string to_string() const {
        std::string s = violation_name(kind);
        s += " {";
        for (std::size_t i = 0; i < points.size(); ++i) s += (i ? "," : "") + std::to_string(points[i]);
        return s + "}";
    }
};

namespace detail {

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F&& f) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k > n) return;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline std::vector<int> one_based(const std::vector<int>& idx) {
    std::vector<int> out;
    for (int i : idx) out.push_back(i + 1);
    return out;
}

}  // namespace detail

/// Checks: no three points collinear; for r >= 6 no six on a conic; for r = 8 no
/// cubic through seven of the points, double at one of them, passes through the
/// eighth. Returns the violations found (empty = general position).
inline std::vector<Violation> validate_general_position(const PointConfig& cfg) {
    std::vector<Violation> out;
    const int r = cfg.r();
    const auto& pts = cfg.points();
    detail::for_each_subset(r, 3, [&](const std::vector<int>& idx) {
        QMatrix m(3, 3);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) m(a, b) = pts[static_cast<std::size_t>(idx[a])][b];
        if (sgn(determinant(m)) == 0) out.push_back({ViolationKind::Collinear, detail::one_based(idx)});
    });
    if (r >= 6) {
        const auto quad = monomials_of_degree(2);
        detail::for_each_subset(r, 6, [&](const std::vector<int>& idx) {
            QMatrix m(6, 6);
            for (std::size_t a = 0; a < 6; ++a)
                for (std::size_t b = 0; b < 6; ++b)
                    m(a, b) = PlanePoly::monomial(quad[b]).evaluate(pts[static_cast<std::size_t>(idx[a])]);
            if (sgn(determinant(m)) == 0) out.push_back({ViolationKind::CoConic, detail::one_based(idx)});
        });
    }
    if (r == 8) {
        for (int extra = 1; extra <= 8; ++extra) {
            for (int dbl = 1; dbl <= 8; ++dbl) {
                if (dbl == extra) continue;
                std::vector<int> mults(8, 1);
                mults[static_cast<std::size_t>(extra - 1)] = 0;
                mults[static_cast<std::size_t>(dbl - 1)] = 2;
                const auto cubics = interpolate(3, mults, cfg);
                // 10 coefficients - 3 (double) - 6 (simple) leaves exactly one cubic in general position.
                if (cubics.size() != 1 || sgn(cubics[0].evaluate(cfg.point(extra))) == 0)
                    out.push_back({ViolationKind::NodalCubic, {dbl, extra}});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sections
// ---------------------------------------------------------------------------

/// The normalized equation of an exceptional curve in the plane model. For the
/// exceptional fibers l_i the equation is the constant 1.
struct Section {
    PicClass curve_class;
    PlanePoly poly;
    CurveFamily family;
};

inline Section section_of(const PicClass& e, const PointConfig& cfg) {
    if (!is_exceptional(e)) throw DomainError(e.to_string() + " is not an exceptional class");
    if (e.r() != cfg.r()) throw DimensionError("class and configuration live on different surfaces");
    CurveFamily fam = classify_family(e);
    if (e.line_degree() == 0) return {e, PlanePoly::constant(1), fam};
    auto space = interpolation_space(e, cfg);
    if (space.size() != 1)
        throw DegeneracyError("interpolation space of " + e.to_string() + " has dimension " +
                              std::to_string(space.size()) + ", expected 1");
    return {e, std::move(space.front()), fam};
}

/// Riemann-Roch on X_r for nef D: h^0(D) = ((D,D) + deg D) / 2 + 1.
inline Coeff h0_dim(const PicClass& d) {
    if (!is_nef(d) || degree(d) < 0) throw DomainError(d.to_string() + " is not nef; Riemann-Roch count not asserted");
    return (self_intersection(d) + degree(d)) / 2 + 1;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

inline constexpr int kDefaultSampleRetries = 1000;

/// Draws integer points with coordinates in [-bound, bound] from mt19937_64(seed)
/// until the configuration is in general position.
inline PointConfig random_config(int r, std::uint64_t seed, int bound, int max_retries = kDefaultSampleRetries) {
    require_surface_index(r);
    if (bound < 3) throw DomainError("coordinate bound must be at least 3");
    std::mt19937_64 gen(seed);
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(bound) + 1;
    auto coord = [&] { return Rat(static_cast<long>(gen() % span) - bound); };
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<PlanePoint> pts;
        while (pts.size() < static_cast<std::size_t>(r)) {
            PlanePoint p{coord(), coord(), coord()};
            if (sgn(p[0]) == 0 && sgn(p[1]) == 0 && sgn(p[2]) == 0) continue;
            pts.push_back(p);
        }
        try {
            PointConfig cfg(r, std::move(pts), seed);
            if (validate_general_position(cfg).empty()) return cfg;
        } catch (const InputError&) {
            // coincident points; draw again
        }
    }
    throw SamplingError("no general-position configuration for r=" + std::to_string(r) + " after " +
                        std::to_string(max_retries) + " attempts");
}

}  // namespace delpezzo
