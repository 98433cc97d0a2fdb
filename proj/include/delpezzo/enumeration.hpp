#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "delpezzo/errors.hpp"
#include "delpezzo/lattice.hpp"

namespace delpezzo {

// ---------------------------------------------------------------------------
// Lattice-point search
// ---------------------------------------------------------------------------

/// All classes D at surface r with (D, D) = self_int and (D, -K) = deg.
///
/// Writing D = m_0 l_0 - sum n_i l_i, the conditions read sum n_i = 3 m_0 - deg and
/// sum n_i^2 = m_0^2 - self_int. Cauchy-Schwarz, (sum n_i)^2 <= r sum n_i^2, bounds
/// m_0 to a finite interval, so the search below is complete.
inline std::vector<PicClass> lattice_solutions(int r, Coeff self_int, Coeff deg) {
    if (r < 1 || r > kMaxR) throw DomainError("lattice search needs 1 <= r <= 8");
    std::vector<PicClass> out;
    // (3 m - deg)^2 <= r (m^2 - self_int)  <=>  (9 - r) m^2 - 6 deg m + deg^2 + r self_int <= 0
    const double a = 9.0 - r, b = -6.0 * static_cast<double>(deg),
                 c = static_cast<double>(deg * deg + r * self_int);
    const double disc = b * b - 4 * a * c;
    if (disc < 0) return out;
    const Coeff lo = static_cast<Coeff>(std::floor((-b - std::sqrt(disc)) / (2 * a))) - 1;
    const Coeff hi = static_cast<Coeff>(std::ceil((-b + std::sqrt(disc)) / (2 * a))) + 1;

    std::vector<Coeff> n(static_cast<std::size_t>(r));
    for (Coeff m0 = lo; m0 <= hi; ++m0) {
        const Coeff target_sum = 3 * m0 - deg;
        const Coeff target_sq = m0 * m0 - self_int;
        if (target_sq < 0) continue;
        // Depth-first fill of n_1..n_r with the remaining sum / sum of squares.
        auto fill = [&](auto&& self, std::size_t pos, Coeff sum_left, Coeff sq_left) -> void {
            const Coeff slots = static_cast<Coeff>(n.size() - pos);
            if (slots == 0) {
                if (sum_left == 0 && sq_left == 0) {
                    std::vector<Coeff> coeffs{m0};
                    for (Coeff v : n) coeffs.push_back(-v);
                    out.emplace_back(r, std::move(coeffs));
                }
                return;
            }
            if (sum_left * sum_left > slots * sq_left) return;
            const Coeff bound = static_cast<Coeff>(std::sqrt(static_cast<double>(sq_left))) + 1;
            for (Coeff v = -bound; v <= bound; ++v) {
                if (v * v > sq_left) continue;
                n[pos] = v;
                self(self, pos + 1, sum_left - v, sq_left - v * v);
            }
        };
        fill(fill, 0, target_sum, target_sq);
    }
    sort_canonical(out);
    return out;
}

// ---------------------------------------------------------------------------
// Curve families
// ---------------------------------------------------------------------------

enum class FamilyTag { Point, Line, Conic, CubicDouble, QuarticTripleDouble, QuinticSixDouble, SexticTriple };

inline const char* family_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::Point: return "Point";
        case FamilyTag::Line: return "Line";
        case FamilyTag::Conic: return "Conic";
        case FamilyTag::CubicDouble: return "CubicDouble";
        case FamilyTag::QuarticTripleDouble: return "QuarticTripleDouble";
        case FamilyTag::QuinticSixDouble: return "QuinticSixDouble";
        case FamilyTag::SexticTriple: return "SexticTriple";
    }
    return "?";
}

/// Which family an exceptional class belongs to, and which blown-up points
/// (1-based) it passes through with multiplicity 1, 2 and 3.
struct CurveFamily {
    FamilyTag tag = FamilyTag::Point;
    int r = 0;
    std::vector<int> simple;   // multiplicity 1 (for Point: the blown-up point itself)
    std::vector<int> doubles;  // multiplicity 2
    std::vector<int> triples;  // multiplicity 3

    friend bool operator==(const CurveFamily&, const CurveFamily&) = default;

    // e.g. Line{1,2}, CubicDouble{double=1}, SexticTriple{triple=1}
    std::string to_string() const {
        auto join = [](const std::vector<int>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s;
        };
        std::string body;
        switch (tag) {
            case FamilyTag::Point:
            case FamilyTag::Line:
            case FamilyTag::Conic: body = join(simple); break;
            case FamilyTag::CubicDouble: body = "double=" + join(doubles); break;
            case FamilyTag::QuarticTripleDouble: body = "double=" + join(doubles); break;
            case FamilyTag::QuinticSixDouble: body = "simple=" + join(simple); break;
            case FamilyTag::SexticTriple: body = "triple=" + join(triples); break;
        }
        return std::string(family_name(tag)) + "{" + body + "}";
    }

    PicClass to_class() const {
        PicClass c = PicClass::zero(r);
        if (tag == FamilyTag::Point) {
            c[static_cast<std::size_t>(simple.at(0))] = 1;
            return c;
        }
        static const std::map<FamilyTag, Coeff> line_degree{
            {FamilyTag::Line, 1},        {FamilyTag::Conic, 2},
            {FamilyTag::CubicDouble, 3}, {FamilyTag::QuarticTripleDouble, 4},
            {FamilyTag::QuinticSixDouble, 5}, {FamilyTag::SexticTriple, 6}};
        c[0] = line_degree.at(tag);
        for (int i : simple) c[static_cast<std::size_t>(i)] = -1;
        for (int i : doubles) c[static_cast<std::size_t>(i)] = -2;
        for (int i : triples) c[static_cast<std::size_t>(i)] = -3;
        return c;
    }
};

namespace detail {

struct FamilyPattern {
    FamilyTag tag;
    Coeff m0;
    int ones, twos, threes;
};

inline constexpr std::array<FamilyPattern, 6> kPlaneFamilies{{
    {FamilyTag::Line, 1, 2, 0, 0},
    {FamilyTag::Conic, 2, 5, 0, 0},
    {FamilyTag::CubicDouble, 3, 6, 1, 0},
    {FamilyTag::QuarticTripleDouble, 4, 5, 3, 0},
    {FamilyTag::QuinticSixDouble, 5, 2, 6, 0},
    {FamilyTag::SexticTriple, 6, 0, 7, 1},
}};

}  // namespace detail

/// Matches (m_0; multiplicities) against the seven family patterns.
inline CurveFamily classify_family(const PicClass& e) {
    const int r = e.r();
    CurveFamily fam;
    fam.r = r;
    if (e[0] == 0) {
        int hit = -1, nonzero = 0;
        for (int i = 1; i <= r; ++i) {
            if (e[static_cast<std::size_t>(i)] != 0) ++nonzero;
            if (e[static_cast<std::size_t>(i)] == 1) hit = i;
        }
        if (nonzero == 1 && hit > 0) {
            fam.tag = FamilyTag::Point;
            fam.simple = {hit};
            return fam;
        }
        throw ClassificationError(e.to_string() + " is not exceptional");
    }
    for (const auto& pat : detail::kPlaneFamilies) {
        if (e[0] != pat.m0) continue;
        CurveFamily f;
        f.r = r;
        f.tag = pat.tag;
        bool ok = true;
        for (int i = 1; i <= r && ok; ++i) {
            switch (e.multiplicity(i)) {
                case 0: break;
                case 1: f.simple.push_back(i); break;
                case 2: f.doubles.push_back(i); break;
                case 3: f.triples.push_back(i); break;
                default: ok = false;
            }
        }
        if (ok && static_cast<int>(f.simple.size()) == pat.ones && static_cast<int>(f.doubles.size()) == pat.twos &&
            static_cast<int>(f.triples.size()) == pat.threes)
            return f;
    }
    throw ClassificationError(e.to_string() + " is not exceptional");
}

namespace detail {

// Thread-safe lazily filled per-r table.
template <class T, class Make>
const T& cached(std::array<std::optional<T>, kMaxR + 1>& slots, std::array<std::once_flag, kMaxR + 1>& flags, int r,
                Make make) {
    std::call_once(flags[static_cast<std::size_t>(r)], [&] { slots[static_cast<std::size_t>(r)].emplace(make(r)); });
    return *slots[static_cast<std::size_t>(r)];
}

inline std::vector<PicClass> exceptional_by_family(int r) {
    std::vector<PicClass> out;
    for (int i = 1; i <= r; ++i) out.push_back(PicClass::basis(r, i));
    for (const auto& pat : kPlaneFamilies) {
        const int used = pat.ones + pat.twos + pat.threes;
        if (used > r) continue;
        // Distinct arrangements of the multiplicity multiset over r slots.
        std::vector<Coeff> mult(static_cast<std::size_t>(r - used), 0);
        mult.insert(mult.end(), static_cast<std::size_t>(pat.ones), 1);
        mult.insert(mult.end(), static_cast<std::size_t>(pat.twos), 2);
        mult.insert(mult.end(), static_cast<std::size_t>(pat.threes), 3);
        std::sort(mult.begin(), mult.end());
        do {
            std::vector<Coeff> c{pat.m0};
            for (Coeff m : mult) c.push_back(-m);
            out.emplace_back(r, std::move(c));
        } while (std::next_permutation(mult.begin(), mult.end()));
    }
    sort_canonical(out);
    return out;
}

}  // namespace detail

/// The exceptional classes of X_r in canonical order, generated family by family.
inline const std::vector<PicClass>& exceptional_curves(int r) {
    require_surface_index(r);
    static std::array<std::optional<std::vector<PicClass>>, kMaxR + 1> slots;
    static std::array<std::once_flag, kMaxR + 1> flags;
    return detail::cached(slots, flags, r, [](int rr) {
        auto v = detail::exceptional_by_family(rr);
        for (const auto& e : v)
            if (self_intersection(e) != -1 || degree(e) != 1)
                throw ConsistencyError("family pattern produced non-exceptional " + e.to_string());
        return v;
    });
}

inline bool is_exceptional(const PicClass& e) {
    return e.r() >= kMinR && e.r() <= kMaxR && self_intersection(e) == -1 && degree(e) == 1;
}

/// Number of exceptional curves N_r as tabulated for 3 <= r <= 8.
inline std::size_t exceptional_count_table(int r) {
    require_surface_index(r);
    static constexpr std::array<std::size_t, 6> n{6, 10, 16, 27, 56, 240};
    return n[static_cast<std::size_t>(r - kMinR)];
}

/// D is nef iff (D, E) >= 0 for every exceptional class E.
inline bool is_nef(const PicClass& d) {
    for (const auto& e : exceptional_curves(d.r()))
        if (intersect(d, e) < 0) return false;
    return true;
}

/// R_r = {a : (a,a) = -2, (a,-K) = 0}.
inline const std::vector<PicClass>& roots(int r) {
    require_surface_index(r);
    static std::array<std::optional<std::vector<PicClass>>, kMaxR + 1> slots;
    static std::array<std::once_flag, kMaxR + 1> flags;
    return detail::cached(slots, flags, r, [](int rr) { return lattice_solutions(rr, -2, 0); });
}

// ---------------------------------------------------------------------------
// Rulings
// ---------------------------------------------------------------------------

/// Unordered pair of exceptional classes, stored with first < second canonically.
struct CurvePair {
    PicClass first;
    PicClass second;
    friend bool operator==(const CurvePair&, const CurvePair&) = default;
};

inline CurvePair make_pair_ordered(PicClass a, PicClass b) {
    if (canonical_compare(b, a) < 0) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

inline bool pair_less(const CurvePair& a, const CurvePair& b) {
    if (auto c = canonical_compare(a.first, b.first); c != 0) return c < 0;
    return canonical_compare(a.second, b.second) < 0;
}

/// All unordered pairs {E, E'} of exceptional classes with (E, E') = k and E + E' = total.
inline std::vector<CurvePair> pairs_with_intersection(int r, Coeff k, const PicClass& total) {
    require_surface_index(r);
    if (total.r() != r) throw DimensionError("total class lives on a different surface");
    const auto& ex = exceptional_curves(r);
    std::vector<CurvePair> out;
    if (degree(total) != 2) return out;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        const PicClass rest = total - ex[i];
        // rest must itself be exceptional and later in the canonical order
        if (!is_exceptional(rest) || canonical_compare(ex[i], rest) >= 0) continue;
        if (intersect(ex[i], rest) == k) out.push_back({ex[i], rest});
    }
    std::sort(out.begin(), out.end(), pair_less);
    return out;
}

/// A conic-bundle class with its degenerate fibers.
struct Ruling {
    PicClass cls;
    std::vector<CurvePair> fibers;  // each pair sums to cls and meets once
};

/// Rulings of X_r: degree-2 classes with (D, D) = 0, each with its r - 1 fibers.
/// The set is computed twice, once as sums of exceptional pairs meeting once and
/// once as lattice solutions; disagreement raises ConsistencyError.
inline const std::vector<Ruling>& rulings(int r) {
    require_surface_index(r);
    static std::array<std::optional<std::vector<Ruling>>, kMaxR + 1> slots;
    static std::array<std::once_flag, kMaxR + 1> flags;
    return detail::cached(slots, flags, r, [](int rr) {
        const auto& ex = exceptional_curves(rr);
        std::vector<PicClass> sums;
        std::unordered_set<PicClass, PicClassHash> seen;
        for (std::size_t i = 0; i < ex.size(); ++i)
            for (std::size_t j = i + 1; j < ex.size(); ++j)
                if (intersect(ex[i], ex[j]) == 1) {
                    PicClass d = ex[i] + ex[j];
                    if (seen.insert(d).second) sums.push_back(std::move(d));
                }
        sort_canonical(sums);
        const auto lattice = lattice_solutions(rr, 0, 2);
        if (lattice != sums) {
            for (const auto& d : lattice)
                if (!seen.contains(d))
                    throw ConsistencyError("ruling class " + d.to_string() +
                                           " is not a sum of two exceptional classes meeting once");
            throw ConsistencyError("pair-sum rulings are not lattice solutions");
        }
        std::vector<Ruling> out;
        out.reserve(sums.size());
        for (auto& d : sums) {
            Ruling ru{d, pairs_with_intersection(rr, 1, d)};
            if (ru.fibers.size() != static_cast<std::size_t>(rr - 1))
                throw ConsistencyError("ruling " + d.to_string() + " has " + std::to_string(ru.fibers.size()) +
                                       " fibers");
            out.push_back(std::move(ru));
        }
        return out;
    });
}

// ---------------------------------------------------------------------------
// Explicit anticanonical decompositions
// ---------------------------------------------------------------------------

namespace detail {

// A class given as m0 and the list of (1-based) points it passes through once.
inline PicClass curve(int r, Coeff m0, std::initializer_list<int> through) {
    PicClass c = PicClass::zero(r);
    c[0] = m0;
    for (int i : through) c[static_cast<std::size_t>(i)] -= 1;
    return c;
}

}  // namespace detail

/// The two displayed ways of writing -K as a sum of exceptional classes, r = 4..7.
inline std::vector<std::vector<PicClass>> displayed_anticanonical_decompositions(int r) {
    using detail::curve;
    auto pt = [r](int i) { return PicClass::basis(r, i); };
    switch (r) {
        case 4:
            return {{curve(4, 1, {1, 2}), curve(4, 1, {3, 4}), curve(4, 1, {2, 3}), pt(2), pt(3)},
                    {curve(4, 1, {1, 3}), curve(4, 1, {2, 4}), curve(4, 1, {2, 3}), pt(2), pt(3)}};
        case 5:
            return {{curve(5, 1, {1, 2}), curve(5, 1, {3, 4}), curve(5, 1, {4, 5}), pt(4)},
                    {curve(5, 1, {1, 5}), curve(5, 1, {2, 3}), curve(5, 1, {3, 4}), pt(3)}};
        case 6:
            return {{curve(6, 1, {1, 2}), curve(6, 1, {3, 4}), curve(6, 1, {5, 6})},
                    {curve(6, 1, {1, 6}), curve(6, 1, {5, 4}), curve(6, 1, {3, 2})}};
        case 7:
            return {{curve(7, 2, {1, 2, 3, 4, 5}), curve(7, 1, {6, 7})},
                    {curve(7, 2, {7, 6, 5, 4, 3}), curve(7, 1, {2, 1})}};
        default: throw DomainError("explicit anticanonical decompositions exist for r = 4..7 only");
    }
}

/// Every displayed decomposition sums to -K and consists of exceptional classes.
inline bool verify_anticanonical_decompositions(int r) {
    const PicClass target = anticanonical_class(r);
    for (const auto& parts : displayed_anticanonical_decompositions(r)) {
        PicClass sum = PicClass::zero(r);
        for (const auto& p : parts) {
            if (!is_exceptional(p)) return false;
            sum += p;
        }
        if (sum != target) return false;
    }
    return true;
}

}  // namespace delpezzo
