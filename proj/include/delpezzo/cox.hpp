#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "delpezzo/enumeration.hpp"
#include "delpezzo/errors.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/parallel.hpp"
#include "delpezzo/plane_geometry.hpp"
#include "delpezzo/plane_poly.hpp"
#include "delpezzo/qmatrix.hpp"
#include "delpezzo/weyl.hpp"

namespace delpezzo {

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// A degree-1 generator of the Cox ring: its class and its plane-model equation.
struct Generator {
    PicClass cls;
    PlanePoly poly;
    std::string label;                  // "x[l0-l1-l2]" or "k1", "k2"
    std::optional<CurveFamily> family;  // unset for the anticanonical generators
};

/// One generator per exceptional curve, in canonical class order; at r = 8 the
/// two anticanonical cubics k1, k2 follow.
class GeneratorSet {
public:
    GeneratorSet(PointConfig cfg, std::vector<Generator> gens) : cfg_(std::move(cfg)), gens_(std::move(gens)) {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].family) by_class_.emplace(gens_[i].cls, i);
            primitive_.push_back(primitive_part(gens_[i].poly));
        }
    }

    int r() const { return cfg_.r(); }
    const PointConfig& config() const { return cfg_; }
    const std::vector<Generator>& gens() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    const Generator& operator[](std::size_t i) const { return gens_[i]; }

    // poly(i) = scale(i) * form(i) with a content-free integer form.
    const Rat& scale(std::size_t i) const { return primitive_[i].first; }
    const IntForm& form(std::size_t i) const { return primitive_[i].second; }

    // Index of the generator attached to an exceptional class.
    std::size_t index_of(const PicClass& e) const {
        auto it = by_class_.find(e);
        if (it == by_class_.end()) throw DomainError(e.to_string() + " is not an exceptional generator class");
        return it->second;
    }

    std::vector<std::size_t> anticanonical_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (!gens_[i].family) out.push_back(i);
        return out;
    }

    // Generators carrying a given class (two for -K at r = 8, one otherwise).
    std::vector<std::size_t> indices_of_class(const PicClass& c) const {
        if (auto it = by_class_.find(c); it != by_class_.end()) return {it->second};
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (!gens_[i].family && gens_[i].cls == c) out.push_back(i);
        return out;
    }

    // Replaces one generator's equation by a scalar multiple; used to test how
    // relations transform under renormalization.
    GeneratorSet rescaled(std::size_t index, const Rat& factor) const {
        if (sgn(factor) == 0) throw DomainError("rescaling by zero");
        auto gens = gens_;
        gens.at(index).poly *= factor;
        return GeneratorSet(cfg_, std::move(gens));
    }

private:
    PointConfig cfg_;
    std::vector<Generator> gens_;
    std::vector<std::pair<Rat, IntForm>> primitive_;
    std::unordered_map<PicClass, std::size_t, PicClassHash> by_class_;
};

inline GeneratorSet build_generators(const PointConfig& cfg) {
    const auto violations = validate_general_position(cfg);
    if (!violations.empty())
        throw InputError("configuration is not in general position: " + violations.front().to_string());
    const int r = cfg.r();
    const auto& ex = exceptional_curves(r);
    std::vector<Generator> gens(ex.size());
    parallel_for(ex.size(), [&](std::size_t i) {
        Section s = section_of(ex[i], cfg);
        gens[i] = Generator{ex[i], std::move(s.poly), "x[" + ex[i].to_string() + "]", std::move(s.family)};
    });
    if (r == kMaxR) {
        auto cubics = interpolation_space(anticanonical_class(r), cfg);
        if (cubics.size() != 2)
            throw DegeneracyError("anticanonical system has dimension " + std::to_string(cubics.size()) +
                                  ", expected 2");
        for (std::size_t k = 0; k < 2; ++k)
            gens.push_back(Generator{anticanonical_class(r), std::move(cubics[k]), "k" + std::to_string(k + 1), {}});
    }
    return GeneratorSet(cfg, std::move(gens));
}

// ---------------------------------------------------------------------------
// Effective monoid
// ---------------------------------------------------------------------------

/// Degree-1 generator classes: the exceptional classes, plus -K at r = 8.
inline std::vector<PicClass> generator_classes(int r) {
    std::vector<PicClass> g = exceptional_curves(r);
    if (r == kMaxR) g.push_back(anticanonical_class(r));
    sort_canonical(g);
    return g;
}

/// Every multiset of generator classes summing to D, each as a list in canonical
/// order. All generators have degree 1, so a multiset has exactly deg D members.
/// The result is empty iff D is not effective; D = 0 has the single empty multiset.
inline std::vector<std::vector<PicClass>> decompose_effective(const PicClass& d) {
    require_surface_index(d.r());
    std::vector<std::vector<PicClass>> out;
    const Coeff depth = degree(d);
    if (depth < 0) return out;
    const auto gens = generator_classes(d.r());
    // Every generator has 0 <= m_0 <= 6 and -3 <= coeff_i <= 1.
    auto feasible = [](const PicClass& rest, Coeff left) {
        if (rest[0] < 0 || rest[0] > 6 * left) return false;
        for (std::size_t i = 1; i < rest.size(); ++i)
            if (rest[i] < -3 * left || rest[i] > left) return false;
        return true;
    };
    std::vector<PicClass> chosen;
    auto search = [&](auto&& self, std::size_t from, const PicClass& rest, Coeff left) -> void {
        if (left == 0) {
            if (rest.is_zero()) out.push_back(chosen);
            return;
        }
        for (std::size_t k = from; k < gens.size(); ++k) {
            PicClass next = rest - gens[k];
            if (!feasible(next, left - 1)) continue;
            chosen.push_back(gens[k]);
            self(self, k, next, left - 1);
            chosen.pop_back();
        }
    };
    if (feasible(d, depth)) search(search, 0, d, depth);
    return out;
}

namespace detail {

// All generator-index multisets realizing a class multiset (-K expands to k1/k2).
inline std::vector<std::vector<std::size_t>> expand_to_generators(const std::vector<PicClass>& classes,
                                                                  const GeneratorSet& gs) {
    std::vector<std::vector<std::size_t>> acc{{}};
    for (std::size_t pos = 0; pos < classes.size(); ++pos) {
        const auto options = gs.indices_of_class(classes[pos]);
        if (options.empty()) throw DomainError(classes[pos].to_string() + " carries no generator");
        std::vector<std::vector<std::size_t>> next;
        for (const auto& partial : acc)
            for (std::size_t o : options) {
                // keep index lists nondecreasing so each multiset appears once
                if (!partial.empty() && classes[pos] == classes[pos - 1] && o < partial.back()) continue;
                auto v = partial;
                v.push_back(o);
                next.push_back(std::move(v));
            }
        acc = std::move(next);
    }
    return acc;
}

inline PlanePoly product_poly(const std::vector<std::size_t>& idx, const GeneratorSet& gs) {
    PlanePoly p = PlanePoly::constant(1);
    for (std::size_t i : idx) p = p * gs[i].poly;
    return p;
}

}  // namespace detail

struct GenerationReport {
    PicClass target;
    std::vector<PicClass> peeled;  // fixed exceptional components removed first
    PicClass nef_part;
    Coeff expected_rank = 0;       // h^0 by Riemann-Roch on the nef part
    std::size_t products = 0;
    std::size_t rank = 0;
    bool pass() const { return static_cast<Coeff>(rank) == expected_rank; }
};

/// Strips exceptional components E with (D, E) < 0 until D is nef or not effective.
inline std::pair<PicClass, std::vector<PicClass>> peel_fixed_components(PicClass d) {
    std::vector<PicClass> peeled;
    bool changed = true;
    while (changed && degree(d) >= 0) {
        changed = false;
        for (const auto& e : exceptional_curves(d.r())) {
            if (intersect(d, e) < 0) {
                d -= e;
                peeled.push_back(e);
                changed = true;
                break;
            }
        }
    }
    return {d, peeled};
}

/// Rank of all products of degree-1 generators of class D against h^0(D).
/// With exceptional_only, products involving k1, k2 are left out.
inline GenerationReport verify_degree_one_generation(const PicClass& d, const GeneratorSet& gs,
                                                     bool exceptional_only = false) {
    if (d.r() != gs.r()) throw DimensionError("class and generators live on different surfaces");
    GenerationReport rep;
    rep.target = d;
    auto [nef_part, peeled] = peel_fixed_components(d);
    rep.nef_part = nef_part;
    rep.peeled = std::move(peeled);
    rep.expected_rank = degree(nef_part) < 0 ? 0 : h0_dim(nef_part);
    std::vector<QVector> rows;
    if (d[0] >= 0) {
        for (const auto& classes : decompose_effective(d)) {
            if (exceptional_only && std::any_of(classes.begin(), classes.end(),
                                                [](const PicClass& c) { return !is_exceptional(c); }))
                continue;
            for (const auto& idx : detail::expand_to_generators(classes, gs))
                rows.push_back(detail::product_poly(idx, gs).coefficients());
        }
    }
    rep.products = rows.size();
    rep.rank = rows.empty() ? 0 : rank(QMatrix::from_rows(rows, monomial_count(static_cast<int>(d[0]))));
    if (static_cast<Coeff>(rep.rank) < rep.expected_rank)
        throw GenerationFailure("products of class " + d.to_string() + " span rank " + std::to_string(rep.rank) +
                                " < h0 = " + std::to_string(rep.expected_rank));
    if (static_cast<Coeff>(rep.rank) > rep.expected_rank)
        throw ConsistencyError("products of class " + d.to_string() + " exceed h0 = " +
                               std::to_string(rep.expected_rank));
    return rep;
}

/// Nef classes of degree `deg`: sums of deg generator classes that are nef.
inline std::vector<PicClass> nef_classes_of_degree(int r, Coeff deg) {
    std::vector<PicClass> out;
    if (deg < 0) return out;
    if (deg == 0) return {PicClass::zero(r)};
    const auto gens = generator_classes(r);
    std::unordered_set<PicClass, PicClassHash> seen;
    auto walk = [&](auto&& self, std::size_t from, const PicClass& acc, Coeff left) -> void {
        if (left == 0) {
            if (!seen.contains(acc) && is_nef(acc)) {
                seen.insert(acc);
                out.push_back(acc);
            }
            return;
        }
        for (std::size_t k = from; k < gens.size(); ++k) self(self, k, acc + gens[k], left - 1);
    };
    walk(walk, 0, PicClass::zero(r), deg);
    sort_canonical(out);
    return out;
}

// ---------------------------------------------------------------------------
// Ruling relations
// ---------------------------------------------------------------------------

struct RelationTerm {
    Rat coeff;
    std::size_t a = 0;  // generator indices, a <= b
    std::size_t b = 0;
};

/// sum coeff * x_a * x_b = 0 in the Cox ring, homogeneous of the ruling class.
struct QuadraticRelation {
    PicClass ruling;
    std::vector<RelationTerm> terms;
};

inline PlanePoly relation_polynomial(const QuadraticRelation& rel, const GeneratorSet& gs) {
    PlanePoly acc(static_cast<int>(rel.ruling[0]));
    for (const auto& t : rel.terms) acc += t.coeff * (gs[t.a].poly * gs[t.b].poly);
    return acc;
}

inline Rat evaluate_relation(const QuadraticRelation& rel, const QVector& point) {
    Rat acc = 0;
    for (const auto& t : rel.terms) acc += t.coeff * point.at(t.a) * point.at(t.b);
    return acc;
}

/// Relations among the r-1 fiber products of a ruling. The products lie in the
/// 2-dimensional space H^0(D); the kernel of the (r-1)-column coefficient matrix
/// has dimension r-3 and is returned in reduced echelon form over the fibers in
/// canonical order.
inline std::vector<QuadraticRelation> ruling_relations(const Ruling& ruling, const GeneratorSet& gs) {
    const int r = gs.r();
    if (ruling.cls.r() != r) throw DimensionError("ruling lives on a different surface");
    const int deg = static_cast<int>(ruling.cls[0]);
    const std::size_t len = monomial_count(deg);
    // Products are formed on the integer primitive parts: poly_a * poly_b = s_t * F_t.
    std::vector<QVector> cols;
    std::vector<Rat> scales;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& f : ruling.fibers) {
        std::size_t a = gs.index_of(f.first), b = gs.index_of(f.second);
        if (a > b) std::swap(a, b);
        pairs.emplace_back(a, b);
        IntForm prod = multiply(gs.form(a), gs.form(b));
        if (prod.degree != deg) throw ConsistencyError("fiber product has the wrong degree");
        QVector col(len);
        for (std::size_t k = 0; k < len; ++k) col[k] = Rat(prod.coeffs[k]);
        cols.push_back(std::move(col));
        scales.push_back(gs.scale(a) * gs.scale(b));
    }
    const QMatrix m = QMatrix::from_columns(cols, len);
    const std::size_t rk = rank(m);
    auto kernel = nullspace(m);
    if (rk != 2 || kernel.size() != static_cast<std::size_t>(r - 3))
        throw DegeneracyError("ruling " + ruling.cls.to_string() + ": fiber products have rank " +
                              std::to_string(rk) + " and kernel dimension " + std::to_string(kernel.size()) +
                              ", expected 2 and " + std::to_string(r - 3));
    std::vector<QuadraticRelation> out;
    if (kernel.empty()) return out;
    // Kernel vectors on the F_t become coefficients on the true products by dividing by s_t.
    for (auto& v : kernel)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] /= scales[k];
    for (const auto& v : echelon_basis(kernel, pairs.size())) {
        QuadraticRelation rel{ruling.cls, {}};
        QVector check(pairs.size());
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (sgn(v[k]) != 0) rel.terms.push_back({v[k], pairs[k].first, pairs[k].second});
            check[k] = v[k] * scales[k];
        }
        if (rel.terms.size() < 3)
            throw DegeneracyError("ruling " + ruling.cls.to_string() + " has a relation with fewer than 3 terms");
        for (const Rat& x : m * check)
            if (sgn(x) != 0)
                throw ConsistencyError("kernel vector of " + ruling.cls.to_string() + " is not a polynomial identity");
        out.push_back(std::move(rel));
    }
    return out;
}

/// Relations of every ruling of X_r, grouped per ruling in canonical ruling order.
inline std::vector<std::vector<QuadraticRelation>> all_ruling_relations(const GeneratorSet& gs) {
    const auto& rs = rulings(gs.r());
    std::vector<std::vector<QuadraticRelation>> out(rs.size());
    parallel_for(rs.size(), [&](std::size_t i) { out[i] = ruling_relations(rs[i], gs); });
    return out;
}

/// Linear relations among the products x_a x_b in one Picard degree.
struct ProductDegree {
    PicClass cls;
    std::size_t products = 0;
    std::size_t rank = 0;
    bool is_ruling = false;
    std::size_t relations() const { return products - rank; }
};

/// Every product of two generators, grouped by class; classes reached by a single
/// product are skipped. Relations outside ruling degrees are counted, nothing more.
struct QuadraticCensus {
    std::vector<ProductDegree> degrees;  // canonical class order
    std::size_t total = 0;
    std::size_t in_ruling_degrees = 0;
    std::size_t outside_ruling_degrees() const { return total - in_ruling_degrees; }
};

inline QuadraticCensus quadratic_relation_census(const GeneratorSet& gs) {
    std::unordered_map<PicClass, std::vector<std::pair<std::size_t, std::size_t>>, PicClassHash> by_class;
    for (std::size_t a = 0; a < gs.size(); ++a)
        for (std::size_t b = a; b < gs.size(); ++b) by_class[gs[a].cls + gs[b].cls].emplace_back(a, b);
    std::vector<PicClass> classes;
    for (const auto& [cls, ps] : by_class)
        if (ps.size() > 1) classes.push_back(cls);
    sort_canonical(classes);

    std::vector<ProductDegree> found(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) {
        const auto& ps = by_class.at(classes[i]);
        const int deg = static_cast<int>(classes[i][0]);
        std::vector<QVector> rows;
        for (const auto& [a, b] : ps) {
            const IntForm prod = multiply(gs.form(a), gs.form(b));
            QVector row(monomial_count(deg));
            for (std::size_t k = 0; k < row.size(); ++k) row[k] = Rat(prod.coeffs[k]);
            rows.push_back(std::move(row));
        }
        const bool ruling = self_intersection(classes[i]) == 0 && degree(classes[i]) == 2;
        found[i] = {classes[i], ps.size(), rank(QMatrix::from_rows(rows, monomial_count(deg))), ruling};
    });

    QuadraticCensus out;
    for (auto& d : found) {
        out.total += d.relations();
        if (d.is_ruling) out.in_ruling_degrees += d.relations();
        out.degrees.push_back(std::move(d));
    }
    return out;
}

// ---------------------------------------------------------------------------
// The Grassmannian model at r = 4
// ---------------------------------------------------------------------------

using ColumnTriple = std::array<int, 3>;  // 1-based columns of the 3x5 matrix

struct PlueckerIdentity {
    int common = 0;  // the column shared by all six minors
    struct Term {
        int sign;
        ColumnTriple left, right;  // sorted triples
    };
    std::vector<Term> terms;
    bool vanishes = false;
};

struct PlueckerReport {
    std::map<ColumnTriple, PlanePoly> minors;  // sorted triples -> minor of (p1 p2 p3 p4 (x,y,z))
    std::vector<std::pair<PicClass, Rat>> scalars;  // minor = scalar * normalized section
    bool minors_match_sections = false;
    std::vector<PlueckerIdentity> identities;
    std::vector<std::pair<PicClass, bool>> ruling_proportional;  // one entry per ruling
    std::size_t ruling_count = 0;
    std::string deviation_note;

    bool ok() const {
        if (!minors_match_sections || identities.size() != 5 || ruling_count != 5) return false;
        for (const auto& id : identities)
            if (!id.vanishes) return false;
        for (const auto& [cls, prop] : ruling_proportional)
            if (!prop) return false;
        return ruling_proportional.size() == 5;
    }
};

namespace detail {

inline PlanePoly det3(const std::array<std::array<PlanePoly, 3>, 3>& c) {
    // c[col][row]
    return c[0][0] * (c[1][1] * c[2][2] - c[2][1] * c[1][2]) - c[1][0] * (c[0][1] * c[2][2] - c[2][1] * c[0][2]) +
           c[2][0] * (c[0][1] * c[1][2] - c[1][1] * c[0][2]);
}

inline int sort_with_sign(ColumnTriple& t) {
    int sign = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j + 1 < 3 - i; ++j)
            if (t[static_cast<std::size_t>(j)] > t[static_cast<std::size_t>(j + 1)]) {
                std::swap(t[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j + 1)]);
                sign = -sign;
            }
    return sign;
}

// Generator class attached to a sorted column triple.
inline PicClass triple_class(const ColumnTriple& t) {
    const int r = 4;
    if (t[2] == 5) return PicClass::basis(r, 0) - PicClass::basis(r, t[0]) - PicClass::basis(r, t[1]);
    int missing = 1 + 2 + 3 + 4 - t[0] - t[1] - t[2];
    return PicClass::basis(r, missing);
}

}  // namespace detail

inline constexpr const char* kMinorAssignmentNote =
    "x_{l_i} is taken as the minor on the columns {1,2,3,4} minus {i}; the printed assignment lists x_{l_1} "
    "three times and x_{l_3} once, which is read as the complementary-triple rule.";

/// Builds M = (p1 p2 p3 p4 (x,y,z)^T), its ten maximal minors, and checks them
/// against the interpolated generators, the five three-term Pluecker identities,
/// and the ruling relations. Throws ModelMismatch if any check fails.
inline PlueckerReport pluecker_model_r4(const GeneratorSet& gs) {
    if (gs.r() != 4) throw DomainError("the Grassmannian model applies to r = 4");
    const PointConfig& cfg = gs.config();
    std::array<std::array<PlanePoly, 3>, 5> column;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 3; ++i)
            column[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                PlanePoly::constant(cfg.points()[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    column[4] = {PlanePoly::variable(Var::X), PlanePoly::variable(Var::Y), PlanePoly::variable(Var::Z)};
    auto minor = [&](int a, int b, int c) {
        return detail::det3({column[static_cast<std::size_t>(a - 1)], column[static_cast<std::size_t>(b - 1)],
                             column[static_cast<std::size_t>(c - 1)]});
    };

    PlueckerReport rep;
    rep.deviation_note = kMinorAssignmentNote;
    detail::for_each_subset(5, 3, [&](const std::vector<int>& idx) {
        rep.minors.emplace(ColumnTriple{idx[0] + 1, idx[1] + 1, idx[2] + 1}, minor(idx[0] + 1, idx[1] + 1, idx[2] + 1));
    });

    // (a) minors against normalized sections
    rep.minors_match_sections = true;
    std::map<ColumnTriple, Rat> lambda;
    for (const auto& [t, m] : rep.minors) {
        const PicClass cls = detail::triple_class(t);
        const PlanePoly& sec = gs[gs.index_of(cls)].poly;
        Rat s = m.is_zero() ? Rat(0) : m.leading_coefficient();
        const bool match = sgn(s) != 0 && m == s * sec;
        rep.minors_match_sections = rep.minors_match_sections && match;
        rep.scalars.emplace_back(cls, s);
        lambda[t] = s;
    }

    // (b) for each common column e and the others a<b<c<d:
    //     M(a,b,e)M(c,d,e) - M(a,c,e)M(b,d,e) + M(a,d,e)M(b,c,e) = 0
    for (int e = 1; e <= 5; ++e) {
        std::vector<int> o;
        for (int k = 1; k <= 5; ++k)
            if (k != e) o.push_back(k);
        PlueckerIdentity id;
        id.common = e;
        const int shape[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        const int outer[3] = {1, -1, 1};
        PlanePoly sum(2);
        for (int k = 0; k < 3; ++k) {
            ColumnTriple left{o[static_cast<std::size_t>(shape[k][0])], o[static_cast<std::size_t>(shape[k][1])], e};
            ColumnTriple right{o[static_cast<std::size_t>(shape[k][2])], o[static_cast<std::size_t>(shape[k][3])], e};
            sum += Rat(outer[k]) * (minor(left[0], left[1], left[2]) * minor(right[0], right[1], right[2]));
            const int sign = outer[k] * detail::sort_with_sign(left) * detail::sort_with_sign(right);
            id.terms.push_back({sign, left, right});
        }
        id.vanishes = sum.is_zero();
        rep.identities.push_back(std::move(id));
    }

    // (c) ruling relations against the identities, after x_E = minor / lambda_E
    const auto& rs = rulings(4);
    rep.ruling_count = rs.size();
    for (const auto& ru : rs) {
        const auto rels = ruling_relations(ru, gs);
        bool proportional = false;
        for (const auto& id : rep.identities) {
            PicClass sum0 = detail::triple_class(id.terms[0].left) + detail::triple_class(id.terms[0].right);
            if (sum0 != ru.cls || rels.size() != 1) continue;
            // coefficient of each generator pair in the identity, rewritten in sections
            std::map<std::pair<std::size_t, std::size_t>, Rat> want;
            for (const auto& term : id.terms) {
                std::size_t a = gs.index_of(detail::triple_class(term.left));
                std::size_t b = gs.index_of(detail::triple_class(term.right));
                if (a > b) std::swap(a, b);
                want[{a, b}] = Rat(term.sign) * lambda[term.left] * lambda[term.right];
            }
            std::map<std::pair<std::size_t, std::size_t>, Rat> have;
            for (const auto& t : rels[0].terms) have[{t.a, t.b}] = t.coeff;
            if (want.size() != have.size()) break;
            std::optional<Rat> ratio;
            proportional = true;
            for (const auto& [key, w] : want) {
                auto it = have.find(key);
                if (it == have.end()) {
                    proportional = false;
                    break;
                }
                Rat q = it->second / w;
                if (ratio && *ratio != q) proportional = false;
                ratio = q;
            }
            break;
        }
        rep.ruling_proportional.emplace_back(ru.cls, proportional);
    }

    if (!rep.ok()) throw ModelMismatch("Grassmannian model check failed at r = 4");
    return rep;
}

// ---------------------------------------------------------------------------
// Torsor points and the Jacobian
// ---------------------------------------------------------------------------

/// Character t^D = prod_j t_j^{D_j} of the Picard torus.
inline Rat character(const PicClass& d, const QVector& t) {
    if (t.size() != d.size()) throw DimensionError("torus vector needs r+1 entries");
    Rat acc = 1;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (sgn(t[j]) == 0) throw DomainError("torus coordinates must be nonzero");
        const Coeff e = d[j];
        if (e == 0) continue;
        Rat p = detail::power(t[j], static_cast<int>(e < 0 ? -e : e));
        acc *= e < 0 ? Rat(1 / p) : p;
    }
    return acc;
}

/// Coordinates (x_E)_E of a point of the affine cone: x_E = f_E(q) * t^{[E]}.
inline QVector sample_torsor_point(const GeneratorSet& gs, const PlanePoint& q, const QVector& t) {
    const PlanePoint qn = normalize_point(q);
    for (const auto& p : gs.config().points())
        if (p == qn) throw DegeneracyError("sample point coincides with a blown-up point");
    QVector out(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const Rat v = gs[i].poly.evaluate(qn);
        if (sgn(v) == 0)
            throw DegeneracyError("sample point " + point_to_string(qn) + " lies on the curve of " + gs[i].label);
        out[i] = v * character(gs[i].cls, t);
    }
    return out;
}

/// `count` torsor points drawn from mt19937_64(seed); q has coordinates in
/// [-50, 50], t entries in [-5, 5] \ {0}. Points on a generator curve are redrawn.
inline std::vector<QVector> sample_torsor_points(const GeneratorSet& gs, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto draw = [&](long lo, long hi) { return Rat(lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1))); };
    std::vector<QVector> out;
    int failures = 0;
    while (out.size() < count) {
        PlanePoint q{draw(-50, 50), draw(-50, 50), draw(-50, 50)};
        QVector t(static_cast<std::size_t>(gs.r()) + 1);
        for (auto& x : t) {
            do x = draw(-5, 5);
            while (sgn(x) == 0);
        }
        try {
            out.push_back(sample_torsor_point(gs, q, t));
        } catch (const Error&) {
            if (++failures > kDefaultSampleRetries) throw SamplingError("no admissible torsor point found");
        }
    }
    return out;
}

struct JacobianReport {
    int r = 0;
    std::size_t variables = 0;
    std::size_t quadrics = 0;
    std::size_t quadric_span = 0;  // dimension of the span of all ruling quadrics
    std::size_t expected_rank = 0;
    std::vector<std::size_t> ranks;  // Jacobian rank at each sample point
    bool relations_vanish = true;
    bool pass() const {
        if (!relations_vanish || ranks.empty()) return false;
        return std::all_of(ranks.begin(), ranks.end(), [&](std::size_t k) { return k == expected_rank; });
    }
};

/// Jacobian of the ruling quadrics at sampled torsor points. Smooth points of the
/// (r+3)-dimensional cone give rank N_r - (r+3).
inline JacobianReport jacobian_codim_check(const GeneratorSet& gs, std::size_t samples = 5, std::uint64_t seed = 0) {
    const int r = gs.r();
    if (r < 4 || r > 6) throw DomainError("Jacobian check is defined for r = 4, 5, 6");
    JacobianReport rep;
    rep.r = r;
    rep.variables = gs.size();
    rep.expected_rank = gs.size() - static_cast<std::size_t>(r + 3);
    std::vector<QuadraticRelation> quadrics;
    for (auto& group : all_ruling_relations(gs))
        for (auto& q : group) quadrics.push_back(std::move(q));
    rep.quadrics = quadrics.size();

    // Span of the quadrics inside Sym^2 of the generator space.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_slot;
    for (const auto& q : quadrics)
        for (const auto& t : q.terms) pair_slot.emplace(std::pair{t.a, t.b}, 0);
    std::size_t slot = 0;
    for (auto& [k, v] : pair_slot) v = slot++;
    std::vector<QVector> qrows;
    for (const auto& q : quadrics) {
        QVector row(pair_slot.size());
        for (const auto& t : q.terms) row[pair_slot[{t.a, t.b}]] += t.coeff;
        qrows.push_back(std::move(row));
    }
    rep.quadric_span = qrows.empty() ? 0 : rank(QMatrix::from_rows(qrows, pair_slot.size()));

    for (const auto& pt : sample_torsor_points(gs, samples, seed)) {
        QMatrix jac(quadrics.size(), gs.size());
        for (std::size_t i = 0; i < quadrics.size(); ++i) {
            if (sgn(evaluate_relation(quadrics[i], pt)) != 0) rep.relations_vanish = false;
            for (const auto& t : quadrics[i].terms) {
                jac(i, t.a) += t.coeff * pt[t.b];
                jac(i, t.b) += t.coeff * pt[t.a];
            }
        }
        rep.ranks.push_back(rank(jac));
    }
    if (std::none_of(rep.ranks.begin(), rep.ranks.end(), [&](std::size_t k) { return k == rep.expected_rank; }))
        throw CheckFailure("Jacobian rank differs from " + std::to_string(rep.expected_rank) + " at every sample");
    return rep;
}

// ---------------------------------------------------------------------------
// Blowdown
// ---------------------------------------------------------------------------

struct BlowdownReport {
    int r = 0;
    bool sections_pull_back = false;   // f_{iota E'} on X_r equals f_{E'} on X_{r-1}
    std::size_t disjoint_from_last = 0;  // exceptional classes with (E, l_r) = 0
    bool contraction_matches = false;  // contract_last of those = exceptional_curves(r-1)
    std::size_t relations_checked = 0;
    bool relations_map = false;  // every X_{r-1} relation lies in the X_r relation span
    bool pass() const {
        return sections_pull_back && contraction_matches && relations_map &&
               disjoint_from_last == exceptional_curves(r - 1).size();
    }
};

/// Compares the generators and ruling relations of X_r with those of X_{r-1},
/// obtained by forgetting the last point.
inline BlowdownReport verify_blowdown(const GeneratorSet& big) {
    const int r = big.r();
    if (r < 4) throw DomainError("blowdown needs r >= 4");
    const GeneratorSet small = build_generators(big.config().prefix(r - 1));
    BlowdownReport rep;
    rep.r = r;

    rep.sections_pull_back = true;
    for (const auto& e : exceptional_curves(r - 1)) {
        const PicClass up = embed_blowdown(e);
        if (!is_exceptional(up) || intersect(up, PicClass::basis(r, r)) != 0 ||
            big[big.index_of(up)].poly != small[small.index_of(e)].poly)
            rep.sections_pull_back = false;
    }

    std::vector<PicClass> contracted;
    for (const auto& f : disjoint_curves(PicClass::basis(r, r))) contracted.push_back(contract_last(f));
    sort_canonical(contracted);
    rep.disjoint_from_last = contracted.size();
    rep.contraction_matches = contracted == exceptional_curves(r - 1);

    // Relations: X_{r-1} relation terms carried over by iota must lie in the span of
    // the X_r relations of the pulled-back ruling (whose extra fiber involves x_{l_r},
    // set to 1 on the chart).
    rep.relations_map = true;
    for (const auto& ru_small : rulings(r - 1)) {
        const auto rel_small = ruling_relations(ru_small, small);
        const PicClass up = embed_blowdown(ru_small.cls);
        const auto& rs_big = rulings(r);
        auto it = std::find_if(rs_big.begin(), rs_big.end(), [&](const Ruling& x) { return x.cls == up; });
        if (it == rs_big.end()) {
            rep.relations_map = false;
            continue;
        }
        const auto rel_big = ruling_relations(*it, big);
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
        for (const auto& rel : rel_big)
            for (const auto& t : rel.terms) slot.emplace(std::pair{t.a, t.b}, 0);
        for (const auto& rel : rel_small)
            for (const auto& t : rel.terms) {
                std::size_t a = big.index_of(embed_blowdown(small[t.a].cls));
                std::size_t b = big.index_of(embed_blowdown(small[t.b].cls));
                slot.emplace(std::pair{std::min(a, b), std::max(a, b)}, 0);
            }
        std::size_t k = 0;
        for (auto& [key, v] : slot) v = k++;
        std::vector<QVector> rows;
        for (const auto& rel : rel_big) {
            QVector row(slot.size());
            for (const auto& t : rel.terms) row[slot[{t.a, t.b}]] = t.coeff;
            rows.push_back(std::move(row));
        }
        const std::size_t base_rank = rows.empty() ? 0 : rank(QMatrix::from_rows(rows, slot.size()));
        for (const auto& rel : rel_small) {
            QVector row(slot.size());
            for (const auto& t : rel.terms) {
                std::size_t a = big.index_of(embed_blowdown(small[t.a].cls));
                std::size_t b = big.index_of(embed_blowdown(small[t.b].cls));
                row[slot[{std::min(a, b), std::max(a, b)}]] = t.coeff;
            }
            auto with = rows;
            with.push_back(std::move(row));
            if (rank(QMatrix::from_rows(with, slot.size())) != base_rank) rep.relations_map = false;
            ++rep.relations_checked;
        }
    }
    return rep;
}

}  // namespace delpezzo
