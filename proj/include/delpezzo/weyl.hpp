#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "delpezzo/enumeration.hpp"
#include "delpezzo/errors.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/qmatrix.hpp"

namespace delpezzo {

/// Sequence of simple-reflection indices (1-based, alpha_1..alpha_r), applied left to right.
using ReflectionWord = std::vector<int>;

inline PicClass apply_word(PicClass x, const ReflectionWord& word) {
    const auto simple = simple_roots(x.r());
    for (int i : word) {
        if (i < 1 || i > x.r()) throw DomainError("reflection index " + std::to_string(i) + " out of range");
        x = reflect(x, simple[static_cast<std::size_t>(i - 1)]);
    }
    return x;
}

inline constexpr std::size_t kDefaultOrbitCap = 1'000'000;

class OrbitResult;
inline OrbitResult orbit(const PicClass& seed, std::size_t cap = kDefaultOrbitCap);

/// W_r-orbit of a seed. Elements appear in BFS order; every element remembers the
/// element it was first reached from, so words are shortest and, among shortest,
/// use the smallest reflection index at every step.
class OrbitResult {
public:
    const PicClass& seed() const { return elements_.front(); }
    const std::vector<PicClass>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool contains(const PicClass& x) const { return index_.contains(x); }

    ReflectionWord word(const PicClass& x) const {
        auto it = index_.find(x);
        if (it == index_.end()) throw NotInOrbit(x.to_string() + " is not in the orbit of " + seed().to_string());
        ReflectionWord w;
        for (std::size_t k = it->second; k != 0; k = parent_[k]) w.push_back(via_[k]);
        return {w.rbegin(), w.rend()};
    }

    std::vector<PicClass> sorted_elements() const {
        auto v = elements_;
        sort_canonical(v);
        return v;
    }

private:
    friend OrbitResult orbit(const PicClass& seed, std::size_t cap);
    std::vector<PicClass> elements_;
    std::vector<std::size_t> parent_;
    std::vector<int> via_;
    std::unordered_map<PicClass, std::size_t, PicClassHash> index_;
};

/// BFS closure of {seed} under the simple reflections.
inline OrbitResult orbit(const PicClass& seed, std::size_t cap) {
    const auto simple = simple_roots(seed.r());
    OrbitResult res;
    res.elements_.push_back(seed);
    res.parent_.push_back(0);
    res.via_.push_back(0);
    res.index_.emplace(seed, 0);
    for (std::size_t head = 0; head < res.elements_.size(); ++head) {
        for (std::size_t i = 0; i < simple.size(); ++i) {
            PicClass y = reflect(res.elements_[head], simple[i]);
            if (res.index_.contains(y)) continue;
            if (res.elements_.size() >= cap)
                throw OrbitOverflow("orbit of " + seed.to_string() + " exceeds " + std::to_string(cap) + " elements");
            res.index_.emplace(y, res.elements_.size());
            res.elements_.push_back(std::move(y));
            res.parent_.push_back(head);
            res.via_.push_back(static_cast<int>(i + 1));
        }
    }
    return res;
}

/// A word w with w(seed) = target.
inline ReflectionWord word_to(const PicClass& seed, const PicClass& target) {
    seed.same_r(target);
    return orbit(seed).word(target);
}

/// ((D, alpha_1), ..., (D, alpha_r)).
struct WeightVector {
    std::vector<Coeff> pairings;
    friend bool operator==(const WeightVector&, const WeightVector&) = default;
    bool is_zero() const {
        for (Coeff c : pairings)
            if (c != 0) return false;
        return true;
    }
};

struct WeightVectorHash {
    std::size_t operator()(const WeightVector& w) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Coeff c : w.pairings) h = (h ^ static_cast<std::size_t>(c + 64)) * 0x100000001B3ull;
        return h;
    }
};

inline WeightVector weight_vector(const PicClass& d) {
    WeightVector w;
    for (const auto& a : simple_roots(d.r())) w.pairings.push_back(intersect(d, a));
    return w;
}

/// Kernel of D -> weight_vector(D) over Q. It is spanned by K.
inline std::vector<QVector> weight_map_kernel(int r) {
    const auto simple = simple_roots(r);
    QMatrix m(simple.size(), static_cast<std::size_t>(r) + 1);
    for (std::size_t i = 0; i < simple.size(); ++i) {
        // (D, a) = D_0 a_0 - sum D_j a_j, as a row acting on D
        m(i, 0) = static_cast<long>(simple[i][0]);
        for (std::size_t j = 1; j < simple[i].size(); ++j) m(i, j) = static_cast<long>(-simple[i][j]);
    }
    return nullspace(m);
}

/// Dimension of the fundamental representation V(w_r), tabulated for r = 4..8.
inline std::size_t fundamental_dimension(int r) {
    if (r < 4 || r > kMaxR) throw DomainError("fundamental dimension tabulated for r = 4..8");
    static constexpr std::array<std::size_t, 5> d{10, 16, 27, 56, 248};
    return d[static_cast<std::size_t>(r - 4)];
}

/// Multiset of weights carried by the exceptional classes, as (distinct nonzero
/// weights, multiplicity of the zero weight). For r = 8 the zero weight has
/// multiplicity equal to the rank of the root lattice, the dimension of the
/// Cartan subalgebra.
struct WeightCensus {
    std::size_t nonzero_weights = 0;
    std::size_t zero_multiplicity = 0;
    bool injective = false;
    std::size_t total() const { return nonzero_weights + zero_multiplicity; }
};

inline WeightCensus exceptional_weight_census(int r) {
    WeightCensus c;
    std::unordered_map<WeightVector, int, WeightVectorHash> seen;
    for (const auto& e : exceptional_curves(r)) ++seen[weight_vector(e)];
    c.injective = seen.size() == exceptional_curves(r).size();
    for (const auto& [w, mult] : seen)
        if (!w.is_zero()) ++c.nonzero_weights;
    if (r == kMaxR) {
        // Rank of the simple-root pairing map on the root lattice.
        QMatrix gram(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
        const auto simple = simple_roots(r);
        for (std::size_t i = 0; i < simple.size(); ++i)
            for (std::size_t j = 0; j < simple.size(); ++j) gram(i, j) = static_cast<long>(intersect(simple[i], simple[j]));
        c.zero_multiplicity = rank(gram);
    }
    return c;
}

/// Exceptional classes E' with (E, E') = 0.
inline std::vector<PicClass> disjoint_curves(const PicClass& e) {
    std::vector<PicClass> out;
    for (const auto& f : exceptional_curves(e.r()))
        if (intersect(e, f) == 0) out.push_back(f);
    return out;
}

/// Contraction of an arbitrary exceptional curve E: move E to l_r by a Weyl word,
/// carry the curves disjoint from E along, and drop the last coordinate. The
/// result lists the exceptional curves of X_{r-1} seen from the chart x_E != 0.
inline std::vector<PicClass> contract_along(const PicClass& e) {
    if (!is_exceptional(e)) throw DomainError(e.to_string() + " is not exceptional");
    if (e.r() <= kMinR) throw DomainError("contraction needs r >= 4");
    const ReflectionWord w = word_to(e, PicClass::basis(e.r(), e.r()));
    std::vector<PicClass> out;
    for (const auto& f : disjoint_curves(e)) out.push_back(contract_last(apply_word(f, w)));
    sort_canonical(out);
    return out;
}

}  // namespace delpezzo
