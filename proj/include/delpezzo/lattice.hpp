#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "delpezzo/errors.hpp"

namespace delpezzo {

inline constexpr int kMinR = 3;
inline constexpr int kMaxR = 8;

using Coeff = std::int64_t;

namespace checked {

inline Coeff add(Coeff a, Coeff b) {
    Coeff out;
    if (__builtin_add_overflow(a, b, &out)) throw ArithmeticOverflow("lattice coefficient overflow");
    return out;
}
inline Coeff sub(Coeff a, Coeff b) {
    Coeff out;
    if (__builtin_sub_overflow(a, b, &out)) throw ArithmeticOverflow("lattice coefficient overflow");
    return out;
}
inline Coeff mul(Coeff a, Coeff b) {
    Coeff out;
    if (__builtin_mul_overflow(a, b, &out)) throw ArithmeticOverflow("lattice coefficient overflow");
    return out;
}

}  // namespace checked

inline void require_surface_index(int r) {
    if (r < kMinR || r > kMaxR)
        throw DomainError("surface index r=" + std::to_string(r) + " outside [3, 8]");
}

/// A class m_0 l_0 + m_1 l_1 + ... + m_r l_r in Pic(X_r) = Z^{r+1}.
/// Integer arithmetic is overflow-checked; every operation either returns the
/// exact value or throws ArithmeticOverflow.
class PicClass {
public:
    PicClass() = default;
    PicClass(int r, std::vector<Coeff> coeffs) : r_(r), coeffs_(std::move(coeffs)) {
        if (r < 0 || coeffs_.size() != static_cast<std::size_t>(r) + 1)
            throw DimensionError("PicClass at r=" + std::to_string(r) + " needs " + std::to_string(r + 1) +
                                 " coefficients");
    }
    PicClass(int r, std::initializer_list<Coeff> coeffs) : PicClass(r, std::vector<Coeff>(coeffs)) {}

    static PicClass zero(int r) { return PicClass(r, std::vector<Coeff>(static_cast<std::size_t>(r) + 1, 0)); }
    // Basis vector l_i, 0 <= i <= r.
    static PicClass basis(int r, int i) {
        if (i < 0 || i > r) throw DimensionError("basis index out of range");
        PicClass c = zero(r);
        c.coeffs_[static_cast<std::size_t>(i)] = 1;
        return c;
    }

    int r() const { return r_; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<Coeff>& coeffs() const { return coeffs_; }
    Coeff operator[](std::size_t i) const { return coeffs_[i]; }
    Coeff& operator[](std::size_t i) { return coeffs_[i]; }

    // Multiplicity at p_i of the plane curve in this class, i.e. -m_i for i >= 1.
    Coeff multiplicity(int i) const { return -coeffs_[static_cast<std::size_t>(i)]; }
    Coeff line_degree() const { return coeffs_[0]; }

    PicClass& operator+=(const PicClass& o) {
        same_r(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = checked::add(coeffs_[i], o.coeffs_[i]);
        return *this;
    }
    PicClass& operator-=(const PicClass& o) {
        same_r(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = checked::sub(coeffs_[i], o.coeffs_[i]);
        return *this;
    }
    PicClass& operator*=(Coeff s) {
        for (auto& c : coeffs_) c = checked::mul(c, s);
        return *this;
    }
    PicClass operator-() const {
        PicClass out = *this;
        out *= -1;
        return out;
    }
    friend PicClass operator+(PicClass a, const PicClass& b) { return a += b; }
    friend PicClass operator-(PicClass a, const PicClass& b) { return a -= b; }
    friend PicClass operator*(Coeff s, PicClass a) { return a *= s; }

    friend bool operator==(const PicClass& a, const PicClass& b) = default;

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](Coeff c) { return c == 0; });
    }

    // "3l0-l1-l2" style; the zero class prints as "0".
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const Coeff c = coeffs_[i];
            if (c == 0) continue;
            if (c < 0)
                os << '-';
            else if (!first)
                os << '+';
            if (c != 1 && c != -1) os << (c < 0 ? -c : c);
            os << 'l' << i;
            first = false;
        }
        return first ? "0" : os.str();
    }

    void same_r(const PicClass& o) const {
        if (r_ != o.r_)
            throw DimensionError("classes of different surfaces: r=" + std::to_string(r_) +
                                 " vs r=" + std::to_string(o.r_));
    }

private:
    int r_ = 0;
    std::vector<Coeff> coeffs_{0};
};

/// (a, b) = a_0 b_0 - sum_{i>=1} a_i b_i.
inline Coeff intersect(const PicClass& a, const PicClass& b) {
    a.same_r(b);
    Coeff acc = checked::mul(a[0], b[0]);
    for (std::size_t i = 1; i < a.size(); ++i) acc = checked::sub(acc, checked::mul(a[i], b[i]));
    return acc;
}

inline Coeff self_intersection(const PicClass& a) { return intersect(a, a); }

/// K = -3 l_0 + l_1 + ... + l_r.
inline PicClass canonical_class(int r) {
    PicClass k = PicClass::zero(r);
    k[0] = -3;
    for (std::size_t i = 1; i < k.size(); ++i) k[i] = 1;
    return k;
}

inline PicClass anticanonical_class(int r) { return -canonical_class(r); }

/// deg D = (D, -K) = 3 m_0 + sum_{i>=1} m_i.
inline Coeff degree(const PicClass& d) {
    Coeff acc = checked::mul(3, d[0]);
    for (std::size_t i = 1; i < d.size(); ++i) acc = checked::add(acc, d[i]);
    return acc;
}

/// Total order used for all deterministic output: by degree, then coefficients
/// lexicographically. Both classes must live on the same surface.
inline std::strong_ordering canonical_compare(const PicClass& a, const PicClass& b) {
    a.same_r(b);
    if (auto c = degree(a) <=> degree(b); c != 0) return c;
    return a.coeffs() <=> b.coeffs();
}

struct CanonicalLess {
    bool operator()(const PicClass& a, const PicClass& b) const { return canonical_compare(a, b) < 0; }
};

inline void sort_canonical(std::vector<PicClass>& v) { std::sort(v.begin(), v.end(), CanonicalLess{}); }

/// alpha_1 = l1-l2, alpha_2 = l2-l3, alpha_3 = l0-l1-l2-l3, alpha_i = l_{i-1}-l_i (i >= 4).
inline std::vector<PicClass> simple_roots(int r) {
    require_surface_index(r);
    std::vector<PicClass> out;
    out.reserve(static_cast<std::size_t>(r));
    auto diff = [r](int i, int j) { return PicClass::basis(r, i) - PicClass::basis(r, j); };
    out.push_back(diff(1, 2));
    out.push_back(diff(2, 3));
    out.push_back(PicClass::basis(r, 0) - PicClass::basis(r, 1) - PicClass::basis(r, 2) - PicClass::basis(r, 3));
    for (int i = 4; i <= r; ++i) out.push_back(diff(i - 1, i));
    return out;
}

/// Edges of the Dynkin graph as 1-based index pairs (i < j): the chain
/// 1-2-4-5-6-7-8 with alpha_3 attached to alpha_4, truncated to r vertices.
inline std::vector<std::pair<int, int>> dynkin_edges(int r) {
    require_surface_index(r);
    std::vector<std::pair<int, int>> edges;
    const int chain[] = {1, 2, 4, 5, 6, 7, 8};
    for (std::size_t k = 0; k + 1 < std::size(chain); ++k)
        if (chain[k + 1] <= r) edges.emplace_back(std::min(chain[k], chain[k + 1]), std::max(chain[k], chain[k + 1]));
    if (r >= 4) edges.emplace_back(3, 4);
    std::sort(edges.begin(), edges.end());
    return edges;
}

inline bool is_root_vector(const PicClass& a) { return self_intersection(a) == -2; }

/// sigma_alpha(x) = x + (x, alpha) alpha.
inline PicClass reflect(const PicClass& x, const PicClass& alpha) {
    if (!is_root_vector(alpha)) throw DomainError("reflection in " + alpha.to_string() + ": (a,a) != -2");
    return x + intersect(x, alpha) * alpha;
}

/// Pic(X_{r-1}) -> Pic(X_r): append a zero coefficient for l_r.
inline PicClass embed_blowdown(const PicClass& d) {
    if (d.r() + 1 > kMaxR) throw DomainError("cannot embed beyond r=8");
    std::vector<Coeff> c = d.coeffs();
    c.push_back(0);
    return PicClass(d.r() + 1, std::move(c));
}

/// Inverse of embed_blowdown on classes orthogonal to l_r.
inline PicClass contract_last(const PicClass& d) {
    if (d.r() < 1) throw DomainError("nothing to contract");
    if (d.coeffs().back() != 0)
        throw ContractionError("cannot contract " + d.to_string() + ": coefficient of l" + std::to_string(d.r()) +
                               " is nonzero");
    std::vector<Coeff> c = d.coeffs();
    c.pop_back();
    return PicClass(d.r() - 1, std::move(c));
}

struct PicClassHash {
    std::size_t operator()(const PicClass& c) const noexcept {
        std::size_t h = static_cast<std::size_t>(c.r()) * 0x9E3779B97F4A7C15ull;
        for (Coeff x : c.coeffs()) h = (h ^ static_cast<std::size_t>(x + 64)) * 0x100000001B3ull;
        return h;
    }
};

}  // namespace delpezzo
