#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "delpezzo/errors.hpp"
#include "delpezzo/qmatrix.hpp"
#include "delpezzo/rational.hpp"

namespace delpezzo {

/// Exponent triple (i, j, k) of x^i y^j z^k.
using Monomial = std::array<int, 3>;

using PlanePoint = std::array<Rat, 3>;

enum class Var { X = 0, Y = 1, Z = 2 };

// Graded lexicographic with x > y > z. Returns true when a is strictly larger.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
    const int da = a[0] + a[1] + a[2];
    const int db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    if (a[0] != b[0]) return a[0] > b[0];
    return a[1] > b[1];
}

struct GrlexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_greater(a, b); }
};

/// All monomials of total degree d, largest first.
inline std::vector<Monomial> monomials_of_degree(int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    out.reserve(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
    return out;
}

inline std::size_t monomial_count(int d) { return d < 0 ? 0 : static_cast<std::size_t>((d + 1) * (d + 2) / 2); }

// Position of m inside monomials_of_degree(deg m).
inline std::size_t monomial_index(const Monomial& m) {
    const int d = m[0] + m[1] + m[2];
    const int i = m[0];
    const int j = m[1];
    // Degrees with x-exponent > i contribute 1 + 2 + ... + (d - i) monomials.
    const int before = (d - i) * (d - i + 1) / 2;
    return static_cast<std::size_t>(before + (d - i - j));
}

/// Homogeneous polynomial in x, y, z with exact rational coefficients.
/// Zero coefficients are never stored; the zero polynomial still carries a degree.
class PlanePoly {
public:
    using Terms = std::map<Monomial, Rat, GrlexDescending>;

    PlanePoly() = default;
    explicit PlanePoly(int degree) : degree_(degree) {
        if (degree < 0) throw DomainError("negative polynomial degree");
    }

    static PlanePoly constant(const Rat& c) {
        PlanePoly p(0);
        p.add_term({0, 0, 0}, c);
        return p;
    }
    static PlanePoly variable(Var v) {
        PlanePoly p(1);
        Monomial m{0, 0, 0};
        m[static_cast<int>(v)] = 1;
        p.add_term(m, 1);
        return p;
    }
    static PlanePoly monomial(const Monomial& m, const Rat& c = 1) {
        PlanePoly p(m[0] + m[1] + m[2]);
        p.add_term(m, c);
        return p;
    }
    // Inverse of coefficients(): coefficient vector over monomials_of_degree(d).
    static PlanePoly from_coefficients(int degree, const QVector& coeffs) {
        const auto monos = monomials_of_degree(degree);
        if (coeffs.size() != monos.size()) throw DimensionError("coefficient vector length mismatch");
        PlanePoly p(degree);
        for (std::size_t k = 0; k < monos.size(); ++k) p.add_term(monos[k], coeffs[k]);
        return p;
    }

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rat& c) {
        if (m[0] < 0 || m[1] < 0 || m[2] < 0) throw DomainError("negative exponent");
        if (m[0] + m[1] + m[2] != degree_) throw DimensionError("term breaks homogeneity");
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    Rat coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    // Leading (largest grlex) monomial and coefficient; the polynomial must be nonzero.
    const Monomial& leading_monomial() const {
        if (is_zero()) throw DomainError("leading monomial of zero polynomial");
        return terms_.begin()->first;
    }
    const Rat& leading_coefficient() const {
        if (is_zero()) throw DomainError("leading coefficient of zero polynomial");
        return terms_.begin()->second;
    }

    // Scaled so the leading coefficient is 1.
    PlanePoly normalized() const {
        PlanePoly out = *this;
        if (is_zero()) return out;
        const Rat inv = 1 / leading_coefficient();
        for (auto& [m, c] : out.terms_) c *= inv;
        return out;
    }

    QVector coefficients() const {
        QVector v(monomial_count(degree_));
        for (const auto& [m, c] : terms_) v[monomial_index(m)] = c;
        return v;
    }

    Rat evaluate(const PlanePoint& pt) const {
        Rat acc = 0;
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            for (int v = 0; v < 3; ++v) {
                if (m[v] == 0) continue;
                Rat pw;
                mpz_pow_ui(pw.get_num_mpz_t(), pt[v].get_num_mpz_t(), static_cast<unsigned long>(m[v]));
                mpz_pow_ui(pw.get_den_mpz_t(), pt[v].get_den_mpz_t(), static_cast<unsigned long>(m[v]));
                t *= pw;
            }
            acc += t;
        }
        return acc;
    }

    PlanePoly partial(Var v) const {
        const int k = static_cast<int>(v);
        PlanePoly out(degree_ > 0 ? degree_ - 1 : 0);
        for (const auto& [m, c] : terms_) {
            if (m[k] == 0) continue;
            Monomial d = m;
            d[k] -= 1;
            out.add_term(d, c * m[k]);
        }
        return out;
    }

    PlanePoly operator-() const {
        PlanePoly out = *this;
        for (auto& [m, c] : out.terms_) c = -c;
        return out;
    }

    PlanePoly& operator+=(const PlanePoly& o) {
        if (o.is_zero()) return *this;
        if (is_zero() && degree_ != o.degree_) degree_ = o.degree_;
        if (degree_ != o.degree_) throw DimensionError("adding polynomials of different degree");
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    PlanePoly& operator-=(const PlanePoly& o) { return *this += -o; }
    PlanePoly& operator*=(const Rat& s) {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend PlanePoly operator+(PlanePoly a, const PlanePoly& b) { return a += b; }
    friend PlanePoly operator-(PlanePoly a, const PlanePoly& b) { return a -= b; }
    friend PlanePoly operator*(PlanePoly a, const Rat& s) { return a *= s; }
    friend PlanePoly operator*(const Rat& s, PlanePoly a) { return a *= s; }

    friend PlanePoly operator*(const PlanePoly& a, const PlanePoly& b) {
        PlanePoly out(a.degree_ + b.degree_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                out.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
        return out;
    }

    // Zero polynomials of different degrees compare equal to each other only
    // when their degrees agree.
    friend bool operator==(const PlanePoly& a, const PlanePoly& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        static const char* names = "xyz";
        for (const auto& [m, c] : terms_) {
            const bool unit_monomial = m == Monomial{0, 0, 0};
            Rat mag = abs(c);
            os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (mag != 1 || unit_monomial) {
                os << delpezzo::to_string(mag);
                if (!unit_monomial) os << '*';
            }
            bool first_var = true;
            for (int v = 0; v < 3; ++v) {
                if (m[v] == 0) continue;
                if (!first_var) os << '*';
                os << names[v];
                if (m[v] > 1) os << '^' << m[v];
                first_var = false;
            }
            first = false;
        }
        return os.str();
    }

private:
    int degree_ = 0;
    Terms terms_;
};

inline PlanePoly multiply(const PlanePoly& p, const PlanePoly& q) { return p * q; }
inline Rat evaluate(const PlanePoly& p, const PlanePoint& pt) {
    if (sgn(pt[0]) == 0 && sgn(pt[1]) == 0 && sgn(pt[2]) == 0)
        throw DomainError("evaluation at (0:0:0)");
    return p.evaluate(pt);
}
inline PlanePoly partial(const PlanePoly& p, Var v) { return p.partial(v); }

/// Dense integer form: coefficients over monomials_of_degree(degree).
struct IntForm {
    int degree = 0;
    std::vector<Int> coeffs;
};

/// Writes p = scale * form with integer, content-free coefficients whose leading
/// entry is positive. The zero polynomial has scale 0.
inline std::pair<Rat, IntForm> primitive_part(const PlanePoly& p) {
    IntForm f{p.degree(), std::vector<Int>(monomial_count(p.degree()))};
    if (p.is_zero()) return {Rat(0), f};
    Int den = 1;
    for (const auto& [m, c] : p.terms())
        if (c.get_den() != 1) den = lcm(den, c.get_den());
    Int content = 0;
    for (const auto& [m, c] : p.terms()) {
        Int v = c.get_num() * (den / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        f.coeffs[monomial_index(m)] = std::move(v);
    }
    if (sgn(p.leading_coefficient()) < 0) content = -content;
    for (auto& v : f.coeffs)
        if (v != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    Rat scale(content, den);
    scale.canonicalize();
    return {scale, std::move(f)};
}

inline IntForm multiply(const IntForm& a, const IntForm& b) {
    IntForm out{a.degree + b.degree, std::vector<Int>(monomial_count(a.degree + b.degree))};
    const auto ma = monomials_of_degree(a.degree);
    const auto mb = monomials_of_degree(b.degree);
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < mb.size(); ++j) {
            if (b.coeffs[j] == 0) continue;
            const Monomial s{ma[i][0] + mb[j][0], ma[i][1] + mb[j][1], ma[i][2] + mb[j][2]};
            Int& dst = out.coeffs[monomial_index(s)];
            mpz_addmul(dst.get_mpz_t(), a.coeffs[i].get_mpz_t(), b.coeffs[j].get_mpz_t());
        }
    }
    return out;
}

}  // namespace delpezzo
