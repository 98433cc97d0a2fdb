#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "delpezzo/errors.hpp"

namespace delpezzo {

using Int = mpz_class;
using Rat = mpq_class;  // always kept canonical: den > 0, gcd(num, den) = 1

// Parses "a", "-a" or "a/b". Anything else (floats, exponents, blanks) is rejected.
inline Rat parse_rat(std::string_view text) {
    if (text.empty()) throw InputError("empty rational literal");
    std::size_t slash = text.find('/');
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!valid_int(num) || (slash != std::string_view::npos && !valid_int(den)))
        throw InputError("not an exact rational: '" + std::string(text) + "'");
    std::string num_s(num.front() == '+' ? num.substr(1) : num);
    Rat q;
    q.get_num() = Int(num_s, 10);
    if (slash != std::string_view::npos) {
        std::string den_s(den.front() == '+' ? den.substr(1) : den);
        q.get_den() = Int(den_s, 10);
        if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    } else {
        q.get_den() = 1;
    }
    q.canonicalize();
    return q;
}

// "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rat& q) { return q.get_str(10); }

inline std::string to_string(const Int& z) { return z.get_str(10); }

inline Int lcm(const Int& a, const Int& b) {
    Int out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

}  // namespace delpezzo
