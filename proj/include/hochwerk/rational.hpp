#pragma once

#include <gmpxx.h>

#include <string>

#include "hochwerk/error.hpp"

namespace hochwerk {

// Exact rational scalar. mpq_class in canonical form (gcd-reduced, positive
// denominator) is precisely the invariant we need, so we use it directly and
// keep the canonicalization discipline in the two construction helpers below.
// Arithmetic on canonical values stays canonical.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw ParseError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p", "p/q" with integer p, q and q != 0. No whitespace, no
// floating point. This is the one text format rationals ever travel in.
inline Rat rat_parse(const std::string& s) {
    auto fail = [&]() -> Rat { throw ParseError("malformed rational '" + s + "'"); };
    if (s.empty()) return fail();
    std::size_t pos = 0;
    auto scan_int = [&](bool sign_ok) {
        std::size_t start = pos;
        if (sign_ok && pos < s.size() && s[pos] == '-') ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos, ++digits;
        if (digits == 0) fail();
        return s.substr(start, pos - start);
    };
    std::string num = scan_int(true);
    std::string den = "1";
    if (pos < s.size()) {
        if (s[pos] != '/') fail();
        ++pos;
        den = scan_int(false);
        if (pos != s.size()) fail();
    }
    mpz_class d(den);
    if (d == 0) fail();
    Rat q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace hochwerk
