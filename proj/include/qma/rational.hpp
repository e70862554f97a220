#pragma once

#include <gmpxx.h>

#include <string>

#include "qma/errors.hpp"

namespace qma {

// Exact arbitrary-precision rational scalar. All coefficient arithmetic in the
// engine runs on these; floating point never appears.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "a" or "a/b" with optional sign.
inline Rational parse_rational(const std::string& s) {
    try {
        Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: '" + s + "'");
    }
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

} // namespace qma
