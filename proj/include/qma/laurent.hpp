#pragma once

#include <map>
#include <string>

#include "qma/rational.hpp"

namespace qma {

// Laurent polynomial in the formal parameter q with exact rational
// coefficients. Stored as exponent -> coefficient; zero coefficients are
// never kept, so the zero polynomial has an empty map.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rational& c);
    explicit LaurentPoly(long c);

    // c * q^e
    static LaurentPoly term(const Rational& c, long e);
    static LaurentPoly q_power(long e) { return term(1, e); }
    static LaurentPoly one() { return LaurentPoly(1); }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_constant() const;

    // pre: !is_zero()
    long min_exp() const;
    long max_exp() const;
    long degree() const { return max_exp(); }

    Rational coeff(long e) const;
    Rational leading_coeff() const;  // coefficient at max_exp
    const std::map<long, Rational>& terms() const { return c_; }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator*(const Rational& c) const;
    bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return c_ != o.c_; }

    LaurentPoly shifted(long e) const;  // multiply by q^e

    // q -> -q^{-1}: c*q^e becomes c*(-1)^e*q^{-e}. Involution.
    LaurentPoly reflected() const;

    // Evaluation at a nonzero rational point. Throws ZeroPointError when
    // x = 0 and a negative exponent is present.
    Rational eval(const Rational& x) const;

    // Rendering in the coefficient expression grammar, highest exponent
    // first, e.g. "2*q^2 - q + 1/2*q^-1".
    std::string str() const;

private:
    void add_term(long e, const Rational& c);
    std::map<long, Rational> c_;

    friend LaurentPoly poly_divexact(const LaurentPoly&, const LaurentPoly&);
    friend std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly&, const LaurentPoly&);
};

// Ordinary-polynomial division helpers (inputs must have min_exp >= 0).
// poly_divmod returns (quotient, remainder) with deg(rem) < deg(divisor).
std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly poly_divexact(const LaurentPoly& a, const LaurentPoly& b);

// Monic gcd over the rationals of two ordinary polynomials; gcd(0,0) = 0.
LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b);

} // namespace qma
