#pragma once

#include <string>

#include "qma/laurent.hpp"

namespace qma {

// Element of Q(q): a quotient of Laurent polynomials kept in canonical form.
//
// Canonical form: den is an ordinary polynomial with nonzero constant term
// (minimal exponent 0), monic, and coprime to the numerator after the
// numerator's q-power shift is factored out. The zero element is 0/1.
// Canonical form is unique, so equality is structural.
class QRat {
public:
    QRat() : den_(LaurentPoly::one()) {}
    QRat(long c) : num_(c), den_(LaurentPoly::one()) {}
    QRat(const Rational& c) : num_(c), den_(LaurentPoly::one()) {}
    explicit QRat(const LaurentPoly& p) : num_(p), den_(LaurentPoly::one()) {}
    QRat(LaurentPoly num, LaurentPoly den);

    static QRat gen() { return QRat(LaurentPoly::q_power(1)); }
    static QRat q_power(long e) { return QRat(LaurentPoly::q_power(e)); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_polynomial() const { return den_.is_one(); }

    QRat operator-() const;
    QRat operator+(const QRat& o) const;
    QRat operator-(const QRat& o) const;
    QRat operator*(const QRat& o) const;
    QRat operator/(const QRat& o) const;
    QRat& operator+=(const QRat& o) { return *this = *this + o; }
    QRat& operator-=(const QRat& o) { return *this = *this - o; }
    QRat& operator*=(const QRat& o) { return *this = *this * o; }
    QRat& operator/=(const QRat& o) { return *this = *this / o; }
    bool operator==(const QRat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QRat& o) const { return !(*this == o); }

    QRat inverse() const;

    // The field automorphism q -> -q^{-1}; an involution.
    QRat reflected() const;

    // Exact evaluation at q = x. Throws ZeroPointError for x = 0 and
    // PoleError when the denominator vanishes at x.
    Rational eval_at(const Rational& x) const;

    std::string str() const;

private:
    void canonicalize();
    LaurentPoly num_, den_;
};

// The q-number k_q = (q^k - q^{-k})/(q - q^{-1}), canonically the Laurent
// polynomial q^{k-1} + q^{k-3} + ... + q^{1-k}. Requires k >= 0.
QRat qnum(int k);

} // namespace qma
