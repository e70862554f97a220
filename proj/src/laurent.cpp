#include "qma/laurent.hpp"

#include <sstream>

namespace qma {

LaurentPoly::LaurentPoly(const Rational& c) {
    if (c != 0) c_[0] = c;
}

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) c_[0] = Rational(c);
}

LaurentPoly LaurentPoly::term(const Rational& c, long e) {
    LaurentPoly p;
    if (c != 0) p.c_[e] = c;
    return p;
}

bool LaurentPoly::is_one() const {
    return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second == 1;
}

bool LaurentPoly::is_constant() const {
    return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
}

long LaurentPoly::min_exp() const { return c_.begin()->first; }
long LaurentPoly::max_exp() const { return c_.rbegin()->first; }

Rational LaurentPoly::coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Rational(0) : it->second;
}

Rational LaurentPoly::leading_coeff() const {
    return c_.empty() ? Rational(0) : c_.rbegin()->second;
}

void LaurentPoly::add_term(long e, const Rational& c) {
    if (c == 0) return;
    auto it = c_.find(e);
    if (it == c_.end()) {
        c_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) c_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : c_) r.c_[e] = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.c_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.c_) add_term(e, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r -= o;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : c_)
        for (const auto& [e2, c2] : o.c_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::operator*(const Rational& c) const {
    LaurentPoly r;
    if (c == 0) return r;
    for (const auto& [e, v] : c_) r.c_[e] = v * c;
    return r;
}

LaurentPoly LaurentPoly::shifted(long e) const {
    LaurentPoly r;
    for (const auto& [e0, c] : c_) r.c_[e0 + e] = c;
    return r;
}

LaurentPoly LaurentPoly::reflected() const {
    LaurentPoly r;
    for (const auto& [e, c] : c_) r.c_[-e] = (e % 2 != 0) ? Rational(-c) : c;
    return r;
}

Rational LaurentPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (const auto& [e, c] : c_) {
        if (x == 0) {
            if (e < 0) throw ZeroPointError("negative power of q at q = 0");
            if (e > 0) continue;
            acc += c;
            continue;
        }
        Rational p(1);
        Integer num = x.get_num(), den = x.get_den();
        unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
        Integer pn, pd;
        mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), a);
        mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), a);
        if (e < 0) std::swap(pn, pd);
        p = Rational(pn, pd);
        p.canonicalize();
        acc += c * p;
    }
    return acc;
}

std::string LaurentPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const long e = it->first;
        Rational c = it->second;
        const bool neg = c < 0;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        if (neg) c = -c;
        const bool unit = (c == 1);
        if (e == 0) {
            out << c.get_str();
        } else {
            if (!unit) out << c.get_str() << "*";
            out << "q";
            if (e != 1) out << "^" << e;
        }
        first = false;
    }
    return out.str();
}

std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    LaurentPoly quot, rem = a;
    const long db = b.max_exp();
    const Rational lb = b.leading_coeff();
    while (!rem.is_zero() && rem.max_exp() >= db) {
        const long e = rem.max_exp() - db;
        const Rational c = rem.leading_coeff() / lb;
        quot.add_term(e, c);
        rem -= b.shifted(e) * c;
    }
    return {quot, rem};
}

LaurentPoly poly_divexact(const LaurentPoly& a, const LaurentPoly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw Error("inexact polynomial division");
    return q;
}

LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a * (Rational(1) / a.leading_coeff());  // monic
}

} // namespace qma
