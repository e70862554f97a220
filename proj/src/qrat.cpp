#include "qma/qrat.hpp"

namespace qma {

QRat::QRat(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("zero denominator in Q(q) element");
    canonicalize();
}

void QRat::canonicalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly::one();
        return;
    }
    // Factor the q-power shifts out so both parts are ordinary polynomials
    // with nonzero constant term.
    const long a = num_.min_exp();
    const long b = den_.min_exp();
    LaurentPoly n = num_.shifted(-a);
    LaurentPoly d = den_.shifted(-b);
    const LaurentPoly g = poly_gcd(n, d);
    if (!g.is_one()) {
        n = poly_divexact(n, g);
        d = poly_divexact(d, g);
    }
    const Rational lc = d.leading_coeff();
    if (lc != 1) {
        const Rational inv = Rational(1) / lc;
        n = n * inv;
        d = d * inv;
    }
    num_ = n.shifted(a - b);
    den_ = d;
}

QRat QRat::operator-() const {
    QRat r = *this;
    r.num_ = -r.num_;
    return r;
}

QRat QRat::operator+(const QRat& o) const {
    if (den_ == o.den_) return QRat(num_ + o.num_, den_);
    return QRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

QRat QRat::operator-(const QRat& o) const {
    if (den_ == o.den_) return QRat(num_ - o.num_, den_);
    return QRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

QRat QRat::operator*(const QRat& o) const { return QRat(num_ * o.num_, den_ * o.den_); }

QRat QRat::operator/(const QRat& o) const {
    if (o.is_zero()) throw Error("division by zero in Q(q)");
    return QRat(num_ * o.den_, den_ * o.num_);
}

QRat QRat::inverse() const {
    if (is_zero()) throw Error("inverse of zero in Q(q)");
    return QRat(den_, num_);
}

QRat QRat::reflected() const { return QRat(num_.reflected(), den_.reflected()); }

Rational QRat::eval_at(const Rational& x) const {
    if (x == 0) throw ZeroPointError("q = 0 is not a valid evaluation point");
    const Rational d = den_.eval(x);
    if (d == 0) throw PoleError("denominator vanishes at q = " + to_string(x));
    return num_.eval(x) / d;
}

std::string QRat::str() const {
    if (den_.is_one()) return num_.str();
    const bool wrap_num = num_.terms().size() > 1;
    std::string s = wrap_num ? "(" + num_.str() + ")" : num_.str();
    return s + "/(" + den_.str() + ")";
}

QRat qnum(int k) {
    if (k < 0) throw Error("q-number index must be non-negative");
    if (k == 0) return QRat();
    const QRat q = QRat::gen();
    const QRat qk = QRat::q_power(k), qmk = QRat::q_power(-k);
    return (qk - qmk) / (q - QRat::q_power(-1));
}

} // namespace qma
