#pragma once

#include <string>

#include "qma/qrat.hpp"

namespace qma {

// Scalar-lane helpers. The engine is generic over the coefficient field K:
// K = QRat runs formally over Q(q), K = Rational runs with q specialized to
// a fixed nonzero rational (numeric-q and fast modes).

template <class K>
inline bool scalar_is_zero(const K& x) {
    return x.is_zero();
}
template <>
inline bool scalar_is_zero<Rational>(const Rational& x) {
    return x == 0;
}

template <class K>
inline std::string scalar_str(const K& x) {
    return x.str();
}
template <>
inline std::string scalar_str<Rational>(const Rational& x) {
    return x.get_str();
}

// Context carrying the value of q for a scalar lane.
template <class K>
struct QCtx {
    K q, qinv;

    // q^e for any integer e
    K qpow(long e) const {
        K acc(1);
        const K& base = e < 0 ? qinv : q;
        for (long i = 0, n = e < 0 ? -e : e; i < n; ++i) acc = acc * base;
        return acc;
    }

    // k_q as the Laurent sum q^{k-1} + q^{k-3} + ... + q^{1-k}. The sum form
    // stays finite at the specializations q = ±1 where the quotient form
    // degenerates.
    K qnumber(int k) const {
        if (k < 0) throw Error("q-number index must be non-negative");
        K acc(0);
        for (int i = 0; i < k; ++i) acc = acc + qpow(k - 1 - 2 * i);
        return acc;
    }

    K minus_q_pow(int i) const {  // (-q)^i
        K v = qpow(i);
        return (i % 2 != 0) ? K(0) - v : v;
    }
};

inline QCtx<QRat> formal_ctx() { return {QRat::gen(), QRat::q_power(-1)}; }

inline QCtx<Rational> numeric_ctx(const Rational& x) {
    if (x == 0) throw ZeroPointError("q must be a nonzero rational");
    return {x, Rational(1) / x};
}

// Carries a QRat into a scalar lane: identity for the formal lane,
// evaluation for a numeric lane.
inline QRat specialize(const QRat& v, const QCtx<QRat>&) { return v; }
inline Rational specialize(const QRat& v, const QCtx<Rational>& ctx) { return v.eval_at(ctx.q); }

} // namespace qma
