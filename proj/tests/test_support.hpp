#pragma once

#include <cstdint>

#include "qma/qrat.hpp"
#include "qma/rmatrix.hpp"

namespace qma::test {

template <class K>
RMatrixPair<K> validated_pair(const std::string& family, int n, const QCtx<K>& ctx) {
    auto pair = builtin(family, n, ctx);
    validate(pair, n + 1);
    if (!pair.validated) throw Error("builtin pair failed validation in test setup");
    return pair;
}

inline RMatrixPair<QRat> validated_pair(const std::string& family, int n) {
    return validated_pair(family, n, formal_ctx());
}

// Small deterministic generator for property-style tests (splitmix64).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline LaurentPoly random_laurent(Rng& rng, int max_terms = 4) {
    LaurentPoly p;
    const int terms = static_cast<int>(rng.range(0, max_terms));
    for (int t = 0; t < terms; ++t) {
        const long e = rng.range(-3, 3);
        const long num = rng.range(-5, 5);
        const long den = rng.range(1, 4);
        p += LaurentPoly::term(rational(num, den), e);
    }
    return p;
}

inline QRat random_qrat(Rng& rng) {
    const LaurentPoly num = random_laurent(rng);
    LaurentPoly den;
    do {
        den = random_laurent(rng);
    } while (den.is_zero());
    return QRat(num, den);
}

// Independent oracle for the q-number: the explicit Laurent sum
// q^{k-1} + q^{k-3} + ... + q^{1-k}.
inline QRat qnum_sum(int k) {
    LaurentPoly p;
    for (int i = 0; i < k; ++i) p += LaurentPoly::q_power(k - 1 - 2 * i);
    return QRat(p);
}

} // namespace qma::test
