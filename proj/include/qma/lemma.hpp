#pragma once

#include "qma/ideal.hpp"

namespace qma {

// Free-algebra identities for the conjugated generator copies. These hold
// for a matrix M with arbitrary entries, so they are checked as literal
// OpPoly equalities with no ideal reduction.

// F_i and R_i commute with copy k whenever k is outside {i, i+1}, and the
// chained product F_i F_{i+1} ... F_k shifts a block of consecutive copies
// up by one. Verifies all index combinations with total arity <= max_arity.
// On failure *why (when given) names the first offending combination.
template <class K>
bool check_copy_commutation(const RMatrixPair<K>& pair, int max_arity, std::string* why = nullptr) {
    for (int total = 2; total <= max_arity; ++total) {
        for (int i = 1; i <= total - 1; ++i) {
            const SparseOp<K> fi = embed(pair.F, i, total);
            const SparseOp<K> ri = embed(pair.R, i, total);
            for (int k = 1; k <= total; ++k) {
                if (k == i || k == i + 1) continue;
                const OpPoly<K> mk = generator_copy(pair, k, total);
                if (fi * mk != mk * fi) {
                    if (why)
                        *why = "F_" + std::to_string(i) + " does not commute with copy " +
                               std::to_string(k) + " at arity " + std::to_string(total);
                    return false;
                }
                if (ri * mk != mk * ri) {
                    if (why)
                        *why = "R_" + std::to_string(i) + " does not commute with copy " +
                               std::to_string(k) + " at arity " + std::to_string(total);
                    return false;
                }
            }
        }
    }
    return true;
}

template <class K>
bool check_chain_shift(const RMatrixPair<K>& pair, int max_arity, std::string* why = nullptr) {
    for (int total = 2; total <= max_arity; ++total) {
        for (int i = 1; i <= total - 1; ++i) {
            for (int k = i; k <= total - 1; ++k) {
                const SparseOp<K> fchain = chain(pair.F, i, k, total);
                const OpPoly<K> lhs = fchain * copy_product(pair, i, k, total);
                const OpPoly<K> rhs = copy_product(pair, i + 1, k + 1, total) * fchain;
                if (lhs != rhs) {
                    if (why)
                        *why = "chain shift fails for i = " + std::to_string(i) +
                               ", k = " + std::to_string(k) + " at arity " + std::to_string(total);
                    return false;
                }
            }
        }
    }
    return true;
}

// Trace locality: for Y a polynomial in R_1..R_{k-1} given as an explicit
// arity-k operator,
//   Tr_F(i..i+k-1)( Y^{(i,k)} M_(i) ... M_(i+k-1) ) = I_{1..i-1} * alpha(Y)
// with alpha(Y) = Tr_F(1..k)( Y M_(1) ... M_(k) ). The i = 1 case is the
// definition of alpha and is accepted as trivially true.
template <class K>
bool check_trace_locality(const RMatrixPair<K>& pair, const SparseOp<K>& y, int i, int k,
                          std::string* why = nullptr) {
    if (y.arity() != k) throw ShapeError("Y must act on arity k");
    if (i < 1 || k < 1) throw PositionError("bad (i, k) for trace locality");
    if (i == 1) return true;
    const int total = i + k - 1;
    std::set<int> traced;
    for (int s = i; s <= i + k - 1; ++s) traced.insert(s);
    const OpPoly<K> lhs =
        (y.embed_at(i, total) * copy_product(pair, i, i + k - 1, total)).partial_qtrace(pair.trace_matrix(), traced);

    const NCPoly<K> alpha =
        (y.embed_at(1, k) * copy_product(pair, 1, k, k)).full_qtrace(pair.trace_matrix());
    const OpPoly<K> rhs = OpPoly<K>::identity(pair.N, i - 1).times_poly_right(alpha);
    if (lhs != rhs) {
        if (why) *why = "trace locality fails for i = " + std::to_string(i) + ", k = " + std::to_string(k);
        return false;
    }
    return true;
}

// The defining relation propagated up the slots:
//   R_k M_(k) M_(k+1) = M_(k) M_(k+1) R^{FF}_k  (mod the degree-2 ideal),
// checked entrywise at arity k+1 for 1 <= k <= kmax.
template <class K>
bool check_relation_shift(const RMatrixPair<K>& pair, const IdealBasis<K>& degree2, int kmax,
                          std::string* why = nullptr, NCPoly<K>* residual = nullptr) {
    for (int k = 1; k <= kmax; ++k) {
        const int total = k + 1;
        const OpPoly<K> mm = copy_product(pair, k, k + 1, total);
        const OpPoly<K> diff =
            embed(pair.R, k, total) * mm - mm * embed(pair.double_twist(), k, total);
        const FlatIndex side = pow_u32(pair.N, total);
        for (FlatIndex r = 0; r < side; ++r)
            for (FlatIndex c = 0; c < side; ++c) {
                const NCPoly<K> p = diff.entry(r, c);
                if (p.is_zero()) continue;
                auto [ok, res] = degree2.reduce(p);
                if (!ok) {
                    if (why)
                        *why = "relation shift fails at k = " + std::to_string(k) + ", entry (" +
                               std::to_string(r) + "," + std::to_string(c) + ")";
                    if (residual) *residual = res;
                    return false;
                }
            }
    }
    return true;
}

} // namespace qma
