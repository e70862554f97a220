#pragma once

#include "qma/ideal.hpp"

namespace qma {

// The three families of characteristic-subalgebra elements and the matching
// matrix powers. Everything here is a plain contraction: a scalar operator
// (chain of R's, antisymmetrizer, or symmetrizer) times the ordered product
// of generator copies, quantum-traced over all slots (elements) or over
// slots 2..k (matrix powers, which keep slot 1 open).

enum class CharKind { PowerSum, Elementary, Complete };
enum class PowerKind { Ordinary, Wedge, Symmetric };

template <class K>
struct CharElement {
    CharKind kind;
    int k = 0;
    NCPoly<K> value;
};

template <class K>
struct MatrixPower {
    PowerKind kind;
    int k = 0;
    OpPoly<K> value;  // arity 1
};

namespace detail {

// Contraction weight: the scalar operator in front of M_(1)...M_(k).
template <class K>
SparseOp<K> char_weight(const RMatrixPair<K>& pair, const ProjectorTower<K>* anti,
                        const ProjectorTower<K>* sym, CharKind kind, int k) {
    switch (kind) {
        case CharKind::PowerSum:
            return k == 1 ? SparseOp<K>::identity(pair.N, 1) : chain(pair.R, 1, k - 1, k);
        case CharKind::Elementary:
            return anti->level(k);
        case CharKind::Complete:
            return sym->level(k);
    }
    throw Error("unreachable");
}

template <class K>
NCPoly<K> char_element_value(const RMatrixPair<K>& pair, const ProjectorTower<K>* anti,
                             const ProjectorTower<K>* sym, CharKind kind, int k) {
    if (k == 0) return NCPoly<K>::one();
    const SparseOp<K> w = char_weight(pair, anti, sym, kind, k);
    return (w * copy_product(pair, 1, k, k)).full_qtrace(pair.trace_matrix());
}

template <class K>
OpPoly<K> matrix_power_value(const RMatrixPair<K>& pair, const ProjectorTower<K>* anti,
                             const ProjectorTower<K>* sym, CharKind kind, int k) {
    if (k < 1) throw PositionError("matrix powers start at k = 1; the degree-0 power is zeroth_power");
    const SparseOp<K> w = char_weight(pair, anti, sym, kind, k);
    const OpPoly<K> x = w * copy_product(pair, 1, k, k);
    if (k == 1) return x;
    std::set<int> slots;
    for (int s = 2; s <= k; ++s) slots.insert(s);
    return x.partial_qtrace(pair.trace_matrix(), slots);
}

} // namespace detail

template <class K>
CharElement<K> power_sum(const RMatrixPair<K>& pair, int k) {
    return {CharKind::PowerSum, k, detail::char_element_value<K>(pair, nullptr, nullptr, CharKind::PowerSum, k)};
}

template <class K>
CharElement<K> elementary(const RMatrixPair<K>& pair, const ProjectorTower<K>& anti, int k) {
    return {CharKind::Elementary, k, detail::char_element_value<K>(pair, &anti, nullptr, CharKind::Elementary, k)};
}

template <class K>
CharElement<K> complete(const RMatrixPair<K>& pair, const ProjectorTower<K>& sym, int k) {
    return {CharKind::Complete, k, detail::char_element_value<K>(pair, nullptr, &sym, CharKind::Complete, k)};
}

template <class K>
MatrixPower<K> matrix_power(const RMatrixPair<K>& pair, int k) {
    return {PowerKind::Ordinary, k,
            detail::matrix_power_value<K>(pair, nullptr, nullptr, CharKind::PowerSum, k)};
}

template <class K>
MatrixPower<K> wedge_power(const RMatrixPair<K>& pair, const ProjectorTower<K>& anti, int k) {
    return {PowerKind::Wedge, k, detail::matrix_power_value<K>(pair, &anti, nullptr, CharKind::Elementary, k)};
}

template <class K>
MatrixPower<K> sym_power(const RMatrixPair<K>& pair, const ProjectorTower<K>& sym, int k) {
    return {PowerKind::Symmetric, k, detail::matrix_power_value<K>(pair, nullptr, &sym, CharKind::Complete, k)};
}

// The degree-0 power appearing in the Cayley-Hamilton identity:
//   q^{-n} n_q Tr_(2..n)(A^(n)) D^{-1}
// with n the height. The inner trace is the ordinary partial trace, with no
// D insertion.
template <class K>
MatrixPower<K> zeroth_power(const RMatrixPair<K>& pair, const ProjectorTower<K>& anti) {
    const int n = pair.require_height();
    if (!pair.Dinv) throw DNotInvertibleError("D is singular");
    std::set<int> slots;
    for (int s = 2; s <= n; ++s) slots.insert(s);
    const SparseOp<K> plain = anti.level(n).partial_qtrace(SparseOp<K>::identity(pair.N, 1), slots);
    const SparseOp<K> value = plain * pair.trace_matrix_inv() * (pair.ctx.qpow(-n) * pair.ctx.qnumber(n));
    return {PowerKind::Ordinary, 0, OpPoly<K>::from_scalar(value)};
}

// The braid shift operator U = R_{i -> i+k-1} ... R_{2 -> k+1} R_{1 -> k}
// on V^{otimes (i+k)}; it conjugates polynomials in R_1..R_{k-1} up by i
// slots and polynomials in R_1..R_{i-1} down from slot k+1.
template <class K>
SparseOp<K> shift_conjugator(const RMatrixPair<K>& pair, int i, int k) {
    if (i < 1 || k < 1) throw PositionError("shift conjugator needs i, k >= 1");
    const int total = i + k;
    SparseOp<K> u = chain(pair.R, i, i + k - 1, total);
    for (int j = i - 1; j >= 1; --j) u = u * chain(pair.R, j, j + k - 1, total);
    return u;
}

// Verifies U Y^{(1,k)} = Y^{(i+1,k)} U and U Z^{(k+1,i)} = Z^{(1,i)} U,
// the two conjugation identities behind the commutativity proposition.
// y must be an arity-k polynomial in R_1..R_{k-1}, z an arity-i polynomial
// in R_1..R_{i-1}; embedding them at a slot offset realizes the index shift.
template <class K>
bool check_shift(const RMatrixPair<K>& pair, const SparseOp<K>& y, const SparseOp<K>& z, int i, int k,
                 std::string* why = nullptr) {
    if (y.arity() != k) throw ShapeError("Y must have arity k");
    if (z.arity() != i) throw ShapeError("Z must have arity i");
    const int total = i + k;
    const SparseOp<K> u = shift_conjugator(pair, i, k);
    if (u * y.embed_at(1, total) != y.embed_at(i + 1, total) * u) {
        if (why) *why = "Y-shift fails for i = " + std::to_string(i) + ", k = " + std::to_string(k);
        return false;
    }
    if (u * z.embed_at(k + 1, total) != z.embed_at(1, total) * u) {
        if (why) *why = "Z-shift fails for i = " + std::to_string(i) + ", k = " + std::to_string(k);
        return false;
    }
    return true;
}

} // namespace qma
