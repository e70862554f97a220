#pragma once

#include "qma/ncpoly.hpp"
#include "qma/rmatrix.hpp"
#include "qma/sparse_op.hpp"

namespace qma {

// Operator on V^{otimes k} whose entries are noncommutative polynomials in
// the generators M^i_j. Houses the conjugated generator copies and both
// sides of every matrix identity. Index conventions match SparseOp.
template <class K>
class OpPoly {
public:
    using Row = std::map<FlatIndex, NCPoly<K>>;

    OpPoly() = default;
    OpPoly(int dim, int arity) : dim_(dim), arity_(arity) {
        if (dim < 1 || arity < 0) throw ShapeError("bad operator shape");
    }

    static OpPoly identity(int dim, int arity) { return from_scalar(SparseOp<K>::identity(dim, arity)); }

    // Scalar operators embed with constant-polynomial entries.
    static OpPoly from_scalar(const SparseOp<K>& op) {
        OpPoly r(op.dim(), op.arity());
        for (const auto& [i, row] : op.rows())
            for (const auto& [j, v] : row) r.rows_[i][j] = NCPoly<K>(v);
        return r;
    }

    // The arity-1 matrix of generators: entry (i,j) is the degree-1
    // generator M^i_j.
    static OpPoly generators(int n) {
        OpPoly r(n, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r.rows_[static_cast<FlatIndex>(i)][static_cast<FlatIndex>(j)] =
                    NCPoly<K>::generator(i, j, n);
        return r;
    }

    int dim() const { return dim_; }
    int arity() const { return arity_; }
    bool is_zero() const { return rows_.empty(); }
    const std::map<FlatIndex, Row>& rows() const { return rows_; }

    NCPoly<K> entry(FlatIndex r, FlatIndex c) const {
        auto it = rows_.find(r);
        if (it == rows_.end()) return {};
        auto jt = it->second.find(c);
        return jt == it->second.end() ? NCPoly<K>{} : jt->second;
    }

    void add_to(FlatIndex r, FlatIndex c, const NCPoly<K>& p) {
        if (p.is_zero()) return;
        auto& row = rows_[r];
        auto it = row.find(c);
        if (it == row.end()) {
            row[c] = p;
        } else {
            it->second += p;
            if (it->second.is_zero()) {
                row.erase(it);
                if (row.empty()) rows_.erase(r);
            }
        }
    }

    bool operator==(const OpPoly& o) const {
        return dim_ == o.dim_ && arity_ == o.arity_ && rows_ == o.rows_;
    }
    bool operator!=(const OpPoly& o) const { return !(*this == o); }

    OpPoly operator+(const OpPoly& o) const {
        require_same_shape(o);
        OpPoly r = *this;
        for (const auto& [i, row] : o.rows_)
            for (const auto& [j, p] : row) r.add_to(i, j, p);
        return r;
    }

    OpPoly operator-(const OpPoly& o) const {
        require_same_shape(o);
        OpPoly r = *this;
        for (const auto& [i, row] : o.rows_)
            for (const auto& [j, p] : row) r.add_to(i, j, -p);
        return r;
    }

    // Operator product; entry polynomials multiply preserving the
    // left-to-right factor order.
    OpPoly operator*(const OpPoly& o) const {
        require_same_shape(o);
        OpPoly r(dim_, arity_);
        for (const auto& [i, row] : rows_) {
            for (const auto& [m, p] : row) {
                auto it = o.rows_.find(m);
                if (it == o.rows_.end()) continue;
                for (const auto& [j, w] : it->second) r.add_to(i, j, p * w);
            }
        }
        return r;
    }

    OpPoly operator*(const K& c) const {
        OpPoly r(dim_, arity_);
        for (const auto& [i, row] : rows_)
            for (const auto& [j, p] : row) {
                NCPoly<K> v = p * c;
                if (!v.is_zero()) r.rows_[i][j] = std::move(v);
            }
        return r;
    }

    // Entrywise multiplication by an algebra element, on the chosen side;
    // the side matters since entries do not commute with the scalar.
    OpPoly times_poly_right(const NCPoly<K>& s) const {
        OpPoly r(dim_, arity_);
        for (const auto& [i, row] : rows_)
            for (const auto& [j, p] : row) {
                NCPoly<K> v = p * s;
                if (!v.is_zero()) r.rows_[i][j] = std::move(v);
            }
        return r;
    }
    OpPoly times_poly_left(const NCPoly<K>& s) const {
        OpPoly r(dim_, arity_);
        for (const auto& [i, row] : rows_)
            for (const auto& [j, p] : row) {
                NCPoly<K> v = s * p;
                if (!v.is_zero()) r.rows_[i][j] = std::move(v);
            }
        return r;
    }

    OpPoly embed_at(int start, int total) const {
        if (start < 1 || start + arity_ - 1 > total) throw PositionError("embed position out of range");
        if (arity_ == total) return *this;
        OpPoly r(dim_, total);
        const int outer = total - arity_;
        const FlatIndex n_outer = pow_u32(dim_, outer);
        std::vector<int> rw(total), cw(total), inner_r(arity_), inner_c(arity_), ow(outer);
        for (const auto& [ri, row] : rows_) {
            decode_word(ri, dim_, arity_, inner_r.data());
            for (const auto& [ci, p] : row) {
                decode_word(ci, dim_, arity_, inner_c.data());
                for (FlatIndex o = 0; o < n_outer; ++o) {
                    decode_word(o, dim_, outer, ow.data());
                    int oi = 0;
                    for (int s = 0; s < total; ++s) {
                        if (s >= start - 1 && s < start - 1 + arity_) {
                            rw[s] = inner_r[s - (start - 1)];
                            cw[s] = inner_c[s - (start - 1)];
                        } else {
                            rw[s] = ow[oi];
                            cw[s] = ow[oi];
                            ++oi;
                        }
                    }
                    r.rows_[encode_word(rw.data(), dim_, total)][encode_word(cw.data(), dim_, total)] = p;
                }
            }
        }
        return r;
    }

    // Quantum partial trace with insertion matrix d; same contraction as the
    // scalar version, with polynomial entries.
    OpPoly partial_qtrace(const SparseOp<K>& d, const std::set<int>& slots) const {
        if (d.dim() != dim_ || d.arity() != 1) throw ShapeError("trace insertion matrix must have arity 1");
        for (int s : slots)
            if (s < 1 || s > arity_) throw SlotError("trace slot out of range");
        const int out_arity = arity_ - static_cast<int>(slots.size());
        OpPoly r(dim_, out_arity);
        std::vector<int> rw(arity_), cw(arity_), orw(out_arity), ocw(out_arity);
        for (const auto& [ri, row] : rows_) {
            decode_word(ri, dim_, arity_, rw.data());
            for (const auto& [ci, p] : row) {
                decode_word(ci, dim_, arity_, cw.data());
                K coeff(1);
                bool dead = false;
                for (int s : slots) {
                    const K dv = d.entry(static_cast<FlatIndex>(cw[s - 1]), static_cast<FlatIndex>(rw[s - 1]));
                    if (scalar_is_zero(dv)) {
                        dead = true;
                        break;
                    }
                    coeff = coeff * dv;
                }
                if (dead) continue;
                int oi = 0;
                for (int s = 1; s <= arity_; ++s) {
                    if (slots.count(s)) continue;
                    orw[oi] = rw[s - 1];
                    ocw[oi] = cw[s - 1];
                    ++oi;
                }
                r.add_to(encode_word(orw.data(), dim_, out_arity),
                         encode_word(ocw.data(), dim_, out_arity), p * coeff);
            }
        }
        return r;
    }

    // Full quantum trace over all slots, yielding an algebra element.
    NCPoly<K> full_qtrace(const SparseOp<K>& d) const {
        std::set<int> all;
        for (int s = 1; s <= arity_; ++s) all.insert(s);
        return partial_qtrace(d, all).entry(0, 0);
    }

    template <class F>
    OpPoly map_coeffs(F&& f) const {
        OpPoly r(dim_, arity_);
        for (const auto& [i, row] : rows_)
            for (const auto& [j, p] : row) {
                auto v = p.map_coeffs(f);
                if (!v.is_zero()) r.rows_[i][j] = std::move(v);
            }
        return r;
    }

private:
    void require_same_shape(const OpPoly& o) const {
        if (dim_ != o.dim_ || arity_ != o.arity_) throw ShapeError("operator shape mismatch");
    }

    int dim_ = 1;
    int arity_ = 0;
    std::map<FlatIndex, Row> rows_;
};

template <class K>
OpPoly<K> operator*(const SparseOp<K>& a, const OpPoly<K>& b) {
    return OpPoly<K>::from_scalar(a) * b;
}
template <class K>
OpPoly<K> operator*(const OpPoly<K>& a, const SparseOp<K>& b) {
    return a * OpPoly<K>::from_scalar(b);
}

// The k-th conjugated copy of the generator matrix acting on slots 1..k of
// V^{otimes total}: copy 1 is M in slot 1, copy k+1 = F_k (copy k) F_k^{-1}.
template <class K>
OpPoly<K> generator_copy(const RMatrixPair<K>& pair, int k, int total) {
    if (k < 1 || k > total) throw PositionError("generator copy index out of range");
    OpPoly<K> m = OpPoly<K>::generators(pair.N).embed_at(1, total);
    for (int j = 1; j < k; ++j) {
        const SparseOp<K> fj = embed(pair.F, j, total);
        const SparseOp<K> fj_inv = embed(pair.f_inverse(), j, total);
        m = fj * m * fj_inv;
    }
    return m;
}

// Ordered product of generator copies i, i+1, ..., k at the given arity.
template <class K>
OpPoly<K> copy_product(const RMatrixPair<K>& pair, int i, int k, int total) {
    OpPoly<K> p = generator_copy(pair, i, total);
    for (int j = i + 1; j <= k; ++j) p = p * generator_copy(pair, j, total);
    return p;
}

} // namespace qma
