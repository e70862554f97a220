#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "qma/field.hpp"

namespace qma {

// Index words on V^{otimes k}. A word (a_1,...,a_k) over {0,...,N-1} is
// flattened as sum a_i * N^{k-i}: the first tensor slot is the most
// significant digit. Matrix files and every operator in the engine use this
// convention.
using FlatIndex = std::uint32_t;

inline FlatIndex pow_u32(int base, int exp) {
    FlatIndex r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<FlatIndex>(base);
    return r;
}

inline void decode_word(FlatIndex idx, int dim, int arity, int* out) {
    for (int s = arity - 1; s >= 0; --s) {
        out[s] = static_cast<int>(idx % static_cast<FlatIndex>(dim));
        idx /= static_cast<FlatIndex>(dim);
    }
}

inline FlatIndex encode_word(const int* w, int dim, int arity) {
    FlatIndex idx = 0;
    for (int s = 0; s < arity; ++s) idx = idx * static_cast<FlatIndex>(dim) + static_cast<FlatIndex>(w[s]);
    return idx;
}

// Sparse linear operator on V^{otimes k} with exact entries in K.
// Zero entries are never stored. Values are immutable in practice: every
// operation returns a fresh operator.
template <class K>
class SparseOp {
public:
    using Row = std::map<FlatIndex, K>;

    SparseOp() = default;
    SparseOp(int dim, int arity) : dim_(dim), arity_(arity) {
        if (dim < 1 || arity < 0) throw ShapeError("bad operator shape");
    }

    static SparseOp identity(int dim, int arity) {
        SparseOp op(dim, arity);
        const FlatIndex n = pow_u32(dim, arity);
        for (FlatIndex i = 0; i < n; ++i) op.rows_[i][i] = K(1);
        return op;
    }

    int dim() const { return dim_; }
    int arity() const { return arity_; }
    FlatIndex side() const { return pow_u32(dim_, arity_); }
    bool is_zero() const { return rows_.empty(); }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& [r, row] : rows_) n += row.size();
        return n;
    }

    void set(FlatIndex r, FlatIndex c, const K& v) {
        if (scalar_is_zero(v)) {
            auto it = rows_.find(r);
            if (it != rows_.end()) {
                it->second.erase(c);
                if (it->second.empty()) rows_.erase(it);
            }
            return;
        }
        rows_[r][c] = v;
    }

    void add_to(FlatIndex r, FlatIndex c, const K& v) {
        if (scalar_is_zero(v)) return;
        auto& row = rows_[r];
        auto it = row.find(c);
        if (it == row.end()) {
            row[c] = v;
        } else {
            it->second = it->second + v;
            if (scalar_is_zero(it->second)) {
                row.erase(it);
                if (row.empty()) rows_.erase(r);
            }
        }
    }

    K entry(FlatIndex r, FlatIndex c) const {
        auto it = rows_.find(r);
        if (it == rows_.end()) return K(0);
        auto jt = it->second.find(c);
        return jt == it->second.end() ? K(0) : jt->second;
    }

    const std::map<FlatIndex, Row>& rows() const { return rows_; }

    bool operator==(const SparseOp& o) const {
        return dim_ == o.dim_ && arity_ == o.arity_ && rows_ == o.rows_;
    }
    bool operator!=(const SparseOp& o) const { return !(*this == o); }

    SparseOp operator+(const SparseOp& o) const {
        require_same_shape(o);
        SparseOp r = *this;
        for (const auto& [i, row] : o.rows_)
            for (const auto& [j, v] : row) r.add_to(i, j, v);
        return r;
    }

    SparseOp operator-(const SparseOp& o) const {
        require_same_shape(o);
        SparseOp r = *this;
        for (const auto& [i, row] : o.rows_)
            for (const auto& [j, v] : row) r.add_to(i, j, K(0) - v);
        return r;
    }

    SparseOp operator*(const K& c) const {
        SparseOp r(dim_, arity_);
        if (scalar_is_zero(c)) return r;
        for (const auto& [i, row] : rows_)
            for (const auto& [j, v] : row) r.set(i, j, v * c);
        return r;
    }

    // Operator composition a*b (matrix product, exact).
    SparseOp operator*(const SparseOp& o) const {
        require_same_shape(o);
        SparseOp r(dim_, arity_);
        for (const auto& [i, row] : rows_) {
            for (const auto& [m, v] : row) {
                auto it = o.rows_.find(m);
                if (it == o.rows_.end()) continue;
                for (const auto& [j, w] : it->second) r.add_to(i, j, v * w);
            }
        }
        return r;
    }

    // Tensors identity on the slots outside [start, start+arity-1]
    // (1-based slots), producing an operator of the given total arity.
    SparseOp embed_at(int start, int total) const {
        if (start < 1 || start + arity_ - 1 > total)
            throw PositionError("embed position " + std::to_string(start) + " out of range for arity " +
                                std::to_string(total));
        if (arity_ == total) return *this;
        SparseOp r(dim_, total);
        const int outer = total - arity_;
        const FlatIndex n_outer = pow_u32(dim_, outer);
        std::vector<int> rw(total), cw(total), inner_r(arity_), inner_c(arity_), ow(outer);
        for (const auto& [ri, row] : rows_) {
            decode_word(ri, dim_, arity_, inner_r.data());
            for (const auto& [ci, v] : row) {
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
                    r.rows_[encode_word(rw.data(), dim_, total)][encode_word(cw.data(), dim_, total)] = v;
                }
            }
        }
        return r;
    }

    // Quantum partial trace: inserts the arity-1 operator d in every traced
    // slot and contracts it away. An entry X^{row}_{col} contributes
    // d(col[s], row[s]) per traced slot s, matching Tr(d X) on a single slot.
    // Remaining slots keep their relative order. Tracing all slots yields an
    // arity-0 operator (a 1x1 scalar).
    SparseOp partial_qtrace(const SparseOp& d, const std::set<int>& slots) const {
        if (d.dim_ != dim_ || d.arity_ != 1) throw ShapeError("trace insertion matrix must have arity 1");
        for (int s : slots)
            if (s < 1 || s > arity_) throw SlotError("trace slot " + std::to_string(s) + " out of range");
        const int out_arity = arity_ - static_cast<int>(slots.size());
        SparseOp r(dim_, out_arity);
        std::vector<int> rw(arity_), cw(arity_), orw(out_arity), ocw(out_arity);
        for (const auto& [ri, row] : rows_) {
            decode_word(ri, dim_, arity_, rw.data());
            for (const auto& [ci, v] : row) {
                decode_word(ci, dim_, arity_, cw.data());
                K coeff = v;
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
                r.add_to(encode_word(orw.data(), dim_, out_arity), encode_word(ocw.data(), dim_, out_arity),
                         coeff);
            }
        }
        return r;
    }

    // Scalar value of an arity-0 operator.
    K scalar_value() const {
        if (arity_ != 0) throw ShapeError("scalar_value requires arity 0");
        return entry(0, 0);
    }

    // Applies f to every entry (dropping zeros); serves both the q -> -q^{-1}
    // reflection in the formal lane and specialization into a numeric lane.
    template <class F>
    auto map_entries(F&& f) const {
        using K2 = std::decay_t<decltype(f(std::declval<K>()))>;
        SparseOp<K2> r(dim_, arity_);
        for (const auto& [i, row] : rows_)
            for (const auto& [j, v] : row) r.set(i, j, f(v));
        return r;
    }

    std::string str() const {
        std::ostringstream out;
        std::vector<int> rw(arity_), cw(arity_);
        for (const auto& [i, row] : rows_) {
            for (const auto& [j, v] : row) {
                decode_word(i, dim_, arity_, rw.data());
                decode_word(j, dim_, arity_, cw.data());
                out << "(";
                for (int s = 0; s < arity_; ++s) out << (s ? "," : "") << rw[s];
                out << ")(";
                for (int s = 0; s < arity_; ++s) out << (s ? "," : "") << cw[s];
                out << ") = " << scalar_str(v) << "\n";
            }
        }
        return out.str();
    }

private:
    void require_same_shape(const SparseOp& o) const {
        if (dim_ != o.dim_ || arity_ != o.arity_)
            throw ShapeError("operator shape mismatch: dim " + std::to_string(dim_) + "/" +
                             std::to_string(o.dim_) + ", arity " + std::to_string(arity_) + "/" +
                             std::to_string(o.arity_));
    }

    int dim_ = 1;
    int arity_ = 0;
    std::map<FlatIndex, Row> rows_;
};

// R-matrix subscript notation: embeds an arity-2 operator at slots (i, i+1)
// of V^{otimes k}.
template <class K>
SparseOp<K> embed(const SparseOp<K>& op, int i, int k) {
    if (op.arity() != 2) throw ShapeError("embed expects an arity-2 operator");
    if (i < 1 || i > k - 1) throw PositionError("embed position out of range");
    return op.embed_at(i, k);
}

// Ordered product F_i F_{i+1} ... F_k embedded in the given total arity.
template <class K>
SparseOp<K> chain(const SparseOp<K>& f, int i, int k, int total) {
    if (f.arity() != 2) throw ShapeError("chain expects an arity-2 operator");
    if (i < 1 || k > total - 1 || i > k) throw PositionError("chain range out of bounds");
    SparseOp<K> r = embed(f, i, total);
    for (int j = i + 1; j <= k; ++j) r = r * embed(f, j, total);
    return r;
}

// Flip operator P^{ab}_{cd} = delta^a_d delta^b_c on V tensor V.
template <class K>
SparseOp<K> permutation_op(int dim) {
    SparseOp<K> p(dim, 2);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const int rw[2] = {a, b}, cw[2] = {b, a};
            p.set(encode_word(rw, dim, 2), encode_word(cw, dim, 2), K(1));
        }
    return p;
}

} // namespace qma
