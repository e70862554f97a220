#pragma once

#include "qma/op_poly.hpp"

namespace qma {

// The defining relations: the nonzero entries of
//   R_1 M_{(1)} M_{(2)} - M_{(1)} M_{(2)} R^{FF}_1
// on V tensor V, each a homogeneous degree-2 polynomial. Entries are listed
// row-major, which fixes the order of everything built from them.
template <class K>
std::vector<NCPoly<K>> defining_relations(const RMatrixPair<K>& pair) {
    const OpPoly<K> mm = copy_product(pair, 1, 2, 2);
    const OpPoly<K> diff = pair.R * mm - mm * pair.double_twist();
    std::vector<NCPoly<K>> rels;
    const FlatIndex side = pow_u32(pair.N, 2);
    for (FlatIndex r = 0; r < side; ++r)
        for (FlatIndex c = 0; c < side; ++c) {
            NCPoly<K> p = diff.entry(r, c);
            if (!p.is_zero()) rels.push_back(std::move(p));
        }
    return rels;
}

// Echelonized spanning set of the degree-d homogeneous component of the
// two-sided ideal generated by the degree-2 relations: the span of all
// monomial shifts w_left * r * w_right with |w_left| + |w_right| = d - 2.
//
// Rows are kept in reduced row-echelon form over K with monic leading
// coefficients, pivoting on the deg-lex-largest monomial; membership is a
// single reduction pass and the residual it returns is the canonical normal
// form, which makes failure witnesses reproducible.
template <class K>
class IdealBasis {
public:
    static IdealBasis build(const std::vector<NCPoly<K>>& rels, int n, int degree) {
        if (degree < 2) throw Error("ideal components start at degree 2");
        for (const auto& r : rels)
            if (r.is_zero() || !r.is_homogeneous() || r.degree() != 2)
                throw Error("relations must be homogeneous of degree 2");
        IdealBasis basis;
        basis.degree_ = degree;
        basis.ngen_ = n * n;
        const int shift_len = degree - 2;
        for (int llen = 0; llen <= shift_len; ++llen) {
            const int rlen = shift_len - llen;
            const std::size_t nl = ipow(basis.ngen_, llen), nr = ipow(basis.ngen_, rlen);
            for (std::size_t li = 0; li < nl; ++li) {
                const GenWord lw = unrank_word(li, llen, basis.ngen_);
                for (std::size_t ri = 0; ri < nr; ++ri) {
                    const GenWord rw = unrank_word(ri, rlen, basis.ngen_);
                    for (const auto& rel : rels) {
                        NCPoly<K> shifted = NCPoly<K>::monomial(lw, K(1)) * rel *
                                            NCPoly<K>::monomial(rw, K(1));
                        basis.insert_row(std::move(shifted));
                    }
                }
            }
        }
        return basis;
    }

    int degree() const { return degree_; }
    std::size_t dimension() const { return rows_.size(); }

    // Reduces p against the echelon rows. The boolean is true iff the
    // residual vanishes, i.e. p lies in the ideal component. Parts of p
    // whose degree differs from the component's pass through unreduced.
    std::pair<bool, NCPoly<K>> reduce(const NCPoly<K>& p) const {
        NCPoly<K> residual;
        NCPoly<K> work;
        for (const auto& [d, part] : p.homogeneous_parts()) {
            if (d == degree_)
                work = part;
            else
                residual += part;
        }
        // Rows are fully inter-reduced, so cancelling each pivot monomial
        // once cannot reintroduce another pivot.
        std::vector<std::pair<GenWord, K>> hits;
        for (const auto& [w, c] : work.terms()) {
            if (pivots_.count(w)) hits.emplace_back(w, c);
        }
        for (const auto& [w, c] : hits) work -= rows_[pivots_.at(w)] * c;
        residual += work;
        return {residual.is_zero(), residual};
    }

    bool contains(const NCPoly<K>& p) const { return reduce(p).first; }

    const std::vector<NCPoly<K>>& rows() const { return rows_; }

private:
    static std::size_t ipow(int b, int e) {
        std::size_t r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(b);
        return r;
    }

    static GenWord unrank_word(std::size_t idx, int len, int ngen) {
        GenWord w(static_cast<std::size_t>(len));
        for (int s = len - 1; s >= 0; --s) {
            w[static_cast<std::size_t>(s)] = static_cast<std::uint16_t>(idx % ngen);
            idx /= static_cast<std::size_t>(ngen);
        }
        return w;
    }

    void insert_row(NCPoly<K> p) {
        // Eliminate existing pivots from the candidate.
        for (;;) {
            const NCPoly<K>* hit = nullptr;
            GenWord hw;
            K hc(0);
            for (const auto& [w, c] : p.terms()) {
                auto it = pivots_.find(w);
                if (it != pivots_.end()) {
                    hit = &rows_[it->second];
                    hw = w;
                    hc = c;
                    break;
                }
            }
            if (!hit) break;
            p -= *hit * hc;
        }
        if (p.is_zero()) return;
        p = p * (K(1) / p.leading_coeff());
        const GenWord lead = p.leading_word();
        // Back-substitute into the existing rows to keep full RREF.
        for (auto& row : rows_) {
            const K c = row.coeff(lead);
            if (!scalar_is_zero(c)) row -= p * c;
        }
        pivots_[lead] = rows_.size();
        rows_.push_back(std::move(p));
    }

    int degree_ = 0;
    int ngen_ = 0;
    std::vector<NCPoly<K>> rows_;
    std::map<GenWord, std::size_t, DegLexLess> pivots_;
};

} // namespace qma
