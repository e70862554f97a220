#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qma/linalg.hpp"

namespace qma {

// A compatible pair of R-matrices together with everything the validation
// pipeline derives from it: the inverse of F, the skew inverse Psi, the
// quantum-trace matrix D, the double twist of R, and the height of R.
// The derived members are only populated by validate(); downstream modules
// require a validated pair.
template <class K>
struct RMatrixPair {
    int N = 0;
    QCtx<K> ctx;
    SparseOp<K> R, F;
    std::string family;

    std::optional<SparseOp<K>> Finv;
    std::optional<SparseOp<K>> Psi, D, Dinv;
    std::optional<SparseOp<K>> Rf, Rff;
    std::optional<int> height;
    bool validated = false;

    const SparseOp<K>& f_inverse() const { return require(Finv, "F inverse"); }
    const SparseOp<K>& skew_inv() const { return require(Psi, "skew inverse"); }
    const SparseOp<K>& trace_matrix() const { return require(D, "trace matrix D"); }
    const SparseOp<K>& trace_matrix_inv() const { return require(Dinv, "inverse of D"); }
    const SparseOp<K>& double_twist() const { return require(Rff, "double twist"); }
    int require_height() const {
        if (!height) throw Error("height not established; run validate() first");
        return *height;
    }

    // Quantum trace over the given slots: inserts D in each traced slot.
    SparseOp<K> qtrace(const SparseOp<K>& x, const std::set<int>& slots) const {
        return x.partial_qtrace(trace_matrix(), slots);
    }

private:
    static const SparseOp<K>& require(const std::optional<SparseOp<K>>& v, const char* what) {
        if (!v) throw Error(std::string(what) + " not computed; run validate() first");
        return *v;
    }
};

// Braid-form Yang-Baxter equation X1 X2 X1 = X2 X1 X2 on V^{otimes 3}.
template <class K>
bool check_ybe(const SparseOp<K>& x) {
    if (x.arity() != 2) throw ShapeError("check_ybe expects an arity-2 operator");
    const SparseOp<K> x1 = embed(x, 1, 3), x2 = embed(x, 2, 3);
    return x1 * x2 * x1 == x2 * x1 * x2;
}

// Compatibility conditions R1 F2 F1 = F2 F1 R2 and F1 F2 R1 = R2 F1 F2.
template <class K>
bool check_compatible(const SparseOp<K>& r, const SparseOp<K>& f) {
    if (r.dim() != f.dim()) throw ShapeError("check_compatible: dimension mismatch");
    const SparseOp<K> r1 = embed(r, 1, 3), r2 = embed(r, 2, 3);
    const SparseOp<K> f1 = embed(f, 1, 3), f2 = embed(f, 2, 3);
    return r1 * f2 * f1 == f2 * f1 * r2 && f1 * f2 * r1 == r2 * f1 * f2;
}

// Hecke condition R^2 = I + (q - q^{-1}) R.
template <class K>
bool check_hecke(const SparseOp<K>& r, const QCtx<K>& ctx) {
    if (r.arity() != 2) throw ShapeError("check_hecke expects an arity-2 operator");
    const SparseOp<K> id = SparseOp<K>::identity(r.dim(), 2);
    return r * r == id + r * (ctx.q - ctx.qinv);
}

enum class TowerKind { Antisymmetrizer, Symmetrizer };

// Tower of q-(anti)symmetrizer projectors; levels[k-1] acts on V^{otimes k}
// and levels[0] is the identity on V.
template <class K>
struct ProjectorTower {
    TowerKind kind;
    std::vector<SparseOp<K>> levels;

    const SparseOp<K>& level(int k) const {
        if (k < 1 || k > static_cast<int>(levels.size()))
            throw PositionError("projector level " + std::to_string(k) + " not built");
        return levels[static_cast<std::size_t>(k) - 1];
    }
    int max_level() const { return static_cast<int>(levels.size()); }
};

namespace detail {

// Shared inductive construction: level k is
//   (1/k_q) * P^(k-1) (c_k  -/+  (k-1)_q R_{k-1}) P^(k-1)
// with c_k = q^{k-1}, minus for antisymmetrizers and c_k = q^{1-k}, plus for
// symmetrizers.
template <class K>
ProjectorTower<K> build_tower(const SparseOp<K>& r, const QCtx<K>& ctx, int kmax, TowerKind kind) {
    if (kmax < 1) throw PositionError("tower depth must be >= 1");
    ProjectorTower<K> t{kind, {}};
    t.levels.push_back(SparseOp<K>::identity(r.dim(), 1));
    for (int k = 2; k <= kmax; ++k) {
        const K kq = ctx.qnumber(k);
        if (scalar_is_zero(kq)) throw QNumberZeroError("k_q vanishes at k = " + std::to_string(k));
        const SparseOp<K> prev = t.levels.back().embed_at(1, k);
        const bool anti = kind == TowerKind::Antisymmetrizer;
        const K c = anti ? ctx.qpow(k - 1) : ctx.qpow(1 - k);
        const K w = anti ? K(0) - ctx.qnumber(k - 1) : ctx.qnumber(k - 1);
        const SparseOp<K> mid = SparseOp<K>::identity(r.dim(), k) * c + embed(r, k - 1, k) * w;
        t.levels.push_back(prev * mid * prev * (K(1) / kq));
    }
    return t;
}

} // namespace detail

template <class K>
ProjectorTower<K> antisymmetrizers(const SparseOp<K>& r, const QCtx<K>& ctx, int kmax) {
    return detail::build_tower(r, ctx, kmax, TowerKind::Antisymmetrizer);
}

template <class K>
ProjectorTower<K> symmetrizers(const SparseOp<K>& r, const QCtx<K>& ctx, int kmax) {
    return detail::build_tower(r, ctx, kmax, TowerKind::Symmetrizer);
}

// Height of an even Hecke R-matrix: the smallest n <= nmax with
// A^(n+1) = 0 and rank A^(n) = 1. Once a tower level vanishes every higher
// level vanishes too, so a zero level with the wrong rank below it is
// conclusive failure.
template <class K>
int height(const SparseOp<K>& r, const QCtx<K>& ctx, int nmax) {
    if (nmax < 1) throw PositionError("height search bound must be >= 1");
    ProjectorTower<K> t = antisymmetrizers(r, ctx, nmax + 1);
    for (int n = 1; n <= nmax; ++n) {
        if (t.level(n + 1).is_zero()) {
            if (rank_exact(t.level(n)) == 1) return n;
            throw NotEvenHeckeError("antisymmetrizer tower dies at level " + std::to_string(n + 1) +
                                    " but rank of level " + std::to_string(n) + " is not 1");
        }
    }
    throw NotEvenHeckeError("antisymmetrizer tower does not vanish within nmax = " + std::to_string(nmax));
}

// Skew inverse of a closed R-matrix: solves Psi^{af}_{cg} F^{gb}_{fd} =
// delta^a_d delta^b_c exactly, then contracts D^a_b = Psi^{ac}_{bc}.
// Throws NotInvertibleError when F itself is singular and NotClosedError
// when the index-reshuffled system is singular.
template <class K>
std::pair<SparseOp<K>, SparseOp<K>> skew_inverse(const SparseOp<K>& f) {
    if (f.arity() != 2) throw ShapeError("skew_inverse expects an arity-2 operator");
    const int n = f.dim();
    const FlatIndex n2 = static_cast<FlatIndex>(n) * static_cast<FlatIndex>(n);
    if (!inverse(f)) throw NotInvertibleError("F is singular");

    // Reshuffled system: unknown column x_{(f,g)} = Psi^{af}_{cg} for each
    // fixed (a,c); equation rows are indexed by (b,d) with coefficient
    // F^{gb}_{fd}.
    DenseMat<K> A(n2, std::vector<K>(n2, K(0)));
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d)
            for (int ff = 0; ff < n; ++ff)
                for (int g = 0; g < n; ++g) {
                    const int rw[2] = {g, b}, cw[2] = {ff, d};
                    const K v = f.entry(encode_word(rw, n, 2), encode_word(cw, n, 2));
                    if (!scalar_is_zero(v))
                        A[static_cast<std::size_t>(b) * n + d][static_cast<std::size_t>(ff) * n + g] = v;
                }
    DenseMat<K> rhs(n2, std::vector<K>(n2, K(0)));
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            rhs[static_cast<std::size_t>(c) * n + a][static_cast<std::size_t>(a) * n + c] = K(1);
    // rhs[(b,d)][(a,c)] = delta^a_d delta^b_c, i.e. row (b,d) = (c,a).
    auto x = solve_multi(A, rhs);
    if (!x) throw NotClosedError("the (a,c)-reshuffle of F is singular: F is not closed");

    SparseOp<K> psi(n, 2);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            for (int ff = 0; ff < n; ++ff)
                for (int g = 0; g < n; ++g) {
                    const K v = (*x)[static_cast<std::size_t>(ff) * n + g][static_cast<std::size_t>(a) * n + c];
                    if (scalar_is_zero(v)) continue;
                    const int rw[2] = {a, ff}, cw[2] = {c, g};
                    psi.set(encode_word(rw, n, 2), encode_word(cw, n, 2), v);
                }
    SparseOp<K> d(n, 1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            K acc(0);
            for (int c = 0; c < n; ++c) {
                const int rw[2] = {a, c}, cw[2] = {b, c};
                acc = acc + psi.entry(encode_word(rw, n, 2), encode_word(cw, n, 2));
            }
            d.set(static_cast<FlatIndex>(a), static_cast<FlatIndex>(b), acc);
        }
    return {psi, d};
}

// Twist R^F = F R F^{-1}.
template <class K>
SparseOp<K> twist(const SparseOp<K>& r, const SparseOp<K>& f) {
    auto finv = inverse(f);
    if (!finv) throw NotInvertibleError("twist: F is singular");
    return f * r * *finv;
}

namespace detail {

template <class K>
SparseOp<K> elementary_matrix(int dim, int i, int j) {
    SparseOp<K> e(dim, 1);
    e.set(static_cast<FlatIndex>(i), static_cast<FlatIndex>(j), K(1));
    return e;
}

} // namespace detail

// Verifies the quantum-trace matrix properties: Tr_F(2) F_1 = I_1, the
// commutation F1 D1 D2 = D1 D2 F1, and the conjugation invariance
// Tr_F(2)(F^{+-1} X_1 F^{-+1}) = I_1 Tr_F X. The last is linear in X, so
// running it over the N^2 elementary matrices proves it for every X.
// On failure *why (when given) names the violated property.
template <class K>
bool check_D_properties(const RMatrixPair<K>& pair, std::string* why = nullptr) {
    const SparseOp<K>& f = pair.F;
    const SparseOp<K>& d = pair.trace_matrix();
    const int n = pair.N;
    const SparseOp<K> id1 = SparseOp<K>::identity(n, 1);

    if (f.partial_qtrace(d, {2}) != id1) {
        if (why) *why = "Tr_F(2) F_1 = I_1 fails";
        return false;
    }
    const SparseOp<K> dd = d.embed_at(1, 2) * d.embed_at(2, 2);
    if (f * dd != dd * f) {
        if (why) *why = "F_1 D_1 D_2 = D_1 D_2 F_1 fails";
        return false;
    }
    const SparseOp<K>& finv = pair.f_inverse();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const SparseOp<K> x = detail::elementary_matrix<K>(n, i, j);
            const SparseOp<K> x1 = x.embed_at(1, 2);
            const K tr = x.partial_qtrace(d, {1}).scalar_value();
            const SparseOp<K> rhs = id1 * tr;
            if ((f * x1 * finv).partial_qtrace(d, {2}) != rhs ||
                (finv * x1 * f).partial_qtrace(d, {2}) != rhs) {
                if (why)
                    *why = "Tr_F(2)(F^{+-1} X_1 F^{-+1}) = I_1 Tr_F X fails for X = E[" +
                           std::to_string(i) + "," + std::to_string(j) + "]";
                return false;
            }
        }
    return true;
}

// Double-twist relation R^{FF}_1 D_1 D_2 = D_1 D_2 R_1.
template <class K>
bool check_twist_square(const RMatrixPair<K>& pair) {
    const SparseOp<K>& d = pair.trace_matrix();
    const SparseOp<K> dd = d.embed_at(1, 2) * d.embed_at(2, 2);
    return pair.double_twist() * dd == dd * pair.R;
}

// Standard Drinfeld-Jimbo braid matrix for GL_q(N):
//   R^{ii}_{ii} = q,  R^{ij}_{ji} = 1 (i != j),  R^{ij}_{ij} = q - q^{-1} (i < j).
template <class K>
SparseOp<K> standard_rhat(int n, const QCtx<K>& ctx) {
    SparseOp<K> r(n, 2);
    const K lambda = ctx.q - ctx.qinv;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int rw[2] = {i, j};
            if (i == j) {
                r.set(encode_word(rw, n, 2), encode_word(rw, n, 2), ctx.q);
                continue;
            }
            const int cw[2] = {j, i};
            r.set(encode_word(rw, n, 2), encode_word(cw, n, 2), K(1));
            if (i < j) r.set(encode_word(rw, n, 2), encode_word(rw, n, 2), lambda);
        }
    return r;
}

inline const std::vector<std::string>& builtin_families() {
    static const std::vector<std::string> fams = {"rtt-standard", "re-standard",
                                                  "inverse-twist-standard", "rtt-classical"};
    return fams;
}

// Built-in pair constructors. The entries are hard-coded from the well-known
// matrices but never trusted: validate() re-proves every defining property
// before a pair is used.
template <class K>
RMatrixPair<K> builtin(const std::string& family, int n, const QCtx<K>& ctx) {
    if (n < 2) throw ShapeError("builtin families need N >= 2");
    RMatrixPair<K> pair;
    pair.N = n;
    pair.ctx = ctx;
    pair.family = family;
    if (family == "rtt-standard") {
        pair.R = standard_rhat(n, ctx);
        pair.F = permutation_op<K>(n);
    } else if (family == "re-standard") {
        pair.R = standard_rhat(n, ctx);
        pair.F = pair.R;
    } else if (family == "inverse-twist-standard") {
        pair.R = standard_rhat(n, ctx);
        auto rinv = inverse(pair.R);
        if (!rinv) throw NotInvertibleError("standard R-matrix unexpectedly singular");
        pair.F = *rinv;
    } else if (family == "rtt-classical") {
        // (P, P): fails the formal Hecke condition; meant for numeric-q runs.
        pair.R = permutation_op<K>(n);
        pair.F = pair.R;
    } else {
        throw UnknownFamilyError("unknown family '" + family + "'");
    }
    return pair;
}

struct PreflightItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Full validation pipeline. Runs the checks in a fixed order, stops at the
// first failure, and fills in the derived members (Finv, Psi, D, Rff,
// height) as it goes. Returns the per-equation outcomes for reporting.
template <class K>
std::vector<PreflightItem> validate(RMatrixPair<K>& pair, int nmax) {
    std::vector<PreflightItem> items;
    auto record = [&items](const std::string& name, bool ok, const std::string& detail = "") {
        items.push_back({name, ok, detail});
        return ok;
    };

    if (!record("ybe-R", check_ybe(pair.R))) return items;
    if (!record("ybe-F", check_ybe(pair.F))) return items;
    if (!record("compatibility", check_compatible(pair.R, pair.F))) return items;
    if (!record("hecke-R", check_hecke(pair.R, pair.ctx))) return items;

    auto finv = inverse(pair.F);
    if (!record("F-invertible", finv.has_value(), finv ? "" : "F is singular")) return items;
    pair.Finv = std::move(*finv);

    try {
        auto [psi, d] = skew_inverse(pair.F);
        pair.Psi = std::move(psi);
        pair.D = std::move(d);
        record("closedness", true);
    } catch (const Error& e) {
        record("closedness", false, e.what());
        return items;
    }
    auto dinv = inverse(*pair.D);
    if (!record("D-invertible", dinv.has_value(), dinv ? "" : "D is singular")) return items;
    pair.Dinv = std::move(*dinv);

    std::string why;
    if (!record("D-properties", check_D_properties(pair, &why), why)) return items;

    pair.Rf = pair.F * pair.R * *pair.Finv;
    pair.Rff = pair.F * *pair.Rf * *pair.Finv;
    if (!record("twist-ybe", check_ybe(*pair.Rf))) return items;
    if (!record("twist-compatibility", check_compatible(*pair.Rf, pair.F))) return items;
    if (!record("twist-square", check_twist_square(pair))) return items;

    try {
        pair.height = height(pair.R, pair.ctx, nmax);
        record("height", true, "n = " + std::to_string(*pair.height));
    } catch (const NotEvenHeckeError& e) {
        record("height", false, e.what());
        return items;
    }

    pair.validated = true;
    return items;
}

} // namespace qma
