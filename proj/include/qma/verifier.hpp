#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qma/lemma.hpp"
#include "qma/symfun.hpp"

namespace qma {

// ---------------------------------------------------------------------------
// Workspace: a validated pair plus everything the identity checks share --
// projector towers, the defining relations, ideal components per degree, and
// the characteristic elements and matrix powers, all built once on demand.
// ---------------------------------------------------------------------------
template <class K>
class Workspace {
public:
    explicit Workspace(RMatrixPair<K> pair) : pair_(std::move(pair)) {
        if (!pair_.validated) throw ValidationError("workspace requires a validated pair");
        rels_ = defining_relations(pair_);
    }

    // Negative-control constructor: run the checks against an explicit
    // relation set instead of the pair's own (e.g. a deliberately corrupted
    // one, to demonstrate that the checks can fail).
    Workspace(RMatrixPair<K> pair, std::vector<NCPoly<K>> relations_override)
        : pair_(std::move(pair)), rels_(std::move(relations_override)) {
        if (!pair_.validated) throw ValidationError("workspace requires a validated pair");
    }

    const RMatrixPair<K>& pair() const { return pair_; }
    const std::vector<NCPoly<K>>& relations() const { return rels_; }

    const ProjectorTower<K>& anti(int k) {
        if (!anti_ || anti_->max_level() < k) anti_ = antisymmetrizers(pair_.R, pair_.ctx, k);
        return *anti_;
    }
    const ProjectorTower<K>& sym(int k) {
        if (!sym_ || sym_->max_level() < k) sym_ = symmetrizers(pair_.R, pair_.ctx, k);
        return *sym_;
    }

    const IdealBasis<K>& ideal(int d) {
        auto it = ideals_.find(d);
        if (it == ideals_.end()) it = ideals_.emplace(d, IdealBasis<K>::build(rels_, pair_.N, d)).first;
        return it->second;
    }

    const NCPoly<K>& s(int k) {
        auto it = s_.find(k);
        if (it == s_.end()) it = s_.emplace(k, power_sum(pair_, k).value).first;
        return it->second;
    }
    const NCPoly<K>& sigma(int k) {
        auto it = sig_.find(k);
        if (it == sig_.end()) it = sig_.emplace(k, elementary(pair_, anti(std::max(k, 1)), k).value).first;
        return it->second;
    }
    const NCPoly<K>& tau(int k) {
        auto it = tau_.find(k);
        if (it == tau_.end()) it = tau_.emplace(k, complete(pair_, sym(std::max(k, 1)), k).value).first;
        return it->second;
    }

    const OpPoly<K>& power(int k) {
        auto it = pow_.find(k);
        if (it == pow_.end()) it = pow_.emplace(k, matrix_power(pair_, k).value).first;
        return it->second;
    }
    const OpPoly<K>& wedge(int k) {
        auto it = wedge_.find(k);
        if (it == wedge_.end()) it = wedge_.emplace(k, wedge_power(pair_, anti(k), k).value).first;
        return it->second;
    }
    const OpPoly<K>& sympow(int k) {
        auto it = symp_.find(k);
        if (it == symp_.end()) it = symp_.emplace(k, sym_power(pair_, sym(k), k).value).first;
        return it->second;
    }
    const OpPoly<K>& zeroth() {
        if (!zeroth_) zeroth_ = zeroth_power(pair_, anti(pair_.require_height())).value;
        return *zeroth_;
    }

private:
    RMatrixPair<K> pair_;
    std::vector<NCPoly<K>> rels_;
    std::optional<ProjectorTower<K>> anti_, sym_;
    std::map<int, IdealBasis<K>> ideals_;
    std::map<int, NCPoly<K>> s_, sig_, tau_;
    std::map<int, OpPoly<K>> pow_, wedge_, symp_;
    std::optional<OpPoly<K>> zeroth_;
};

// ---------------------------------------------------------------------------
// Check outcomes. A degree-1 identity must vanish literally; from degree 2 on
// the difference is reduced against the matching ideal component, and a
// nonzero residual becomes the witness.
// ---------------------------------------------------------------------------
struct CheckOutcome {
    std::string name;
    bool pass = true;
    std::string witness_entry;     // which entry or scalar failed
    std::string witness_residual;  // its normal form, in the coefficient grammar
    std::int64_t elapsed_ms = -1;  // -1 = not measured
};

namespace detail {

template <class K>
bool scalar_in_ideal(Workspace<K>& ws, const NCPoly<K>& diff, int k, CheckOutcome& out,
                     const std::string& entry_label) {
    if (diff.is_zero()) return true;
    if (k < 2) {
        out.pass = false;
        out.witness_entry = entry_label;
        out.witness_residual = diff.str(ws.pair().N);
        return false;
    }
    auto [ok, res] = ws.ideal(k).reduce(diff);
    if (!ok) {
        out.pass = false;
        out.witness_entry = entry_label;
        out.witness_residual = res.str(ws.pair().N);
    }
    return ok;
}

template <class K>
bool opmatrix_in_ideal(Workspace<K>& ws, const OpPoly<K>& diff, int k, CheckOutcome& out) {
    for (const auto& [r, row] : diff.rows())
        for (const auto& [c, p] : row) {
            if (!scalar_in_ideal(ws, p, k, out,
                                 "entry (" + std::to_string(r) + "," + std::to_string(c) + ")"))
                return false;
        }
    return true;
}

} // namespace detail

// Wedge-power identity: (-1)^{k-1} k_q M^{wedge k} =
//   sum_{i=0}^{k-1} (-q)^i M^{ordinary k-i} sigma_i, entrywise mod ideal.
template <class K>
CheckOutcome check_chn(Workspace<K>& ws, int k) {
    CheckOutcome out{"chn/k=" + std::to_string(k)};
    const auto& ctx = ws.pair().ctx;
    const K lead = (k % 2 == 0) ? K(0) - ctx.qnumber(k) : ctx.qnumber(k);
    OpPoly<K> diff = ws.wedge(k) * lead;
    for (int i = 0; i < k; ++i)
        diff = diff - ws.power(k - i).times_poly_right(ws.sigma(i)) * ctx.minus_q_pow(i);
    detail::opmatrix_in_ideal(ws, diff, k, out);
    return out;
}

// Symmetric-power identity: k_q M^{sym k} =
//   sum_{i=0}^{k-1} q^{-i} M^{ordinary k-i} tau_i, entrywise mod ideal.
template <class K>
CheckOutcome check_chn_sym(Workspace<K>& ws, int k) {
    CheckOutcome out{"chn-sym/k=" + std::to_string(k)};
    const auto& ctx = ws.pair().ctx;
    OpPoly<K> diff = ws.sympow(k) * ctx.qnumber(k);
    for (int i = 0; i < k; ++i)
        diff = diff - ws.power(k - i).times_poly_right(ws.tau(i)) * ctx.qpow(-i);
    detail::opmatrix_in_ideal(ws, diff, k, out);
    return out;
}

// Newton relations, both families:
//   (-1)^{k-1} k_q sigma_k = sum_{i<k} (-q)^i s_{k-i} sigma_i
//   k_q tau_k            = sum_{i<k} q^{-i} s_{k-i} tau_i
template <class K>
CheckOutcome check_newton(Workspace<K>& ws, int k) {
    CheckOutcome out{"newton/k=" + std::to_string(k)};
    const auto& ctx = ws.pair().ctx;
    const K lead = (k % 2 == 0) ? K(0) - ctx.qnumber(k) : ctx.qnumber(k);
    NCPoly<K> diff_a = ws.sigma(k) * lead;
    NCPoly<K> diff_b = ws.tau(k) * ctx.qnumber(k);
    for (int i = 0; i < k; ++i) {
        diff_a -= ws.s(k - i) * ws.sigma(i) * ctx.minus_q_pow(i);
        diff_b -= ws.s(k - i) * ws.tau(i) * ctx.qpow(-i);
    }
    if (detail::scalar_in_ideal(ws, diff_a, k, out, "elementary form"))
        detail::scalar_in_ideal(ws, diff_b, k, out, "complete form");
    return out;
}

// Wronski relation: 0 = sum_{i=0}^{k} (-1)^i tau_{k-i} sigma_i.
template <class K>
CheckOutcome check_wronski(Workspace<K>& ws, int k) {
    CheckOutcome out{"wronski/k=" + std::to_string(k)};
    NCPoly<K> diff;
    for (int i = 0; i <= k; ++i) {
        const NCPoly<K> term = ws.tau(k - i) * ws.sigma(i);
        if (i % 2 == 0)
            diff += term;
        else
            diff -= term;
    }
    detail::scalar_in_ideal(ws, diff, k, out, "scalar");
    return out;
}

// Cayley-Hamilton: 0 = sum_{i=0}^{n} (-q)^i M^{ordinary n-i} sigma_i with the
// i = n term using the normalized degree-0 power.
template <class K>
CheckOutcome check_cayley_hamilton(Workspace<K>& ws) {
    const int n = ws.pair().require_height();
    CheckOutcome out{"cayley-hamilton/n=" + std::to_string(n)};
    const auto& ctx = ws.pair().ctx;
    OpPoly<K> diff(ws.pair().N, 1);
    for (int i = 0; i <= n; ++i) {
        const OpPoly<K>& p = (i == n) ? ws.zeroth() : ws.power(n - i);
        diff = diff + p.times_poly_right(ws.sigma(i)) * ctx.minus_q_pow(i);
    }
    detail::opmatrix_in_ideal(ws, diff, n, out);
    return out;
}

// Inverse identities, both forms, for k <= height:
//   M^{ordinary k} = sum_{i=1}^{k} (-1)^{i+1} q^{k-i} i_q M^{wedge i} tau_{k-i}
//                  = sum_{i=1}^{k} (-1)^{k-i} q^{i-k} i_q M^{sym i} sigma_{k-i}
template <class K>
CheckOutcome check_inverse_chn(Workspace<K>& ws, int k) {
    CheckOutcome out{"inverse-chn/k=" + std::to_string(k)};
    const auto& ctx = ws.pair().ctx;
    OpPoly<K> diff_a = ws.power(k);
    OpPoly<K> diff_b = ws.power(k);
    for (int i = 1; i <= k; ++i) {
        K ca = ctx.qpow(k - i) * ctx.qnumber(i);
        if ((i + 1) % 2 != 0) ca = K(0) - ca;
        diff_a = diff_a - ws.wedge(i).times_poly_right(ws.tau(k - i)) * ca;
        K cb = ctx.qpow(i - k) * ctx.qnumber(i);
        if ((k - i) % 2 != 0) cb = K(0) - cb;
        diff_b = diff_b - ws.sympow(i).times_poly_right(ws.sigma(k - i)) * cb;
    }
    if (!detail::opmatrix_in_ideal(ws, diff_a, k, out)) {
        out.witness_entry = "wedge form, " + out.witness_entry;
        return out;
    }
    if (!detail::opmatrix_in_ideal(ws, diff_b, k, out))
        out.witness_entry = "symmetric form, " + out.witness_entry;
    return out;
}

// Commutator of two characteristic elements, mod the ideal component of the
// combined degree.
template <class K>
CheckOutcome check_commutator(Workspace<K>& ws, CharKind ka, int da, CharKind kb, int db) {
    auto label = [](CharKind kind, int d) {
        const char* names[] = {"s", "sigma", "tau"};
        return std::string(names[static_cast<int>(kind)]) + std::to_string(d);
    };
    CheckOutcome out{"commutativity/[" + label(ka, da) + "," + label(kb, db) + "]"};
    auto value = [&ws](CharKind kind, int d) -> const NCPoly<K>& {
        switch (kind) {
            case CharKind::PowerSum: return ws.s(d);
            case CharKind::Elementary: return ws.sigma(d);
            default: return ws.tau(d);
        }
    };
    const NCPoly<K>&a = value(ka, da), &b = value(kb, db);
    detail::scalar_in_ideal(ws, a * b - b * a, da + db, out, "commutator");
    return out;
}

// ---------------------------------------------------------------------------
// Suite configuration and results
// ---------------------------------------------------------------------------
struct SuiteConfig {
    std::string family;          // builtin name, or empty when r_file/f_file are set
    std::string r_file, f_file;  // custom matrix files
    int N = 2;
    int kmax = 0;   // 0 = use the height
    int nmax = 0;   // height search bound; 0 = N + 1 (builtins only)
    std::vector<std::string> checks;  // empty = all
    std::string mode = "exact";       // "exact" | "fast"
    std::optional<Rational> q_value;  // numeric-q run (exact arithmetic at fixed q)
    std::uint64_t seed = 0;
    int samples = 5;
    std::string out_path;  // report destination; empty = stdout
    bool timings = false;  // off keeps reports byte-identical across runs
};

struct CheckResult {
    std::string name;
    std::string mode;    // "exact" | "probabilistic"
    std::string status;  // "pass" | "fail" | "error"
    std::string witness_entry, witness_residual;
    std::int64_t elapsed_ms = -1;  // -1 = not measured
};

struct SuiteResult {
    std::vector<CheckResult> preflight;
    std::vector<CheckResult> checks;
    std::string report_json;
    int exit_code = 0;  // 0 pass, 1 at least one failure, 2 input/validation error
};

// Valid --checks selectors. Preflight always runs (it is the soundness
// gate); listing it alone requests a validation-only run.
inline const std::vector<std::string>& all_check_names() {
    static const std::vector<std::string> names = {"preflight", "lemma",   "shift",
                                                   "chn",       "chn-sym", "newton",
                                                   "wronski",   "cayley-hamilton",
                                                   "inverse-chn", "commutativity"};
    return names;
}

// Deterministic sampling for fast mode (splitmix64; q drawn from 2..100).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<Rational> draw_fast_samples(std::uint64_t seed, int count);

// Runs the configured suite end to end: builds the pair, validates it,
// executes the selected identity checks in the fixed order, and renders the
// machine-readable report.
SuiteResult run_suite(const SuiteConfig& config);

namespace detail {

// Sample polynomials in R_1..R_{k-1} used for the trace-locality and shift
// checks: the identity, the full chain, and the top antisymmetrizer. Both
// identities are linear in the polynomial, so a structured sample across
// degrees is meaningful coverage.
template <class K>
std::vector<SparseOp<K>> braid_poly_samples(Workspace<K>& ws, int k) {
    std::vector<SparseOp<K>> ys;
    ys.push_back(SparseOp<K>::identity(ws.pair().N, k));
    if (k >= 2) {
        ys.push_back(chain(ws.pair().R, 1, k - 1, k));
        ys.push_back(ws.anti(k).level(k));
    }
    return ys;
}

} // namespace detail

// The per-lane check driver shared by the exact, numeric-q and fast lanes.
// Check order is fixed: lemma, shift, chn, chn-sym, newton, wronski,
// cayley-hamilton, inverse-chn, commutativity; later checks reuse the towers
// and ideal components built by earlier ones, and reports stay deterministic.
template <class K>
std::vector<CheckOutcome> run_identity_checks(Workspace<K>& ws, int kmax,
                                              const std::vector<std::string>& which,
                                              bool timings = false) {
    auto want = [&which](const std::string& name) {
        if (which.empty()) return true;
        for (const auto& w : which)
            if (w == name) return true;
        return false;
    };
    std::vector<CheckOutcome> out;
    auto run = [&out, timings](auto&& make) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckOutcome c = make();
        if (timings)
            c.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
        out.push_back(std::move(c));
    };
    const int n = ws.pair().require_height();
    const int max_arity = kmax + 1;

    if (want("lemma")) {
        run([&] {
            CheckOutcome c{"lemma/copy-commutation"};
            std::string why;
            if (!check_copy_commutation(ws.pair(), max_arity, &why)) {
                c.pass = false;
                c.witness_entry = why;
            }
            return c;
        });
        run([&] {
            CheckOutcome c{"lemma/chain-shift"};
            std::string why;
            if (!check_chain_shift(ws.pair(), max_arity, &why)) {
                c.pass = false;
                c.witness_entry = why;
            }
            return c;
        });
        run([&] {
            CheckOutcome c{"lemma/trace-locality"};
            std::string why;
            for (int i = 2; c.pass && i <= max_arity; ++i)
                for (int k = 1; c.pass && i + k - 1 <= max_arity; ++k)
                    for (const auto& y : detail::braid_poly_samples(ws, k)) {
                        if (!check_trace_locality(ws.pair(), y, i, k, &why)) {
                            c.pass = false;
                            c.witness_entry = why;
                            break;
                        }
                    }
            return c;
        });
        run([&] {
            CheckOutcome c{"lemma/relation-shift"};
            std::string why;
            NCPoly<K> res;
            if (!check_relation_shift(ws.pair(), ws.ideal(2), kmax, &why, &res)) {
                c.pass = false;
                c.witness_entry = why;
                c.witness_residual = res.str(ws.pair().N);
            }
            return c;
        });
    }

    if (want("shift")) {
        for (int i = 1; i <= 2; ++i)
            for (int k = 1; i + k <= 4; ++k)
                run([&] {
                    CheckOutcome c{"shift/i=" + std::to_string(i) + ",k=" + std::to_string(k)};
                    std::string why;
                    for (const auto& y : detail::braid_poly_samples(ws, k)) {
                        for (const auto& z : detail::braid_poly_samples(ws, i)) {
                            if (!check_shift(ws.pair(), y, z, i, k, &why)) {
                                c.pass = false;
                                c.witness_entry = why;
                                break;
                            }
                        }
                        if (!c.pass) break;
                    }
                    return c;
                });
    }

    if (want("chn"))
        for (int k = 1; k <= kmax; ++k) run([&] { return check_chn(ws, k); });
    if (want("chn-sym"))
        for (int k = 1; k <= kmax; ++k) run([&] { return check_chn_sym(ws, k); });
    if (want("newton"))
        for (int k = 1; k <= kmax; ++k) run([&] { return check_newton(ws, k); });
    if (want("wronski"))
        for (int k = 1; k <= kmax; ++k) run([&] { return check_wronski(ws, k); });
    if (want("cayley-hamilton")) run([&] { return check_cayley_hamilton(ws); });
    if (want("inverse-chn"))
        for (int k = 1; k <= std::min(kmax, n); ++k) run([&] { return check_inverse_chn(ws, k); });
    if (want("commutativity")) {
        run([&] { return check_commutator(ws, CharKind::PowerSum, 1, CharKind::Elementary, 2); });
        run([&] { return check_commutator(ws, CharKind::Elementary, 1, CharKind::Elementary, 2); });
        run([&] { return check_commutator(ws, CharKind::Complete, 1, CharKind::PowerSum, 2); });
        run([&] { return check_commutator(ws, CharKind::Elementary, 1, CharKind::Complete, 2); });
    }
    return out;
}

} // namespace qma
