// Acceptance suite: end-to-end verification of everything the engine
// promises, by exact computation at desk scale. Each criterion prints one
// PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "qma/verifier.hpp"

using namespace qma;

namespace {

struct AcceptanceFailure : std::runtime_error {
    explicit AcceptanceFailure(const std::string& w) : std::runtime_error(w) {}
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw AcceptanceFailure(msg);
}

double run_criterion(int number, const std::string& label, const std::function<void()>& body,
                     bool& all_pass) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string failure;
    try {
        body();
    } catch (const std::exception& e) {
        failure = e.what();
    }
    const double secs =
        std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - t0)
            .count();
    std::ostringstream line;
    line.precision(1);
    line << (failure.empty() ? "PASS" : "FAIL") << "  criterion " << number << ": " << label << "  ["
         << std::fixed << secs << "s]";
    if (!failure.empty()) line << "\n      " << failure;
    std::cout << line.str() << std::endl;
    if (!failure.empty()) all_pass = false;
    return secs;
}

// Validated formal pairs are shared between criteria; each is built once.
struct PairCache {
    std::map<std::string, RMatrixPair<QRat>> pairs;

    const RMatrixPair<QRat>& get(const std::string& family, int n) {
        const std::string key = family + "/" + std::to_string(n);
        auto it = pairs.find(key);
        if (it == pairs.end()) {
            auto pair = builtin(family, n, formal_ctx());
            validate(pair, n + 1);
            require(pair.validated, "validation failed for " + key);
            it = pairs.emplace(key, std::move(pair)).first;
        }
        return it->second;
    }
};

PairCache cache;

// Commutative monomial over the N = 2 generators (ids 0..3), sorted word.
NCPoly<Rational> comm(std::initializer_list<int> gens, long num, long den = 1) {
    GenWord w;
    for (int g : gens) w.push_back(static_cast<std::uint16_t>(g));
    std::sort(w.begin(), w.end());
    return NCPoly<Rational>::monomial(w, rational(num, den));
}

void criterion_preflight() {
    const std::vector<std::pair<std::string, int>> cases = {{"rtt-standard", 2},
                                                            {"re-standard", 2},
                                                            {"inverse-twist-standard", 2},
                                                            {"rtt-standard", 3},
                                                            {"re-standard", 3}};
    for (const auto& [family, n] : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto& pair = cache.get(family, n);
        const double secs = std::chrono::duration_cast<std::chrono::duration<double>>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        require(pair.require_height() == n, family + " N=" + std::to_string(n) +
                                                ": height != N (got " +
                                                std::to_string(pair.require_height()) + ")");
        const double limit = (n == 2) ? 10.0 : 120.0;
        require(secs < limit, family + " N=" + std::to_string(n) + ": preflight took " +
                                  std::to_string(secs) + "s, over the " + std::to_string(limit) +
                                  "s budget");
    }
}

void criterion_towers() {
    const auto ctx = formal_ctx();
    for (int n : {2, 3}) {
        const auto r = standard_rhat(n, ctx);
        const auto anti = antisymmetrizers(r, ctx, n + 1);
        const auto sym = symmetrizers(r, ctx, n + 1);
        for (int k = 1; k <= n + 1; ++k) {
            require(anti.level(k) * anti.level(k) == anti.level(k),
                    "A^(k) not idempotent at N=" + std::to_string(n) + ", k=" + std::to_string(k));
            require(sym.level(k) * sym.level(k) == sym.level(k),
                    "S^(k) not idempotent at N=" + std::to_string(n) + ", k=" + std::to_string(k));
        }
        require(anti.level(n + 1).is_zero(), "A^(N+1) != 0 at N=" + std::to_string(n));
        require(rank_exact(anti.level(n)) == 1, "rank A^(N) != 1 at N=" + std::to_string(n));
        require(anti.level(2) + sym.level(2) == SparseOp<QRat>::identity(n, 2),
                "A^(2) + S^(2) != I at N=" + std::to_string(n));
        // Reflection maps the A-tower of R to the S-tower of the reflected R.
        const auto r_ref = r.map_entries([](const QRat& v) { return v.reflected(); });
        const auto sym_ref = symmetrizers(r_ref, ctx, n + 1);
        for (int k = 1; k <= n + 1; ++k) {
            const auto mapped = anti.level(k).map_entries([](const QRat& v) { return v.reflected(); });
            require(mapped == sym_ref.level(k),
                    "reflected A-tower != S-tower at N=" + std::to_string(n) + ", k=" + std::to_string(k));
        }
    }
}

void criterion_lemma() {
    for (const char* family : {"rtt-standard", "re-standard", "inverse-twist-standard"}) {
        const auto& pair = cache.get(family, 2);
        std::string why;
        require(check_copy_commutation(pair, 4, &why), std::string(family) + ": " + why);
        require(check_chain_shift(pair, 4, &why), std::string(family) + ": " + why);
        for (int i = 2; i <= 4; ++i)
            for (int k = 1; i + k - 1 <= 4; ++k) {
                require(check_trace_locality(pair, SparseOp<QRat>::identity(2, k), i, k, &why),
                        std::string(family) + ": " + why);
                if (k >= 2) {
                    require(check_trace_locality(pair, chain(pair.R, 1, k - 1, k), i, k, &why),
                            std::string(family) + ": " + why);
                    const auto anti = antisymmetrizers(pair.R, pair.ctx, k);
                    require(check_trace_locality(pair, anti.level(k), i, k, &why),
                            std::string(family) + ": " + why);
                }
            }
        Workspace<QRat> ws(pair);
        NCPoly<QRat> res;
        require(check_relation_shift(pair, ws.ideal(2), 2, &why, &res),
                std::string(family) + ": " + why);
    }
}

void criterion_chn() {
    for (const char* family : {"rtt-standard", "re-standard"}) {
        Workspace<QRat> ws(cache.get(family, 2));
        for (int k = 1; k <= 2; ++k) {
            const auto a = check_chn(ws, k);
            require(a.pass, std::string(family) + " " + a.name + ": " + a.witness_entry + " residual " +
                                a.witness_residual);
            const auto b = check_chn_sym(ws, k);
            require(b.pass, std::string(family) + " " + b.name + ": " + b.witness_entry + " residual " +
                                b.witness_residual);
        }
    }
    Workspace<QRat> ws3(cache.get("rtt-standard", 3));
    for (int k = 1; k <= 2; ++k) {
        const auto a = check_chn(ws3, k);
        require(a.pass, "rtt-standard N=3 " + a.name + ": " + a.witness_entry);
        const auto b = check_chn_sym(ws3, k);
        require(b.pass, "rtt-standard N=3 " + b.name + ": " + b.witness_entry);
    }
}

void criterion_corollaries() {
    for (const char* family : {"rtt-standard", "re-standard"}) {
        Workspace<QRat> ws(cache.get(family, 2));
        for (int k = 1; k <= 3; ++k) {
            const auto newton = check_newton(ws, k);
            require(newton.pass, std::string(family) + " " + newton.name + ": " + newton.witness_entry);
            const auto wronski = check_wronski(ws, k);
            require(wronski.pass, std::string(family) + " " + wronski.name + ": " + wronski.witness_entry);
        }
        const auto ch = check_cayley_hamilton(ws);
        require(ch.pass, std::string(family) + " " + ch.name + ": " + ch.witness_entry + " residual " +
                             ch.witness_residual);
        for (int k = 1; k <= 2; ++k) {
            const auto inv = check_inverse_chn(ws, k);
            require(inv.pass, std::string(family) + " " + inv.name + ": " + inv.witness_entry);
        }
    }
}

void criterion_commutativity() {
    for (const char* family : {"rtt-standard", "re-standard"}) {
        Workspace<QRat> ws(cache.get(family, 2));
        const std::vector<std::tuple<CharKind, int, CharKind, int>> pairs = {
            {CharKind::PowerSum, 1, CharKind::Elementary, 2},
            {CharKind::Elementary, 1, CharKind::Elementary, 2},
            {CharKind::Complete, 1, CharKind::PowerSum, 2},
            {CharKind::Elementary, 1, CharKind::Complete, 2}};
        for (const auto& [ka, da, kb, db] : pairs) {
            const auto out = check_commutator(ws, ka, da, kb, db);
            require(out.pass, std::string(family) + " " + out.name + ": residual " + out.witness_residual);
        }
    }
}

void criterion_classical() {
    auto pair = builtin("rtt-classical", 2, numeric_ctx(Rational(1)));
    validate(pair, 3);
    require(pair.validated, "classical pair failed validation at q = 1");
    require(pair.require_height() == 2, "classical height != 2");
    Workspace<Rational> ws(std::move(pair));

    // Independent classical oracles in the commutative ring (sorted words):
    // generators a = M[0,0] (id 0), b = M[0,1] (1), c = M[1,0] (2), d = M[1,1] (3).
    const auto det = comm({0, 3}, 1) + comm({1, 2}, -1);
    const auto tr2 = comm({0, 0}, 1) + comm({1, 2}, 2) + comm({3, 3}, 1);  // tr(M^2)
    const auto tr_sq = comm({0, 0}, 1) + comm({0, 3}, 2) + comm({3, 3}, 1);  // tr(M)^2

    require(ws.sigma(2).abelianized() == det, "sigma_2 != det M in the commutative quotient");
    require(ws.s(2).abelianized() == tr2, "s_2 != tr(M^2) in the commutative quotient");

    // Newton k <= 2 reduce to the classical identities: the abelianized
    // engine differences vanish, and independently e_2 = (p_1^2 - p_2)/2.
    for (int k = 1; k <= 2; ++k) {
        const Rational lead = (k % 2 == 0) ? -ws.pair().ctx.qnumber(k) : ws.pair().ctx.qnumber(k);
        NCPoly<Rational> diff = ws.sigma(k) * lead;
        for (int i = 0; i < k; ++i)
            diff -= ws.s(k - i) * ws.sigma(i) * ws.pair().ctx.minus_q_pow(i);
        require(diff.abelianized().is_zero(),
                "classical Newton k=" + std::to_string(k) + " does not vanish");
    }
    const auto e2_from_newton = (tr_sq - tr2) * rational(1, 2);
    require(e2_from_newton == det, "independent classical Newton check failed");

    // Cayley-Hamilton: the abelianized engine residual must equal the
    // classical M^2 - tr(M) M + det(M) I, which is identically zero.
    OpPoly<Rational> ch(2, 1);
    for (int i = 0; i <= 2; ++i) {
        const auto& p = (i == 2) ? ws.zeroth() : ws.power(2 - i);
        ch = ch + p.times_poly_right(ws.sigma(i)) * ws.pair().ctx.minus_q_pow(i);
    }
    for (const auto& [r, row] : ch.rows())
        for (const auto& [c, p] : row)
            require(p.abelianized().is_zero(), "classical Cayley-Hamilton entry (" + std::to_string(r) +
                                                   "," + std::to_string(c) + ") does not vanish");

    // Independent oracle: M^2 - tr(M) M + det(M) I in the commutative ring.
    const auto m = OpPoly<Rational>::generators(2);
    const auto trace = NCPoly<Rational>::generator(0, 0, 2) + NCPoly<Rational>::generator(1, 1, 2);
    const auto oracle =
        m * m - m.times_poly_right(trace) + OpPoly<Rational>::identity(2, 1).times_poly_right(det);
    for (const auto& [r, row] : oracle.rows())
        for (const auto& [c, p] : row)
            require(p.abelianized().is_zero(), "classical CH oracle is not identically zero");
}

void criterion_determinism() {
    SuiteConfig cfg;
    cfg.family = "re-standard";
    cfg.N = 2;
    cfg.kmax = 2;
    cfg.mode = "fast";
    cfg.seed = 2024;
    const auto a = run_suite(cfg);
    const auto b = run_suite(cfg);
    require(a.report_json == b.report_json, "fast-mode reports differ between identical runs");
    require(a.exit_code == 0, "fast-mode suite failed");
    SuiteConfig exact;
    exact.family = "rtt-standard";
    exact.N = 2;
    exact.kmax = 2;
    const auto c = run_suite(exact);
    const auto d = run_suite(exact);
    require(c.report_json == d.report_json, "exact-mode reports differ between identical runs");
    require(c.exit_code == 0, "exact-mode suite failed");
}

void criterion_fast_soundness() {
    const auto& pair = cache.get("re-standard", 2);
    auto rels = defining_relations(pair);
    std::vector<NCPoly<QRat>> corrupted(rels.begin(), rels.begin() + 3);
    corrupted[0] += NCPoly<QRat>::monomial(GenWord{0, 0}, QRat::gen());

    Workspace<QRat> exact_ws(pair, corrupted);
    const auto exact_out = check_cayley_hamilton(exact_ws);
    require(!exact_out.pass, "exact mode did not fail on the corrupted relation set");
    require(!exact_out.witness_residual.empty(), "exact failure carries no witness");

    int failures = 0;
    for (const auto& qv : draw_fast_samples(11, 5)) {
        auto numeric_pair = builtin("re-standard", 2, numeric_ctx(qv));
        validate(numeric_pair, 3);
        require(numeric_pair.validated, "numeric pair failed validation at q sample");
        std::vector<NCPoly<Rational>> nrels;
        for (const auto& r : corrupted)
            nrels.push_back(r.map_coeffs([&](const QRat& v) { return v.eval_at(qv); }));
        Workspace<Rational> nws(std::move(numeric_pair), std::move(nrels));
        if (!check_cayley_hamilton(nws).pass) ++failures;
    }
    require(failures >= 1, "fast mode passed at all 5 samples despite the exact failure");
}

} // namespace

int main() {
    bool all_pass = true;
    run_criterion(1, "preflight validation of all builtin pairs (N = 2 and 3), height = N",
                  criterion_preflight, all_pass);
    run_criterion(2, "projector towers: idempotence, vanishing, rank 1, A+S = I, reflection",
                  criterion_towers, all_pass);
    run_criterion(3, "free-algebra lemma identities (arity <= 4) and relation shift mod ideal",
                  criterion_lemma, all_pass);
    run_criterion(4, "wedge and symmetric power identities (N = 2 both pairs; N = 3 with F = P)",
                  criterion_chn, all_pass);
    run_criterion(5, "Newton, Wronski, Cayley-Hamilton and inverse identities (N = 2 pairs)",
                  criterion_corollaries, all_pass);
    run_criterion(6, "characteristic subalgebra commutators vanish mod degree-3 ideal",
                  criterion_commutativity, all_pass);
    run_criterion(7, "classical regression at q = 1 through the commutative-reduction oracle",
                  criterion_classical, all_pass);
    run_criterion(8, "byte-identical reports for identical configurations and seeds",
                  criterion_determinism, all_pass);
    run_criterion(9, "fast mode fails wherever exact mode fails (corrupted-relation control)",
                  criterion_fast_soundness, all_pass);
    std::cout << (all_pass ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT")
              << std::endl;
    return all_pass ? 0 : 1;
}
