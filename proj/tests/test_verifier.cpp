#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qma/matrix_io.hpp"
#include "qma/verifier.hpp"
#include "test_support.hpp"

using namespace qma;
using test::validated_pair;

namespace {

Workspace<QRat> workspace(const std::string& family, int n) {
    return Workspace<QRat>(validated_pair(family, n));
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/qma_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("workspace requires validation") {
    auto pair = builtin("rtt-classical", 2, formal_ctx());
    validate(pair, 3);
    CHECK(!pair.validated);
    CHECK_THROWS_AS(Workspace<QRat>(std::move(pair)), ValidationError);
}

TEST_CASE("wedge-power identities hold for both standard pairs") {
    for (const char* family : {"rtt-standard", "re-standard"}) {
        auto ws = workspace(family, 2);
        for (int k = 1; k <= 3; ++k) {
            const auto out = check_chn(ws, k);
            INFO(family, " k=", k, " witness: ", out.witness_entry, " ", out.witness_residual);
            CHECK(out.pass);
        }
    }
}

TEST_CASE("symmetric-power identities hold for both standard pairs") {
    for (const char* family : {"rtt-standard", "re-standard"}) {
        auto ws = workspace(family, 2);
        for (int k = 1; k <= 3; ++k) {
            const auto out = check_chn_sym(ws, k);
            INFO(family, " k=", k, " witness: ", out.witness_entry, " ", out.witness_residual);
            CHECK(out.pass);
        }
    }
}

TEST_CASE("newton and wronski relations") {
    for (const char* family : {"rtt-standard", "re-standard"}) {
        auto ws = workspace(family, 2);
        for (int k = 1; k <= 3; ++k) {
            CHECK(check_newton(ws, k).pass);
            CHECK(check_wronski(ws, k).pass);
        }
    }
}

TEST_CASE("cayley-hamilton and inverse identities") {
    for (const char* family : {"rtt-standard", "re-standard"}) {
        auto ws = workspace(family, 2);
        const auto ch = check_cayley_hamilton(ws);
        INFO(family, " witness: ", ch.witness_entry, " ", ch.witness_residual);
        CHECK(ch.pass);
        for (int k = 1; k <= 2; ++k) CHECK(check_inverse_chn(ws, k).pass);
    }
}

TEST_CASE("characteristic subalgebra commutators vanish") {
    for (const char* family : {"rtt-standard", "re-standard"}) {
        auto ws = workspace(family, 2);
        CHECK(check_commutator(ws, CharKind::PowerSum, 1, CharKind::Elementary, 2).pass);
        CHECK(check_commutator(ws, CharKind::Elementary, 1, CharKind::Elementary, 2).pass);
        CHECK(check_commutator(ws, CharKind::Complete, 1, CharKind::PowerSum, 2).pass);
        CHECK(check_commutator(ws, CharKind::Elementary, 1, CharKind::Complete, 2).pass);
    }
}

TEST_CASE("the wedge and symmetric identities reflect into each other") {
    // Entrywise q -> -q^{-1} of the unreduced wedge-identity difference for a
    // pair equals the symmetric-identity difference for the mirrored pair.
    auto reflect_op = [](const SparseOp<QRat>& op) {
        return op.map_entries([](const QRat& v) { return v.reflected(); });
    };
    const auto pair = validated_pair("rtt-standard", 2);
    RMatrixPair<QRat> mirrored;
    mirrored.N = pair.N;
    mirrored.ctx = pair.ctx;
    mirrored.R = reflect_op(pair.R);
    mirrored.F = reflect_op(pair.F);
    mirrored.Finv = *inverse(mirrored.F);
    const auto [psi, d] = skew_inverse(mirrored.F);
    mirrored.Psi = psi;
    mirrored.D = d;

    const auto ctx = pair.ctx;
    const auto anti = antisymmetrizers(pair.R, ctx, 3);
    const auto sym_m = symmetrizers(mirrored.R, ctx, 3);
    for (int k = 1; k <= 3; ++k) {
        // Unreduced difference of the wedge identity for `pair`.
        const QRat lead = (k % 2 == 0) ? -qnum(k) : qnum(k);
        OpPoly<QRat> diff22 = wedge_power(pair, anti, k).value * lead;
        for (int i = 0; i < k; ++i)
            diff22 = diff22 - matrix_power(pair, k - i).value.times_poly_right(
                                  elementary(pair, anti, i).value) *
                                  ctx.minus_q_pow(i);
        // Unreduced difference of the symmetric identity for `mirrored`.
        OpPoly<QRat> diff23 = sym_power(mirrored, sym_m, k).value * qnum(k);
        for (int i = 0; i < k; ++i)
            diff23 = diff23 - matrix_power(mirrored, k - i).value.times_poly_right(
                                  complete(mirrored, sym_m, i).value) *
                                  ctx.qpow(-i);
        const auto mapped = diff22.map_coeffs([](const QRat& v) { return v.reflected(); });
        CHECK(mapped == diff23);
    }
}

TEST_CASE("corrupted relations: exact failure implies fast failure") {
    // Negative control. The full relation list is highly redundant (16
    // entries spanning a 6-dimensional space), so perturbing one entry only
    // enlarges the span; a genuine corruption truncates the set and perturbs
    // a survivor. Cayley-Hamilton needs the true degree-2 component, so it
    // must fail against this ideal.
    const auto pair = validated_pair("re-standard", 2);
    auto rels = defining_relations(pair);
    REQUIRE(rels.size() >= 3);
    std::vector<NCPoly<QRat>> corrupted(rels.begin(), rels.begin() + 3);
    corrupted[0] += NCPoly<QRat>::monomial(GenWord{0, 0}, QRat::gen());

    Workspace<QRat> ws(pair, corrupted);
    const auto out = check_cayley_hamilton(ws);
    CHECK(!out.pass);
    CHECK(!out.witness_residual.empty());

    // Witness residuals are normal forms: re-reducing one reproduces it.
    const auto basis = IdealBasis<QRat>::build(corrupted, 2, 2);
    const auto first_res = basis.reduce(rels[3]).second;
    CHECK(!first_res.is_zero());
    CHECK(basis.reduce(first_res).second == first_res);

    int fail_count = 0;
    const auto samples = draw_fast_samples(7, 5);
    for (const auto& qv : samples) {
        const auto nctx = numeric_ctx(qv);
        auto numeric_pair = builtin("re-standard", 2, nctx);
        validate(numeric_pair, 3);
        REQUIRE(numeric_pair.validated);
        std::vector<NCPoly<Rational>> nrels;
        for (const auto& r : corrupted)
            nrels.push_back(r.map_coeffs([&](const QRat& v) { return v.eval_at(qv); }));
        Workspace<Rational> nws(numeric_pair, nrels);
        if (!check_cayley_hamilton(nws).pass) ++fail_count;
    }
    CHECK(fail_count >= 1);
}

TEST_CASE("run_suite: full exact run on the RTT pair") {
    SuiteConfig cfg;
    cfg.family = "rtt-standard";
    cfg.N = 2;
    cfg.kmax = 2;
    const auto result = run_suite(cfg);
    CHECK(result.exit_code == 0);
    CHECK(!result.preflight.empty());
    for (const auto& item : result.preflight) CHECK(item.status == "pass");
    CHECK(!result.checks.empty());
    for (const auto& c : result.checks) {
        INFO(c.name);
        CHECK(c.status == "pass");
        CHECK(c.mode == "exact");
    }
    CHECK(result.report_json.find("\"aggregate\"") != std::string::npos);
}

TEST_CASE("run_suite: determinism of reports") {
    SuiteConfig cfg;
    cfg.family = "re-standard";
    cfg.N = 2;
    cfg.kmax = 2;
    cfg.mode = "fast";
    cfg.seed = 12345;
    const auto a = run_suite(cfg);
    const auto b = run_suite(cfg);
    CHECK(a.report_json == b.report_json);
    CHECK(a.exit_code == 0);
    for (const auto& c : a.checks) CHECK(c.mode == "probabilistic");
}

TEST_CASE("run_suite: numeric-q classical run") {
    SuiteConfig cfg;
    cfg.family = "rtt-classical";
    cfg.N = 2;
    cfg.q_value = Rational(1);
    cfg.checks = {"chn", "newton", "wronski", "cayley-hamilton", "commutativity"};
    const auto result = run_suite(cfg);
    CHECK(result.exit_code == 0);
    for (const auto& c : result.checks) CHECK(c.status == "pass");
}

TEST_CASE("run_suite: formal run of rtt-classical fails preflight with exit 2") {
    SuiteConfig cfg;
    cfg.family = "rtt-classical";
    cfg.N = 2;
    const auto result = run_suite(cfg);
    CHECK(result.exit_code == 2);
    bool hecke_failed = false;
    for (const auto& item : result.preflight)
        if (item.name == "hecke-R" && item.status == "fail") hecke_failed = true;
    CHECK(hecke_failed);
    CHECK(result.checks.empty());
}

TEST_CASE("run_suite: custom matrices reproduce the builtin result") {
    // Feed the standard pair through the file interface.
    std::ostringstream r_text, f_text;
    write_matrix(r_text, standard_rhat(2, formal_ctx()));
    write_matrix(f_text, permutation_op<QRat>(2));
    SuiteConfig cfg;
    cfg.r_file = write_temp("custom_r.mat", r_text.str());
    cfg.f_file = write_temp("custom_f.mat", f_text.str());
    cfg.N = 2;
    cfg.nmax = 3;
    cfg.kmax = 2;
    cfg.checks = {"chn", "cayley-hamilton"};
    const auto result = run_suite(cfg);
    CHECK(result.exit_code == 0);
    std::remove(cfg.r_file.c_str());
    std::remove(cfg.f_file.c_str());
}

TEST_CASE("run_suite: a custom pair beyond the builtins passes end to end") {
    // The opposite-convention braid matrix (extra term on the lower pair)
    // is the transpose of the standard one: still a Yang-Baxter, Hecke,
    // closed solution of height 2, but not equal to any builtin.
    const std::string r_text =
        "dim 2 arity 2\n"
        "0 0 0 0  q\n"
        "1 1 1 1  q\n"
        "0 1 1 0  1\n"
        "1 0 0 1  1\n"
        "1 0 1 0  q - q^-1\n";
    std::ostringstream f_text;
    write_matrix(f_text, permutation_op<QRat>(2));
    SuiteConfig cfg;
    cfg.r_file = write_temp("transposed_r.mat", r_text);
    cfg.f_file = write_temp("transposed_f.mat", f_text.str());
    cfg.N = 2;
    cfg.nmax = 3;
    cfg.kmax = 2;
    const auto result = run_suite(cfg);
    CHECK(result.exit_code == 0);
    for (const auto& c : result.checks) {
        INFO(c.name, " ", c.witness_entry);
        CHECK(c.status == "pass");
    }
    // It is genuinely different from the standard matrix.
    const auto r = read_matrix_file(cfg.r_file);
    CHECK(r != standard_rhat(2, formal_ctx()));
    std::remove(cfg.r_file.c_str());
    std::remove(cfg.f_file.c_str());
}

TEST_CASE("run_suite: a non-closed custom F is rejected with exit 2") {
    // R = q*I satisfies YBE, the Hecke condition and is compatible with
    // F = I, but the identity is not closed: its (a,c)-reshuffle is singular.
    const std::string r_text =
        "dim 2 arity 2\n0 0 0 0 q\n0 1 0 1 q\n1 0 1 0 q\n1 1 1 1 q\n";
    const std::string f_text =
        "dim 2 arity 2\n0 0 0 0 1\n0 1 0 1 1\n1 0 1 0 1\n1 1 1 1 1\n";
    SuiteConfig cfg;
    cfg.r_file = write_temp("open_r.mat", r_text);
    cfg.f_file = write_temp("open_f.mat", f_text);
    cfg.N = 2;
    cfg.nmax = 2;
    const auto result = run_suite(cfg);
    CHECK(result.exit_code == 2);
    bool closedness_failed = false;
    for (const auto& item : result.preflight)
        if (item.name == "closedness" && item.status == "fail") {
            closedness_failed = true;
            CHECK(item.witness_entry.find("reshuffle") != std::string::npos);
        }
    CHECK(closedness_failed);
    std::remove(cfg.r_file.c_str());
    std::remove(cfg.f_file.c_str());
}

TEST_CASE("run_suite: a preflight-only run is expressible") {
    SuiteConfig cfg;
    cfg.family = "inverse-twist-standard";
    cfg.N = 2;
    cfg.checks = {"preflight"};
    const auto result = run_suite(cfg);
    CHECK(result.exit_code == 0);
    CHECK(!result.preflight.empty());
    CHECK(result.checks.empty());
}

TEST_CASE("run_suite: config validation") {
    SuiteConfig cfg;
    cfg.family = "rtt-standard";
    cfg.mode = "sloppy";
    CHECK(run_suite(cfg).exit_code == 2);
    cfg.mode = "exact";
    cfg.checks = {"no-such-check"};
    CHECK(run_suite(cfg).exit_code == 2);
    SuiteConfig none;
    CHECK(run_suite(none).exit_code == 2);  // neither family nor files
}

TEST_CASE("matrix file parsing errors") {
    const auto p1 = write_temp("bad1.mat", "dim 2 arity 3\n");
    CHECK_THROWS_AS(read_matrix_file(p1), InputError);
    const auto p2 = write_temp("bad2.mat", "dim 2 arity 2\n0 0 0 5 q\n");
    CHECK_THROWS_AS(read_matrix_file(p2), InputError);
    const auto p3 = write_temp("bad3.mat", "dim 2 arity 2\n0 0 0 0 q+\n");
    CHECK_THROWS_AS(read_matrix_file(p3), InputError);
    const auto p4 = write_temp("bad4.mat", "dim 2 arity 2\n0 0 0 0 q\n0 0 0 0 1\n");
    CHECK_THROWS_AS(read_matrix_file(p4), InputError);
    CHECK_THROWS_AS(read_matrix_file("/no/such/file.mat"), InputError);
    for (const auto* p : {&p1, &p2, &p3, &p4}) std::remove(p->c_str());
}

TEST_CASE("matrix file round-trip") {
    const auto r = standard_rhat(3, formal_ctx());
    std::ostringstream text;
    write_matrix(text, r);
    std::istringstream in(text.str());
    CHECK(read_matrix(in, "roundtrip") == r);
}

TEST_CASE("fast-mode sample stream is deterministic and in range") {
    const auto a = draw_fast_samples(42, 5);
    const auto b = draw_fast_samples(42, 5);
    CHECK(a == b);
    for (const auto& x : a) {
        CHECK(x >= 2);
        CHECK(x <= 100);
    }
    const auto c = draw_fast_samples(43, 5);
    CHECK(a != c);
}
