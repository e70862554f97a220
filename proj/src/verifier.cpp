#include "qma/verifier.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <future>

#include "qma/matrix_io.hpp"

namespace qma {

using ordered_json = nlohmann::ordered_json;

std::vector<Rational> draw_fast_samples(std::uint64_t seed, int count) {
    std::vector<Rational> out;
    std::uint64_t state = seed;
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 10000) throw InputError("unable to draw enough distinct q samples");
        const long v = 2 + static_cast<long>(splitmix64(state) % 99);  // 2..100
        Rational r(v);
        bool dup = false;
        for (const auto& x : out) dup = dup || x == r;
        if (!dup) out.push_back(std::move(r));
    }
    return out;
}

namespace {

struct LaneChecks {
    std::vector<PreflightItem> preflight;
    bool preflight_ok = false;
    std::vector<CheckOutcome> checks;
    int height = 0;
};

// Builds, validates and checks one scalar lane.
template <class K>
LaneChecks run_lane(const SuiteConfig& cfg, const QCtx<K>& ctx,
                    const std::optional<SparseOp<QRat>>& custom_r,
                    const std::optional<SparseOp<QRat>>& custom_f) {
    RMatrixPair<K> pair;
    if (!cfg.family.empty()) {
        pair = builtin(cfg.family, cfg.N, ctx);
    } else {
        pair.N = custom_r->dim();
        pair.ctx = ctx;
        pair.family = "custom";
        pair.R = custom_r->map_entries([&ctx](const QRat& v) { return specialize(v, ctx); });
        pair.F = custom_f->map_entries([&ctx](const QRat& v) { return specialize(v, ctx); });
    }

    const int nmax = cfg.nmax > 0 ? cfg.nmax : pair.N + 1;
    LaneChecks lane;
    lane.preflight = validate(pair, nmax);
    lane.preflight_ok = pair.validated;
    if (!lane.preflight_ok) return lane;
    lane.height = pair.require_height();

    const int kmax = cfg.kmax > 0 ? cfg.kmax : lane.height;
    Workspace<K> ws(std::move(pair));
    lane.checks = run_identity_checks(ws, kmax, cfg.checks, cfg.timings);
    return lane;
}

ordered_json config_echo(const SuiteConfig& cfg) {
    ordered_json j;
    j["family"] = cfg.family.empty() ? nullptr : ordered_json(cfg.family);
    j["r_matrix"] = cfg.r_file.empty() ? nullptr : ordered_json(cfg.r_file);
    j["f_matrix"] = cfg.f_file.empty() ? nullptr : ordered_json(cfg.f_file);
    j["n"] = cfg.N;
    j["kmax"] = cfg.kmax == 0 ? ordered_json(nullptr) : ordered_json(cfg.kmax);
    j["nmax"] = cfg.nmax == 0 ? ordered_json(nullptr) : ordered_json(cfg.nmax);
    j["mode"] = cfg.mode;
    j["q"] = cfg.q_value ? ordered_json(cfg.q_value->get_str()) : ordered_json(nullptr);
    j["seed"] = cfg.seed;
    j["samples"] = cfg.mode == "fast" ? ordered_json(cfg.samples) : ordered_json(nullptr);
    if (cfg.checks.empty())
        j["checks"] = "all";
    else
        j["checks"] = cfg.checks;
    j["timings"] = cfg.timings;
    return j;
}

ordered_json witness_json(const CheckResult& r) {
    if (r.witness_entry.empty() && r.witness_residual.empty()) return nullptr;
    ordered_json w;
    w["entry"] = r.witness_entry;
    w["residual"] = r.witness_residual;
    return w;
}

ordered_json render_report(const SuiteConfig& cfg, const std::vector<CheckResult>& preflight,
                           const std::vector<CheckResult>& checks, const std::string& error) {
    ordered_json report;
    report["config"] = config_echo(cfg);
    report["preflight"] = ordered_json::array();
    for (const auto& item : preflight) {
        ordered_json j;
        j["name"] = item.name;
        j["status"] = item.status;
        j["detail"] = item.witness_entry.empty() ? ordered_json(nullptr) : ordered_json(item.witness_entry);
        report["preflight"].push_back(std::move(j));
    }
    report["checks"] = ordered_json::array();
    int passed = 0, failed = 0;
    for (const auto& c : checks) {
        ordered_json j;
        j["name"] = c.name;
        j["mode"] = c.mode;
        j["status"] = c.status;
        j["witness"] = witness_json(c);
        j["elapsed_ms"] = c.elapsed_ms < 0 ? ordered_json(nullptr) : ordered_json(c.elapsed_ms);
        report["checks"].push_back(std::move(j));
        (c.status == "pass" ? passed : failed)++;
    }
    bool preflight_ok = !preflight.empty();
    for (const auto& item : preflight) preflight_ok = preflight_ok && item.status == "pass";
    ordered_json agg;
    agg["total"] = static_cast<int>(checks.size());
    agg["passed"] = passed;
    agg["failed"] = failed;
    if (!error.empty()) {
        agg["status"] = "error";
        agg["error"] = error;
    } else if (!preflight_ok) {
        agg["status"] = "validation-failed";
    } else {
        agg["status"] = failed == 0 ? "pass" : "fail";
    }
    report["aggregate"] = std::move(agg);
    return report;
}

std::vector<CheckResult> preflight_results(const std::vector<PreflightItem>& items) {
    std::vector<CheckResult> out;
    for (const auto& item : items) {
        CheckResult r;
        r.name = item.name;
        r.status = item.pass ? "pass" : "fail";
        r.witness_entry = item.detail;
        out.push_back(std::move(r));
    }
    return out;
}

void validate_config(const SuiteConfig& cfg) {
    if (cfg.mode != "exact" && cfg.mode != "fast")
        throw InputError("mode must be 'exact' or 'fast'");
    if (cfg.family.empty() && (cfg.r_file.empty() || cfg.f_file.empty()))
        throw InputError("either a builtin family or both matrix files are required");
    if (!cfg.family.empty() && (!cfg.r_file.empty() || !cfg.f_file.empty()))
        throw InputError("a builtin family and custom matrix files are mutually exclusive");
    if (cfg.family.empty() && cfg.nmax <= 0)
        throw InputError("custom input requires an explicit height search bound (nmax)");
    if (cfg.mode == "fast" && cfg.samples < 1) throw InputError("fast mode needs at least one sample");
    if (cfg.mode == "fast" && cfg.q_value)
        throw InputError("a fixed q and fast-mode sampling are mutually exclusive");
    for (const auto& name : cfg.checks) {
        bool known = false;
        for (const auto& k : all_check_names()) known = known || k == name;
        if (!known) throw InputError("unknown check '" + name + "'");
    }
}

} // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
    SuiteResult result;
    std::string error;

    try {
        validate_config(cfg);

        std::optional<SparseOp<QRat>> custom_r, custom_f;
        if (cfg.family.empty()) {
            custom_r = read_matrix_file(cfg.r_file);
            custom_f = read_matrix_file(cfg.f_file);
            if (custom_r->dim() != custom_f->dim())
                throw InputError("R and F matrix files disagree on dim");
            if (custom_r->dim() != cfg.N)
                throw InputError("matrix files have dim " + std::to_string(custom_r->dim()) +
                                 " but N = " + std::to_string(cfg.N) + " was requested");
        }

        if (cfg.mode == "exact") {
            LaneChecks lane;
            if (cfg.q_value) {
                lane = run_lane(cfg, numeric_ctx(*cfg.q_value), custom_r, custom_f);
            } else {
                lane = run_lane(cfg, formal_ctx(), custom_r, custom_f);
            }
            result.preflight = preflight_results(lane.preflight);
            if (!lane.preflight_ok) {
                result.exit_code = 2;
                error = "preflight validation failed";
            } else {
                for (const auto& c : lane.checks) {
                    CheckResult r;
                    r.name = c.name;
                    r.mode = "exact";
                    r.status = c.pass ? "pass" : "fail";
                    r.witness_entry = c.witness_entry;
                    r.witness_residual = c.witness_residual;
                    r.elapsed_ms = c.elapsed_ms;
                    result.checks.push_back(std::move(r));
                }
            }
        } else {
            // Fast mode: the same checks at sampled integer values of q.
            // A failure at any sample is conclusive; success everywhere is
            // reported as a probabilistic pass. Samples whose specialization
            // hits a pole of a custom matrix entry are rejected up front;
            // the surviving lanes are independent and run concurrently, and
            // the results are merged in sample order so that reports stay
            // deterministic.
            std::uint64_t state = cfg.seed;
            std::vector<Rational> used;
            int guard = 0;
            while (static_cast<int>(used.size()) < cfg.samples) {
                if (++guard > 200) throw InputError("unable to find usable q samples (poles everywhere?)");
                const long v = 2 + static_cast<long>(splitmix64(state) % 99);
                Rational qv(v);
                bool dup = false;
                for (const auto& x : used) dup = dup || x == qv;
                if (dup) continue;
                try {
                    if (custom_r) {
                        const auto ctx = numeric_ctx(qv);
                        custom_r->map_entries([&ctx](const QRat& x) { return specialize(x, ctx); });
                        custom_f->map_entries([&ctx](const QRat& x) { return specialize(x, ctx); });
                    }
                    used.push_back(qv);
                } catch (const PoleError&) {
                    // A denominator vanished at this sample; reject it.
                    continue;
                }
            }
            std::vector<std::future<LaneChecks>> futures;
            futures.reserve(used.size());
            for (const auto& qv : used)
                futures.push_back(std::async(std::launch::async, [&cfg, &custom_r, &custom_f, qv] {
                    return run_lane(cfg, numeric_ctx(qv), custom_r, custom_f);
                }));
            std::vector<LaneChecks> lanes;
            lanes.reserve(futures.size());
            for (auto& f : futures) lanes.push_back(f.get());

            result.preflight = preflight_results(lanes[0].preflight);
            bool preflight_ok = true;
            for (const auto& lane : lanes) preflight_ok = preflight_ok && lane.preflight_ok;
            if (!preflight_ok) {
                result.exit_code = 2;
                error = "preflight validation failed at a sampled q";
            } else {
                const std::size_t m = lanes[0].checks.size();
                for (std::size_t i = 0; i < m; ++i) {
                    CheckResult r;
                    r.name = lanes[0].checks[i].name;
                    r.mode = "probabilistic";
                    r.status = "pass";
                    std::int64_t ms = 0;
                    for (std::size_t s = 0; s < lanes.size(); ++s) {
                        const auto& c = lanes[s].checks[i];
                        if (cfg.timings && c.elapsed_ms >= 0) ms += c.elapsed_ms;
                        if (r.status == "pass" && !c.pass) {
                            r.status = "fail";
                            r.witness_entry = "q = " + used[s].get_str() + ": " + c.witness_entry;
                            r.witness_residual = c.witness_residual;
                        }
                    }
                    r.elapsed_ms = cfg.timings ? ms : -1;
                    result.checks.push_back(std::move(r));
                }
            }
        }
    } catch (const InputError& e) {
        error = e.what();
        result.exit_code = 2;
    } catch (const Error& e) {
        error = e.what();
        result.exit_code = 2;
    }

    if (result.exit_code == 0) {
        for (const auto& c : result.checks)
            if (c.status != "pass") result.exit_code = 1;
    }

    const ordered_json report = render_report(cfg, result.preflight, result.checks, error);
    result.report_json = report.dump(2) + "\n";

    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) {
            result.exit_code = 2;
            throw InputError("cannot write report to '" + cfg.out_path + "'");
        }
        out << result.report_json;
    }
    return result;
}

} // namespace qma
