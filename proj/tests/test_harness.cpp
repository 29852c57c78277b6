#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "scsamp/experiments.hpp"
#include "scsamp/metrics.hpp"

using namespace scsamp;

namespace {

TrialConfig easy_config() {
    TrialConfig cfg;
    cfg.grid = GridConfig{20, 64, 15, 5, 8, 32, 0};
    cfg.R = 2;
    cfg.S = 6;
    return cfg;
}

double median_rel_err(const std::vector<TrialRecord>& recs) {
    std::vector<double> v;
    for (const auto& r : recs) v.push_back(r.rel_err);
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("run_trial: feasible noiseless success, determinism, populated record") {
    const TrialConfig cfg = easy_config();
    const TrialRecord rec = run_trial(cfg, 4242);
    CHECK(rec.success);
    CHECK(rec.rel_err < 1e-3);
    CHECK(rec.l1_converged);
    CHECK(rec.csr == cumulative_sampling_rate(15, 8, 5, 32));
    CHECK(rec.eta ==
          sampling_efficiency(20, 6, 2, 15, 8, 5, 32));
    CHECK(rec.gamma == compression_factor(20, 64, 15, 8, 5, 32));
    CHECK(rec.mu0_sq >= 1.0 - 1e-9);
    CHECK(rec.seed == 4242);
    CHECK(rec.failure_reason.empty());

    const TrialRecord again = run_trial(cfg, 4242);
    CHECK(again.rel_err == rec.rel_err);  // bit-for-bit reproducible
    CHECK(again.success == rec.success);
    CHECK(again.mu0_sq == rec.mu0_sq);
}

TEST_CASE("run_trial: undersampled row branch fails and is flagged") {
    TrialConfig cfg = easy_config();
    cfg.grid.Delta = 8;  // Delta = S + 2 but far below S log^6 W scaling
    cfg.grid.Omega = 8;
    cfg.S = 8;
    int failures = 0;
    for (std::uint64_t t = 0; t < 5; ++t)
        if (!run_trial(cfg, derive_seed(9, {t})).success) ++failures;
    CHECK(failures >= 4);
}

TEST_CASE("trial config validation rejects inconsistent shapes") {
    TrialConfig cfg = easy_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.R = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = easy_config();
    cfg.R = 7;  // exceeds S
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = easy_config();
    cfg.S = 65;  // exceeds W
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = easy_config();
    cfg.R = 6;
    cfg.S = 6;  // M2 = 5 < R
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = easy_config();
    cfg.success_threshold = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("run_trials is worker-count invariant") {
    const TrialConfig cfg = easy_config();
    const auto serial = run_trials(cfg, 6, 77, 3, 1);
    const auto threaded = run_trials(cfg, 6, 77, 3, 4);
    REQUIRE(serial.size() == 6);
    REQUIRE(threaded.size() == 6);
    for (int t = 0; t < 6; ++t) {
        CHECK(serial[t].rel_err == threaded[t].rel_err);
        CHECK(serial[t].seed == threaded[t].seed);
        CHECK(serial[t].seed == derive_seed(77, {3, static_cast<std::uint64_t>(t)}));
    }
}

TEST_CASE("worker_count honors the environment override") {
    setenv("SCSAMP_WORKERS", "3", 1);
    CHECK(worker_count() == 3);
    setenv("SCSAMP_WORKERS", "0", 1);
    CHECK(worker_count() >= 1);
    unsetenv("SCSAMP_WORKERS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("min-rate search stops at the first passing candidate") {
    const TrialConfig cfg = easy_config();
    const MinRateResult r0 = min_rate_search(cfg, SweepAxis::Delta, {16, 32, 64}, 0.0, 2, 5, 1);
    CHECK(r0.found);
    CHECK(r0.value == 16);  // target 0 accepts the first candidate
    CHECK(r0.evaluated.size() == 1);

    const MinRateResult r1 = min_rate_search(cfg, SweepAxis::Delta, {32, 64}, 0.9, 4, 5, 1);
    CHECK(r1.found);
    CHECK(r1.value == 32);
    CHECK(r1.evaluated.front().trials == 4);

    CHECK_THROWS_AS(min_rate_search(cfg, SweepAxis::Delta, {32, 16}, 0.5, 2, 5, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(min_rate_search(cfg, SweepAxis::Delta, {}, 0.5, 2, 5, 1),
                    std::invalid_argument);
}

TEST_CASE("axis application touches only the named parameter") {
    TrialConfig cfg = easy_config();
    apply_axis(cfg, "Delta", 64);
    CHECK(cfg.grid.Delta == 64);
    apply_axis(cfg, "Omega", 16);
    CHECK(cfg.grid.Omega == 16);
    apply_axis(cfg, "S", 9);
    CHECK(cfg.S == 9);
    apply_axis(cfg, "R", 3);
    CHECK(cfg.R == 3);
    CHECK_THROWS_AS(apply_axis(cfg, "nonsense", 1), std::invalid_argument);
}

TEST_CASE("phase grid: nyquist cell never fails, infeasible-rate cell always fails") {
    TrialConfig base = easy_config();
    GridSpec grid;
    grid.axis1_name = "S";
    grid.axis1 = {6};
    grid.axis2_name = "Delta";
    grid.axis2 = {64, 32};
    grid.trials = 4;
    const auto cells = phase_transition(base, grid, 55, 1);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].v1 == 6);
    CHECK(cells[0].v2 == 64);
    CHECK(cells[0].p_fail == 0.0);  // Delta = W with Omega branch intact
    for (const auto& c : cells) {
        CHECK(c.trials == 4);
        CHECK(c.p_fail >= 0.0);
        CHECK(c.p_fail <= 1.0);
        CHECK(c.p_fail == static_cast<double>(c.failures) / c.trials);
        CHECK(c.eta > 0.0);
        CHECK(c.gamma > 0.0);
    }

    // eta > 1: fewer measurements than degrees of freedom, recovery impossible
    TrialConfig starved;
    starved.grid = GridConfig{20, 64, 15, 5, 2, 2, 0};
    starved.R = 2;
    starved.S = 16;
    GridSpec tiny;
    tiny.axis1_name = "S";
    tiny.axis1 = {16};
    tiny.axis2_name = "Delta";
    tiny.axis2 = {2};
    tiny.trials = 3;
    const auto bad = phase_transition(starved, tiny, 56, 1);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].eta > 1.0);
    CHECK(bad[0].p_fail == 1.0);

    GridSpec empty;
    CHECK_THROWS_AS(phase_transition(base, empty, 1, 1), std::invalid_argument);
}

TEST_CASE("failure probability does not drop as the row branch rate shrinks") {
    TrialConfig base = easy_config();
    base.S = 6;
    std::vector<int> deltas = {64, 32, 16, 8};
    std::vector<double> med;
    for (int d : deltas) {
        TrialConfig cfg = base;
        cfg.grid.Delta = d;
        med.push_back(median_rel_err(run_trials(cfg, 12, 91, d, 1)));
    }
    for (std::size_t i = 1; i < med.size(); ++i)
        CHECK(med[i] + 1e-12 >= med[i - 1]);  // more rows never hurts, medians ordered
}

TEST_CASE("noise sweep: medians fall as SNR climbs") {
    TrialConfig base = easy_config();
    const auto pts = noise_sweep(base, {10.0, 40.0}, 6, 33, 1);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].snr_db == 10.0);
    CHECK(pts[0].trials == 6);
    CHECK(pts[0].median_rel_err > pts[1].median_rel_err);
    CHECK(pts[0].median_rel_err_db > pts[1].median_rel_err_db);
}

TEST_CASE("csr scaling: sub-linear growth relative to nyquist accounting") {
    CsrScalingSpec spec;
    spec.alpha_list = {1, 2};
    spec.m0 = 20;
    spec.w0 = 64;
    spec.R = 2;
    spec.S = 6;
    spec.Omega = 2;
    spec.target = 0.9;
    const auto pts = csr_scaling_experiment(spec, 8, 13, 1);
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
        CHECK(p.found);
        CHECK(p.csr_nyquist == static_cast<std::int64_t>(20 * p.alpha) * (64 * p.alpha));
        CHECK(p.csr_lowrank_only == static_cast<std::int64_t>(spec.R) * 64 * p.alpha);
        CHECK(p.csr_ours > 0);
        CHECK(p.csr_ours <= p.csr_nyquist);
    }
    const double ours_growth = static_cast<double>(pts[1].csr_ours) / pts[0].csr_ours;
    const double nyq_growth = static_cast<double>(pts[1].csr_nyquist) / pts[0].csr_nyquist;
    CHECK(ours_growth < nyq_growth);

    CsrScalingSpec bad;
    CHECK_THROWS_AS(csr_scaling_experiment(bad, 2, 1, 1), std::invalid_argument);
}

}  // TEST_SUITE
