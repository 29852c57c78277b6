#include "scsamp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "scsamp/acquisition.hpp"
#include "scsamp/metrics.hpp"
#include "scsamp/recovery.hpp"

namespace scsamp {

void TrialConfig::validate() const {
    grid.validate();
    if (R < 1 || S < 1) throw std::invalid_argument("TrialConfig: R and S must be positive");
    if (R > std::min(grid.M, S)) throw std::invalid_argument("TrialConfig: need R <= min(M, S)");
    if (S > grid.W) throw std::invalid_argument("TrialConfig: need S <= W");
    if (grid.M2 < R) throw std::invalid_argument("TrialConfig: need M2 >= R");
    if (R > grid.Omega) throw std::invalid_argument("TrialConfig: need R <= Omega");
    if (!(success_threshold > 0.0)) throw std::invalid_argument("TrialConfig: success threshold must be positive");
    solver.validate();
}

TrialRecord run_trial(const TrialConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    TrialRecord rec;
    rec.config = cfg;
    rec.seed = seed;
    rec.csr = cumulative_sampling_rate(cfg.grid.M1, cfg.grid.Omega, cfg.grid.M2, cfg.grid.Delta);
    rec.eta = sampling_efficiency(cfg.grid.M, cfg.S, cfg.R, cfg.grid.M1, cfg.grid.Omega,
                                  cfg.grid.M2, cfg.grid.Delta);
    rec.gamma = compression_factor(cfg.grid.M, cfg.grid.W, cfg.grid.M1, cfg.grid.Omega,
                                   cfg.grid.M2, cfg.grid.Delta);

    Rng ens_rng(derive_seed(seed, {1}));
    const EnsembleModel ens =
        cfg.mode == EnsembleMode::Signal
            ? synth_signal_ensemble(cfg.grid.M, cfg.grid.W, cfg.R, cfg.S, ens_rng, cfg.conj_symmetric)
            : synth_matrix_ensemble(cfg.grid.M, cfg.grid.W, cfg.R, cfg.S, ens_rng);

    GridConfig gc = cfg.grid;
    gc.seed = derive_seed(seed, {2});
    const OperatorSet ops = build_operator_set(gc);

    const CMat H = cfg.mode == EnsembleMode::Signal ? to_sl_matrix(ens, ops.T) : ens.C;
    rec.mu0_sq = coherence(H, cfg.R, ops.F);

    MeasurementSet meas = acquire(H, ops);
    if (std::isfinite(cfg.snr_db)) {
        Rng noise_rng(derive_seed(seed, {3}));
        meas = inject_noise(meas, cfg.snr_db, noise_rng);
        meas.noise_seed = derive_seed(seed, {3});
    }

    try {
        const RecoveryResult out = full_pipeline(meas, ops, cfg.R, cfg.solver);
        rec.rel_err = relative_error(out.H_hat, H);
        rec.l1_converged = out.l1_converged;
        rec.l1_iterations = out.l1_total_iterations;
        rec.rank_deficient = out.rank_deficient;
        for (const auto& r : out.row_diags)
            rec.max_row_residual = std::max(rec.max_row_residual, r.residual);
        if (!out.l1_converged) rec.failure_reason = "l1 solver did not reach its residual target";
        rec.success = out.l1_converged && rec.rel_err < cfg.success_threshold;
    } catch (const std::domain_error& e) {
        rec.rel_err = std::numeric_limits<double>::quiet_NaN();
        rec.success = false;
        rec.failure_reason = e.what();
    }

    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

int worker_count() {
    if (const char* env = std::getenv("SCSAMP_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<TrialRecord> run_trials(const TrialConfig& cfg, int trials, std::uint64_t root_seed,
                                    std::uint64_t cell_index, int workers) {
    if (trials < 1) throw std::invalid_argument("run_trials: trials must be at least 1");
    std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
    parallel_for(trials, workers, [&](int t) {
        records[static_cast<std::size_t>(t)] =
            run_trial(cfg, derive_seed(root_seed, {cell_index, static_cast<std::uint64_t>(t)}));
    });
    return records;
}

MinRateResult min_rate_search(const TrialConfig& base, SweepAxis axis,
                              const std::vector<int>& candidates, double target, int trials,
                              std::uint64_t root_seed, int workers) {
    if (candidates.empty()) throw std::invalid_argument("min_rate_search: no candidates");
    if (!std::is_sorted(candidates.begin(), candidates.end()))
        throw std::invalid_argument("min_rate_search: candidates must ascend");
    if (!(target >= 0.0 && target <= 1.0))
        throw std::invalid_argument("min_rate_search: target must lie in [0, 1]");

    // Once a candidate has more failures than (1 - target) * trials allows it
    // can never reach the target, so stop evaluating it. Seeds stay keyed by
    // (candidate, trial) index, so the surviving records match a full run.
    const int max_failures = static_cast<int>((1.0 - target) * trials + 1e-12);

    MinRateResult out;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        TrialConfig cfg = base;
        apply_axis(cfg, axis == SweepAxis::Delta ? "Delta" : "Omega", candidates[ci]);
        int attempted = 0, successes = 0;
        while (attempted < trials) {
            const int chunk = std::min(std::max(workers, 1), trials - attempted);
            std::vector<TrialRecord> records(static_cast<std::size_t>(chunk));
            parallel_for(chunk, workers, [&](int k) {
                records[static_cast<std::size_t>(k)] = run_trial(
                    cfg, derive_seed(root_seed, {ci, static_cast<std::uint64_t>(attempted + k)}));
            });
            for (const auto& r : records) successes += r.success ? 1 : 0;
            attempted += chunk;
            if (attempted - successes > max_failures) break;
        }
        MinRatePoint pt;
        pt.value = candidates[ci];
        pt.trials = attempted;
        pt.successes = successes;
        pt.success_rate = static_cast<double>(successes) / attempted;
        out.evaluated.push_back(pt);
        if (attempted == trials && pt.success_rate >= target) {
            out.found = true;
            out.value = pt.value;
            return out;
        }
    }
    return out;
}

void GridSpec::validate() const {
    if (axis1.empty() || axis2.empty()) throw std::invalid_argument("GridSpec: axes must be nonempty");
    if (axis1_name.empty() || axis2_name.empty())
        throw std::invalid_argument("GridSpec: axis names must be nonempty");
    if (trials < 1) throw std::invalid_argument("GridSpec: trials must be at least 1");
}

void apply_axis(TrialConfig& cfg, const std::string& name, int value) {
    if (name == "S")
        cfg.S = value;
    else if (name == "R")
        cfg.R = value;
    else if (name == "Delta")
        cfg.grid.Delta = value;
    else if (name == "Omega")
        cfg.grid.Omega = value;
    else if (name == "W")
        cfg.grid.W = value;
    else if (name == "M")
        cfg.grid.M = value;
    else if (name == "M1")
        cfg.grid.M1 = value;
    else if (name == "M2")
        cfg.grid.M2 = value;
    else
        throw std::invalid_argument("apply_axis: unknown parameter " + name);
}

std::vector<PhaseCell> phase_transition(const TrialConfig& base, const GridSpec& grid,
                                        std::uint64_t root_seed, int workers) {
    grid.validate();
    std::vector<PhaseCell> cells;
    for (std::size_t i = 0; i < grid.axis1.size(); ++i) {
        for (std::size_t j = 0; j < grid.axis2.size(); ++j) {
            TrialConfig cfg = base;
            cfg.success_threshold = grid.success_threshold;
            apply_axis(cfg, grid.axis1_name, grid.axis1[i]);
            apply_axis(cfg, grid.axis2_name, grid.axis2[j]);
            cfg.validate();
            const std::uint64_t cell_index = i * grid.axis2.size() + j;
            const auto records = run_trials(cfg, grid.trials, root_seed, cell_index, workers);
            PhaseCell cell;
            cell.v1 = grid.axis1[i];
            cell.v2 = grid.axis2[j];
            cell.trials = grid.trials;
            for (const auto& r : records) cell.failures += r.success ? 0 : 1;
            cell.p_fail = static_cast<double>(cell.failures) / grid.trials;
            cell.eta = records.front().eta;
            cell.gamma = records.front().gamma;
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<NoisePoint> noise_sweep(const TrialConfig& base, const std::vector<double>& snr_list_db,
                                    int trials, std::uint64_t root_seed, int workers) {
    if (snr_list_db.empty()) throw std::invalid_argument("noise_sweep: empty SNR list");
    std::vector<NoisePoint> points;
    for (std::size_t si = 0; si < snr_list_db.size(); ++si) {
        TrialConfig cfg = base;
        cfg.snr_db = snr_list_db[si];
        const auto records = run_trials(cfg, trials, root_seed, si, workers);
        std::vector<double> errs;
        errs.reserve(records.size());
        for (const auto& r : records) errs.push_back(std::isnan(r.rel_err) ? 1.0 : r.rel_err);
        std::sort(errs.begin(), errs.end());
        const std::size_t n = errs.size();
        const double median = (n % 2 == 1) ? errs[n / 2] : 0.5 * (errs[n / 2 - 1] + errs[n / 2]);
        NoisePoint pt;
        pt.snr_db = snr_list_db[si];
        pt.median_rel_err = median;
        pt.median_rel_err_db = 20.0 * std::log10(std::max(median, 1e-300));
        pt.trials = trials;
        points.push_back(pt);
    }
    return points;
}

void CsrScalingSpec::validate() const {
    if (alpha_list.empty()) throw std::invalid_argument("CsrScalingSpec: empty alpha list");
    if (!std::is_sorted(alpha_list.begin(), alpha_list.end()))
        throw std::invalid_argument("CsrScalingSpec: alpha list must ascend");
    for (int a : alpha_list)
        if (a < 1) throw std::invalid_argument("CsrScalingSpec: alpha values must be positive");
    if (m0 < 2 || w0 < 1) throw std::invalid_argument("CsrScalingSpec: m0 and w0 too small");
    if (R < 1 || S < R) throw std::invalid_argument("CsrScalingSpec: need 1 <= R <= S");
    if (Omega < 1 || w0 % Omega != 0)
        throw std::invalid_argument("CsrScalingSpec: Omega must divide w0");
}

std::vector<CsrPoint> csr_scaling_experiment(const CsrScalingSpec& spec, int trials,
                                             std::uint64_t root_seed, int workers) {
    spec.validate();
    std::vector<CsrPoint> points;
    for (std::size_t ai = 0; ai < spec.alpha_list.size(); ++ai) {
        const int alpha = spec.alpha_list[ai];
        const int M = spec.m0 * alpha;
        const int W = spec.w0 * alpha;
        const int M2 = std::min(default_m2(spec.R, W), M - 1);
        TrialConfig base;
        base.grid = GridConfig{M, W, M - M2, M2, spec.Omega, 0, 0};
        base.R = spec.R;
        base.S = spec.S;

        std::vector<int> candidates;
        for (int d = spec.Omega; d <= W; ++d)
            if (W % d == 0 && d % spec.Omega == 0) candidates.push_back(d);

        const auto found = min_rate_search(base, SweepAxis::Delta, candidates, spec.target, trials,
                                           derive_seed(root_seed, {ai}), workers);
        CsrPoint pt;
        pt.alpha = alpha;
        pt.csr_nyquist = static_cast<std::int64_t>(M) * W;
        pt.csr_lowrank_only = static_cast<std::int64_t>(spec.R) * W;
        pt.found = found.found;
        pt.delta_min = found.found ? found.value : candidates.back();
        pt.csr_ours = cumulative_sampling_rate(M - M2, spec.Omega, M2, pt.delta_min);
        points.push_back(pt);
    }
    return points;
}

}  // namespace scsamp
