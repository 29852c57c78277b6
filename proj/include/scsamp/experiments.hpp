#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "scsamp/ensemble.hpp"
#include "scsamp/l1.hpp"
#include "scsamp/types.hpp"

namespace scsamp {

struct TrialConfig {
    GridConfig grid;
    int R = 1;
    int S = 1;
    EnsembleMode mode = EnsembleMode::Matrix;
    bool conj_symmetric = false;
    double snr_db = std::numeric_limits<double>::infinity();
    L1SolverParams solver;
    double success_threshold = kSuccessThreshold;

    void validate() const;
};

struct TrialRecord {
    TrialConfig config;
    std::uint64_t seed = 0;
    double rel_err = 0.0;
    bool success = false;
    double eta = 0.0;
    double gamma = 0.0;
    std::int64_t csr = 0;
    double mu0_sq = 0.0;
    double wall_time_ms = 0.0;
    bool l1_converged = true;
    int l1_iterations = 0;
    double max_row_residual = 0.0;
    bool rank_deficient = false;
    std::string failure_reason;
};

TrialRecord run_trial(const TrialConfig& cfg, std::uint64_t seed);

// Number of concurrent trial workers: SCSAMP_WORKERS when set, otherwise the
// available hardware parallelism.
int worker_count();

// Runs fn(0..n-1) on up to `workers` threads; results must be written into
// per-index slots so aggregation stays deterministic.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

std::vector<TrialRecord> run_trials(const TrialConfig& cfg, int trials, std::uint64_t root_seed,
                                    std::uint64_t cell_index, int workers);

enum class SweepAxis { Delta, Omega };

struct MinRatePoint {
    int value = 0;
    double success_rate = 0.0;
    int successes = 0;
    int trials = 0;
};

struct MinRateResult {
    bool found = false;
    int value = 0;
    std::vector<MinRatePoint> evaluated;
};

// Smallest candidate whose empirical success rate over `trials` seeds reaches
// `target`; candidates must ascend. Scans in order, stopping at the first hit.
MinRateResult min_rate_search(const TrialConfig& base, SweepAxis axis,
                              const std::vector<int>& candidates, double target, int trials,
                              std::uint64_t root_seed, int workers);

struct GridSpec {
    std::string axis1_name;  // row parameter
    std::vector<int> axis1;
    std::string axis2_name;  // column parameter
    std::vector<int> axis2;
    int trials = 50;
    double success_threshold = kSuccessThreshold;
    double target = 0.99;

    void validate() const;
};

struct PhaseCell {
    int v1 = 0;
    int v2 = 0;
    double p_fail = 0.0;
    int failures = 0;
    int trials = 0;
    double eta = 0.0;
    double gamma = 0.0;
};

void apply_axis(TrialConfig& cfg, const std::string& name, int value);

std::vector<PhaseCell> phase_transition(const TrialConfig& base, const GridSpec& grid,
                                        std::uint64_t root_seed, int workers);

struct NoisePoint {
    double snr_db = 0.0;
    double median_rel_err = 0.0;
    double median_rel_err_db = 0.0;
    int trials = 0;
};

std::vector<NoisePoint> noise_sweep(const TrialConfig& base, const std::vector<double>& snr_list_db,
                                    int trials, std::uint64_t root_seed, int workers);

struct CsrScalingSpec {
    std::vector<int> alpha_list;
    int m0 = 24;
    int w0 = 128;
    int R = 2;
    int S = 6;
    int Omega = 2;
    double target = 0.99;

    void validate() const;
};

struct CsrPoint {
    int alpha = 0;
    std::int64_t csr_nyquist = 0;
    std::int64_t csr_lowrank_only = 0;
    std::int64_t csr_ours = 0;
    int delta_min = 0;
    bool found = false;
};

std::vector<CsrPoint> csr_scaling_experiment(const CsrScalingSpec& spec, int trials,
                                             std::uint64_t root_seed, int workers);

}  // namespace scsamp
