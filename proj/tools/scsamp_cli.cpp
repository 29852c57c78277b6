#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scsamp/acquisition.hpp"
#include "scsamp/arraysim.hpp"
#include "scsamp/ensemble.hpp"
#include "scsamp/experiments.hpp"
#include "scsamp/io.hpp"
#include "scsamp/metrics.hpp"
#include "scsamp/operators.hpp"
#include "scsamp/recovery.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scsamp;

namespace {

struct GlobalOpts {
    std::string config_path;
    int workers = 0;  // 0 = worker_count()
    bool strict = false;
    int failures = 0;

    int resolve_workers() const { return workers >= 1 ? workers : worker_count(); }
    void flag(const std::string& what) {
        ++failures;
        std::cerr << "[flagged] " << what << "\n";
    }
    int exit_code() const { return (strict && failures > 0) ? 1 : 0; }
};

// Config file values become defaults; flags given on the command line override.
json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    return read_json(path);
}

template <typename T>
void cfg_get(const json& j, const char* section, const char* key, T& out) {
    if (j.contains(section) && j[section].contains(key)) j[section][key].get_to(out);
}

void apply_solver_config(const json& j, L1SolverParams& p) {
    cfg_get(j, "solver", "max_iter", p.max_iter);
    cfg_get(j, "solver", "fista_tol", p.fista_tol);
    cfg_get(j, "solver", "tol_residual", p.tol_residual);
    cfg_get(j, "solver", "lambda_min_factor", p.lambda_min_factor);
    cfg_get(j, "solver", "bisection_steps", p.bisection_steps);
    cfg_get(j, "solver", "debias", p.debias);
    cfg_get(j, "solver", "joint", p.joint);
}

void add_solver_flags(CLI::App* cmd, L1SolverParams& p) {
    cmd->add_option("--max-iter", p.max_iter, "FISTA iterations per lambda stage");
    cmd->add_option("--fista-tol", p.fista_tol, "relative iterate-change stop");
    cmd->add_option("--tol-residual", p.tol_residual, "noisy-path residual band width");
    cmd->add_option("--lambda-min-factor", p.lambda_min_factor, "noiseless continuation floor");
    cmd->add_option("--bisection-steps", p.bisection_steps, "noisy-path lambda adjustments");
    cmd->add_flag("--no-debias{false}", p.debias, "skip support least squares");
    cmd->add_flag("--joint", p.joint, "column-group l1,2 threshold");
}

json grid_echo(const GridConfig& g) {
    json j;
    to_json(j, g);
    return j;
}

void emit_manifest(const fs::path& out, const json& config_echo, std::uint64_t seed,
                   double wall_s) {
    write_json(out, run_manifest(config_echo, seed, wall_s));
}

fs::path sibling_manifest(const fs::path& csv_path) {
    fs::path p = csv_path;
    p += ".manifest.json";
    return p;
}

std::vector<int> delta_candidates(int W, int Omega) {
    std::vector<int> out;
    for (int d = Omega; d <= W; ++d)
        if (W % d == 0 && d % Omega == 0) out.push_back(d);
    return out;
}

std::vector<int> omega_candidates(int W, int Delta) {
    std::vector<int> out;
    for (int o = 1; o <= Delta; ++o)
        if (W % o == 0 && Delta % o == 0) out.push_back(o);
    return out;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- generate

int cmd_generate(const json& cfg, GlobalOpts& g, int M, int W, int R, int S, std::string mode,
                 bool conj_symmetric, std::uint64_t seed, const std::string& out) {
    (void)cfg;
    const auto t0 = std::chrono::steady_clock::now();
    if (mode != "signal" && mode != "matrix")
        throw CLI::ValidationError("--mode must be 'signal' or 'matrix'");

    Rng rng(derive_seed(seed, {1}));
    EnsembleModel ens = mode == "signal"
                            ? synth_signal_ensemble(M, W, R, S, rng, conj_symmetric)
                            : synth_matrix_ensemble(M, W, R, S, rng);
    ens.seed = seed;
    save_ensemble(out, ens);

    json echo = {{"command", "generate"}, {"M", M},    {"W", W},
                 {"R", R},                {"S", S},    {"mode", mode},
                 {"conj_symmetric", conj_symmetric},   {"out", out}};
    emit_manifest(fs::path(out) / "run.json", echo, seed, elapsed_s(t0));
    std::cout << "wrote ensemble (M=" << M << ", W=" << W << ", R=" << R << ", S=" << S
              << ") to " << out << "\n";
    return g.exit_code();
}

// ----------------------------------------------------------------- acquire

int cmd_acquire(GlobalOpts& g, const std::string& ensemble_dir, GridConfig grid, double snr_db,
                std::uint64_t seed, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const EnsembleModel ens = load_ensemble(ensemble_dir);
    grid.M = ens.M;
    grid.W = ens.W;
    if (grid.M2 <= 0) grid.M2 = std::min(default_m2(ens.R, ens.W), ens.M - 1);
    if (grid.M1 <= 0) grid.M1 = grid.M - grid.M2;
    grid.seed = derive_seed(seed, {2});
    grid.validate();

    const OperatorSet ops = build_operator_set(grid);
    const CMat H = ens.mode == EnsembleMode::Signal ? to_sl_matrix(ens, ops.T) : ens.C;
    MeasurementSet meas = acquire(H, ops);
    if (std::isfinite(snr_db)) {
        Rng noise_rng(derive_seed(seed, {3}));
        meas = inject_noise(meas, snr_db, noise_rng);
        meas.noise_seed = derive_seed(seed, {3});
    }

    const fs::path root(out);
    save_operator_set(root / "operators", ops);
    save_measurements(root / "measurements", meas);

    json echo = {{"command", "acquire"},
                 {"ensemble", ensemble_dir},
                 {"grid", grid_echo(grid)},
                 {"snr_db", std::isfinite(snr_db) ? json(snr_db) : json("inf")},
                 {"out", out}};
    emit_manifest(root / "run.json", echo, seed, elapsed_s(t0));
    std::cout << "wrote operators + measurements (M1=" << grid.M1 << ", M2=" << grid.M2
              << ", Omega=" << grid.Omega << ", Delta=" << grid.Delta << ") to " << out << "\n";
    return g.exit_code();
}

// ------------------------------------------------------------- reconstruct

int cmd_reconstruct(GlobalOpts& g, const std::string& in, int R, const L1SolverParams& solver,
                    const std::string& truth_dir, double threshold, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path root(in);
    const OperatorSet ops = load_operator_set(root / "operators");
    const MeasurementSet meas = load_measurements(root / "measurements");

    const RecoveryResult rec = full_pipeline(meas, ops, R, solver);
    save_recovery_result(out, rec);

    std::cout << "rank=" << R << " l1_iterations=" << rec.l1_total_iterations
              << " l1_converged=" << (rec.l1_converged ? "yes" : "no")
              << " rank_deficient=" << (rec.rank_deficient ? "yes" : "no") << "\n";
    if (!rec.l1_converged) g.flag("l1 solver missed its residual target");
    if (rec.rank_deficient) g.flag("column-space sketch numerically rank deficient");

    double rel_err = std::numeric_limits<double>::quiet_NaN();
    if (!truth_dir.empty()) {
        const EnsembleModel ens = load_ensemble(truth_dir);
        const CMat H = ens.mode == EnsembleMode::Signal ? to_sl_matrix(ens, ops.T) : ens.C;
        rel_err = relative_error(rec.H_hat, H);
        std::cout << "rel_err=" << format_double(rel_err)
                  << " success=" << (rel_err < threshold ? "yes" : "no") << "\n";
        if (!(rel_err < threshold)) g.flag("relative error at or above threshold");
    }

    json echo = {{"command", "reconstruct"}, {"in", in},     {"rank", R},
                 {"threshold", threshold},   {"out", out},   {"truth", truth_dir},
                 {"grid", grid_echo(ops.cfg)}};
    json manifest = run_manifest(echo, ops.cfg.seed, elapsed_s(t0));
    manifest["l1_converged"] = rec.l1_converged;
    manifest["rank_deficient"] = rec.rank_deficient;
    if (!truth_dir.empty()) manifest["rel_err"] = rel_err;
    write_json(fs::path(out) / "run.json", manifest);
    return g.exit_code();
}

// ---------------------------------------------------------- trial plumbing

TrialConfig make_trial_config(const GridConfig& grid, int R, int S, const std::string& mode,
                              bool conj_symmetric, double snr_db, const L1SolverParams& solver,
                              double threshold) {
    TrialConfig t;
    t.grid = grid;
    t.R = R;
    t.S = S;
    t.mode = mode == "signal" ? EnsembleMode::Signal : EnsembleMode::Matrix;
    t.conj_symmetric = conj_symmetric;
    t.snr_db = snr_db;
    t.solver = solver;
    t.success_threshold = threshold;
    return t;
}

json trial_echo(const TrialConfig& t) {
    return json{{"grid", grid_echo(t.grid)},
                {"R", t.R},
                {"S", t.S},
                {"mode", t.mode == EnsembleMode::Signal ? "signal" : "matrix"},
                {"conj_symmetric", t.conj_symmetric},
                {"snr_db", std::isfinite(t.snr_db) ? json(t.snr_db) : json("inf")},
                {"success_threshold", t.success_threshold}};
}

// ------------------------------------------------------- experiment min-rate

int cmd_min_rate(GlobalOpts& g, const TrialConfig& base, const std::string& axis,
                 std::vector<int> candidates, double target, int trials, std::uint64_t seed,
                 const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const SweepAxis ax = axis == "omega" ? SweepAxis::Omega : SweepAxis::Delta;
    if (axis != "omega" && axis != "delta")
        throw CLI::ValidationError("--axis must be 'delta' or 'omega'");
    if (candidates.empty())
        candidates = ax == SweepAxis::Delta ? delta_candidates(base.grid.W, base.grid.Omega)
                                            : omega_candidates(base.grid.W, base.grid.Delta);

    const MinRateResult res =
        min_rate_search(base, ax, candidates, target, trials, seed, g.resolve_workers());

    std::vector<std::vector<std::string>> rows;
    for (const auto& pt : res.evaluated)
        rows.push_back({axis, std::to_string(pt.value), std::to_string(pt.successes),
                        std::to_string(pt.trials), format_double(pt.success_rate)});
    write_csv(out, {"axis", "value", "successes", "trials", "success_rate"}, rows);

    if (res.found)
        std::cout << "min " << axis << " at " << (target * 100) << "% success: " << res.value
                  << "\n";
    else
        std::cout << "no candidate reached the " << (target * 100) << "% target\n";
    if (!res.found) g.flag("minimum-rate search exhausted its candidates");

    json echo = trial_echo(base);
    echo["command"] = "experiment min-rate";
    echo["axis"] = axis;
    echo["candidates"] = candidates;
    echo["target"] = target;
    echo["trials"] = trials;
    json manifest = run_manifest(echo, seed, elapsed_s(t0));
    manifest["found"] = res.found;
    if (res.found) manifest["value"] = res.value;
    write_json(sibling_manifest(out), manifest);
    return g.exit_code();
}

// ---------------------------------------------------------- experiment phase

int cmd_phase(GlobalOpts& g, const TrialConfig& base, GridSpec grid, std::uint64_t seed,
              const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cells = phase_transition(base, grid, seed, g.resolve_workers());

    std::vector<std::vector<std::string>> rows;
    for (const auto& c : cells)
        rows.push_back({std::to_string(c.v1), std::to_string(c.v2), format_double(c.p_fail),
                        std::to_string(c.failures), std::to_string(c.trials),
                        format_double(c.eta), format_double(c.gamma)});
    write_csv(out,
              {grid.axis1_name, grid.axis2_name, "p_fail", "failures", "trials", "eta", "gamma"},
              rows);
    std::cout << "wrote " << cells.size() << " cells to " << out << "\n";

    json echo = trial_echo(base);
    echo["command"] = "experiment phase";
    echo["axis1"] = {{"name", grid.axis1_name}, {"values", grid.axis1}};
    echo["axis2"] = {{"name", grid.axis2_name}, {"values", grid.axis2}};
    echo["trials"] = grid.trials;
    write_json(sibling_manifest(out), run_manifest(echo, seed, elapsed_s(t0)));
    return g.exit_code();
}

// ---------------------------------------------------------- experiment noise

int cmd_noise(GlobalOpts& g, const TrialConfig& base, const std::vector<double>& snr_list,
              int trials, std::uint64_t seed, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto points = noise_sweep(base, snr_list, trials, seed, g.resolve_workers());

    std::vector<std::vector<std::string>> rows;
    for (const auto& p : points)
        rows.push_back({format_double(p.snr_db), format_double(p.median_rel_err),
                        format_double(p.median_rel_err_db), std::to_string(p.trials)});
    write_csv(out, {"snr_db", "median_rel_err", "median_rel_err_db", "trials"}, rows);
    std::cout << "wrote " << points.size() << " SNR points to " << out << "\n";

    json echo = trial_echo(base);
    echo["command"] = "experiment noise";
    echo["snr_db"] = snr_list;
    echo["trials"] = trials;
    write_json(sibling_manifest(out), run_manifest(echo, seed, elapsed_s(t0)));
    return g.exit_code();
}

// ---------------------------------------------------- experiment csr-scaling

int cmd_csr_scaling(GlobalOpts& g, const CsrScalingSpec& spec, int trials, std::uint64_t seed,
                    const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto points = csr_scaling_experiment(spec, trials, seed, g.resolve_workers());

    std::vector<std::vector<std::string>> rows;
    for (const auto& p : points) {
        rows.push_back({std::to_string(p.alpha), std::to_string(p.csr_nyquist),
                        std::to_string(p.csr_lowrank_only), std::to_string(p.csr_ours)});
        if (!p.found) g.flag("alpha=" + std::to_string(p.alpha) + " never reached the target");
    }
    write_csv(out, {"alpha", "csr_nyquist", "csr_lowrank_only", "csr_ours"}, rows);
    std::cout << "wrote " << points.size() << " alpha points to " << out << "\n";

    json echo = {{"command", "experiment csr-scaling"},
                 {"alphas", spec.alpha_list},
                 {"m0", spec.m0},
                 {"w0", spec.w0},
                 {"R", spec.R},
                 {"S", spec.S},
                 {"Omega", spec.Omega},
                 {"target", spec.target},
                 {"trials", trials}};
    json manifest = run_manifest(echo, seed, elapsed_s(t0));
    for (const auto& p : points)
        manifest["delta_min"][std::to_string(p.alpha)] = p.found ? json(p.delta_min) : json();
    write_json(sibling_manifest(out), manifest);
    return g.exit_code();
}

// ----------------------------------------------------- experiment array-rank

int cmd_array_rank(GlobalOpts& g, const ArrayConfig& cfg, double threshold,
                   const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    const CMat Raa = raa_matrix(cfg);
    const RVec decay = eigen_decay(Raa);
    const int k_above = count_above(decay, threshold);

    std::vector<std::vector<std::string>> rows;
    for (int k = 0; k < decay.size(); ++k) {
        const double lam = decay(k);
        rows.push_back({std::to_string(k + 1), format_double(lam),
                        format_double(std::log10(std::max(lam, 1e-300)))});
    }
    write_csv(out, {"k", "lambda_normalized", "log10_lambda"}, rows);

    std::cout << "eigenvalues >= " << format_double(threshold) << ": " << k_above << "\n";
    std::cout << "effective dimension M*W/omega_c + 1 = "
              << format_double(effective_dimension(cfg)) << "\n";

    json echo = {{"command", "experiment array-rank"},
                 {"M", cfg.M},
                 {"omega_c", cfg.omega_c},
                 {"w_band", cfg.w_band},
                 {"theta", cfg.theta},
                 {"spacing", cfg.spacing},
                 {"n_quad", cfg.n_quad},
                 {"threshold", threshold}};
    json manifest = run_manifest(echo, 0, elapsed_s(t0));
    manifest["count_above"] = k_above;
    manifest["effective_dimension"] = effective_dimension(cfg);
    write_json(sibling_manifest(out), manifest);
    return g.exit_code();
}

// ------------------------------------------------------------- verify

int cmd_verify_operators(GlobalOpts& g, const std::vector<int>& w_list, std::uint64_t seed) {
    int checked = 0;
    auto check = [&](bool ok, const std::string& what) {
        ++checked;
        if (ok) {
            std::cout << "[ok]   " << what << "\n";
        } else {
            std::cout << "[FAIL] " << what << "\n";
            g.flag(what);
        }
    };

    for (int W : w_list) {
        GridConfig grid;
        grid.M = 8;
        grid.M1 = 6;
        grid.M2 = 2;
        grid.W = W;
        grid.Omega = std::max(1, W / 16);
        grid.Delta = std::max(grid.Omega, W / 4);
        grid.seed = derive_seed(seed, {static_cast<std::uint64_t>(W)});
        grid.validate();
        const OperatorSet ops = build_operator_set(grid);
        const std::string tag = " (W=" + std::to_string(W) + ")";

        check((ops.F * ops.F.adjoint() - CMat::Identity(W, W)).norm() < 1e-10 * std::sqrt(W),
              "F unitary" + tag);
        check((ops.A * ops.A.transpose() - RMat::Identity(grid.M, grid.M)).norm() < 1e-10,
              "A orthogonal" + tag);
        check(ops.T.cwiseAbs().minCoeff() > 0.0, "T invertible" + tag);

        const RMat p_od = summing_matrix(grid.Omega, grid.Delta);
        const RMat p_dw = summing_matrix(grid.Delta, W);
        const RMat p_ow = summing_matrix(grid.Omega, W);
        check((p_od * p_dw - p_ow).norm() < 1e-10, "P composition" + tag);
        check(std::abs(operator_norm(p_od.cast<cplx>()) -
                       std::sqrt(double(grid.Delta) / grid.Omega)) < 1e-10,
              "||P|| = sqrt(Delta/Omega)" + tag);
        check(operator_norm(ops.Q1) <= std::sqrt(double(W) / grid.Omega) + 1e-10,
              "||Q1|| <= sqrt(W/Omega)" + tag);
    }
    std::cout << checked - g.failures << "/" << checked << " operator checks passed\n";
    return g.failures > 0 ? 1 : 0;  // verification failures always fail the run
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sub-Nyquist acquisition and two-step recovery for sparse-and-correlated "
                 "signal ensembles"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);
    app.add_option("--workers", g.workers, "concurrent trial workers (default: SCSAMP_WORKERS or hardware)");
    app.add_flag("--strict", g.strict, "exit nonzero on any flagged failure");

    // Prescan so config values can seed option defaults before the real parse.
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) g.config_path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) g.config_path = a.substr(9);
    }
    json cfg;
    try {
        cfg = load_config(g.config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot read config: " << e.what() << "\n";
        return 2;
    }

    GridConfig grid;
    grid.M = 40; grid.W = 512; grid.M1 = 27; grid.M2 = 13;
    grid.Omega = 32; grid.Delta = 128;
    cfg_get(cfg, "grid", "M", grid.M);
    cfg_get(cfg, "grid", "W", grid.W);
    cfg_get(cfg, "grid", "M1", grid.M1);
    cfg_get(cfg, "grid", "M2", grid.M2);
    cfg_get(cfg, "grid", "Omega", grid.Omega);
    cfg_get(cfg, "grid", "Delta", grid.Delta);

    int R = 4, S = 16;
    std::string mode = "matrix";
    bool conj_symmetric = false;
    double snr_db = std::numeric_limits<double>::infinity();
    double threshold = kSuccessThreshold;
    double target = 0.99;
    int trials = 50;
    std::uint64_t seed = 20260814;
    cfg_get(cfg, "ensemble", "R", R);
    cfg_get(cfg, "ensemble", "S", S);
    cfg_get(cfg, "ensemble", "mode", mode);
    cfg_get(cfg, "ensemble", "conj_symmetric", conj_symmetric);
    cfg_get(cfg, "noise", "snr_db", snr_db);
    cfg_get(cfg, "run", "threshold", threshold);
    cfg_get(cfg, "run", "target", target);
    cfg_get(cfg, "run", "trials", trials);
    cfg_get(cfg, "run", "seed", seed);
    cfg_get(cfg, "run", "workers", g.workers);

    L1SolverParams solver;
    apply_solver_config(cfg, solver);

    auto add_grid_flags = [&](CLI::App* cmd) {
        cmd->add_option("--m", grid.M, "ensemble rows M");
        cmd->add_option("--w", grid.W, "Nyquist dimension W");
        cmd->add_option("--m1", grid.M1, "column-sketch branch rows M1");
        cmd->add_option("--m2", grid.M2, "row-sketch branch rows M2");
        cmd->add_option("--omega", grid.Omega, "branch-1 samples per window");
        cmd->add_option("--delta", grid.Delta, "branch-2 samples per window");
    };
    auto add_ensemble_flags = [&](CLI::App* cmd) {
        cmd->add_option("--r", R, "ensemble rank R");
        cmd->add_option("--s", S, "row sparsity S");
        cmd->add_option("--mode", mode, "'signal' or 'matrix'");
        cmd->add_flag("--conj-symmetric", conj_symmetric, "real-valued time signals");
    };

    // generate
    auto* gen = app.add_subcommand("generate", "synthesize and persist an ensemble");
    gen->fallthrough();
    std::string gen_out = "ensemble";
    add_grid_flags(gen);
    add_ensemble_flags(gen);
    gen->add_option("--seed", seed, "root seed");
    gen->add_option("--out", gen_out, "output directory")->required();

    // acquire
    auto* acq = app.add_subcommand("acquire", "measure a stored ensemble through both branches");
    acq->fallthrough();
    std::string acq_ensemble, acq_out = "acquired";
    add_grid_flags(acq);
    acq->add_option("--ensemble", acq_ensemble, "ensemble directory")->required();
    acq->add_option("--snr", snr_db, "SNR in dB (omit for noiseless)");
    acq->add_option("--seed", seed, "root seed (operators + noise)");
    acq->add_option("--out", acq_out, "output directory")->required();

    // reconstruct
    auto* rest = app.add_subcommand("reconstruct", "two-step recovery from stored measurements");
    rest->fallthrough();
    std::string rest_in, rest_truth, rest_out = "recovered";
    rest->add_option("--in", rest_in, "acquire output directory")->required();
    rest->add_option("--rank", R, "target rank R");
    rest->add_option("--truth", rest_truth, "ensemble directory for error reporting");
    rest->add_option("--threshold", threshold, "success threshold on relative error");
    rest->add_option("--out", rest_out, "output directory")->required();
    add_solver_flags(rest, solver);

    // experiment
    auto* exp = app.add_subcommand("experiment", "Monte-Carlo experiment harness");
    exp->require_subcommand(1);

    auto* minrate = exp->add_subcommand("min-rate", "smallest rate reaching a success target");
    minrate->fallthrough();
    std::string mr_axis = "delta", mr_out = "min_rate.csv";
    std::vector<int> mr_candidates;
    add_grid_flags(minrate);
    add_ensemble_flags(minrate);
    add_solver_flags(minrate, solver);
    minrate->add_option("--axis", mr_axis, "'delta' or 'omega'");
    minrate->add_option("--candidates", mr_candidates, "ascending axis values (default: all divisors)");
    minrate->add_option("--target", target, "success-probability target");
    minrate->add_option("--trials", trials, "trials per candidate");
    minrate->add_option("--threshold", threshold, "success threshold on relative error");
    minrate->add_option("--snr", snr_db, "SNR in dB (omit for noiseless)");
    minrate->add_option("--seed", seed, "root seed");
    minrate->add_option("--out", mr_out, "output CSV");

    auto* phase = exp->add_subcommand("phase", "failure-probability grid over two axes");
    phase->fallthrough();
    GridSpec gspec;
    gspec.axis1_name = "S";
    gspec.axis2_name = "Delta";
    std::string ph_out = "phase.csv";
    add_grid_flags(phase);
    add_ensemble_flags(phase);
    add_solver_flags(phase, solver);
    phase->add_option("--axis1", gspec.axis1_name, "row parameter name");
    phase->add_option("--axis1-values", gspec.axis1, "row parameter values")->required();
    phase->add_option("--axis2", gspec.axis2_name, "column parameter name");
    phase->add_option("--axis2-values", gspec.axis2, "column parameter values")->required();
    phase->add_option("--trials", gspec.trials, "trials per cell");
    phase->add_option("--threshold", gspec.success_threshold, "success threshold on relative error");
    phase->add_option("--seed", seed, "root seed");
    phase->add_option("--out", ph_out, "output CSV");

    auto* noise = exp->add_subcommand("noise", "median relative error across SNR levels");
    noise->fallthrough();
    std::vector<double> snr_list{0, 10, 20, 30, 40, 50, 60};
    std::string no_out = "noise.csv";
    add_grid_flags(noise);
    add_ensemble_flags(noise);
    add_solver_flags(noise, solver);
    noise->add_option("--snr-list", snr_list, "SNR grid in dB");
    noise->add_option("--trials", trials, "trials per SNR");
    noise->add_option("--threshold", threshold, "success threshold on relative error");
    noise->add_option("--seed", seed, "root seed");
    noise->add_option("--out", no_out, "output CSV");

    auto* csr = exp->add_subcommand("csr-scaling", "measured sampling rate against Nyquist as the problem grows");
    csr->fallthrough();
    CsrScalingSpec cspec;
    cspec.alpha_list = {1, 2, 4};
    std::string csr_out = "csr_scaling.csv";
    cfg_get(cfg, "csr", "m0", cspec.m0);
    cfg_get(cfg, "csr", "w0", cspec.w0);
    cfg_get(cfg, "csr", "R", cspec.R);
    cfg_get(cfg, "csr", "S", cspec.S);
    cfg_get(cfg, "csr", "Omega", cspec.Omega);
    csr->add_option("--alphas", cspec.alpha_list, "ascending scale factors");
    csr->add_option("--m0", cspec.m0, "base ensemble rows");
    csr->add_option("--w0", cspec.w0, "base Nyquist dimension");
    csr->add_option("--r", cspec.R, "ensemble rank");
    csr->add_option("--s", cspec.S, "row sparsity");
    csr->add_option("--omega", cspec.Omega, "branch-1 samples per window");
    csr->add_option("--target", cspec.target, "success-probability target");
    csr->add_option("--trials", trials, "trials per candidate");
    csr->add_option("--seed", seed, "root seed");
    csr->add_option("--out", csr_out, "output CSV");

    auto* array = exp->add_subcommand("array-rank", "eigen decay of the band-integrated steering covariance");
    array->fallthrough();
    ArrayConfig acfg;
    acfg.M = 101;
    acfg.omega_c = 5e9;
    acfg.w_band = 1e8;
    acfg.theta = std::atan(1.0);  // pi/4
    double array_threshold = 1e-4;
    std::string ar_out = "array_rank.csv";
    cfg_get(cfg, "array", "M", acfg.M);
    cfg_get(cfg, "array", "omega_c", acfg.omega_c);
    cfg_get(cfg, "array", "w_band", acfg.w_band);
    cfg_get(cfg, "array", "theta", acfg.theta);
    cfg_get(cfg, "array", "spacing", acfg.spacing);
    cfg_get(cfg, "array", "n_quad", acfg.n_quad);
    array->add_option("--elements", acfg.M, "array element count");
    array->add_option("--carrier", acfg.omega_c, "carrier frequency, Hz");
    array->add_option("--bandwidth", acfg.w_band, "bandwidth, Hz");
    array->add_option("--theta", acfg.theta, "incidence angle, radians");
    array->add_option("--spacing", acfg.spacing, "spacing in carrier half wavelengths");
    array->add_option("--n-quad", acfg.n_quad, "quadrature nodes");
    array->add_option("--eigen-threshold", array_threshold, "decay count threshold");
    array->add_option("--out", ar_out, "output CSV");

    // verify
    auto* verify = app.add_subcommand("verify", "self checks");
    verify->require_subcommand(1);
    auto* vops = verify->add_subcommand("operators", "operator identity suite");
    vops->fallthrough();
    std::vector<int> v_w{32, 256, 1024};
    vops->add_option("--w-list", v_w, "window sizes to check");
    vops->add_option("--seed", seed, "root seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen)
            return cmd_generate(cfg, g, grid.M, grid.W, R, S, mode, conj_symmetric, seed, gen_out);
        if (*acq) return cmd_acquire(g, acq_ensemble, grid, snr_db, seed, acq_out);
        if (*rest) return cmd_reconstruct(g, rest_in, R, solver, rest_truth, threshold, rest_out);
        if (*minrate) {
            const TrialConfig base =
                make_trial_config(grid, R, S, mode, conj_symmetric, snr_db, solver, threshold);
            return cmd_min_rate(g, base, mr_axis, mr_candidates, target, trials, seed, mr_out);
        }
        if (*phase) {
            const TrialConfig base = make_trial_config(grid, R, S, mode, conj_symmetric,
                                                       std::numeric_limits<double>::infinity(),
                                                       solver, gspec.success_threshold);
            return cmd_phase(g, base, gspec, seed, ph_out);
        }
        if (*noise) {
            const TrialConfig base = make_trial_config(grid, R, S, mode, conj_symmetric, snr_db,
                                                       solver, threshold);
            return cmd_noise(g, base, snr_list, trials, seed, no_out);
        }
        if (*csr) return cmd_csr_scaling(g, cspec, trials, seed, csr_out);
        if (*array) return cmd_array_rank(g, acfg, array_threshold, ar_out);
        if (*vops) return cmd_verify_operators(g, v_w, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
