#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scsamp/acquisition.hpp"
#include "scsamp/arraysim.hpp"
#include "scsamp/experiments.hpp"
#include "scsamp/metrics.hpp"
#include "scsamp/recovery.hpp"

namespace py = pybind11;
using namespace scsamp;

PYBIND11_MODULE(_scsamp, m) {
    m.doc() = "Sub-Nyquist acquisition and two-step recovery for sparse, correlated ensembles";

    m.def("derive_seed", [](std::uint64_t root, const std::vector<std::uint64_t>& idx) {
        std::uint64_t s = root;
        for (std::uint64_t i : idx) s = derive_seed(s, {i});
        return s;
    });

    py::class_<GridConfig>(m, "GridConfig")
        .def(py::init([](int M, int W, int M1, int M2, int Omega, int Delta, std::uint64_t seed) {
                 return GridConfig{M, W, M1, M2, Omega, Delta, seed};
             }),
             py::arg("M"), py::arg("W"), py::arg("M1"), py::arg("M2"), py::arg("Omega"),
             py::arg("Delta"), py::arg("seed") = 0)
        .def_readwrite("M", &GridConfig::M)
        .def_readwrite("W", &GridConfig::W)
        .def_readwrite("M1", &GridConfig::M1)
        .def_readwrite("M2", &GridConfig::M2)
        .def_readwrite("Omega", &GridConfig::Omega)
        .def_readwrite("Delta", &GridConfig::Delta)
        .def_readwrite("seed", &GridConfig::seed)
        .def("validate", &GridConfig::validate);
    m.def("default_m2", &default_m2, py::arg("R"), py::arg("W"));

    m.def("dft_matrix", &dft_matrix);
    m.def("lpf_diag", &lpf_diag);
    m.def("summing_matrix", &summing_matrix, py::arg("rows"), py::arg("cols"));
    m.def("haar_orthogonal", [](int M, std::uint64_t seed) {
        Rng rng(seed);
        return haar_orthogonal(M, rng);
    });
    m.def("chipping_sequence", [](int W, std::uint64_t seed) {
        Rng rng(seed);
        return chipping_sequence(W, rng);
    });
    m.def("freq_window", &freq_window);
    m.def("freq_slot", &freq_slot, py::arg("omega"), py::arg("W"));
    m.def("operator_norm", &operator_norm);

    py::class_<OperatorSet>(m, "OperatorSet")
        .def_readonly("cfg", &OperatorSet::cfg)
        .def_readonly("F", &OperatorSet::F)
        .def_readonly("T", &OperatorSet::T)
        .def_readonly("D", &OperatorSet::D)
        .def_readonly("A", &OperatorSet::A)
        .def_readonly("Q1", &OperatorSet::Q1)
        .def_readonly("Q2", &OperatorSet::Q2)
        .def("a1", &OperatorSet::a1)
        .def("a2", &OperatorSet::a2);
    m.def("build_operator_set", py::overload_cast<const GridConfig&>(&build_operator_set));

    py::enum_<EnsembleMode>(m, "EnsembleMode")
        .value("Signal", EnsembleMode::Signal)
        .value("Matrix", EnsembleMode::Matrix);

    py::class_<EnsembleModel>(m, "EnsembleModel")
        .def_readonly("M", &EnsembleModel::M)
        .def_readonly("W", &EnsembleModel::W)
        .def_readonly("R", &EnsembleModel::R)
        .def_readonly("S", &EnsembleModel::S)
        .def_readonly("mode", &EnsembleModel::mode)
        .def_readonly("conj_symmetric", &EnsembleModel::conj_symmetric)
        .def_readonly("C", &EnsembleModel::C)
        .def_readonly("support", &EnsembleModel::support)
        .def_readonly("mixing", &EnsembleModel::mixing)
        .def_readonly("latent", &EnsembleModel::latent)
        .def_readonly("seed", &EnsembleModel::seed)
        .def("dof", &EnsembleModel::dof);
    m.def("synth_signal_ensemble",
          [](int M, int W, int R, int S, std::uint64_t seed, bool conj_symmetric) {
              Rng rng(seed);
              return synth_signal_ensemble(M, W, R, S, rng, conj_symmetric);
          },
          py::arg("M"), py::arg("W"), py::arg("R"), py::arg("S"), py::arg("seed"),
          py::arg("conj_symmetric") = false);
    m.def("synth_matrix_ensemble", [](int M, int W, int R, int S, std::uint64_t seed) {
        Rng rng(seed);
        return synth_matrix_ensemble(M, W, R, S, rng);
    });
    m.def("to_sl_matrix", &to_sl_matrix);
    m.def("eval_time_signal", &eval_time_signal);
    m.def("nyquist_samples", &nyquist_samples);

    py::class_<MeasurementSet>(m, "MeasurementSet")
        .def_readonly("cfg", &MeasurementSet::cfg)
        .def_readonly("Y1", &MeasurementSet::Y1)
        .def_readonly("Y2", &MeasurementSet::Y2)
        .def_readonly("delta1", &MeasurementSet::delta1)
        .def_readonly("delta2", &MeasurementSet::delta2)
        .def_readonly("snr_db", &MeasurementSet::snr_db);
    m.def("acquire", &acquire);
    m.def("acquire_closed_form", &acquire_closed_form);
    m.def("acquire_quadrature", &acquire_quadrature);
    m.def("inject_noise", [](const MeasurementSet& meas, double snr_db, std::uint64_t seed) {
        Rng rng(seed);
        return inject_noise(meas, snr_db, rng);
    });

    py::class_<L1SolverParams>(m, "L1SolverParams")
        .def(py::init<>())
        .def_readwrite("max_iter", &L1SolverParams::max_iter)
        .def_readwrite("fista_tol", &L1SolverParams::fista_tol)
        .def_readwrite("tol_residual", &L1SolverParams::tol_residual)
        .def_readwrite("lambda_min_factor", &L1SolverParams::lambda_min_factor)
        .def_readwrite("bisection_steps", &L1SolverParams::bisection_steps)
        .def_readwrite("debias", &L1SolverParams::debias)
        .def_readwrite("joint", &L1SolverParams::joint);

    py::class_<L1Result>(m, "L1Result")
        .def_readonly("Z", &L1Result::Z)
        .def_readonly("converged", &L1Result::converged)
        .def_readonly("total_iterations", &L1Result::total_iterations);
    m.def("row_sparse_recover", &row_sparse_recover, py::arg("Y2"), py::arg("Q2"),
          py::arg("delta2"), py::arg("params") = L1SolverParams{});

    py::class_<RecoveryResult>(m, "RecoveryResult")
        .def_readonly("Yc", &RecoveryResult::Yc)
        .def_readonly("Yr", &RecoveryResult::Yr)
        .def_readonly("L_R", &RecoveryResult::L_R)
        .def_readonly("S_mat", &RecoveryResult::S_mat)
        .def_readonly("H_hat", &RecoveryResult::H_hat)
        .def_readonly("X_hat", &RecoveryResult::X_hat)
        .def_readonly("yc_singular_values", &RecoveryResult::yc_singular_values)
        .def_readonly("l1_total_iterations", &RecoveryResult::l1_total_iterations)
        .def_readonly("l1_converged", &RecoveryResult::l1_converged)
        .def_readonly("rank_deficient", &RecoveryResult::rank_deficient);
    m.def("column_space_measurements", &column_space_measurements);
    m.def("column_basis", &column_basis);
    m.def("solve_s", &solve_s);
    m.def("reconstruct_nyquist", &reconstruct_nyquist);
    m.def("full_pipeline", &full_pipeline, py::arg("meas"), py::arg("ops"), py::arg("R"),
          py::arg("params") = L1SolverParams{});
    m.def("estimate_rank", &estimate_rank);

    m.def("coherence", &coherence);
    m.def("relative_error", &relative_error);
    m.def("cumulative_sampling_rate", &cumulative_sampling_rate);
    m.def("sampling_efficiency", &sampling_efficiency);
    m.def("compression_factor", &compression_factor);

    py::class_<ArrayConfig>(m, "ArrayConfig")
        .def(py::init<>())
        .def_readwrite("M", &ArrayConfig::M)
        .def_readwrite("omega_c", &ArrayConfig::omega_c)
        .def_readwrite("w_band", &ArrayConfig::w_band)
        .def_readwrite("theta", &ArrayConfig::theta)
        .def_readwrite("spacing", &ArrayConfig::spacing)
        .def_readwrite("c", &ArrayConfig::c)
        .def_readwrite("n_quad", &ArrayConfig::n_quad)
        .def("validate", &ArrayConfig::validate);
    m.def("steering_vector", &steering_vector);
    m.def("raa_matrix", &raa_matrix);
    m.def("eigen_decay", &eigen_decay);
    m.def("count_above", &count_above);
    m.def("effective_dimension", &effective_dimension);

    py::class_<TrialConfig>(m, "TrialConfig")
        .def(py::init<>())
        .def_readwrite("grid", &TrialConfig::grid)
        .def_readwrite("R", &TrialConfig::R)
        .def_readwrite("S", &TrialConfig::S)
        .def_readwrite("mode", &TrialConfig::mode)
        .def_readwrite("conj_symmetric", &TrialConfig::conj_symmetric)
        .def_readwrite("snr_db", &TrialConfig::snr_db)
        .def_readwrite("solver", &TrialConfig::solver)
        .def_readwrite("success_threshold", &TrialConfig::success_threshold)
        .def("validate", &TrialConfig::validate);

    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("seed", &TrialRecord::seed)
        .def_readonly("rel_err", &TrialRecord::rel_err)
        .def_readonly("success", &TrialRecord::success)
        .def_readonly("eta", &TrialRecord::eta)
        .def_readonly("gamma", &TrialRecord::gamma)
        .def_readonly("csr", &TrialRecord::csr)
        .def_readonly("mu0_sq", &TrialRecord::mu0_sq)
        .def_readonly("l1_converged", &TrialRecord::l1_converged)
        .def_readonly("rank_deficient", &TrialRecord::rank_deficient)
        .def_readonly("failure_reason", &TrialRecord::failure_reason);
    m.def("run_trial", &run_trial, py::arg("config"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
}
