#pragma once

#include <limits>

#include "scsamp/ensemble.hpp"
#include "scsamp/operators.hpp"
#include "scsamp/rng.hpp"
#include "scsamp/types.hpp"

namespace scsamp {

struct MeasurementSet {
    GridConfig cfg;
    CMat Y1;  // M1 x Omega
    CMat Y2;  // M2 x Delta
    double delta1 = 0.0;
    double delta2 = 0.0;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t noise_seed = 0;
};

// Matrix path: Y1 = A1 H Q1*, Y2 = A2 H Q2*, noiseless.
MeasurementSet acquire(const CMat& H, const OperatorSet& ops);

// Physical oracle: mixes the ensemble through A, chips, integrates each chip
// interval by the closed-form tone antiderivative, and block-sums. Shares the
// 1/sqrt(W) measurement unit of the matrix path.
MeasurementSet acquire_closed_form(const EnsembleModel& ens, const OperatorSet& ops);

// Same oracle with composite Simpson quadrature, n_quad subintervals per chip.
MeasurementSet acquire_quadrature(const EnsembleModel& ens, const OperatorSet& ops, int n_quad);

// Adds iid complex Gaussian noise with equal per-branch relative level
// ||E_i||_F / ||Y_i||_F = 10^(-snr_db/20); delta budgets are the realized
// norms. snr_db = +inf returns the input unchanged.
MeasurementSet inject_noise(const MeasurementSet& meas, double snr_db, Rng& rng);

}  // namespace scsamp
