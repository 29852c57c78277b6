#pragma once

#include <vector>

#include "scsamp/acquisition.hpp"
#include "scsamp/l1.hpp"
#include "scsamp/operators.hpp"
#include "scsamp/types.hpp"

namespace scsamp {

struct RecoveryResult {
    CMat Yc;     // M x Omega
    CMat Yr;     // M2 x W
    CMat L_R;    // M x R, orthonormal columns
    CMat S_mat;  // R x W
    CMat H_hat;  // M x W
    CMat X_hat;  // M x W
    RVec yc_singular_values;
    std::vector<L1RowDiag> row_diags;
    int l1_total_iterations = 0;
    bool l1_converged = true;
    bool rank_deficient = false;
};

// Yc = A* [Y1; Y2 P_{Omega,Delta}*]; noiseless it equals H Q1* exactly.
CMat column_space_measurements(const MeasurementSet& meas, const OperatorSet& ops);

// Top-R left singular basis of Yc, each column phased so its first nonzero
// coordinate is real positive.
CMat column_basis(const CMat& Yc, int R);

// S = (A2 L_R)^dagger Yr; throws when sigma_min(A2 L_R) < 1e-10.
CMat solve_s(const CMat& Yr, const RMat& A2, const CMat& L_R);

// X = H T^{-1} F*.
CMat reconstruct_nyquist(const CMat& H_hat, const CVec& T, const CMat& F);

RecoveryResult full_pipeline(const MeasurementSet& meas, const OperatorSet& ops, int R,
                             const L1SolverParams& params);

// Largest-gap rank estimate from the singular values of Yc; diagnostic only.
int estimate_rank(const CMat& Yc);

}  // namespace scsamp
