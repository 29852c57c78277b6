#pragma once

#include <vector>

#include "scsamp/types.hpp"

namespace scsamp {

struct L1SolverParams {
    int max_iter = 500;              // FISTA iterations per lambda stage
    double fista_tol = 1e-8;         // relative iterate-change stopping rule
    double tol_residual = 0.1;       // accept per-row residual in [(1-tol)*budget, budget]
    double lambda_min_factor = 1e-4; // noiseless path: floor as fraction of ||Q2^H y||_inf
    int bisection_steps = 60;        // outer lambda adjustments on the noisy path
    bool debias = true;              // noiseless path: least squares on the detected support
    bool joint = false;              // l1,2 variant: group threshold over columns

    void validate() const;
};

struct L1RowDiag {
    int iterations = 0;
    double residual = 0.0;
    double lambda = 0.0;
    bool converged = true;
};

struct L1Result {
    CMat Z;
    std::vector<L1RowDiag> rows;
    bool converged = true;
    int total_iterations = 0;
};

// Solves min ||Z||_1 s.t. ||Y2 - Z Q2*||_F <= delta2, rows decoupled with
// per-row budgets delta2/sqrt(M2). delta2 = 0 takes the basis-pursuit limit
// (lambda continuation plus optional debias). Non-convergence is flagged in
// the result, never thrown.
L1Result row_sparse_recover(const CMat& Y2, const CMat& Q2, double delta2,
                            const L1SolverParams& params);

struct KktReport {
    double max_inactive_correlation = 0.0;  // max |corr| / lambda on the inactive set
    double max_active_misalignment = 0.0;   // max |corr - lambda*phase(z)| / lambda on the active set
};

KktReport l1_kkt_certificate(const CMat& Z, const CMat& Y2, const CMat& Q2,
                             const std::vector<L1RowDiag>& rows, double active_threshold = 1e-8);

}  // namespace scsamp
