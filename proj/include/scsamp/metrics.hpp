#pragma once

#include <cstdint>

#include "scsamp/types.hpp"

namespace scsamp {

// mu0^2 = (W/R) ||F V_R||^2_{2->inf} with V_R the top-R right singular
// vectors of H; always within [1, W/R].
double coherence(const CMat& H, int R, const CMat& F);

double relative_error(const CMat& H_hat, const CMat& H);

std::int64_t cumulative_sampling_rate(int M1, int Omega, int M2, int Delta);

// eta = R(M + S - R) / CSR
double sampling_efficiency(int M, int S, int R, int M1, int Omega, int M2, int Delta);

// gamma = CSR / (MW)
double compression_factor(int M, int W, int M1, int Omega, int M2, int Delta);

struct SingularDiagnostics {
    double q1vr_min = 0.0, q1vr_max = 0.0;
    double a2lr_min = 0.0, a2lr_max = 0.0;
    bool q1vr_in_bounds = false;  // against [sqrt(1/2), sqrt(3/2)]
    bool a2lr_in_bounds = false;  // against [0.5, 2] * sqrt(M2/M)
};

SingularDiagnostics singular_diagnostics(const CMat& Q1, const CMat& V_R, const RMat& A2,
                                         const CMat& L_R);

}  // namespace scsamp
