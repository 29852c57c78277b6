#pragma once

#include <vector>

#include "scsamp/rng.hpp"
#include "scsamp/types.hpp"

namespace scsamp {

enum class EnsembleMode { Signal, Matrix };

struct EnsembleModel {
    int M = 0, W = 0, R = 0, S = 0;
    EnsembleMode mode = EnsembleMode::Matrix;
    bool conj_symmetric = false;
    CMat C;                     // M x W, rank <= R, columns outside the support zero
    std::vector<int> support;   // active storage slots, ascending
    RMat mixing;                // M x R
    CMat latent;                // R x W
    std::uint64_t seed = 0;

    std::int64_t dof() const {
        return static_cast<std::int64_t>(M) * R + static_cast<std::int64_t>(R) * S -
               static_cast<std::int64_t>(R) * R;
    }
};

EnsembleModel synth_signal_ensemble(int M, int W, int R, int S, Rng& rng, bool conj_symmetric);

// Direct S&L construction: tall Gaussian times row-sparse fat Gaussian, no
// conjugate symmetry.
EnsembleModel synth_matrix_ensemble(int M, int W, int R, int S, Rng& rng);

CMat to_sl_matrix(const EnsembleModel& ens, const CVec& T);

CVec eval_time_signal(const EnsembleModel& ens, double t);

// X = C F*; row m holds x_m(n/W)/sqrt(W).
CMat nyquist_samples(const EnsembleModel& ens);

}  // namespace scsamp
