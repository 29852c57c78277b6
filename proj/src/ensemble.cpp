#include "scsamp/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scsamp/operators.hpp"

namespace scsamp {

namespace {

void check_dims(int M, int W, int R, int S) {
    if (M < 1 || W < 1) throw std::invalid_argument("ensemble: M and W must be positive");
    if (R < 1 || R > std::min(M, S))
        throw std::invalid_argument("ensemble: need 1 <= R <= min(M, S)");
    if (S > W) throw std::invalid_argument("ensemble: need S <= W");
}

// Support drawn respecting omega in Gamma <=> -omega in Gamma. Self-paired
// frequencies (0, and W/2 for even W) count once; pairs count twice.
std::vector<int> symmetric_support(int W, int S, Rng& rng) {
    std::vector<int> singles{0};
    if (W % 2 == 0 && W > 1) singles.push_back(W / 2);
    std::vector<int> pair_reps;  // positive frequency of each pair
    const int hi = W - 1 - (W - 1) / 2;
    for (int w = 1; w <= hi; ++w)
        if (!(W % 2 == 0 && w == W / 2)) pair_reps.push_back(w);

    int n_singles = S % 2;
    while ((S - n_singles) / 2 > static_cast<int>(pair_reps.size())) n_singles += 2;
    if (n_singles > static_cast<int>(singles.size()))
        throw std::invalid_argument("ensemble: no symmetric support of this size exists");

    std::vector<int> slots;
    const auto sidx = rng.sample_without_replacement(static_cast<int>(singles.size()), n_singles);
    for (int i : sidx) slots.push_back(singles[i]);
    const int n_pairs = (S - n_singles) / 2;
    const auto pidx = rng.sample_without_replacement(static_cast<int>(pair_reps.size()), n_pairs);
    for (int i : pidx) {
        const int w = pair_reps[i];
        slots.push_back(freq_slot(w, W));
        slots.push_back(freq_slot(-w, W));
    }
    std::sort(slots.begin(), slots.end());
    return slots;
}

}  // namespace

EnsembleModel synth_signal_ensemble(int M, int W, int R, int S, Rng& rng, bool conj_symmetric) {
    check_dims(M, W, R, S);
    EnsembleModel ens;
    ens.M = M;
    ens.W = W;
    ens.R = R;
    ens.S = S;
    ens.mode = EnsembleMode::Signal;
    ens.conj_symmetric = conj_symmetric;

    ens.support = conj_symmetric ? symmetric_support(W, S, rng)
                                 : rng.sample_without_replacement(W, S);
    ens.mixing.resize(M, R);
    rng.fill_normal(ens.mixing);
    ens.latent = CMat::Zero(R, W);
    if (conj_symmetric) {
        for (int slot : ens.support) {
            const int w = slot <= W - 1 - (W - 1) / 2 ? slot : slot - W;
            if (w < 0) continue;  // filled together with the positive partner
            const bool self_paired = (w == 0) || (W % 2 == 0 && w == W / 2);
            for (int r = 0; r < R; ++r) {
                if (self_paired) {
                    ens.latent(r, slot) = cplx(rng.normal(), 0.0);
                } else {
                    const cplx z = rng.complex_normal();
                    ens.latent(r, slot) = z;
                    ens.latent(r, freq_slot(-w, W)) = std::conj(z);
                }
            }
        }
    } else {
        for (int slot : ens.support)
            for (int r = 0; r < R; ++r) ens.latent(r, slot) = rng.complex_normal();
    }
    ens.C = ens.mixing * ens.latent;
    return ens;
}

EnsembleModel synth_matrix_ensemble(int M, int W, int R, int S, Rng& rng) {
    check_dims(M, W, R, S);
    EnsembleModel ens;
    ens.M = M;
    ens.W = W;
    ens.R = R;
    ens.S = S;
    ens.mode = EnsembleMode::Matrix;
    ens.support = rng.sample_without_replacement(W, S);
    ens.mixing.resize(M, R);
    rng.fill_normal(ens.mixing);
    ens.latent = CMat::Zero(R, W);
    for (int slot : ens.support)
        for (int r = 0; r < R; ++r) ens.latent(r, slot) = rng.complex_normal();
    ens.C = ens.mixing * ens.latent;
    return ens;
}

CMat to_sl_matrix(const EnsembleModel& ens, const CVec& T) {
    if (T.size() != ens.W) throw std::invalid_argument("to_sl_matrix: filter size mismatch");
    return ens.C * T.asDiagonal();
}

CVec eval_time_signal(const EnsembleModel& ens, double t) {
    if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("eval_time_signal: t must lie in [0, 1)");
    const IVec w = freq_window(ens.W);
    CVec tones(ens.W);
    for (int a = 0; a < ens.W; ++a) {
        const double phase = -2.0 * std::numbers::pi * w[a] * t;
        tones[a] = cplx(std::cos(phase), std::sin(phase));
    }
    return ens.C * tones;
}

CMat nyquist_samples(const EnsembleModel& ens) {
    return ens.C * dft_matrix(ens.W).adjoint();
}

}  // namespace scsamp
