#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "scsamp/ensemble.hpp"
#include "scsamp/operators.hpp"

using namespace scsamp;

namespace {

const double kPi = std::acos(-1.0);

int nonzero_columns(const CMat& C) {
    int n = 0;
    for (Eigen::Index j = 0; j < C.cols(); ++j)
        if (C.col(j).norm() > 0.0) ++n;
    return n;
}

RVec singular_values(const CMat& C) {
    return Eigen::BDCSVD<CMat>(C).singularValues();
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("smallest instance") {
    Rng rng(1);
    const EnsembleModel ens = synth_signal_ensemble(1, 1, 1, 1, rng, false);
    REQUIRE(ens.C.rows() == 1);
    REQUIRE(ens.C.cols() == 1);
    CHECK(std::abs(ens.C(0, 0)) > 0.0);
}

TEST_CASE("rank and support certificates at the noise-figure scale") {
    Rng rng(2);
    const EnsembleModel ens = synth_signal_ensemble(100, 1024, 10, 10, rng, false);
    const RVec sv = singular_values(ens.C);
    CHECK(sv[9] > 0.0);
    CHECK(sv[10] < 1e-12 * sv[0]);
    CHECK(nonzero_columns(ens.C) == 10);
    CHECK(static_cast<int>(ens.support.size()) == 10);
    CHECK(ens.dof() == 100 * 10 + 10 * 10 - 10 * 10);
}

TEST_CASE("rank certificate over 50 seeded draws") {
    for (int k = 0; k < 50; ++k) {
        Rng rng(derive_seed(77, {static_cast<std::uint64_t>(k)}));
        const EnsembleModel ens = synth_signal_ensemble(20, 64, 3, 8, rng, k % 2 == 0);
        const RVec sv = singular_values(ens.C);
        CHECK(sv[3] < 1e-12 * sv[0]);
        CHECK(nonzero_columns(ens.C) <= 8);
    }
}

TEST_CASE("conjugate symmetry is exact and supports are symmetric") {
    Rng rng(3);
    const EnsembleModel ens = synth_signal_ensemble(6, 33, 2, 7, rng, true);
    for (int slot : ens.support) {
        const int omega = freq_window(33)[slot];
        CHECK(freq_slot(-omega, 33) >= 0);
        for (int m = 0; m < 6; ++m) {
            const cplx a = ens.C(m, freq_slot(omega, 33));
            const cplx b = ens.C(m, freq_slot(-omega, 33));
            CHECK(b == std::conj(a));  // exact by construction
        }
    }
}

TEST_CASE("infeasible parameters rejected") {
    Rng rng(4);
    CHECK_THROWS_AS(synth_signal_ensemble(4, 16, 5, 4, rng, false), std::invalid_argument);  // R > S
    CHECK_THROWS_AS(synth_signal_ensemble(4, 16, 2, 17, rng, false), std::invalid_argument); // S > W
    CHECK_THROWS_AS(synth_signal_ensemble(4, 16, 5, 8, rng, false), std::invalid_argument);  // R > M
    CHECK_THROWS_AS(synth_matrix_ensemble(4, 16, 0, 4, rng), std::invalid_argument);         // R < 1
}

TEST_CASE("to_sl_matrix preserves support and rank; identity filter is a no-op") {
    Rng rng(5);
    const EnsembleModel ens = synth_signal_ensemble(10, 32, 2, 6, rng, false);

    const CVec ones = CVec::Ones(32);
    CHECK((to_sl_matrix(ens, ones) - ens.C).norm() == 0.0);

    const CVec T = lpf_diag(32);
    const CMat H = to_sl_matrix(ens, T);
    for (Eigen::Index j = 0; j < 32; ++j)
        CHECK((H.col(j).norm() > 0.0) == (ens.C.col(j).norm() > 0.0));
    const RVec sv = singular_values(H);
    CHECK(sv[2] < 1e-10 * sv[0]);

    CHECK_THROWS_AS(to_sl_matrix(ens, lpf_diag(16)), std::invalid_argument);
}

TEST_CASE("time evaluation: zero ensemble, pure tone, domain, Parseval") {
    Rng rng(6);
    EnsembleModel ens = synth_signal_ensemble(3, 16, 1, 4, rng, true);

    EnsembleModel zero = ens;
    zero.C.setZero();
    CHECK(eval_time_signal(zero, 0.25).norm() == 0.0);

    // single conjugate pair at omega0 = 2 with unit weight -> 2 cos(2 pi omega0 t)
    EnsembleModel tone = ens;
    tone.C.setZero();
    tone.C(0, freq_slot(2, 16)) = 1.0;
    tone.C(0, freq_slot(-2, 16)) = 1.0;
    for (double t : {0.0, 0.1, 0.37, 0.77}) {
        const CVec x = eval_time_signal(tone, t);
        CHECK(std::abs(x[0] - cplx(2.0 * std::cos(2.0 * kPi * 2.0 * t), 0.0)) < 1e-12);
    }

    CHECK_THROWS_AS(eval_time_signal(ens, 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_time_signal(ens, -0.1), std::domain_error);

    // Parseval on a 16W-point grid: cross terms cancel exactly on the lattice
    const int nt = 16 * 16;
    RVec acc = RVec::Zero(3);
    for (int n = 0; n < nt; ++n) {
        const CVec x = eval_time_signal(ens, double(n) / nt);
        acc += x.cwiseAbs2();
    }
    acc /= nt;
    const RVec truth = ens.C.cwiseAbs2().rowwise().sum();
    CHECK((acc - truth).norm() < 1e-6 * truth.norm());
}

TEST_CASE("nyquist samples: DC row, round trip, matches time evaluation") {
    Rng rng(7);
    EnsembleModel ens = synth_signal_ensemble(2, 8, 1, 3, rng, false);

    EnsembleModel dc = ens;
    dc.C.setZero();
    dc.C(0, freq_slot(0, 8)) = std::sqrt(8.0);
    const CMat Xdc = nyquist_samples(dc);
    CHECK((Xdc.row(0) - Eigen::RowVectorXcd::Ones(8)).norm() < 1e-12);

    const CMat X = nyquist_samples(ens);
    const CMat F = dft_matrix(8);
    CHECK((X * F - ens.C).norm() < 1e-12 * ens.C.norm());

    for (int n = 0; n < 8; ++n) {
        const CVec x = eval_time_signal(ens, double(n) / 8.0);
        CHECK((X.col(n) * std::sqrt(8.0) - x).norm() < 1e-10 * x.norm());
    }
}

TEST_CASE("matrix mode: direct tall-times-sparse-fat construction") {
    Rng rng(8);
    const EnsembleModel ens = synth_matrix_ensemble(12, 64, 3, 9, rng);
    CHECK(ens.mode == EnsembleMode::Matrix);
    CHECK(!ens.conj_symmetric);
    CHECK(nonzero_columns(ens.C) == 9);
    const RVec sv = singular_values(ens.C);
    CHECK(sv[2] > 0.0);
    CHECK(sv[3] < 1e-12 * sv[0]);
    CHECK((ens.C - ens.mixing.cast<cplx>() * ens.latent).norm() < 1e-14 * ens.C.norm());
}

}  // TEST_SUITE
