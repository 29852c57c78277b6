#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "scsamp/acquisition.hpp"

using namespace scsamp;

namespace {

double rel_gap(const MeasurementSet& a, const MeasurementSet& b) {
    const double scale = std::sqrt(b.Y1.squaredNorm() + b.Y2.squaredNorm());
    const double gap =
        std::sqrt((a.Y1 - b.Y1).squaredNorm() + (a.Y2 - b.Y2).squaredNorm());
    return gap / scale;
}

}  // namespace

TEST_SUITE("acquisition") {

TEST_CASE("zero input gives zero measurements on both paths") {
    GridConfig cfg{4, 32, 3, 1, 4, 8, 21};
    const OperatorSet ops = build_operator_set(cfg);

    const MeasurementSet zero = acquire(CMat::Zero(4, 32), ops);
    CHECK(zero.Y1.norm() == 0.0);
    CHECK(zero.Y2.norm() == 0.0);
    CHECK(zero.delta1 == 0.0);
    CHECK(zero.delta2 == 0.0);

    Rng rng(1);
    EnsembleModel ens = synth_signal_ensemble(4, 32, 2, 6, rng, false);
    ens.C.setZero();
    CHECK(acquire_closed_form(ens, ops).Y1.norm() == 0.0);
    CHECK(acquire_closed_form(ens, ops).Y2.norm() == 0.0);
}

TEST_CASE("norm chain bound on the fast branch") {
    GridConfig cfg{6, 64, 4, 2, 8, 16, 22};
    const OperatorSet ops = build_operator_set(cfg);
    Rng rng(2);
    CMat H(6, 64);
    rng.fill_complex_normal(H);
    const MeasurementSet meas = acquire(H, ops);
    CHECK(meas.Y1.norm() <= std::sqrt(64.0 / 8.0) * H.norm() + 1e-9);
    CHECK(meas.Y2.norm() <= std::sqrt(64.0 / 16.0) * H.norm() + 1e-9);
}

TEST_CASE("matrix path equals the closed-form physical oracle") {
    GridConfig cfg{4, 32, 3, 1, 4, 8, 23};
    const OperatorSet ops = build_operator_set(cfg);
    Rng rng(3);
    const EnsembleModel ens = synth_signal_ensemble(4, 32, 2, 6, rng, true);
    const CMat H = to_sl_matrix(ens, ops.T);

    const MeasurementSet algebra = acquire(H, ops);
    const MeasurementSet oracle = acquire_closed_form(ens, ops);
    CHECK(rel_gap(oracle, algebra) < 1e-10);
}

TEST_CASE("single tone: closed form, quadrature, and algebra agree") {
    GridConfig cfg{2, 8, 1, 1, 2, 4, 24};
    const OperatorSet ops = build_operator_set(cfg);
    Rng rng(4);
    const EnsembleModel ens = synth_signal_ensemble(2, 8, 1, 1, rng, false);
    const CMat H = to_sl_matrix(ens, ops.T);

    const MeasurementSet algebra = acquire(H, ops);
    const MeasurementSet closed = acquire_closed_form(ens, ops);
    const MeasurementSet quad = acquire_quadrature(ens, ops, 256);
    CHECK(rel_gap(closed, algebra) < 1e-12);
    CHECK(rel_gap(quad, algebra) < 1e-10);
}

TEST_CASE("composite quadrature converges to the matrix path") {
    GridConfig cfg{4, 32, 3, 1, 4, 8, 25};
    const OperatorSet ops = build_operator_set(cfg);
    Rng rng(5);
    const EnsembleModel ens = synth_signal_ensemble(4, 32, 2, 5, rng, false);
    const CMat H = to_sl_matrix(ens, ops.T);
    const MeasurementSet algebra = acquire(H, ops);

    const double e8 = rel_gap(acquire_quadrature(ens, ops, 8), algebra);
    const double e32 = rel_gap(acquire_quadrature(ens, ops, 32), algebra);
    const double e64 = rel_gap(acquire_quadrature(ens, ops, 64), algebra);
    CHECK(e32 < e8);
    CHECK(e64 < e32);
    CHECK(e64 < 1e-8);

    CHECK_THROWS_AS(acquire_quadrature(ens, ops, 2), std::invalid_argument);
}

TEST_CASE("acquisition is linear in the input matrix") {
    GridConfig cfg{5, 32, 3, 2, 4, 16, 26};
    const OperatorSet ops = build_operator_set(cfg);
    Rng rng(6);
    CMat H1(5, 32), H2(5, 32);
    rng.fill_complex_normal(H1);
    rng.fill_complex_normal(H2);
    const cplx alpha(1.7, -0.3), beta(-0.4, 2.1);

    const MeasurementSet combo = acquire(alpha * H1 + beta * H2, ops);
    const MeasurementSet a = acquire(H1, ops);
    const MeasurementSet b = acquire(H2, ops);
    CHECK((combo.Y1 - alpha * a.Y1 - beta * b.Y1).norm() < 1e-12 * combo.Y1.norm());
    CHECK((combo.Y2 - alpha * a.Y2 - beta * b.Y2).norm() < 1e-12 * combo.Y2.norm());
}

TEST_CASE("noise injection calibrates exactly and reports realized budgets") {
    GridConfig cfg{6, 64, 4, 2, 8, 16, 27};
    const OperatorSet ops = build_operator_set(cfg);
    Rng rng(7);
    CMat H(6, 64);
    rng.fill_complex_normal(H);
    const MeasurementSet clean = acquire(H, ops);

    Rng noise_rng(8);
    const MeasurementSet inf_case = inject_noise(clean, std::numeric_limits<double>::infinity(), noise_rng);
    CHECK((inf_case.Y1 - clean.Y1).norm() == 0.0);
    CHECK(inf_case.delta1 == 0.0);
    CHECK(inf_case.delta2 == 0.0);

    const MeasurementSet at0 = inject_noise(clean, 0.0, noise_rng);
    CHECK(std::abs((at0.Y1 - clean.Y1).norm() - clean.Y1.norm()) < 1e-12 * clean.Y1.norm());
    CHECK(std::abs((at0.Y2 - clean.Y2).norm() - clean.Y2.norm()) < 1e-12 * clean.Y2.norm());

    const MeasurementSet at20 = inject_noise(clean, 20.0, noise_rng);
    const double e_total = std::sqrt((at20.Y1 - clean.Y1).squaredNorm() + (at20.Y2 - clean.Y2).squaredNorm());
    const double y_total = std::sqrt(clean.Y1.squaredNorm() + clean.Y2.squaredNorm());
    CHECK(std::abs(e_total / y_total - 0.1) < 1e-12);
    CHECK(std::abs(at20.delta1 - (at20.Y1 - clean.Y1).norm()) < 1e-12 * at20.delta1);
    CHECK(std::abs(at20.delta2 - (at20.Y2 - clean.Y2).norm()) < 1e-12 * at20.delta2);

    MeasurementSet silent = clean;
    silent.Y1.setZero();
    silent.Y2.setZero();
    CHECK_THROWS_AS(inject_noise(silent, 20.0, noise_rng), std::invalid_argument);
    CHECK_THROWS_AS(inject_noise(clean, std::numeric_limits<double>::quiet_NaN(), noise_rng),
                    std::invalid_argument);
}

}  // TEST_SUITE
