#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scsamp/arraysim.hpp"

using namespace scsamp;

namespace {

ArrayConfig fig_config(double w_band) {
    ArrayConfig cfg;
    cfg.M = 101;
    cfg.omega_c = 5e9;
    cfg.w_band = w_band;
    cfg.theta = std::numbers::pi / 4.0;
    return cfg;
}

}  // namespace

TEST_SUITE("arraysim") {

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
    const auto [x, w] = gauss_legendre(5);
    CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
    double x4 = 0.0;
    for (int i = 0; i < 5; ++i) x4 += w[i] * std::pow(x[i], 4);
    CHECK(x4 == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(std::abs(x[2]) < 1e-15);                                   // center node
    CHECK(w[2] == doctest::Approx(128.0 / 225.0).epsilon(1e-14));    // its weight
    CHECK(x[4] == doctest::Approx(0.9061798459386640).epsilon(1e-13));
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("steering vector geometry") {
    ArrayConfig cfg = fig_config(1e8);

    cfg.theta = 0.0;
    const CVec broadside = steering_vector(cfg, 5e9);
    CHECK((broadside - CVec::Ones(101)).norm() == 0.0);  // no delay across the array

    cfg.theta = std::numbers::pi / 2.0;
    cfg.M = 2;
    const CVec endfire = steering_vector(cfg, 5e9);
    CHECK(std::abs(endfire[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(endfire[1] + cplx(1.0, 0.0)) < 1e-12);  // half-wavelength: phase pi

    cfg.M = 32;
    cfg.theta = 0.3;
    const CVec a = steering_vector(cfg, 5e9 + 3e7);
    for (int m = 0; m < 32; ++m) CHECK(std::abs(a[m]) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(steering_vector(cfg, 5e9 + 6e7), std::domain_error);
    CHECK_THROWS_AS(steering_vector(cfg, 5e9 - 6e7), std::domain_error);
}

TEST_CASE("band correlation matrix: structure and quadrature convergence") {
    ArrayConfig cfg = fig_config(1e8);
    cfg.M = 24;
    const CMat Raa = raa_matrix(cfg);

    CHECK((Raa - Raa.adjoint()).norm() < 1e-12 * Raa.norm());
    Eigen::SelfAdjointEigenSolver<CMat> es(Raa, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-10 * Raa.trace().real());
    CHECK(Raa.trace().real() == doctest::Approx(24.0 * 1e8).epsilon(1e-10));

    // single-node quadrature collapses to the rank-one integrand
    ArrayConfig one = cfg;
    one.n_quad = 1;
    const CVec a = steering_vector(cfg, cfg.omega_c);
    const CMat rank1 = cfg.w_band * (a * a.adjoint());
    CHECK((raa_matrix(one) - rank1).norm() < 1e-12 * rank1.norm());

    ArrayConfig coarse = cfg, fine = cfg;
    coarse.n_quad = 256;
    fine.n_quad = 512;
    const RVec dc = eigen_decay(raa_matrix(coarse));
    const RVec df = eigen_decay(raa_matrix(fine));
    CHECK((dc - df).cwiseAbs().maxCoeff() < 1e-10);

    ArrayConfig zero_nodes = cfg;
    zero_nodes.n_quad = 0;
    CHECK_THROWS_AS(raa_matrix(zero_nodes), std::invalid_argument);
}

TEST_CASE("eigen decay: normalization, rank-1, scale invariance, rejection") {
    ArrayConfig cfg = fig_config(1e8);
    cfg.M = 16;
    const CMat Raa = raa_matrix(cfg);
    const RVec decay = eigen_decay(Raa);
    CHECK(decay[0] == 1.0);
    for (int i = 1; i < 16; ++i) {
        CHECK(decay[i] <= decay[i - 1]);
        CHECK(decay[i] >= 0.0);
    }

    const RVec scaled = eigen_decay(CMat(4.0 * Raa));  // kappa^2 gain scaling
    CHECK((scaled - decay).cwiseAbs().maxCoeff() < 1e-12);

    const CVec a = steering_vector(cfg, cfg.omega_c);
    const RVec r1 = eigen_decay(CMat(a * a.adjoint()));
    CHECK(r1[0] == 1.0);
    CHECK(r1.tail(15).cwiseAbs().maxCoeff() < 1e-12);

    CHECK(eigen_decay(CMat::Zero(3, 3)).cwiseAbs().maxCoeff() == 0.0);

    CMat bad = Raa;
    bad(0, 1) += cplx(0.0, 1e-3 * Raa.norm());
    CHECK_THROWS_AS(eigen_decay(bad), std::invalid_argument);
    CHECK_THROWS_AS(eigen_decay(CMat::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("effective dimension predicts the decay count within one") {
    const double dims[] = {5e7, 1e8, 1.5e8, 1.9e8};
    const int expected_counts[] = {3, 3, 4, 4};
    for (int i = 0; i < 4; ++i) {
        const ArrayConfig cfg = fig_config(dims[i]);
        const int count = count_above(eigen_decay(raa_matrix(cfg)), 1e-4);
        CHECK(count == expected_counts[i]);
        const double dim = effective_dimension(cfg);
        CHECK(std::abs(count - std::ceil(dim)) <= 1.0);
    }
    CHECK(effective_dimension(fig_config(1e8)) == doctest::Approx(3.02).epsilon(1e-12));
}

TEST_CASE("count_above and config validation") {
    RVec d(4);
    d << 1.0, 1e-3, 1e-4, 1e-5;
    CHECK(count_above(d, 1e-4) == 3);  // threshold boundary counts
    CHECK(count_above(d, 0.5) == 1);

    ArrayConfig ok = fig_config(1e8);
    CHECK_NOTHROW(ok.validate());
    ArrayConfig bad = ok;
    bad.M = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.omega_c = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.w_band = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.w_band = 2.0 * ok.omega_c;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.spacing = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.n_quad = 15;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

}  // TEST_SUITE
