#include "scsamp/arraysim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scsamp {

void ArrayConfig::validate() const {
    if (M < 1) throw std::invalid_argument("ArrayConfig: M must be at least 1");
    if (!(omega_c > 0.0)) throw std::invalid_argument("ArrayConfig: omega_c must be positive");
    if (!(w_band >= 0.0 && w_band < 2.0 * omega_c))
        throw std::invalid_argument("ArrayConfig: need 0 <= w_band < 2 omega_c");
    if (!(spacing > 0.0)) throw std::invalid_argument("ArrayConfig: spacing must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("ArrayConfig: c must be positive");
    if (n_quad < 16) throw std::invalid_argument("ArrayConfig: n_quad must be at least 16");
}

std::pair<RVec, RVec> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    RVec x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {x, w};
}

CVec steering_vector(const ArrayConfig& cfg, double omega) {
    const double half = cfg.w_band / 2.0;
    if (!(omega >= cfg.omega_c - half && omega <= cfg.omega_c + half))
        throw std::domain_error("steering_vector: omega outside the band");
    CVec a(cfg.M);
    const double base = cfg.spacing * cfg.c / (2.0 * cfg.omega_c);
    for (int m = 0; m < cfg.M; ++m) {
        const double d = m * base;
        const double phase = -2.0 * std::numbers::pi * omega * d * std::sin(cfg.theta) / cfg.c;
        a[m] = cplx(std::cos(phase), std::sin(phase));
    }
    return a;
}

CMat raa_matrix(const ArrayConfig& cfg) {
    if (cfg.n_quad < 1) throw std::invalid_argument("raa_matrix: n_quad must be positive");
    const auto [x, w] = gauss_legendre(cfg.n_quad);
    const double half = cfg.w_band / 2.0;
    CMat R = CMat::Zero(cfg.M, cfg.M);
    for (int q = 0; q < cfg.n_quad; ++q) {
        const CVec a = steering_vector(cfg, cfg.omega_c + half * x[q]);
        R.selfadjointView<Eigen::Lower>().rankUpdate(a, half * w[q]);
    }
    R.triangularView<Eigen::StrictlyUpper>() = R.adjoint();
    return R;
}

RVec eigen_decay(const CMat& Raa) {
    if (Raa.rows() != Raa.cols()) throw std::invalid_argument("eigen_decay: matrix must be square");
    const double scale = Raa.norm();
    if ((Raa - Raa.adjoint()).norm() > 1e-10 * std::max(scale, 1e-300))
        throw std::invalid_argument("eigen_decay: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(Raa, Eigen::EigenvaluesOnly);
    RVec ev = es.eigenvalues().reverse();
    const double top = ev[0];
    if (top <= 0.0) return RVec::Zero(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = std::max(ev[i], 0.0) / top;
    return ev;
}

int count_above(const RVec& decay, double threshold) {
    int n = 0;
    for (Eigen::Index i = 0; i < decay.size(); ++i)
        if (decay[i] >= threshold) ++n;
    return n;
}

double effective_dimension(const ArrayConfig& cfg) {
    return cfg.M * cfg.w_band / cfg.omega_c + 1.0;
}

}  // namespace scsamp
