#include "scsamp/acquisition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scsamp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_ens(const EnsembleModel& ens, const OperatorSet& ops) {
    if (ens.M != ops.cfg.M || ens.W != ops.cfg.W)
        throw std::invalid_argument("acquisition: ensemble and operator dimensions differ");
}

// Integral of exp(-i 2 pi w t) over the chip interval of matrix column n,
// [(n-1)/W, n/W) taken mod 1.
cplx tone_chip_integral(int w, int n, int W) {
    if (w == 0) return cplx(1.0 / W, 0.0);
    const double a = kTwoPi * w * static_cast<double>(n - 1) / W;
    const double b = kTwoPi * w * static_cast<double>(n) / W;
    const cplx ea(std::cos(a), -std::sin(a));
    const cplx eb(std::cos(b), -std::sin(b));
    return (eb - ea) / cplx(0.0, -kTwoPi * w);
}

MeasurementSet pack(const OperatorSet& ops, const CMat& chips) {
    const GridConfig& cfg = ops.cfg;
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.W));
    CMat modulated = chips * ops.D.asDiagonal();
    MeasurementSet meas;
    meas.cfg = cfg;
    meas.Y1 = scale * modulated.topRows(cfg.M1) * summing_matrix(cfg.Omega, cfg.W).transpose();
    meas.Y2 = scale * modulated.bottomRows(cfg.M2) * summing_matrix(cfg.Delta, cfg.W).transpose();
    return meas;
}

}  // namespace

MeasurementSet acquire(const CMat& H, const OperatorSet& ops) {
    const GridConfig& cfg = ops.cfg;
    if (H.rows() != cfg.M || H.cols() != cfg.W)
        throw std::invalid_argument("acquire: H must be M x W");
    MeasurementSet meas;
    meas.cfg = cfg;
    meas.Y1 = ops.a1() * H * ops.Q1.adjoint();
    meas.Y2 = ops.a2() * H * ops.Q2.adjoint();
    return meas;
}

MeasurementSet acquire_closed_form(const EnsembleModel& ens, const OperatorSet& ops) {
    check_ens(ens, ops);
    const int W = ens.W;
    const IVec w = freq_window(W);
    const CMat mixed = ops.A * ens.C;
    CMat chips = CMat::Zero(ens.M, W);
    for (int n = 0; n < W; ++n) {
        for (int slot : ens.support) {
            const cplx integ = tone_chip_integral(w[slot], n, W);
            chips.col(n) += mixed.col(slot) * integ;
        }
    }
    return pack(ops, chips);
}

MeasurementSet acquire_quadrature(const EnsembleModel& ens, const OperatorSet& ops, int n_quad) {
    check_ens(ens, ops);
    if (n_quad < 4) throw std::invalid_argument("acquire_quadrature: n_quad must be at least 4");
    if (n_quad % 2 != 0) ++n_quad;  // composite Simpson needs an even count
    const int W = ens.W;
    const IVec w = freq_window(W);
    const CMat mixed = ops.A * ens.C;
    CMat chips = CMat::Zero(ens.M, W);
    const double h = 1.0 / (static_cast<double>(W) * n_quad);
    CVec tones(static_cast<int>(ens.support.size()));
    for (int n = 0; n < W; ++n) {
        const double t0 = static_cast<double>(n - 1) / W;
        CVec acc = CVec::Zero(ens.M);
        for (int q = 0; q <= n_quad; ++q) {
            const double t = t0 + h * q;
            for (int k = 0; k < static_cast<int>(ens.support.size()); ++k) {
                const double phase = -kTwoPi * w[ens.support[k]] * t;
                tones[k] = cplx(std::cos(phase), std::sin(phase));
            }
            double wt = (q == 0 || q == n_quad) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
            CVec x = CVec::Zero(ens.M);
            for (int k = 0; k < static_cast<int>(ens.support.size()); ++k)
                x += mixed.col(ens.support[k]) * tones[k];
            acc += wt * x;
        }
        chips.col(n) = acc * (h / 3.0);
    }
    return pack(ops, chips);
}

MeasurementSet inject_noise(const MeasurementSet& meas, double snr_db, Rng& rng) {
    if (std::isinf(snr_db) && snr_db > 0) return meas;
    if (!std::isfinite(snr_db)) throw std::invalid_argument("inject_noise: snr_db must be finite");
    const double y1 = meas.Y1.norm();
    const double y2 = meas.Y2.norm();
    if (y1 == 0.0 && y2 == 0.0)
        throw std::invalid_argument("inject_noise: cannot scale noise against a zero signal");
    const double level = std::pow(10.0, -snr_db / 20.0);
    MeasurementSet out = meas;
    CMat E1(meas.Y1.rows(), meas.Y1.cols());
    CMat E2(meas.Y2.rows(), meas.Y2.cols());
    rng.fill_complex_normal(E1);
    rng.fill_complex_normal(E2);
    if (y1 > 0.0) {
        E1 *= level * y1 / E1.norm();
        out.Y1 += E1;
        out.delta1 = E1.norm();
    }
    if (y2 > 0.0) {
        E2 *= level * y2 / E2.norm();
        out.Y2 += E2;
        out.delta2 = E2.norm();
    }
    out.snr_db = snr_db;
    return out;
}

}  // namespace scsamp
