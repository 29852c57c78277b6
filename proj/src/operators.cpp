#include "scsamp/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scsamp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void GridConfig::validate() const {
    if (M < 2) throw std::invalid_argument("GridConfig: M must be at least 2");
    if (W < 1) throw std::invalid_argument("GridConfig: W must be positive");
    if (M1 < 1 || M2 < 1) throw std::invalid_argument("GridConfig: M1 and M2 must be at least 1");
    if (M1 + M2 != M) throw std::invalid_argument("GridConfig: M1 + M2 must equal M");
    if (Omega < 1 || Delta < 1) throw std::invalid_argument("GridConfig: rates must be positive");
    if (W % Omega != 0) throw std::invalid_argument("GridConfig: Omega must divide W");
    if (W % Delta != 0) throw std::invalid_argument("GridConfig: Delta must divide W");
    if (Delta % Omega != 0) throw std::invalid_argument("GridConfig: Omega must divide Delta");
    if (!(Omega <= Delta && Delta <= W))
        throw std::invalid_argument("GridConfig: need Omega <= Delta <= W");
}

int default_m2(int R, int W) {
    const int lg = static_cast<int>(std::ceil(std::log2(static_cast<double>(W))));
    return std::max(R + lg, 2 * R);
}

IVec freq_window(int W) {
    if (W < 1) throw std::invalid_argument("freq_window: W must be positive");
    const int hi = W - 1 - (W - 1) / 2;
    IVec f(W);
    for (int a = 0; a < W; ++a) f[a] = (a <= hi) ? a : a - W;
    return f;
}

int freq_slot(int omega, int W) {
    const int lo = -((W - 1) / 2);
    const int hi = W - 1 + lo;
    if (omega < lo || omega > hi) throw std::invalid_argument("freq_slot: frequency outside window");
    return omega >= 0 ? omega : omega + W;
}

CMat dft_matrix(int W) {
    if (W < 1) throw std::invalid_argument("dft_matrix: W must be positive");
    const IVec w = freq_window(W);
    const double scale = 1.0 / std::sqrt(static_cast<double>(W));
    CMat F(W, W);
    for (int a = 0; a < W; ++a) {
        for (int n = 0; n < W; ++n) {
            const double phase = kTwoPi * static_cast<double>(w[a]) * n / W;
            F(a, n) = scale * cplx(std::cos(phase), std::sin(phase));
        }
    }
    return F;
}

CVec lpf_diag(int W) {
    if (W < 1) throw std::invalid_argument("lpf_diag: W must be positive");
    const IVec w = freq_window(W);
    CVec t(W);
    for (int a = 0; a < W; ++a) {
        if (w[a] == 0) {
            t[a] = cplx(1.0 / W, 0.0);
        } else {
            const double x = kTwoPi * w[a] / W;
            const cplx num(std::cos(x) - 1.0, std::sin(x));
            t[a] = num / cplx(0.0, kTwoPi * w[a]);
        }
    }
    return t;
}

RMat summing_matrix(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("summing_matrix: dimensions must be positive");
    if (cols % rows != 0) throw std::invalid_argument("summing_matrix: rows must divide cols");
    const int b = cols / rows;
    RMat P = RMat::Zero(rows, cols);
    for (int a = 0; a < rows; ++a) P.block(a, a * b, 1, b).setOnes();
    return P;
}

RMat haar_orthogonal(int M, Rng& rng) {
    if (M < 1) throw std::invalid_argument("haar_orthogonal: M must be positive");
    RMat G(M, M);
    rng.fill_normal(G);
    Eigen::HouseholderQR<RMat> qr(G);
    RMat Q = qr.householderQ() * RMat::Identity(M, M);
    const RMat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < M; ++j)
        if (R(j, j) < 0) Q.col(j) = -Q.col(j);
    return Q;
}

RVec chipping_sequence(int W, Rng& rng) {
    if (W < 1) throw std::invalid_argument("chipping_sequence: W must be positive");
    RVec d(W);
    for (int i = 0; i < W; ++i) d[i] = rng.sign();
    return d;
}

OperatorSet build_operator_set(const GridConfig& cfg, Rng& rng) {
    cfg.validate();
    OperatorSet ops;
    ops.cfg = cfg;
    ops.F = dft_matrix(cfg.W);
    ops.T = lpf_diag(cfg.W);
    ops.D = chipping_sequence(cfg.W, rng);
    ops.A = haar_orthogonal(cfg.M, rng);
    const CMat DF = ops.D.asDiagonal() * ops.F;
    ops.Q1 = summing_matrix(cfg.Omega, cfg.W) * DF;
    ops.Q2 = summing_matrix(cfg.Delta, cfg.W) * DF;
    return ops;
}

OperatorSet build_operator_set(const GridConfig& cfg) {
    Rng rng(cfg.seed);
    return build_operator_set(cfg, rng);
}

double operator_norm(const CMat& X) {
    Eigen::JacobiSVD<CMat> svd(X);
    return svd.singularValues()[0];
}

}  // namespace scsamp
