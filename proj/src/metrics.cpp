#include "scsamp/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace scsamp {

double coherence(const CMat& H, int R, const CMat& F) {
    const int W = static_cast<int>(H.cols());
    if (F.rows() != W || F.cols() != W)
        throw std::invalid_argument("coherence: F must be W x W");
    if (R < 1 || R > std::min<int>(static_cast<int>(H.rows()), W))
        throw std::invalid_argument("coherence: need 1 <= R <= min(M, W)");
    Eigen::BDCSVD<CMat> svd(H, Eigen::ComputeThinV);
    const CMat VR = svd.matrixV().leftCols(R);
    const CMat FVR = F * VR;
    const double norm_sq = FVR.rowwise().squaredNorm().maxCoeff();
    return static_cast<double>(W) / R * norm_sq;
}

double relative_error(const CMat& H_hat, const CMat& H) {
    if (H_hat.rows() != H.rows() || H_hat.cols() != H.cols())
        throw std::invalid_argument("relative_error: shape mismatch");
    const double denom = H.norm();
    if (denom == 0.0) throw std::invalid_argument("relative_error: ground truth is zero");
    return (H_hat - H).norm() / denom;
}

std::int64_t cumulative_sampling_rate(int M1, int Omega, int M2, int Delta) {
    return static_cast<std::int64_t>(M1) * Omega + static_cast<std::int64_t>(M2) * Delta;
}

double sampling_efficiency(int M, int S, int R, int M1, int Omega, int M2, int Delta) {
    const std::int64_t csr = cumulative_sampling_rate(M1, Omega, M2, Delta);
    if (csr <= 0) throw std::invalid_argument("sampling_efficiency: CSR must be positive");
    const std::int64_t dof = static_cast<std::int64_t>(R) * (M + S - R);
    return static_cast<double>(dof) / static_cast<double>(csr);
}

double compression_factor(int M, int W, int M1, int Omega, int M2, int Delta) {
    const std::int64_t nyq = static_cast<std::int64_t>(M) * W;
    if (nyq <= 0) throw std::invalid_argument("compression_factor: MW must be positive");
    const std::int64_t csr = cumulative_sampling_rate(M1, Omega, M2, Delta);
    return static_cast<double>(csr) / static_cast<double>(nyq);
}

SingularDiagnostics singular_diagnostics(const CMat& Q1, const CMat& V_R, const RMat& A2,
                                         const CMat& L_R) {
    if (Q1.cols() != V_R.rows())
        throw std::invalid_argument("singular_diagnostics: Q1 and V_R dimensions differ");
    if (A2.cols() != L_R.rows())
        throw std::invalid_argument("singular_diagnostics: A2 and L_R dimensions differ");
    SingularDiagnostics d;
    {
        Eigen::BDCSVD<CMat> svd(Q1 * V_R);
        d.q1vr_min = svd.singularValues().minCoeff();
        d.q1vr_max = svd.singularValues().maxCoeff();
    }
    {
        Eigen::BDCSVD<CMat> svd(A2.cast<cplx>() * L_R);
        d.a2lr_min = svd.singularValues().minCoeff();
        d.a2lr_max = svd.singularValues().maxCoeff();
    }
    d.q1vr_in_bounds = d.q1vr_min >= std::sqrt(0.5) && d.q1vr_max <= std::sqrt(1.5);
    const double root = std::sqrt(static_cast<double>(A2.rows()) / A2.cols());
    d.a2lr_in_bounds = d.a2lr_min >= 0.5 * root && d.a2lr_max <= 2.0 * root;
    return d;
}

}  // namespace scsamp
