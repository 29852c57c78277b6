#include "scsamp/recovery.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace scsamp {

CMat column_space_measurements(const MeasurementSet& meas, const OperatorSet& ops) {
    const GridConfig& cfg = ops.cfg;
    if (cfg.Delta % cfg.Omega != 0)
        throw std::invalid_argument("column_space_measurements: Omega must divide Delta");
    if (meas.Y1.rows() != cfg.M1 || meas.Y1.cols() != cfg.Omega || meas.Y2.rows() != cfg.M2 ||
        meas.Y2.cols() != cfg.Delta)
        throw std::invalid_argument("column_space_measurements: measurement shapes do not match config");
    CMat stacked(cfg.M, cfg.Omega);
    stacked.topRows(cfg.M1) = meas.Y1;
    stacked.bottomRows(cfg.M2) =
        meas.Y2 * summing_matrix(cfg.Omega, cfg.Delta).transpose();
    return ops.A.transpose() * stacked;
}

CMat column_basis(const CMat& Yc, int R) {
    if (R < 1 || R > std::min(Yc.rows(), Yc.cols()))
        throw std::invalid_argument("column_basis: need 1 <= R <= min(M, Omega)");
    Eigen::BDCSVD<CMat> svd(Yc, Eigen::ComputeThinU);
    CMat L = svd.matrixU().leftCols(R);
    for (int j = 0; j < R; ++j) {
        for (Eigen::Index i = 0; i < L.rows(); ++i) {
            const double mag = std::abs(L(i, j));
            if (mag > 1e-12) {
                L.col(j) *= std::conj(L(i, j)) / mag;
                break;
            }
        }
    }
    return L;
}

CMat solve_s(const CMat& Yr, const RMat& A2, const CMat& L_R) {
    if (A2.rows() < L_R.cols()) throw std::invalid_argument("solve_s: need M2 >= R");
    if (A2.cols() != L_R.rows()) throw std::invalid_argument("solve_s: A2 and L_R dimensions differ");
    if (Yr.rows() != A2.rows()) throw std::invalid_argument("solve_s: Yr rows must equal M2");
    const CMat G = A2.cast<cplx>() * L_R;
    Eigen::BDCSVD<CMat> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues().minCoeff();
    if (smin < 1e-10) {
        std::ostringstream msg;
        msg << "solve_s: A2 L_R ill conditioned, sigma_min = " << smin;
        throw std::domain_error(msg.str());
    }
    return svd.solve(Yr);
}

CMat reconstruct_nyquist(const CMat& H_hat, const CVec& T, const CMat& F) {
    if (H_hat.cols() != T.size() || F.rows() != T.size())
        throw std::invalid_argument("reconstruct_nyquist: dimension mismatch");
    return H_hat * T.cwiseInverse().asDiagonal() * F.adjoint();
}

RecoveryResult full_pipeline(const MeasurementSet& meas, const OperatorSet& ops, int R,
                             const L1SolverParams& params) {
    const GridConfig& cfg = ops.cfg;
    if (R < 1) throw std::invalid_argument("full_pipeline: R must be at least 1");
    if (cfg.M2 < R) throw std::invalid_argument("full_pipeline: need M2 >= R");
    if (R > std::min(cfg.M, cfg.Omega))
        throw std::invalid_argument("full_pipeline: need R <= min(M, Omega)");

    RecoveryResult rec;
    rec.Yc = column_space_measurements(meas, ops);
    Eigen::BDCSVD<CMat> svd(rec.Yc, Eigen::ComputeThinU);
    rec.yc_singular_values = svd.singularValues();
    const double s1 = rec.yc_singular_values[0];
    rec.rank_deficient = (s1 <= 0.0) || (rec.yc_singular_values[R - 1] < 1e-12 * s1);
    rec.L_R = svd.matrixU().leftCols(R);
    for (int j = 0; j < R; ++j) {
        for (Eigen::Index i = 0; i < rec.L_R.rows(); ++i) {
            const double mag = std::abs(rec.L_R(i, j));
            if (mag > 1e-12) {
                rec.L_R.col(j) *= std::conj(rec.L_R(i, j)) / mag;
                break;
            }
        }
    }

    L1Result l1 = row_sparse_recover(meas.Y2, ops.Q2, meas.delta2, params);
    rec.Yr = std::move(l1.Z);
    rec.row_diags = std::move(l1.rows);
    rec.l1_total_iterations = l1.total_iterations;
    rec.l1_converged = l1.converged;

    rec.S_mat = solve_s(rec.Yr, ops.a2(), rec.L_R);
    rec.H_hat = rec.L_R * rec.S_mat;
    rec.X_hat = reconstruct_nyquist(rec.H_hat, ops.T, ops.F);
    return rec;
}

int estimate_rank(const CMat& Yc) {
    Eigen::BDCSVD<CMat> svd(Yc);
    const RVec s = svd.singularValues();
    if (s.size() < 2 || s[0] <= 0.0) return s.size() >= 1 && s[0] > 0.0 ? 1 : 0;
    int best = 1;
    double best_gap = 0.0;
    for (int k = 0; k + 1 < s.size(); ++k) {
        const double gap = s[k] / std::max(s[k + 1], 1e-300);
        if (gap > best_gap) {
            best_gap = gap;
            best = k + 1;
        }
    }
    return best;
}

}  // namespace scsamp
