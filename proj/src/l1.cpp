#include "scsamp/l1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scsamp/operators.hpp"

namespace scsamp {

namespace {

void soft_threshold_rows(CMat& X, const RVec& t) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        if (t[i] <= 0.0) continue;
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            const double mag = std::abs(X(i, j));
            X(i, j) = (mag <= t[i]) ? cplx(0.0, 0.0) : X(i, j) * (1.0 - t[i] / mag);
        }
    }
}

void soft_threshold_columns(CMat& X, double t) {
    if (t <= 0.0) return;
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double mag = X.col(j).norm();
        if (mag <= t)
            X.col(j).setZero();
        else
            X.col(j) *= 1.0 - t / mag;
    }
}

// Accelerated proximal gradient on 0.5||Z Q2^H - Y||_F^2 + sum_i lam_i ||Z_i||_1
// (or + lam ||Z||_{1,2} in joint mode), all rows at once.
int fista(CMat& X, const CMat& Y, const CMat& Q2, const CMat& Q2h, double step,
          const RVec& lam, bool joint, int max_iter, double tol) {
    CMat Z = X;
    double tk = 1.0;
    int it = 0;
    for (it = 0; it < max_iter; ++it) {
        CMat G = (Z * Q2h - Y) * Q2;
        CMat Xn = Z - step * G;
        if (joint)
            soft_threshold_columns(Xn, step * lam.maxCoeff());
        else
            soft_threshold_rows(Xn, step * lam);
        const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        Z = Xn + ((tk - 1.0) / tn) * (Xn - X);
        const double dx = (Xn - X).norm();
        const double nx = Xn.norm();
        X = std::move(Xn);
        tk = tn;
        if (dx <= tol * std::max(nx, 1e-300)) return it + 1;
    }
    return it;
}

RVec row_residuals(const CMat& X, const CMat& Y, const CMat& Q2h) {
    return (X * Q2h - Y).rowwise().norm();
}

void debias_rows(CMat& X, const CMat& Y, const CMat& Q2, std::vector<L1RowDiag>& diags) {
    const auto De = Q2.rows();
    const CMat Q2conj = Q2.conjugate();
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        double peak = 0.0;
        for (Eigen::Index j = 0; j < X.cols(); ++j) peak = std::max(peak, std::abs(X(i, j)));
        if (peak == 0.0) continue;
        std::vector<std::pair<double, Eigen::Index>> mags;
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            const double m = std::abs(X(i, j));
            if (m > 1e-3 * peak) mags.emplace_back(m, j);
        }
        if (static_cast<Eigen::Index>(mags.size()) > De) {
            std::sort(mags.begin(), mags.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            mags.resize(De);
        }
        CMat Phi(De, static_cast<Eigen::Index>(mags.size()));
        for (std::size_t k = 0; k < mags.size(); ++k) Phi.col(k) = Q2conj.col(mags[k].second);
        const CVec sol = Phi.colPivHouseholderQr().solve(Y.row(i).transpose());
        X.row(i).setZero();
        for (std::size_t k = 0; k < mags.size(); ++k) X(i, mags[k].second) = sol[k];
        diags[i].residual = (Phi * sol - Y.row(i).transpose()).norm();
    }
}

}  // namespace

void L1SolverParams::validate() const {
    if (max_iter < 1) throw std::invalid_argument("L1SolverParams: max_iter must be at least 1");
    if (!(fista_tol > 0.0 && fista_tol < 1.0))
        throw std::invalid_argument("L1SolverParams: fista_tol must lie in (0, 1)");
    if (!(tol_residual > 0.0 && tol_residual < 1.0))
        throw std::invalid_argument("L1SolverParams: tol_residual must lie in (0, 1)");
    if (!(lambda_min_factor > 0.0 && lambda_min_factor < 1.0))
        throw std::invalid_argument("L1SolverParams: lambda_min_factor must lie in (0, 1)");
    if (bisection_steps < 1) throw std::invalid_argument("L1SolverParams: bisection_steps must be at least 1");
}

L1Result row_sparse_recover(const CMat& Y2, const CMat& Q2, double delta2,
                            const L1SolverParams& params) {
    params.validate();
    if (Y2.cols() != Q2.rows())
        throw std::invalid_argument("row_sparse_recover: Y2 columns must match Q2 rows");
    if (delta2 < 0.0) throw std::invalid_argument("row_sparse_recover: delta2 must be nonnegative");

    const auto M2 = Y2.rows();
    const auto W = Q2.cols();
    const CMat Q2h = Q2.adjoint();
    const double nq = operator_norm(Q2);
    const double step = nq > 0.0 ? 1.0 / (nq * nq) : 1.0;

    L1Result out;
    out.Z = CMat::Zero(M2, W);
    out.rows.assign(M2, L1RowDiag{});

    RVec lam_max(M2);
    {
        const RMat corr = (Y2 * Q2).cwiseAbs();
        for (Eigen::Index i = 0; i < M2; ++i) lam_max[i] = corr.row(i).maxCoeff();
    }
    if (lam_max.maxCoeff() == 0.0) return out;  // zero data: zero is the minimizer

    if (delta2 == 0.0) {
        RVec lam = 0.5 * lam_max;
        const RVec floor_lam = params.lambda_min_factor * lam_max;
        bool last_converged = false;
        while (true) {
            const int it = fista(out.Z, Y2, Q2, Q2h, step, lam, params.joint, params.max_iter,
                                 params.fista_tol);
            out.total_iterations += it;
            last_converged = it < params.max_iter;
            bool at_floor = true;
            for (Eigen::Index i = 0; i < M2; ++i)
                if (lam[i] > floor_lam[i] * (1.0 + 1e-12)) at_floor = false;
            if (at_floor) break;
            lam = (0.1 * lam).cwiseMax(floor_lam);
        }
        const RVec res = row_residuals(out.Z, Y2, Q2h);
        for (Eigen::Index i = 0; i < M2; ++i) {
            out.rows[i].lambda = lam_max[i] > 0 ? floor_lam[i] : 0.0;
            out.rows[i].residual = res[i];
            out.rows[i].iterations = out.total_iterations;
            out.rows[i].converged = last_converged;
        }
        if (params.debias && !params.joint) {
            debias_rows(out.Z, Y2, Q2, out.rows);
            // Basis-pursuit limit: what must hold as lambda -> 0 is feasibility,
            // so convergence means the debiased row reproduces its data.
            for (Eigen::Index i = 0; i < M2; ++i)
                out.rows[i].converged =
                    out.rows[i].residual <= 1e-6 * Y2.row(i).norm() + 1e-12;
        }
        out.converged = true;
        for (const auto& r : out.rows) out.converged = out.converged && r.converged;
        return out;
    }

    // Noisy path: per-row budget, bisection on lambda against the monotone
    // residual(lambda) curve, warm-started batched solves.
    const double budget = delta2 / std::sqrt(static_cast<double>(M2));
    RVec lam = 0.5 * lam_max;
    RVec lo = RVec::Zero(M2);
    RVec hi = RVec::Constant(M2, std::numeric_limits<double>::infinity());
    std::vector<bool> done(M2, false);
    for (Eigen::Index i = 0; i < M2; ++i)
        if (lam_max[i] == 0.0) done[i] = true;

    RVec res(M2);
    for (int outer = 0; outer < params.bisection_steps; ++outer) {
        const int it =
            fista(out.Z, Y2, Q2, Q2h, step, lam, params.joint, params.max_iter, params.fista_tol);
        out.total_iterations += it;
        res = row_residuals(out.Z, Y2, Q2h);
        bool all_done = true;
        for (Eigen::Index i = 0; i < M2; ++i) {
            if (done[i]) continue;
            if (res[i] <= budget) {
                lo[i] = std::max(lo[i], lam[i]);
                if (res[i] >= (1.0 - params.tol_residual) * budget) {
                    done[i] = true;
                    continue;
                }
                lam[i] = std::isinf(hi[i]) ? 2.0 * lam[i] : 0.5 * (lam[i] + hi[i]);
            } else {
                hi[i] = std::min(hi[i], lam[i]);
                lam[i] = lo[i] > 0.0 ? 0.5 * (lo[i] + hi[i]) : 0.5 * lam[i];
            }
            all_done = false;
        }
        if (all_done) break;
    }
    res = row_residuals(out.Z, Y2, Q2h);
    for (Eigen::Index i = 0; i < M2; ++i) {
        out.rows[i].lambda = lam[i];
        out.rows[i].residual = res[i];
        out.rows[i].iterations = out.total_iterations;
        out.rows[i].converged = res[i] <= budget * (1.0 + 1e-9);
        if (!out.rows[i].converged) out.converged = false;
    }
    return out;
}

KktReport l1_kkt_certificate(const CMat& Z, const CMat& Y2, const CMat& Q2,
                             const std::vector<L1RowDiag>& rows, double active_threshold) {
    const CMat corr = (Y2 - Z * Q2.adjoint()) * Q2;
    KktReport rep;
    for (Eigen::Index i = 0; i < Z.rows(); ++i) {
        const double lam = rows[static_cast<std::size_t>(i)].lambda;
        if (lam <= 0.0) continue;
        for (Eigen::Index j = 0; j < Z.cols(); ++j) {
            const double mag = std::abs(Z(i, j));
            if (mag <= active_threshold) {
                rep.max_inactive_correlation =
                    std::max(rep.max_inactive_correlation, std::abs(corr(i, j)) / lam);
            } else {
                const cplx phase = Z(i, j) / mag;
                rep.max_active_misalignment =
                    std::max(rep.max_active_misalignment, std::abs(corr(i, j) - lam * phase) / lam);
            }
        }
    }
    return rep;
}

}  // namespace scsamp
