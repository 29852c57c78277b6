#pragma once

#include <complex>
#include <cstdint>
#include <Eigen/Dense>

namespace scsamp {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using IVec = Eigen::VectorXi;
using cplx = std::complex<double>;

inline constexpr double kSuccessThreshold = 1e-3;

struct GridConfig {
    int M = 0;
    int W = 0;
    int M1 = 0;
    int M2 = 0;
    int Omega = 0;
    int Delta = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

int default_m2(int R, int W);

}  // namespace scsamp
