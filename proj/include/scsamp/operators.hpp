#pragma once

#include "scsamp/rng.hpp"
#include "scsamp/types.hpp"

namespace scsamp {

// Frequencies of the centered window in storage order: slot a holds frequency
// a for a <= ceil((W-1)/2) and a - W otherwise. Under this order the DFT
// matrix is symmetric, so X = CF*, the per-chip integrals, and Y = A H Q*
// hold simultaneously without extra permutations.
IVec freq_window(int W);

// Storage slot of a frequency from the centered window.
int freq_slot(int omega, int W);

CMat dft_matrix(int W);

// Diagonal entries of the integrate-and-dump filter T; the omega = 0 entry is
// the analytic limit 1/W.
CVec lpf_diag(int W);

RMat summing_matrix(int rows, int cols);

RMat haar_orthogonal(int M, Rng& rng);

// Diagonal entries of the chipping matrix D, each independently +-1.
RVec chipping_sequence(int W, Rng& rng);

struct OperatorSet {
    GridConfig cfg;
    CMat F;   // W x W
    CVec T;   // diagonal of the LPF matrix
    RVec D;   // diagonal of the chipping matrix
    RMat A;   // M x M orthogonal
    CMat Q1;  // Omega x W
    CMat Q2;  // Delta x W

    RMat a1() const { return A.topRows(cfg.M1); }
    RMat a2() const { return A.bottomRows(cfg.M2); }
};

OperatorSet build_operator_set(const GridConfig& cfg, Rng& rng);
OperatorSet build_operator_set(const GridConfig& cfg);  // seeds from cfg.seed

double operator_norm(const CMat& X);

}  // namespace scsamp
