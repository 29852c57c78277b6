#pragma once

#include <utility>
#include <vector>

#include "scsamp/types.hpp"

namespace scsamp {

struct ArrayConfig {
    int M = 1;               // element count
    double omega_c = 0.0;    // carrier frequency, Hz
    double w_band = 0.0;     // bandwidth, Hz
    double theta = 0.0;      // incidence angle, radians
    double spacing = 1.0;    // in units of carrier half wavelength
    double c = 299792458.0;  // propagation speed, m/s
    int n_quad = 512;

    void validate() const;
};

// a_m = exp(-i 2 pi omega d_m sin(theta) / c), d_m = m * spacing * c / (2 omega_c).
CVec steering_vector(const ArrayConfig& cfg, double omega);

// Gauss-Legendre quadrature of a(theta, omega) a(theta, omega)* over the band
// [omega_c - w_band/2, omega_c + w_band/2] with cfg.n_quad nodes.
CMat raa_matrix(const ArrayConfig& cfg);

// Eigenvalues sorted descending and normalized to lambda_1 = 1; input must be
// Hermitian to 1e-10 relative.
RVec eigen_decay(const CMat& Raa);

int count_above(const RVec& decay, double threshold);

double effective_dimension(const ArrayConfig& cfg);  // M w_band / omega_c + 1

// Nodes and weights on [-1, 1].
std::pair<RVec, RVec> gauss_legendre(int n);

}  // namespace scsamp
