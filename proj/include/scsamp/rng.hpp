#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "scsamp/types.hpp"

namespace scsamp {

// All randomness flows through explicitly passed Rng streams. Gaussians use
// Box-Muller on top of mt19937_64 so results are identical across standard
// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1) with 53 bits
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::int64_t uniform_int(std::int64_t n);

    double normal();
    cplx complex_normal();  // re, im iid N(0, 1/2)
    double sign() { return (gen_() & 1u) ? 1.0 : -1.0; }

    void fill_normal(RMat& out);
    void fill_complex_normal(CMat& out);

    // k distinct indices from {0, ..., n-1}, ascending
    std::vector<int> sample_without_replacement(int n, int k);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Stream derivation for per-trial / per-cell seeds: collision-resistant in
// the index tuple, so concurrent trials never share a stream.
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> indices);

}  // namespace scsamp
