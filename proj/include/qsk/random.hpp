#pragma once

// Counter-based random streams and random matrix ensembles.
//
// A stream is identified by (seed, stream id); the n-th draw is a pure hash of
// (seed, stream, n), so splitting work across threads by stream id gives the
// same numbers regardless of scheduling.

#include <cstdint>

#include "qsk/linalg.hpp"

namespace qsk {

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(mix(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))) {}

    std::uint64_t next_u64() noexcept { return mix(key_ + 0xD1B54A32D192ED03ULL * ++counter_); }

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept;

    double normal() noexcept;
    Complex complex_normal() noexcept;

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
[[nodiscard]] ComplexMatrix haar_unitary(Eigen::Index n, CounterRng& rng);

/// Uniformly random unit vector in C^n.
[[nodiscard]] StateVector random_state(Eigen::Index n, CounterRng& rng);

/// G diag(w^{j_c}) G^dag with Haar G and i.i.d. uniform j_c in [0, d).
[[nodiscard]] ComplexMatrix random_order_d_observable(Eigen::Index n, int d, CounterRng& rng);

/// Random Hermitian matrix with unit Frobenius norm.
[[nodiscard]] ComplexMatrix random_hermitian(Eigen::Index n, CounterRng& rng);

/// exp(i * eps * H) X exp(-i * eps * H) for a random unit-norm Hermitian H.
/// Keeps X^d = I while moving its eigenbasis by O(eps).
[[nodiscard]] ComplexMatrix perturb_observable(const ComplexMatrix& x, double eps, CounterRng& rng);

}  // namespace qsk
