#pragma once

// Bell-scenario bookkeeping: probability tensors p(a,b|x,y), their Fourier
// correlators <A_x^k B_y^l>, deterministic strategies and finite-shot sampling.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qsk/linalg.hpp"

namespace qsk {

struct Scenario {
    int d = 2;  // outcomes per measurement
    int m = 2;  // measurements per party

    void validate() const;
    [[nodiscard]] std::size_t settings() const { return static_cast<std::size_t>(m * m); }
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// p(a,b|x,y), settings and outcomes zero-based.
class CorrelationTensor {
public:
    CorrelationTensor() = default;
    explicit CorrelationTensor(Scenario s);

    [[nodiscard]] const Scenario& scenario() const { return scenario_; }
    [[nodiscard]] double operator()(int x, int y, int a, int b) const { return p_[offset(x, y, a, b)]; }
    double& operator()(int x, int y, int a, int b) { return p_[offset(x, y, a, b)]; }
    [[nodiscard]] const std::vector<double>& values() const { return p_; }

    /// Largest deviation from normalization / positivity over all settings.
    [[nodiscard]] double normalization_error() const;
    /// Throws std::invalid_argument when normalization_error() > tol.
    void validate(double tol = 1e-9) const;
    [[nodiscard]] double max_abs_difference(const CorrelationTensor& other) const;

private:
    [[nodiscard]] std::size_t offset(int x, int y, int a, int b) const {
        const auto d = static_cast<std::size_t>(scenario_.d);
        return ((static_cast<std::size_t>(x) * static_cast<std::size_t>(scenario_.m) +
                 static_cast<std::size_t>(y)) * d + static_cast<std::size_t>(a)) * d +
               static_cast<std::size_t>(b);
    }

    Scenario scenario_;
    std::vector<double> p_;
};

/// <A_x^k B_y^l>, k,l in [0,d).
class CorrelatorTensor {
public:
    CorrelatorTensor() = default;
    explicit CorrelatorTensor(Scenario s);

    [[nodiscard]] const Scenario& scenario() const { return scenario_; }
    [[nodiscard]] Complex operator()(int x, int y, int k, int l) const { return v_[offset(x, y, k, l)]; }
    Complex& operator()(int x, int y, int k, int l) { return v_[offset(x, y, k, l)]; }

    /// max |<A^{d-k}B^{d-l}> - conj(<A^k B^l>)| and |<A^0 B^0> - 1|.
    [[nodiscard]] double symmetry_error() const;
    [[nodiscard]] double max_abs_difference(const CorrelatorTensor& other) const;

private:
    [[nodiscard]] std::size_t offset(int x, int y, int k, int l) const {
        const auto d = static_cast<std::size_t>(scenario_.d);
        return ((static_cast<std::size_t>(x) * static_cast<std::size_t>(scenario_.m) +
                 static_cast<std::size_t>(y)) * d + static_cast<std::size_t>(k)) * d +
               static_cast<std::size_t>(l);
    }

    Scenario scenario_;
    std::vector<Complex> v_;
};

/// A bipartite pure state with two order-d observables per party. Amplitude
/// index is iA * dimB + iB.
struct Realization {
    int d = 2;
    StateVector state;
    std::array<ComplexMatrix, 2> A;
    std::array<ComplexMatrix, 2> B;

    [[nodiscard]] Eigen::Index dim_a() const { return A[0].rows(); }
    [[nodiscard]] Eigen::Index dim_b() const { return B[0].rows(); }
    [[nodiscard]] Scenario scenario() const { return {d, 2}; }

    /// Shapes, state normalization, and order-d property of all observables.
    void validate(const Tolerances& tol = {}) const;
};

/// Outcome per setting for each party.
struct DeterministicStrategy {
    std::vector<int> a;  // a[x]
    std::vector<int> b;  // b[y]
};

/// A linear functional t . p on probability tensors, I = sum t_{abxy} p(a,b|x,y).
class ProbabilityFunctional {
public:
    ProbabilityFunctional() = default;
    explicit ProbabilityFunctional(Scenario s) : coefficients_(s) {}

    [[nodiscard]] const Scenario& scenario() const { return coefficients_.scenario(); }
    [[nodiscard]] double operator()(int x, int y, int a, int b) const { return coefficients_(x, y, a, b); }
    double& operator()(int x, int y, int a, int b) { return coefficients_(x, y, a, b); }

    [[nodiscard]] double evaluate(const CorrelationTensor& p) const;
    [[nodiscard]] double evaluate(const DeterministicStrategy& s) const;

private:
    // Same index layout as a probability tensor, without normalization.
    CorrelationTensor coefficients_;
};

[[nodiscard]] CorrelationTensor born_probabilities(const Realization& r, const Tolerances& tol = {});

/// <A_x^k B_y^l> = sum_{a,b} w^{ak+bl} p(a,b|x,y).
[[nodiscard]] CorrelatorTensor correlators_from_probabilities(const CorrelationTensor& t);

/// Inverse transform: p(a,b|x,y) = d^-2 sum_{k,l} w^{-ak-bl} <A_x^k B_y^l>.
/// Imaginary residue is dropped.
[[nodiscard]] CorrelationTensor probabilities_from_correlators(const CorrelatorTensor& c);

/// <psi| A_x^k (x) B_y^l |psi> by direct matrix powers.
[[nodiscard]] CorrelatorTensor correlators_from_realization(const Realization& r,
                                                            const Tolerances& tol = {});

[[nodiscard]] CorrelationTensor deterministic_correlations(const Scenario& s,
                                                           const DeterministicStrategy& strategy);

struct LocalBound {
    double value = 0.0;
    DeterministicStrategy argmax;
    std::uint64_t strategies = 0;
};

inline constexpr int kDefaultEnumerationCap = 12;

/// Exact maximum of f over all d^(2m) deterministic strategies. Throws
/// std::invalid_argument when d exceeds `cap`.
[[nodiscard]] LocalBound local_bound_bruteforce(const ProbabilityFunctional& f,
                                                int cap = kDefaultEnumerationCap);

struct SampledStatistics {
    CorrelationTensor frequencies;  // unsampled settings are filled with 1/d^2
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> setting_counts;  // index x * m + y
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::uint64_t count(int x, int y, int a, int b) const;
};

/// i.i.d. rounds with uniformly random settings; outcomes drawn from the Born
/// rule. Deterministic given (shots, seed) regardless of QSK_THREADS.
[[nodiscard]] SampledStatistics sample_statistics(const Realization& r, std::uint64_t shots,
                                                  std::uint64_t seed);

/// Same sampling, from a precomputed probability tensor.
[[nodiscard]] SampledStatistics sample_statistics(const CorrelationTensor& p, std::uint64_t shots,
                                                  std::uint64_t seed);

}  // namespace qsk
