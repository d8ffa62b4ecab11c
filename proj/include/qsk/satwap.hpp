#pragma once

// The two-setting, d-outcome SATWAP functional
//   I_d = sum_k ( a_k <A1^k B1^{d-k}> + a_k* w^k <A1^k B2^{d-k}>
//               + a_k* <A2^k B1^{d-k}> + a_k <A2^k B2^{d-k}> ).

#include <vector>

#include "qsk/bell.hpp"
#include "qsk/linalg.hpp"

namespace qsk {

/// a_k = exp(i*pi*(2k - d)/(4d)) / sqrt(2), 1 <= k <= d-1.
[[nodiscard]] Complex coefficient_a(int d, int k);

class BellFunctional {
public:
    explicit BellFunctional(int d);

    [[nodiscard]] int d() const { return d_; }
    [[nodiscard]] Complex a(int k) const { return a_.at(static_cast<std::size_t>(k - 1)); }

    /// Coefficient of <A_x^k B_y^{d-k}>, settings zero-based.
    [[nodiscard]] Complex coefficient(int x, int y, int k) const;

    /// Complex value of the functional on a correlator tensor, before the
    /// reality check in `evaluate`.
    [[nodiscard]] Complex evaluate_complex(const CorrelatorTensor& c) const;

    /// Throws std::domain_error if |Im| > imag_tol.
    [[nodiscard]] double evaluate(const CorrelatorTensor& c, double imag_tol = 1e-9) const;

private:
    int d_;
    std::vector<Complex> a_;
};

[[nodiscard]] BellFunctional satwap_functional(int d);

[[nodiscard]] double classical_bound(int d);
[[nodiscard]] double quantum_bound(int d);

/// Sum of the functional's terms with the realization's observables
/// substituted; acts on H_A (x) H_B.
[[nodiscard]] ComplexMatrix bell_operator(const BellFunctional& f, const Realization& r,
                                          const Tolerances& tol = {});

/// t_{abxy} with I = sum t_{abxy} p(a,b|x,y). Throws std::domain_error if a
/// coefficient has imaginary part above imag_tol.
[[nodiscard]] ProbabilityFunctional probability_form(const BellFunctional& f,
                                                     double imag_tol = 1e-12);

/// Convenience: correlators of r, then evaluate.
[[nodiscard]] double satwap_value(const Realization& r, const Tolerances& tol = {});

}  // namespace qsk
