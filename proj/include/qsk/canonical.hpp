#pragma once

// Reference objects: Z_d, T_d, the ideal observables and state, the CGLMP
// measurements and the unitaries that relate the two families.

#include <array>

#include "qsk/bell.hpp"
#include "qsk/linalg.hpp"
#include "qsk/report.hpp"

namespace qsk {

/// diag(1, w, ..., w^{d-1}).
[[nodiscard]] ComplexMatrix z_observable(int d);

/// T_d = sum_i w^{i+1/2}|i><i| - (2/d) sum_{ij} (-1)^{[i=0]+[j=0]} w^{(i+j+1)/2}|i><j|.
/// Symmetric, unitary, order d, simple spectrum.
[[nodiscard]] ComplexMatrix t_observable(int d);

/// Closed-form eigenvector of T_d with eigenvalue w^r.
[[nodiscard]] StateVector t_eigenvector(int d, int r);

/// Columns t_eigenvector(d, 0..d-1).
[[nodiscard]] ComplexMatrix t_eigenbasis(int d);

/// A1 = a1* Z - 2 (a1*)^3 T, A2 = a1 Z + a1* T.
[[nodiscard]] std::array<ComplexMatrix, 2> ideal_alice_observables(int d);

/// (1/sqrt d) sum_i |ii>.
[[nodiscard]] StateVector maximally_entangled(int d);

/// |r>_{A_k} = (1/sqrt d) sum_q w^{(r - alpha_k) q}|q>, alpha_k = (k - 1/2)/2; k in {1, 2}.
[[nodiscard]] StateVector cglmp_eigenvector_a(int d, int k, int r);
/// |r>_{B_k} = (1/sqrt d) sum_q w^{-(r - beta_k) q}|q>, beta_k = k/2; k in {1, 2}.
[[nodiscard]] StateVector cglmp_eigenvector_b(int d, int k, int r);

struct CglmpObservables {
    std::array<ComplexMatrix, 2> A;
    std::array<ComplexMatrix, 2> B;
};

/// sum_r w^r |r><r| over each CGLMP eigenbasis.
[[nodiscard]] CglmpObservables cglmp_observables(int d);

struct StructuralUnitaries {
    ComplexMatrix F;   // DFT, (1/sqrt d) w^{ij}
    ComplexMatrix Y;   // diag((-1)^{1-[j=0]} w^{(d-j)/2})
    ComplexMatrix S;   // |j><d-1-j|
    ComplexMatrix M1;  // diag(w^{j/4})
    ComplexMatrix M2;  // diag(w^{j/2})
};

[[nodiscard]] StructuralUnitaries structural_unitaries(int d);

struct WPair {
    ComplexMatrix W1;  // M1^dag F Y^dag
    ComplexMatrix W2;  // S M2^dag F Y^dag
};

[[nodiscard]] WPair w1_w2(int d);

/// W2^T W1: conjugates (Z_d, T_d) into the ideal Alice observables.
[[nodiscard]] ComplexMatrix w_alice(int d);

/// |phi_d^+>, Alice = ideal_alice_observables, Bob = (Z_d, T_d).
[[nodiscard]] Realization ideal_realization(int d);

/// |phi_d^+> with the CGLMP observables.
[[nodiscard]] Realization cglmp_realization(int d);

/// Residuals of the W1/W2 conjugation relations and of the four
/// eigenvector phase relations:
///   W1^dag|r>_{A1} = -exp(i pi (1 - [r=0] - r/d)) |r>
///   W1^dag|r>_{A2} = |r>_T
///   W2^dag|r>_{B1} = exp(i pi (1 + (r-1)/d - [r=0])) |r>
///   W2^dag|r>_{B2} = w^{r-1} |r>_T
[[nodiscard]] CheckList check_cglmp_relations(int d, double tol = 1e-8);

/// Residuals of W_A Z W_A^dag = A1, W_A T W_A^dag = A2, and of the
/// inverse relations Z = a1 X + a1* Y', T = a1* w X + a1 Y' with X, Y' the
/// W_A conjugates of Z and T.
[[nodiscard]] CheckList check_alice_relations(int d, double tol = 1e-8);

}  // namespace qsk
