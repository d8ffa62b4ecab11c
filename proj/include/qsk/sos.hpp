#pragma once

// Sum-of-squares certificates for the SATWAP operator and the algebraic
// identities that follow from them at the maximal violation.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qsk/bell.hpp"
#include "qsk/linalg.hpp"
#include "qsk/report.hpp"

namespace qsk {

enum class CombinationSide {
    Bob,    // C_i^(k), combinations of Bob's observables
    Alice,  // Cbar_i^(k), combinations of Alice's observables
};

struct COperatorSet {
    int d = 0;
    CombinationSide side = CombinationSide::Bob;
    std::array<std::vector<ComplexMatrix>, 2> ops;  // ops[i-1][k-1]

    /// i in {1, 2}, k in [1, d).
    [[nodiscard]] const ComplexMatrix& at(int i, int k) const;
    /// max ||C_i^(d-k) - (C_i^(k))^dag||_F.
    [[nodiscard]] double adjoint_symmetry_error() const;
};

/// C1^(k) = a_k B1^{-k} + a_k* w^k B2^{-k},  C2^(k) = a_k* B1^{-k} + a_k B2^{-k}.
[[nodiscard]] COperatorSet c_operators(const ComplexMatrix& b1, const ComplexMatrix& b2, int d,
                                       const Tolerances& tol = {});

/// Cbar1^(k) = a_k* A1^{-k} + a_k A2^{-k},  Cbar2^(k) = w^{-k} a_k A1^{-k} + a_k* A2^{-k}.
[[nodiscard]] COperatorSet cbar_operators(const ComplexMatrix& a1, const ComplexMatrix& a2, int d,
                                          const Tolerances& tol = {});

/// Operator forms of C^(k) = (C^(1))^k, C^(d-k) C^(k) = I and the adjoint
/// symmetry.
[[nodiscard]] CheckList check_c_relations(const COperatorSet& c, double tol = 1e-9);

struct SosResidual {
    double operator_identity = 0.0;         // ||beta_Q I - B_d - 1/2 sum P^dag P||_F
    std::vector<double> stabilizers;       // ||P_{i,k}|psi>||, index (i-1)*(d-1) + (k-1)
    [[nodiscard]] double max_stabilizer() const;
};

/// P_{i,k} = I - A_i^k (x) C_i^(k).
[[nodiscard]] SosResidual sos_residual_bob(const Realization& r, const Tolerances& tol = {});

/// Pbar_{i,k} = I - Cbar_i^(k) (x) B_i^k.
[[nodiscard]] SosResidual sos_residual_alice(const Realization& r, const Tolerances& tol = {});

/// ||B1^k B2^{-k} - w^{-k} B2^k B1^{-k}||_F for one integer k (any sign).
[[nodiscard]] double commutation_residual(const ComplexMatrix& b1, const ComplexMatrix& b2, int d,
                                          int k, const Tolerances& tol = {});

/// Maximum of commutation_residual over k in [1, d).
[[nodiscard]] double check_commutation_relation(const ComplexMatrix& b1, const ComplexMatrix& b2,
                                                int d, const Tolerances& tol = {});

struct TraceReport {
    std::vector<std::pair<int, double>> entries;  // (n, |Tr(B^n)|) per proper divisor n
    double tolerance = 1e-8;
    bool pass = true;
    std::optional<int> witness;  // first divisor with |Tr(B^n)| > tolerance
};

[[nodiscard]] TraceReport check_trace_conditions(const ComplexMatrix& b, int d, double tol = 1e-8,
                                                 const Tolerances& num = {});

/// The trace identities implied by the twisted commutation relation:
///   Tr(B1^x) = w^{sx} Tr(B1^{(2s+1)x} B2^{-2sx}),
///   Tr(B2^y) = w^{sy} Tr(B1^{2sy} B2^{(1-2s)y}),
///   Tr(B1^x) = w^{-x/2} Tr(B2^x) for 1 <= x <= floor(d/2),
///   Tr(B1^{-x} B2^{2x}) = w^x Tr(B1^x),
/// sampled over s in [0, s_max] and x, y in [0, d).
[[nodiscard]] CheckList check_intermediate_identities(const ComplexMatrix& b1, const ComplexMatrix& b2,
                                                      int d, int s_max = 3, double tol = 1e-8,
                                                      const Tolerances& num = {});

/// sum_{j != i} (1 - w^{k(j-i)})/(1 - w^{i-j}) = k and
/// sum_k k w^{kn} = d/(w^n - 1).
[[nodiscard]] CheckList check_root_identities(int d, double tol = 1e-8);

/// Block equations for B2 = sum |i><j| (x) F_ij written in a basis where
/// B1 = Z_d (x) I_aux. Throws std::invalid_argument if B2 is not
/// (d * aux_dim)-dimensional.
[[nodiscard]] CheckList check_fij_structure(const ComplexMatrix& b2, int d, Eigen::Index aux_dim,
                                            double tol = 1e-9, const Tolerances& num = {});

/// Block (i, j) of size m x m.
[[nodiscard]] ComplexMatrix block(const ComplexMatrix& m, Eigen::Index i, Eigen::Index j,
                                  Eigen::Index size);

}  // namespace qsk
