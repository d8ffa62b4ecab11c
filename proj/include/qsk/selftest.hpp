#pragma once

// Constructive self-testing: from a realization reaching 2(d-1), find local
// unitaries U_A, U_B with
//   U_B B1 U_B^dag = Z_d (x) I,  U_B B2 U_B^dag = T_d (x) I,
//   U_A A_i U_A^dag = (ideal A_i) (x) I,
//   (U_A (x) U_B)|psi> = |phi_d^+> (x) |aux>.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsk/bell.hpp"
#include "qsk/linalg.hpp"
#include "qsk/report.hpp"

namespace qsk {

struct StageLog {
    std::string stage;
    bool ok = true;
    std::string detail;
};

class ExtractionError : public std::runtime_error {
public:
    ExtractionError(std::string stage, const std::string& message, std::vector<StageLog> log = {})
        : std::runtime_error(stage + ": " + message), stage_(std::move(stage)), log_(std::move(log)) {}

    [[nodiscard]] const std::string& stage() const { return stage_; }
    [[nodiscard]] const std::vector<StageLog>& log() const { return log_; }

private:
    std::string stage_;
    std::vector<StageLog> log_;
};

struct ExtractionOptions {
    Tolerances tol;
    /// Multiplies the violation and extraction tolerances below.
    double tol_scale = 1.0;

    /// |I - 2(d-1)| allowed at the gate: 1e-6 * d.
    [[nodiscard]] double tol_violation(int d) const { return 1e-6 * d * tol_scale; }
    /// Allowed residual of each canonicalization step: 1e-7 * d.
    [[nodiscard]] double tol_extract(int d) const { return 1e-7 * d * tol_scale; }
};

struct ExtractionResult {
    int d = 0;
    ComplexMatrix U_A;
    ComplexMatrix U_B;
    Eigen::Index aux_a = 0;
    Eigen::Index aux_b = 0;
    StateVector aux_state;
    double fidelity = 0.0;
    double bell_value = 0.0;
    CheckList residuals;
    std::vector<StageLog> log;

    [[nodiscard]] bool success() const { return residuals.all_pass(); }
};

/// Common multiplicity m of the eigenvalues w^0..w^{d-1}; dim = d m.
/// Throws ExtractionError(stage "multiplicities") otherwise.
[[nodiscard]] Eigen::Index check_multiplicities(const ComplexMatrix& b, int d, const Tolerances& tol = {});

/// V with V B1 V^dag = Z_d (x) I_m; rows are eigenvectors ordered by
/// eigenvalue index.
[[nodiscard]] ComplexMatrix align_first_observable(const ComplexMatrix& b1, int d, const Tolerances& tol = {});

/// U_B = U V where U = diag(I, (d/2) w^{-(i+1)/2} F_0i) is built from the
/// first block row of V B2 V^dag. Throws ExtractionError if a block F_0i is
/// not (2/d) times a unitary within tol_block.
[[nodiscard]] ComplexMatrix extract_bob(const ComplexMatrix& b1, const ComplexMatrix& b2, int d,
                                        double tol_block = 1e-7, const Tolerances& tol = {});

/// Runs the Bob construction on the complex conjugates of Cbar_1^(1),
/// Cbar_2^(1) (which target Z_d, T_d) and conjugates the result back.
[[nodiscard]] ComplexMatrix extract_alice(const ComplexMatrix& a1, const ComplexMatrix& a2, int d,
                                          double tol_block = 1e-7, const Tolerances& tol = {});

struct StateCanonicalization {
    double fidelity = 0.0;
    StateVector aux_state;                 // on aux_a * aux_b, index a' * aux_b + b'
    double max_off_diagonal = 0.0;         // max_{i != j} ||psi_ij||
    double max_diagonal_spread = 0.0;      // max_i ||psi_ii - psi_00||
};

/// Splits (U_A (x) U_B)|psi> = sum_{ij} |i>|j> (x) |psi_ij> and compares with
/// |phi_d^+> (x) |aux>, aux = psi_00 normalized.
[[nodiscard]] StateCanonicalization canonicalize_state(const Realization& r, const ComplexMatrix& u_a,
                                                       const ComplexMatrix& u_b);

/// Full pipeline. Throws ExtractionError naming the failed stage.
[[nodiscard]] ExtractionResult extract(const Realization& r, const ExtractionOptions& options = {});

struct ScrambledRealization {
    Realization realization;
    ComplexMatrix G_A;
    ComplexMatrix G_B;
    StateVector aux_state;  // on aux_a * aux_b, index a' * aux_b + b'
};

/// Embeds r into (dA aux_a) x (dB aux_b) with a random aux state and conjugates
/// by Haar-random local unitaries. Correlations are asserted unchanged.
[[nodiscard]] ScrambledRealization scramble_with_witness(const Realization& r, Eigen::Index aux_a,
                                                         Eigen::Index aux_b, std::uint64_t seed);
[[nodiscard]] Realization scramble(const Realization& r, Eigen::Index aux_a, Eigen::Index aux_b,
                                   std::uint64_t seed);

/// The realization after applying U_A, U_B: states and observables rotated.
[[nodiscard]] Realization apply_local_unitaries(const Realization& r, const ComplexMatrix& u_a,
                                                const ComplexMatrix& u_b);

}  // namespace qsk
