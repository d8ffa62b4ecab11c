#pragma once

// Dense complex linear algebra used by every other module.
//
// Matrices are Eigen column-major storage; all public functions treat them as
// values and never mutate their inputs.

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qsk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Numerical tolerances shared across modules. `scaled` multiplies every
/// entry by one factor (the CLI's --tol-scale knob).
struct Tolerances {
    double unitary = 1e-9;
    double eig = 1e-9;
    double snap = 1e-6;
    double norm = 1e-9;

    [[nodiscard]] Tolerances scaled(double factor) const {
        return {unitary * factor, eig * factor, snap * factor, norm * factor};
    }
};

/// Raised when a matrix is expected to be an order-d unitary observable
/// (U^d = I, eigenvalues among the d-th roots of unity) and is not.
class ObservableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// exp(2*pi*i*q/d) for real q; principal branch for fractional q.
[[nodiscard]] inline Complex omega_pow(int d, double q) {
    const double angle = 2.0 * std::numbers::pi * q / static_cast<double>(d);
    return {std::cos(angle), std::sin(angle)};
}

[[nodiscard]] ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
[[nodiscard]] StateVector kron(const StateVector& a, const StateVector& b);
[[nodiscard]] ComplexMatrix dagger(const ComplexMatrix& a);
[[nodiscard]] ComplexMatrix identity(Eigen::Index n);

/// a^k for integer k. Negative k uses the adjoint, so `a` must be unitary
/// then; ObservableError otherwise.
[[nodiscard]] ComplexMatrix unitary_power(const ComplexMatrix& a, int k,
                                          const Tolerances& tol = {});

/// ||a^dag a - I||_F.
[[nodiscard]] double unitarity_residual(const ComplexMatrix& a);
[[nodiscard]] bool is_unitary(const ComplexMatrix& a, double tol = 1e-9);

/// ||a - b||_F. Throws std::invalid_argument on shape mismatch.
[[nodiscard]] double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Spectral decomposition of an order-d unitary with eigenvalues snapped to
/// the nearest root of unity. Columns of `eigenvectors` are sorted by snapped
/// index; `groups[j]` lists the column indices whose eigenvalue is w^j.
struct EigenDecomposition {
    int d = 0;
    Eigen::VectorXcd eigenvalues;  // snapped, w^{snapped[c]} per column c
    ComplexMatrix eigenvectors;
    std::vector<int> snapped;
    std::vector<std::vector<int>> groups;
    double max_snap_distance = 0.0;

    [[nodiscard]] std::vector<int> multiplicities() const;
    /// Orthonormal basis (columns) of the w^j eigenspace.
    [[nodiscard]] ComplexMatrix eigenspace(int j) const;
    /// Orthogonal projector onto the w^j eigenspace.
    [[nodiscard]] ComplexMatrix projector(int j) const;
    [[nodiscard]] ComplexMatrix reconstruct() const;
};

/// Throws ObservableError if any eigenvalue lies farther than tol.snap from
/// every d-th root of unity, or if the input is not unitary.
[[nodiscard]] EigenDecomposition eig_unitary(const ComplexMatrix& a, int d,
                                             const Tolerances& tol = {});

enum class Side { A, B };

/// Reduced density matrix of a bipartite pure state with local dims (dA, dB),
/// amplitude index = iA * dB + iB.
[[nodiscard]] ComplexMatrix partial_trace(const StateVector& s, Eigen::Index dA,
                                          Eigen::Index dB, Side keep);

/// <psi| X (x) Y |psi> without forming the Kronecker product.
[[nodiscard]] Complex expectation(const StateVector& psi, const ComplexMatrix& x,
                                  const ComplexMatrix& y);

/// (X (x) Y)|psi> without forming the Kronecker product.
[[nodiscard]] StateVector apply_local(const StateVector& psi, const ComplexMatrix& x,
                                      const ComplexMatrix& y);

/// Element-wise complex conjugate.
[[nodiscard]] inline ComplexMatrix conj(const ComplexMatrix& a) { return a.conjugate(); }

}  // namespace qsk
