#include "qsk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qsk {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector kron(const StateVector& a, const StateVector& b) {
    StateVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

double unitarity_residual(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (a.adjoint() * a - identity(a.rows())).norm();
}

bool is_unitary(const ComplexMatrix& a, double tol) { return unitarity_residual(a) <= tol; }

ComplexMatrix unitary_power(const ComplexMatrix& a, int k, const Tolerances& tol) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("unitary_power: matrix is not square");
    }
    ComplexMatrix base = a;
    if (k < 0) {
        if (!is_unitary(a, tol.snap)) {
            throw ObservableError("unitary_power: negative power of a non-unitary matrix");
        }
        base = a.adjoint();
        k = -k;
    }
    // Square-and-multiply.
    ComplexMatrix result = identity(a.rows());
    while (k > 0) {
        if (k & 1) {
            result = result * base;
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("frobenius_distance: shape mismatch");
    }
    return (a - b).norm();
}

std::vector<int> EigenDecomposition::multiplicities() const {
    std::vector<int> m(groups.size());
    std::transform(groups.begin(), groups.end(), m.begin(),
                   [](const auto& g) { return static_cast<int>(g.size()); });
    return m;
}

ComplexMatrix EigenDecomposition::eigenspace(int j) const {
    const auto& cols = groups.at(static_cast<std::size_t>(j));
    ComplexMatrix basis(eigenvectors.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        basis.col(static_cast<Eigen::Index>(c)) = eigenvectors.col(cols[c]);
    }
    return basis;
}

ComplexMatrix EigenDecomposition::projector(int j) const {
    const ComplexMatrix basis = eigenspace(j);
    return basis * basis.adjoint();
}

ComplexMatrix EigenDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

EigenDecomposition eig_unitary(const ComplexMatrix& a, int d, const Tolerances& tol) {
    if (d < 1) {
        throw std::invalid_argument("eig_unitary: d must be positive");
    }
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw ObservableError("eig_unitary: matrix must be square and non-empty");
    }
    const double ures = unitarity_residual(a);
    if (ures > tol.snap) {
        std::ostringstream msg;
        msg << "not an order-" << d << " observable: unitarity residual " << ures;
        throw ObservableError(msg.str());
    }

    // A unitary is normal, so its Schur form is diagonal and the Schur
    // vectors are an orthonormal eigenbasis even inside degenerate clusters.
    Eigen::ComplexSchur<ComplexMatrix> schur(a);
    const ComplexMatrix& tri = schur.matrixT();
    const ComplexMatrix& q = schur.matrixU();
    const Eigen::Index n = a.rows();

    std::vector<int> index(static_cast<std::size_t>(n));
    double worst = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        const Complex lambda = tri(c, c);
        const double turns = std::arg(lambda) * d / (2.0 * std::numbers::pi);
        int j = static_cast<int>(std::lround(turns)) % d;
        if (j < 0) {
            j += d;
        }
        worst = std::max(worst, std::abs(lambda - omega_pow(d, j)));
        index[static_cast<std::size_t>(c)] = j;
    }
    if (worst > tol.snap) {
        std::ostringstream msg;
        msg << "not an order-" << d << " observable: eigenvalue snap distance " << worst;
        throw ObservableError(msg.str());
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return index[static_cast<std::size_t>(x)] < index[static_cast<std::size_t>(y)];
    });

    EigenDecomposition out;
    out.d = d;
    out.max_snap_distance = worst;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    out.snapped.resize(static_cast<std::size_t>(n));
    out.groups.assign(static_cast<std::size_t>(d), {});
    for (Eigen::Index c = 0; c < n; ++c) {
        const Eigen::Index src = order[static_cast<std::size_t>(c)];
        const int j = index[static_cast<std::size_t>(src)];
        out.eigenvectors.col(c) = q.col(src);
        out.eigenvalues(c) = omega_pow(d, j);
        out.snapped[static_cast<std::size_t>(c)] = j;
        out.groups[static_cast<std::size_t>(j)].push_back(static_cast<int>(c));
    }
    return out;
}

namespace {

// Amplitudes psi[iA * dB + iB] viewed as the dA x dB coefficient matrix.
ComplexMatrix coefficient_matrix(const StateVector& s, Eigen::Index dA, Eigen::Index dB) {
    return Eigen::Map<const ComplexMatrix>(s.data(), dB, dA).transpose();
}

StateVector flatten(const ComplexMatrix& coeffs) {
    const ComplexMatrix t = coeffs.transpose();
    return Eigen::Map<const StateVector>(t.data(), t.size());
}

}  // namespace

ComplexMatrix partial_trace(const StateVector& s, Eigen::Index dA, Eigen::Index dB, Side keep) {
    if (dA <= 0 || dB <= 0 || s.size() != dA * dB) {
        throw std::invalid_argument("partial_trace: state dimension does not match dA*dB");
    }
    const ComplexMatrix psi = coefficient_matrix(s, dA, dB);
    if (keep == Side::A) {
        return psi * psi.adjoint();
    }
    return (psi.adjoint() * psi).transpose();
}

Complex expectation(const StateVector& psi, const ComplexMatrix& x, const ComplexMatrix& y) {
    if (psi.size() != x.rows() * y.rows()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    const ComplexMatrix c = coefficient_matrix(psi, x.rows(), y.rows());
    const ComplexMatrix image = x * c * y.transpose();
    return (c.conjugate().cwiseProduct(image)).sum();
}

StateVector apply_local(const StateVector& psi, const ComplexMatrix& x, const ComplexMatrix& y) {
    if (psi.size() != x.cols() * y.cols()) {
        throw std::invalid_argument("apply_local: dimension mismatch");
    }
    const ComplexMatrix c = coefficient_matrix(psi, x.cols(), y.cols());
    return flatten(x * c * y.transpose());
}

}  // namespace qsk
