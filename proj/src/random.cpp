#include "qsk/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qsk {

std::uint64_t CounterRng::below(std::uint64_t n) noexcept {
    // Lemire's multiply-shift; the bias is below 2^-64 * n and irrelevant here.
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next_u64()) * n) >> 64);
}

double CounterRng::normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex CounterRng::complex_normal() noexcept {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix haar_unitary(Eigen::Index n, CounterRng& rng) {
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            g(i, j) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) {
            q.col(j) *= r(j, j) / mag;
        }
    }
    return q;
}

StateVector random_state(Eigen::Index n, CounterRng& rng) {
    StateVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = rng.complex_normal();
    }
    return v / v.norm();
}

ComplexMatrix random_order_d_observable(Eigen::Index n, int d, CounterRng& rng) {
    Eigen::VectorXcd phases(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        phases(i) = omega_pow(d, static_cast<double>(rng.below(static_cast<std::uint64_t>(d))));
    }
    const ComplexMatrix g = haar_unitary(n, rng);
    return g * phases.asDiagonal() * g.adjoint();
}

ComplexMatrix random_hermitian(Eigen::Index n, CounterRng& rng) {
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            g(i, j) = rng.complex_normal();
        }
    }
    ComplexMatrix h = (g + g.adjoint()) / 2.0;
    return h / h.norm();
}

ComplexMatrix perturb_observable(const ComplexMatrix& x, double eps, CounterRng& rng) {
    const ComplexMatrix h = random_hermitian(x.rows(), rng);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    Eigen::VectorXcd phases(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        phases(i) = std::polar(1.0, eps * es.eigenvalues()(i));
    }
    const ComplexMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return u * x * u.adjoint();
}

}  // namespace qsk
