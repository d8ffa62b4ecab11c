#include <gtest/gtest.h>

#include <cmath>

#include "qsk/canonical.hpp"
#include "qsk/linalg.hpp"
#include "qsk/random.hpp"

namespace {

using qsk::Complex;
using qsk::ComplexMatrix;

ComplexMatrix diag(std::initializer_list<Complex> entries) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (const Complex& e : entries) {
        v(i++) = e;
    }
    return v.asDiagonal();
}

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_EQ(qsk::kron(qsk::identity(2), qsk::identity(2)), qsk::identity(4));
}

TEST(Kron, DiagonalTimesIdentity) {
    EXPECT_EQ(qsk::kron(diag({1.0, -1.0}), qsk::identity(2)), diag({1.0, 1.0, -1.0, -1.0}));
}

TEST(Kron, Z3TimesI2HasDoubledMultiplicities) {
    const auto e = qsk::eig_unitary(qsk::kron(qsk::z_observable(3), qsk::identity(2)), 3);
    EXPECT_EQ(e.multiplicities(), (std::vector<int>{2, 2, 2}));
}

TEST(Dagger, Examples) {
    EXPECT_EQ(qsk::dagger(qsk::identity(3)), qsk::identity(3));
    const Complex i(0.0, 1.0);
    EXPECT_EQ(qsk::dagger(diag({i, -i})), diag({-i, i}));
    qsk::CounterRng rng(3);
    const ComplexMatrix m = ComplexMatrix::Random(4, 3);
    EXPECT_EQ(qsk::dagger(qsk::dagger(m)), m);
}

TEST(UnitaryPower, ZdToTheD) {
    for (int d = 2; d <= 7; ++d) {
        EXPECT_LT(qsk::frobenius_distance(qsk::unitary_power(qsk::z_observable(d), d), qsk::identity(d)), 1e-12);
    }
}

TEST(UnitaryPower, NegativePowerOfZ3) {
    const Complex w = qsk::omega_pow(3, 1);
    const ComplexMatrix expected = diag({1.0, w * w, w});
    EXPECT_LT(qsk::frobenius_distance(qsk::unitary_power(qsk::z_observable(3), -1), expected), 1e-12);
}

TEST(UnitaryPower, T2SquaresToIdentity) {
    EXPECT_LT(qsk::frobenius_distance(qsk::unitary_power(qsk::t_observable(2), 2), qsk::identity(2)), 1e-12);
}

TEST(UnitaryPower, NegativePowerRejectsNonUnitary) {
    EXPECT_THROW((void)qsk::unitary_power(2.0 * qsk::identity(2), -1), qsk::ObservableError);
}

TEST(EigUnitary, SimpleSpectra) {
    for (int d = 2; d <= 9; ++d) {
        EXPECT_EQ(qsk::eig_unitary(qsk::z_observable(d), d).multiplicities(), std::vector<int>(d, 1));
        EXPECT_EQ(qsk::eig_unitary(qsk::t_observable(d), d).multiplicities(), std::vector<int>(d, 1));
    }
}

TEST(EigUnitary, Z2TensorI3) {
    const auto e = qsk::eig_unitary(qsk::kron(qsk::z_observable(2), qsk::identity(3)), 2);
    EXPECT_EQ(e.multiplicities(), (std::vector<int>{3, 3}));
}

TEST(EigUnitary, ReconstructsAndSortsByIndex) {
    qsk::CounterRng rng(11);
    const ComplexMatrix x = qsk::random_order_d_observable(8, 4, rng);
    const auto e = qsk::eig_unitary(x, 4);
    EXPECT_LT(qsk::frobenius_distance(e.reconstruct(), x), 1e-10);
    EXPECT_TRUE(std::is_sorted(e.snapped.begin(), e.snapped.end()));
    EXPECT_LT(qsk::unitarity_residual(e.eigenvectors), 1e-10);
    ComplexMatrix sum = ComplexMatrix::Zero(8, 8);
    for (int j = 0; j < 4; ++j) {
        sum += e.projector(j);
    }
    EXPECT_LT(qsk::frobenius_distance(sum, qsk::identity(8)), 1e-10);
}

TEST(EigUnitary, RejectsOffRootEigenvalue) {
    const ComplexMatrix x = diag({1.0, std::polar(1.0, 1.0)});
    EXPECT_THROW((void)qsk::eig_unitary(x, 2), qsk::ObservableError);
    EXPECT_THROW((void)qsk::eig_unitary(2.0 * qsk::identity(2), 2), qsk::ObservableError);
}

TEST(PartialTrace, MaximallyEntangledMarginal) {
    for (int d = 2; d <= 5; ++d) {
        const ComplexMatrix rho = qsk::partial_trace(qsk::maximally_entangled(d), d, d, qsk::Side::A);
        EXPECT_LT(qsk::frobenius_distance(rho, qsk::identity(d) / d), 1e-12);
    }
}

TEST(PartialTrace, ProductStateKeepsB) {
    qsk::StateVector s = qsk::StateVector::Zero(4);
    s(0) = 1.0;
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    EXPECT_LT(qsk::frobenius_distance(qsk::partial_trace(s, 2, 2, qsk::Side::B), expected), 1e-15);
}

TEST(PartialTrace, UnitTraceAndCorrectSide) {
    qsk::CounterRng rng(5);
    const qsk::StateVector a = qsk::random_state(2, rng);
    const qsk::StateVector b = qsk::random_state(3, rng);
    const qsk::StateVector s = qsk::kron(a, b);
    const ComplexMatrix rho_b = qsk::partial_trace(s, 2, 3, qsk::Side::B);
    EXPECT_NEAR(rho_b.trace().real(), 1.0, 1e-12);
    EXPECT_LT(qsk::frobenius_distance(rho_b, b * b.adjoint()), 1e-12);
    EXPECT_LT(qsk::frobenius_distance(qsk::partial_trace(s, 2, 3, qsk::Side::A), a * a.adjoint()), 1e-12);
    const qsk::StateVector r = qsk::random_state(12, rng);
    EXPECT_NEAR(qsk::partial_trace(r, 3, 4, qsk::Side::A).trace().real(), 1.0, 1e-12);
    EXPECT_THROW((void)qsk::partial_trace(r, 3, 3, qsk::Side::A), std::invalid_argument);
}

TEST(FrobeniusDistance, Examples) {
    const ComplexMatrix m = ComplexMatrix::Random(3, 3);
    const ComplexMatrix n = ComplexMatrix::Random(3, 3);
    EXPECT_EQ(qsk::frobenius_distance(m, m), 0.0);
    EXPECT_NEAR(qsk::frobenius_distance(qsk::identity(2), ComplexMatrix::Zero(2, 2)), std::sqrt(2.0), 1e-15);
    EXPECT_DOUBLE_EQ(qsk::frobenius_distance(m, n), qsk::frobenius_distance(n, m));
    EXPECT_THROW((void)qsk::frobenius_distance(m, qsk::identity(2)), std::invalid_argument);
}

TEST(LocalOps, ExpectationMatchesKron) {
    qsk::CounterRng rng(8);
    const qsk::StateVector psi = qsk::random_state(6, rng);
    const ComplexMatrix x = qsk::haar_unitary(2, rng);
    const ComplexMatrix y = qsk::haar_unitary(3, rng);
    const ComplexMatrix xy = qsk::kron(x, y);
    EXPECT_LT(std::abs(qsk::expectation(psi, x, y) - psi.dot(xy * psi)), 1e-12);
    EXPECT_LT((qsk::apply_local(psi, x, y) - xy * psi).norm(), 1e-12);
}

}  // namespace
