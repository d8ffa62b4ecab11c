#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qsk/linalg.hpp"
#include "qsk/random.hpp"

namespace {

TEST(CounterRng, SameSeedAndStreamRepeat) {
    qsk::CounterRng a(42, 3);
    qsk::CounterRng b(42, 3);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.next_u64(), b.next_u64());
    }
}

TEST(CounterRng, StreamsDiffer) {
    qsk::CounterRng a(42, 0);
    qsk::CounterRng b(42, 1);
    qsk::CounterRng c(43, 0);
    const auto x = a.next_u64();
    EXPECT_NE(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
}

TEST(CounterRng, UniformAndBelowRanges) {
    qsk::CounterRng rng(9);
    std::set<std::uint64_t> seen;
    double mean = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        mean += u;
        const auto k = rng.below(7);
        ASSERT_LT(k, 7u);
        seen.insert(k);
    }
    EXPECT_NEAR(mean / 20000.0, 0.5, 0.01);
    EXPECT_EQ(seen.size(), 7u);
}

TEST(Ensembles, HaarUnitaryIsUnitary) {
    qsk::CounterRng rng(1);
    for (Eigen::Index n : {1, 2, 5, 12}) {
        EXPECT_LT(qsk::unitarity_residual(qsk::haar_unitary(n, rng)), 1e-12);
    }
}

TEST(Ensembles, RandomStateNormalized) {
    qsk::CounterRng rng(2);
    EXPECT_NEAR(qsk::random_state(9, rng).norm(), 1.0, 1e-14);
}

TEST(Ensembles, RandomOrderDObservable) {
    qsk::CounterRng rng(4);
    for (int d = 2; d <= 6; ++d) {
        const qsk::ComplexMatrix x = qsk::random_order_d_observable(2 * d, d, rng);
        EXPECT_LT(qsk::unitarity_residual(x), 1e-12);
        EXPECT_LT(qsk::frobenius_distance(qsk::unitary_power(x, d), qsk::identity(2 * d)), 1e-11);
    }
}

TEST(Ensembles, RandomHermitian) {
    qsk::CounterRng rng(6);
    const qsk::ComplexMatrix h = qsk::random_hermitian(5, rng);
    EXPECT_LT(qsk::frobenius_distance(h, h.adjoint()), 1e-14);
    EXPECT_NEAR(h.norm(), 1.0, 1e-12);
}

TEST(Ensembles, PerturbationKeepsOrderAndMovesByEps) {
    qsk::CounterRng rng(7);
    const qsk::ComplexMatrix x = qsk::random_order_d_observable(6, 3, rng);
    const qsk::ComplexMatrix y = qsk::perturb_observable(x, 1e-3, rng);
    EXPECT_LT(qsk::frobenius_distance(qsk::unitary_power(y, 3), qsk::identity(6)), 1e-11);
    const double moved = qsk::frobenius_distance(x, y);
    EXPECT_GT(moved, 1e-6);
    EXPECT_LT(moved, 1e-2);
}

}  // namespace
