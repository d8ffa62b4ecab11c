#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "qsk/bell.hpp"
#include "qsk/canonical.hpp"
#include "qsk/random.hpp"
#include "qsk/satwap.hpp"

namespace {

using qsk::CorrelationTensor;
using qsk::Realization;
using qsk::Scenario;

Realization random_realization(int d, Eigen::Index da, Eigen::Index db, std::uint64_t seed) {
    qsk::CounterRng rng(seed);
    Realization r;
    r.d = d;
    r.state = qsk::random_state(da * db, rng);
    for (int i = 0; i < 2; ++i) {
        r.A[static_cast<std::size_t>(i)] = qsk::random_order_d_observable(da, d, rng);
        r.B[static_cast<std::size_t>(i)] = qsk::random_order_d_observable(db, d, rng);
    }
    return r;
}

CorrelationTensor random_tensor(int d, std::uint64_t seed) {
    qsk::CounterRng rng(seed);
    CorrelationTensor t(Scenario{d, 2});
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double total = 0.0;
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    t(x, y, a, b) = rng.uniform();
                    total += t(x, y, a, b);
                }
            }
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    t(x, y, a, b) /= total;
                }
            }
        }
    }
    return t;
}

TEST(Scenario, Validation) {
    EXPECT_NO_THROW(Scenario({3, 2}).validate());
    EXPECT_THROW(Scenario({1, 2}).validate(), std::invalid_argument);
    EXPECT_THROW(Scenario({3, 0}).validate(), std::invalid_argument);
}

TEST(BornProbabilities, IdealD2IsChshOptimal) {
    const auto c = qsk::correlators_from_probabilities(qsk::born_probabilities(qsk::ideal_realization(2)));
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            EXPECT_NEAR(std::abs(c(x, y, 1, 1)), 1.0 / std::sqrt(2.0), 1e-12);
        }
    }
}

TEST(BornProbabilities, ProductStateIsDeterministic) {
    Realization r;
    r.d = 2;
    r.state = qsk::StateVector::Zero(4);
    r.state(0) = 1.0;
    r.A = {qsk::z_observable(2), qsk::z_observable(2)};
    r.B = r.A;
    const CorrelationTensor p = qsk::born_probabilities(r);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            EXPECT_NEAR(p(x, y, 0, 0), 1.0, 1e-15);
        }
    }
}

TEST(BornProbabilities, NormalizedForRandomRealizations) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto p = qsk::born_probabilities(random_realization(3, 4, 5, seed));
        EXPECT_LT(p.normalization_error(), 1e-12);
    }
}

TEST(BornProbabilities, RejectsBadRealization) {
    Realization r = qsk::ideal_realization(3);
    r.state *= 2.0;
    EXPECT_THROW((void)qsk::born_probabilities(r), std::invalid_argument);
}

TEST(Correlators, FlatDistributionHasNoCorrelations) {
    const int d = 4;
    CorrelationTensor t(Scenario{d, 2});
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    t(x, y, a, b) = 1.0 / (d * d);
                }
            }
        }
    }
    const auto c = qsk::correlators_from_probabilities(t);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    if (k != 0 || l != 0) {
                        EXPECT_LT(std::abs(c(x, y, k, l)), 1e-15);
                    }
                }
            }
        }
    }
    EXPECT_LT(std::abs(qsk::satwap_functional(d).evaluate(c)), 1e-14);
}

TEST(Correlators, BinaryCaseIsStandardCorrelator) {
    const CorrelationTensor p = random_tensor(2, 17);
    const auto c = qsk::correlators_from_probabilities(p);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const double e = p(x, y, 0, 0) + p(x, y, 1, 1) - p(x, y, 0, 1) - p(x, y, 1, 0);
            EXPECT_NEAR(c(x, y, 1, 1).real(), e, 1e-15);
            EXPECT_NEAR(c(x, y, 1, 1).imag(), 0.0, 1e-15);
        }
    }
}

TEST(Correlators, InverseTransformRoundTrip) {
    for (int d = 2; d <= 6; ++d) {
        const CorrelationTensor p = random_tensor(d, static_cast<std::uint64_t>(d));
        const CorrelationTensor back = qsk::probabilities_from_correlators(qsk::correlators_from_probabilities(p));
        EXPECT_LT(back.max_abs_difference(p), 1e-12);
    }
}

TEST(Correlators, RealizationRouteMatchesProbabilityRoute) {
    const Realization r = random_realization(3, 3, 2, 99);
    const auto direct = qsk::correlators_from_realization(r);
    const auto via_p = qsk::correlators_from_probabilities(qsk::born_probabilities(r));
    EXPECT_LT(direct.max_abs_difference(via_p), 1e-12);
    EXPECT_LT(direct.symmetry_error(), 1e-12);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            EXPECT_NEAR(std::abs(direct(x, y, 0, 0) - 1.0), 0.0, 1e-12);
        }
    }
}

TEST(Correlators, IdealD3TotalsFour) {
    EXPECT_NEAR(qsk::satwap_functional(3).evaluate(qsk::correlators_from_realization(qsk::ideal_realization(3))),
                4.0, 1e-9);
}

TEST(LocalBound, SmallCases) {
    const auto f2 = qsk::probability_form(qsk::satwap_functional(2));
    const auto lb2 = qsk::local_bound_bruteforce(f2);
    EXPECT_NEAR(lb2.value, std::sqrt(2.0), 1e-12);
    EXPECT_EQ(lb2.strategies, 16u);
    EXPECT_NEAR(f2.evaluate(lb2.argmax), lb2.value, 1e-12);

    const auto lb3 = qsk::local_bound_bruteforce(qsk::probability_form(qsk::satwap_functional(3)));
    EXPECT_NEAR(lb3.value, (1.0 + 3.0 * std::sqrt(3.0)) / 2.0, 1e-12);
    EXPECT_EQ(lb3.strategies, 81u);
}

TEST(LocalBound, ZeroFunctional) {
    const qsk::ProbabilityFunctional zero(Scenario{3, 2});
    EXPECT_EQ(qsk::local_bound_bruteforce(zero).value, 0.0);
}

TEST(LocalBound, CapIsEnforced) {
    const qsk::ProbabilityFunctional f(Scenario{5, 2});
    EXPECT_THROW((void)qsk::local_bound_bruteforce(f, 4), std::invalid_argument);
}

TEST(LocalBound, DeterministicCorrelationsAgree) {
    const auto f = qsk::probability_form(qsk::satwap_functional(4));
    const qsk::DeterministicStrategy s{{1, 3}, {0, 2}};
    EXPECT_NEAR(f.evaluate(qsk::deterministic_correlations(Scenario{4, 2}, s)), f.evaluate(s), 1e-12);
}

TEST(Sampling, SameSeedSameOutput) {
    const Realization r = qsk::ideal_realization(3);
    const auto s1 = qsk::sample_statistics(r, 5000, 12);
    const auto s2 = qsk::sample_statistics(r, 5000, 12);
    const auto s3 = qsk::sample_statistics(r, 5000, 13);
    EXPECT_EQ(s1.counts, s2.counts);
    EXPECT_NE(s1.counts, s3.counts);
}

TEST(Sampling, IndependentOfThreadCount) {
    const CorrelationTensor p = qsk::born_probabilities(qsk::ideal_realization(3));
    setenv("QSK_THREADS", "1", 1);
    const auto one = qsk::sample_statistics(p, 200000, 5);
    setenv("QSK_THREADS", "3", 1);
    const auto three = qsk::sample_statistics(p, 200000, 5);
    unsetenv("QSK_THREADS");
    EXPECT_EQ(one.counts, three.counts);
}

TEST(Sampling, SingleShot) {
    const auto s = qsk::sample_statistics(qsk::ideal_realization(3), 1, 3);
    std::uint64_t total = 0;
    int nonzero = 0;
    for (const auto c : s.counts) {
        total += c;
        nonzero += c > 0 ? 1 : 0;
    }
    EXPECT_EQ(total, 1u);
    EXPECT_EQ(nonzero, 1);
    std::uint64_t settings = 0;
    for (const auto c : s.setting_counts) {
        settings += c;
    }
    EXPECT_EQ(settings, 1u);
}

TEST(Sampling, FrequenciesConvergeWithinFiveStandardErrors) {
    const Realization r = qsk::ideal_realization(3);
    const CorrelationTensor p = qsk::born_probabilities(r);
    const auto s = qsk::sample_statistics(r, 1000000, 2024);
    EXPECT_EQ(s.shots, 1000000u);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const double n = static_cast<double>(s.setting_counts[static_cast<std::size_t>(2 * x + y)]);
            ASSERT_GT(n, 0.0);
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    const double q = p(x, y, a, b);
                    const double se = std::sqrt(q * (1.0 - q) / n);
                    EXPECT_LE(std::abs(s.frequencies(x, y, a, b) - q), 5.0 * se);
                }
            }
        }
    }
}

}  // namespace
