#include <gtest/gtest.h>

#include <cmath>

#include "qsk/cyclotomic.hpp"
#include "qsk/random.hpp"

namespace {

using qsk::Rational;
using qsk::RationalPolynomial;

RationalPolynomial ints(std::vector<long long> c) { return RationalPolynomial::from_integers(c); }

TEST(Polynomial, ConstructionAndText) {
    EXPECT_TRUE(RationalPolynomial().is_zero());
    EXPECT_EQ(RationalPolynomial().degree(), -1);
    EXPECT_EQ(ints({1, 0, 0}).degree(), 0);
    EXPECT_EQ(ints({1, 0, -1, 0, 1}).to_string(), "x^4 - x^2 + 1");
    EXPECT_EQ(RationalPolynomial().to_string(), "0");
    EXPECT_EQ(RationalPolynomial::monomial(3, 2), ints({0, 0, 0, 2}));
    EXPECT_TRUE(ints({2, 4}).has_integer_coefficients());
    EXPECT_FALSE(RationalPolynomial({Rational(1, 2)}).has_integer_coefficients());
}

TEST(Polynomial, Arithmetic) {
    EXPECT_EQ(ints({1, 1}) * ints({-1, 1}), ints({-1, 0, 1}));
    EXPECT_EQ(ints({1, 2}) + ints({-1, -2}), RationalPolynomial());
    EXPECT_EQ(Rational(1, 3) * ints({3, 6}), ints({1, 2}));
    const qsk::Complex z = ints({1, 0, 1}).evaluate({0.0, 1.0});
    EXPECT_LT(std::abs(z), 1e-15);
}

TEST(Divmod, Examples) {
    auto [q1, r1] = qsk::poly_divmod(ints({-1, 0, 1}), ints({-1, 1}));
    EXPECT_EQ(q1, ints({1, 1}));
    EXPECT_TRUE(r1.is_zero());
    auto [q2, r2] = qsk::poly_divmod(ints({1, 1, 1, 1}), ints({1, 0, 1}));
    EXPECT_EQ(q2, ints({1, 1}));
    EXPECT_TRUE(r2.is_zero());
    const RationalPolynomial f = ints({3, -1, 4, 1, -5});
    auto [q3, r3] = qsk::poly_divmod(f, f);
    EXPECT_EQ(q3, ints({1}));
    EXPECT_TRUE(r3.is_zero());
    EXPECT_THROW((void)qsk::poly_divmod(f, RationalPolynomial()), std::domain_error);
}

TEST(Divmod, ReconstructsRandomCases) {
    qsk::CounterRng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long long> fc(8);
        std::vector<long long> gc(3);
        for (auto& c : fc) {
            c = static_cast<long long>(rng.below(11)) - 5;
        }
        for (auto& c : gc) {
            c = static_cast<long long>(rng.below(11)) - 5;
        }
        gc.back() = 1 + static_cast<long long>(rng.below(3));
        const RationalPolynomial f = ints(fc);
        const RationalPolynomial g = ints(gc);
        auto [q, r] = qsk::poly_divmod(f, g);
        EXPECT_EQ(q * g + r, f);
        EXPECT_LT(r.degree(), g.degree());
    }
}

TEST(Cyclotomic, SmallOrders) {
    EXPECT_EQ(qsk::cyclotomic_poly(1), ints({-1, 1}));
    EXPECT_EQ(qsk::cyclotomic_poly(2), ints({1, 1}));
    EXPECT_EQ(qsk::cyclotomic_poly(4), ints({1, 0, 1}));
    EXPECT_EQ(qsk::cyclotomic_poly(6), ints({1, -1, 1}));
    EXPECT_EQ(qsk::cyclotomic_poly(12), ints({1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, IntegerCoefficientsAndPrimitiveRootZero) {
    for (int n = 1; n <= 40; ++n) {
        const RationalPolynomial phi = qsk::cyclotomic_poly(n);
        EXPECT_TRUE(phi.has_integer_coefficients()) << "n=" << n;
        if (n > 1) {
            EXPECT_LT(std::abs(phi.evaluate(std::polar(1.0, 2.0 * 3.141592653589793 / n))), 1e-9) << "n=" << n;
        }
    }
}

TEST(ProperDivisors, Examples) {
    EXPECT_EQ(qsk::proper_divisors(6), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(qsk::proper_divisors(7), (std::vector<int>{1}));
    EXPECT_EQ(qsk::proper_divisors(12), (std::vector<int>{1, 2, 3, 4, 6}));
    EXPECT_THROW((void)qsk::proper_divisors(0), std::invalid_argument);
}

TEST(ProductIdentity, Examples) {
    EXPECT_EQ(qsk::cyclotomic_poly(4) * qsk::cyclotomic_poly(2), ints({1, 1, 1, 1}));
    EXPECT_EQ(qsk::cyclotomic_poly(2), qsk::geometric_polynomial(2));
    for (int d = 2; d <= 100; ++d) {
        EXPECT_TRUE(qsk::check_product_identity(d)) << "d=" << d;
    }
}

TEST(EqualCoefficients, Examples) {
    const auto a = qsk::lemma2_conclude(ints({3, 3, 3, 3}), 4);
    EXPECT_TRUE(a.equal_coefficients);
    ASSERT_TRUE(a.constant.has_value());
    EXPECT_EQ(*a.constant, 3);
    EXPECT_EQ(a.cyclotomic_order, (std::vector<int>{4, 2}));

    const auto b = qsk::lemma2_conclude(ints({1, 1}), 4);
    EXPECT_FALSE(b.equal_coefficients);
    ASSERT_TRUE(b.failing_index.has_value());
    EXPECT_EQ(*b.failing_index, 4);
    EXPECT_FALSE(b.remainder.is_zero());

    const auto c = qsk::lemma2_conclude(Rational(5) * qsk::cyclotomic_poly(2) * qsk::cyclotomic_poly(4), 4);
    EXPECT_TRUE(c.equal_coefficients);
    EXPECT_EQ(*c.constant, 5);
}

TEST(EqualCoefficients, DegreeTooLarge) {
    EXPECT_THROW((void)qsk::lemma2_conclude(ints({1, 1, 1, 1, 1}), 4), std::invalid_argument);
}

TEST(EqualCoefficients, RandomizedAcceptReject) {
    for (const int d : {4, 6, 12, 30}) {
        qsk::CounterRng rng(static_cast<std::uint64_t>(d));
        for (int trial = 0; trial < 100; ++trial) {
            const Rational lambda(static_cast<long long>(rng.below(41)) - 20,
                                  1 + static_cast<long long>(rng.below(9)));
            const auto accept = qsk::lemma2_conclude(lambda * qsk::geometric_polynomial(d), d);
            EXPECT_TRUE(accept.equal_coefficients);
            EXPECT_EQ(accept.constant.value_or(Rational(999)), lambda);

            std::vector<long long> c(static_cast<std::size_t>(d));
            for (auto& x : c) {
                x = static_cast<long long>(rng.below(7)) - 3;
            }
            const bool all_equal = std::all_of(c.begin(), c.end(), [&](long long x) { return x == c.front(); });
            EXPECT_EQ(qsk::lemma2_conclude(ints(c), d).equal_coefficients, all_equal);
        }
    }
}

}  // namespace
