// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "sievelab/counterexample.hpp"

using namespace sievelab;

TEST(Counterexample, Build) {
    auto a = build_counterexample(3, 810);
    EXPECT_EQ(a.Q, 9);
    EXPECT_EQ(a.exact_power(), 2430);
    EXPECT_EQ(a.seq.power(), 2430.0);
    EXPECT_EQ(build_counterexample(5, 50).seq.power(), 250.0);
    auto tiny = build_counterexample(2, 2);
    ASSERT_EQ(tiny.seq.N(), 2);
    EXPECT_EQ(tiny.seq.at(1), cplx(0, 0));
    EXPECT_EQ(tiny.seq.at(2), cplx(2, 0));
    EXPECT_EQ(tiny.seq.power(), 4.0);
    EXPECT_THROW(build_counterexample(4, 8), domain_error);
    EXPECT_THROW(build_counterexample(3, 10), domain_error);
    EXPECT_THROW(build_counterexample(3, 0), domain_error);
}

TEST(Counterexample, ModulusTermExamples) {
    auto a = build_counterexample(3, 810);
    EXPECT_EQ(modulus_term(a, 9), 3936600.0);
    EXPECT_EQ(modulus_term(a, 1), 656100.0);
    EXPECT_EQ(modulus_term(build_counterexample(5, 50), 25), 50000.0);
    EXPECT_THROW(modulus_term(a, 10), domain_error);
    EXPECT_THROW(modulus_term(a, 0), domain_error);
}

TEST(Counterexample, ClosedFormIsExact) {
    for (i64 p : {2, 3, 5, 7})
        for (i64 k : {1, 2, 10, 100}) {
            auto inst = build_counterexample(p, p * k);
            EXPECT_EQ(modulus_term(inst, inst.Q), modulus_term_closed_form(inst)) << p << " " << k;
        }
}

TEST(Counterexample, FullSumDecomposesByDenominator) {
    auto inst = build_counterexample(3, 36);
    auto r = demonstrate_failure(inst);
    double by_q = 0;
    for (i64 q = 1; q <= inst.Q; ++q) by_q += modulus_term(inst, q);
    EXPECT_NEAR(r.full_lhs, by_q, 1e-12 * by_q);
    EXPECT_GE(r.full_lhs, r.modulus_term_Q);
}

TEST(Counterexample, DemonstrateFailure) {
    auto big = demonstrate_failure(build_counterexample(3, 810));
    EXPECT_EQ(big.modulus_term_Q, 3936600.0);
    EXPECT_EQ(big.naive_rhs, 2165130.0);
    EXPECT_TRUE(big.lower_bound_exceeds_naive);
    EXPECT_GE(big.full_lhs, big.modulus_term_Q);
    EXPECT_DOUBLE_EQ(big.naive_size, std::pow(9.0, 2.5) * 810 + 3.0 * 810 * 810);

    auto small = demonstrate_failure(build_counterexample(3, 9));
    EXPECT_EQ(small.modulus_term_Q, 486.0);
    EXPECT_EQ(small.naive_rhs, 2430.0);
    EXPECT_FALSE(small.lower_bound_exceeds_naive);

    auto two = demonstrate_failure(build_counterexample(2, 8));
    EXPECT_EQ(two.modulus_term_Q, 128.0);
    EXPECT_EQ(two.naive_rhs, 384.0);
    EXPECT_FALSE(two.lower_bound_exceeds_naive);
}

TEST(Counterexample, RatioRisesWithN) {
    // phi(p^2) N^2 / ((p^4 + N) N p) = (p - 1) N / (p^4 + N), increasing in N towards p - 1
    for (i64 p : {2, 3, 5}) {
        double prev = 0;
        for (int k = 0; k <= 10; ++k) {
            auto inst = build_counterexample(p, p << k);
            double ratio = modulus_term(inst, inst.Q) / additive_rhs(inst.Q, inst.N, inst.seq.power());
            EXPECT_GT(ratio, prev);
            EXPECT_LT(ratio, static_cast<double>(p - 1));
            prev = ratio;
        }
    }
}
