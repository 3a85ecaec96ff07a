// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "sievelab/bounds.hpp"
#include "sievelab/expsum.hpp"
#include "sievelab/farey.hpp"

using namespace sievelab;

TEST(Bounds, Classical) {
    EXPECT_DOUBLE_EQ(classical_rhs(1.0 / 100, 50, 1), 150);
    EXPECT_EQ(classical_rhs(0.5, 1, 0), 0);
    double delta = min_gap_mod1(farey_sequence(4)).to_double();
    EXPECT_DOUBLE_EQ(classical_rhs(delta, 10, 2), 44);
    EXPECT_THROW(classical_rhs(0, 1, 1), domain_error);
    EXPECT_THROW(classical_rhs(-0.1, 1, 1), domain_error);
}

TEST(Bounds, Sharp) {
    EXPECT_DOUBLE_EQ(sharp_rhs(0.5, 1, 1), 2);
    EXPECT_DOUBLE_EQ(sharp_rhs(1.0 / 12, 4, 3), 45);
    EXPECT_THROW(sharp_rhs(0, 4, 3), domain_error);
    EXPECT_THROW(sharp_rhs(1.0, 0, 3), domain_error);
}

TEST(Bounds, Additive) {
    EXPECT_EQ(additive_rhs(1, 10, 1), 11);
    EXPECT_EQ(additive_rhs(9, 810, 2430), 2165130);
    EXPECT_EQ(additive_rhs(25, 50, 250), 168750);
    EXPECT_THROW(additive_rhs(0, 1, 1), domain_error);
}

TEST(Bounds, Trivial) {
    EXPECT_DOUBLE_EQ(trivial_rhs(0.25, 1, 0, 3, 1), 13);
    EXPECT_DOUBLE_EQ(trivial_rhs(0.01, 0.5, -5, 10, 2), 425);
    EXPECT_DOUBLE_EQ(trivial_rhs(0.01, 1, 0, 10, 1), 200);
    EXPECT_THROW(trivial_rhs(0, 1, 0, 1, 1), domain_error);
}

TEST(Bounds, PiFactor) {
    EXPECT_NEAR(pi_factor(1, 0, 1, 0, 10, 1e-9), std::sqrt(2.0), 1e-8);
    EXPECT_NEAR(pi_factor(1, 0, 1, 0, 10, 0.5), 2 * std::sqrt(101.0), 1e-12);
    EXPECT_NEAR(pi_factor(0.5, 1, 2, -3, 4, 0.25), std::pow(5.0, 0.75) * std::pow(61.0, 0.25), 1e-12);
    EXPECT_NEAR(pi_factor(0.5, 1, 2, -3, 4, 0.25), 9.344583777936013, 1e-12);
    EXPECT_THROW(pi_factor(0, 0, 1, 0, 1, 0.1), domain_error);
    EXPECT_THROW(pi_factor(1, 0, 0, 0, 1, 0.1), domain_error);
    EXPECT_THROW(pi_factor(1, 0, 1, 0, 1, 0), domain_error);
}

TEST(Bounds, Theorem2) {
    EXPECT_NEAR(theorem2_rhs(2, 1, 0, 1, 0, 4, 1e-9, 1), (4 + 2 * std::sqrt(17.0)) * std::sqrt(2.0), 1e-7);
    EXPECT_NEAR(theorem2_rhs(2, 1, 0, 1, 0, 4, 1e-9, 1), 17.32, 0.005);
    EXPECT_EQ(theorem2_rhs(1, 1, 0, 1, 0, 1, 1e-9, 0), 0);

    // independent evaluation of the same closed form
    const double Q = 9, alpha = 1, N = 810, eps = 0.1, Z = 2430;
    double radicand = alpha * N * (0 + N + 0.0) + 1;
    double pi = std::pow(1.0 / alpha + 1, 0.5 + eps) * std::pow(N * 1 * N + 0 + 1 / alpha, eps);
    double want = (Q * Q + Q * std::sqrt(radicand)) * pi * Z;
    EXPECT_NEAR(theorem2_rhs(9, 1, 0, 1, 0, 810, 0.1, 2430), want, 1e-12 * want);
}

TEST(Bounds, Theorem2NegativeRadicand) {
    // alpha N (|M| + N + a/b) + 1 with a/b = -10, N = 1: 1 * (1 - 10) + 1 < 0
    EXPECT_LT(theorem2_radicand(1, -10, 1, 0, 1), 0);
    EXPECT_THROW(theorem2_rhs(3, 1, -10, 1, 0, 1, 0.1, 1), domain_error);
}

TEST(Bounds, Conjecture) {
    EXPECT_EQ(conjecture_rhs(2, 3, 1), 10);
    EXPECT_EQ(conjecture_rhs(10, 10, 1), 200);
    EXPECT_EQ(conjecture_rhs(9, 810, 2430), 17911530);
}

TEST(Bounds, SafeRatio) {
    EXPECT_FALSE(safe_ratio(0, 0));
    EXPECT_EQ(*safe_ratio(1, 4), 0.25);
    EXPECT_TRUE(std::isinf(*safe_ratio(1, 0)));
}

TEST(Bounds, MonotoneInZAndN) {
    for (double Z : {0.0, 0.5, 1.0, 7.0})
        for (i64 N = 1; N < 60; ++N) {
            double Z2 = Z + 0.25;
            EXPECT_LE(classical_rhs(0.01, N, Z), classical_rhs(0.01, N + 1, Z));
            EXPECT_LE(classical_rhs(0.01, N, Z), classical_rhs(0.01, N, Z2));
            EXPECT_LE(sharp_rhs(0.1, N, Z), sharp_rhs(0.1, N + 1, Z));
            EXPECT_LE(sharp_rhs(0.1, N, Z), sharp_rhs(0.1, N, Z2));
            EXPECT_LE(additive_rhs(5, N, Z), additive_rhs(5, N + 1, Z));
            EXPECT_LE(additive_rhs(5, N, Z), additive_rhs(5, N, Z2));
            EXPECT_LE(trivial_rhs(0.1, 0.7, -3, N, Z), trivial_rhs(0.1, 0.7, -3, N + 1, Z));
            EXPECT_LE(trivial_rhs(0.1, 0.7, -3, N, Z), trivial_rhs(0.1, 0.7, -3, N, Z2));
            EXPECT_LE(conjecture_rhs(5, N, Z), conjecture_rhs(5, N + 1, Z));
            EXPECT_LE(conjecture_rhs(5, N, Z), conjecture_rhs(5, N, Z2));
            for (i64 b : {1, 2, 3}) {
                EXPECT_LE(theorem2_rhs(7, 0.5, 1, b, 2, N, 0.1, Z), theorem2_rhs(7, 0.5, 1, b, 2, N + 1, 0.1, Z));
                EXPECT_LE(theorem2_rhs(7, 0.5, 1, b, 2, N, 0.1, Z), theorem2_rhs(7, 0.5, 1, b, 2, N, 0.1, Z2));
            }
        }
}

TEST(Bounds, Theorem2NondecreasingInEps) {
    // the bracketed base is at least 1 whenever N >= 1 and b >= 1
    for (double alpha : {0.1, 1.0 / 3, 1.0, 4.0})
        for (i64 N : {1, 4, 16, 64})
            for (i64 b : {1, 2, 5})
                for (double e1 : {0.01, 0.05, 0.1, 0.25}) {
                    double e2 = e1 * 2;
                    EXPECT_LE(theorem2_rhs(8, alpha, 1, b, -2, N, e1, 1), theorem2_rhs(8, alpha, 1, b, -2, N, e2, 1));
                }
}

TEST(Bounds, LinearLargeSieveHoldsOnRandomInstances) {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        i64 Q = rng.integer(2, 20), N = rng.integer(1, 120), M = rng.integer(-200, 200);
        auto seq = random_sequence(M, N, static_cast<SeqDistribution>(trial % 3), rng.integer(0, 1 << 30));
        auto farey = farey_sequence(Q);
        double lhs = ls_lhs(seq, QuadraticAmplitude::linear(), farey);
        double delta = min_gap_mod1(farey).to_double();
        double Z = seq.power();
        EXPECT_LE(lhs, sharp_rhs(delta, N, Z) * (1 + 1e-9));
        EXPECT_LE(lhs, classical_rhs(delta, N, Z) * (1 + 1e-9));
        EXPECT_LE(lhs, additive_rhs(Q, N, Z) * (1 + 1e-9));
    }
}
