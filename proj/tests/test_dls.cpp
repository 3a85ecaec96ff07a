// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sievelab/dls.hpp"
#include "sievelab/report.hpp"

using namespace sievelab;

TEST(TriangleKernel, Values) {
    EXPECT_EQ(triangle_kernel(0), 1);
    EXPECT_EQ(triangle_kernel(0.5), 0.5);
    EXPECT_EQ(triangle_kernel(-0.5), 0.5);
    EXPECT_EQ(triangle_kernel(-2), 0);
    EXPECT_EQ(triangle_kernel(1), 0);
}

TEST(DLS, BilinearSum) {
    DLSInstance one{{0}, {0}, {1}, {1}, 1, 1};
    EXPECT_DOUBLE_EQ(bilinear_sum_sq(one), 1);
    DLSInstance four{{0, 0.5}, {0, 1}, {1, 1}, {1, 1}, 2, 2};
    EXPECT_NEAR(bilinear_sum_sq(four), 4, 1e-14);
    DLSInstance zero{{0, 0.5}, {0, 1}, {0, 0}, {1, 1}, 2, 2};
    EXPECT_EQ(bilinear_sum_sq(zero), 0);
}

TEST(DLS, ADelta) {
    DLSInstance single{{0.1}, {0}, {cplx{3, 4}}, {1}, 1, 1};
    EXPECT_DOUBLE_EQ(a_delta(single), 25);
    // X = 1, Y = 1 gives delta = 1/2
    DLSInstance apart{{-0.5, 0.5}, {0}, {1, 1}, {1}, 1, 1};
    EXPECT_DOUBLE_EQ(a_delta(apart), 2);
    DLSInstance together{{0.2, 0.2}, {0}, {1, 1}, {1}, 1, 1};
    EXPECT_DOUBLE_EQ(a_delta(together), 4);
}

TEST(DLS, BEpsilon) {
    DLSInstance single{{0}, {0.3}, {1}, {cplx{1, 1}}, 1, 1};
    EXPECT_NEAR(b_epsilon(single).real(), 2, 1e-15);
    DLSInstance cancel{{0}, {0.2, 0.2}, {1}, {1, -1}, 1, 1};
    EXPECT_EQ(b_epsilon(cancel), cplx(0, 0));
    // X = 1 gives epsilon = 1
    DLSInstance apart{{0}, {-2, 2}, {1}, {1, 1}, 1, 4};
    EXPECT_EQ(b_epsilon(apart), cplx(2, 0));
}

TEST(DLS, CheckExamples) {
    auto c = dls_check(DLSInstance{{0}, {0}, {1}, {1}, 1, 1});
    EXPECT_DOUBLE_EQ(c.lhs, 1);
    EXPECT_NEAR(c.rhs, std::pow(std::numbers::pi / 2, 4) * 2, 1e-12);
    EXPECT_NEAR(c.rhs, 12.176, 1e-3);
    EXPECT_TRUE(c.holds);

    auto z = dls_check(DLSInstance{{0.1, 0.2}, {0.3}, {0, 0}, {1}, 1, 1});
    EXPECT_EQ(z.lhs, 0);
    EXPECT_EQ(z.rhs, 0);
    EXPECT_TRUE(z.holds);
}

TEST(DLS, ValidationRejectsOutOfRangePoints) {
    EXPECT_THROW(dls_check(DLSInstance{{0.6}, {0}, {1}, {1}, 1, 1}), domain_error);
    EXPECT_THROW(dls_check(DLSInstance{{0}, {0}, {1, 1}, {1}, 1, 1}), domain_error);
    EXPECT_THROW(dls_check(DLSInstance{{0}, {0}, {1}, {1}, 0, 1}), domain_error);
}

TEST(DLS, HoldsOnRandomInstances) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto inst = random_dls_instance(s, 20, 0.25, 100);
        auto c = dls_check(inst);
        EXPECT_TRUE(c.holds) << s << " lhs=" << c.lhs << " rhs=" << c.rhs;
        EXPECT_FALSE(c.anomaly);
    }
}

TEST(DLS, BEpsilonSymmetricRealWeights) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        DLSInstance inst;
        inst.X = rng.uniform(0.25, 10);
        inst.Y = 20;
        for (int i = 0; i < 15; ++i) {
            double y = rng.uniform(0, 10), w = rng.gaussian();
            inst.ys.push_back(y);
            inst.ys.push_back(-y);
            inst.bw.emplace_back(w, 0);
            inst.bw.emplace_back(rng.gaussian(), 0);
        }
        cplx B = b_epsilon(inst);
        EXPECT_LT(std::fabs(B.imag()), 1e-12 * std::max(1.0, std::fabs(B.real())));
    }
}

TEST(G, Examples) {
    EXPECT_EQ(g_eval(7, 7, 3, 5), Rational(0));
    EXPECT_EQ(g_eval(5, 2, 1, 2), Rational(45, 2));
    EXPECT_EQ(g_scaled(5, 2, 1, 2), 45);
    EXPECT_EQ(g_eval(4, 1, 0, 1), Rational(15));
}

TEST(Lemma4, BruteForceExamples) {
    EXPECT_EQ(lemma4_count_bruteforce({0, 5, Rational(1), 0, 1, 1, 1}), 0);
    EXPECT_EQ(lemma4_count_bruteforce({0, 5, Rational(1, 12), 0, 1, 2, 1}), 6);
    EXPECT_EQ(lemma4_count_bruteforce({0, 5, Rational(1000000), 0, 1, 2, 1}), 1);
}

TEST(Lemma4, DivisorExamples) {
    EXPECT_EQ(lemma4_count_divisor({0, 5, Rational(1), 0, 1, 1, 1}), 0);
    EXPECT_EQ(lemma4_count_divisor({0, 5, Rational(1, 12), 0, 1, 2, 1}), 6);
    EXPECT_EQ(lemma4_count_divisor({0, 5, Rational(1000000), 0, 1, 2, 1}), 1);
}

TEST(Lemma4, CapAndValidation) {
    Lemma4Instance big{0, 501, Rational(1), 0, 1, 1, 1};
    EXPECT_THROW(lemma4_count_bruteforce(big), domain_error);
    EXPECT_THROW(lemma4_count_divisor(big), domain_error);
    EXPECT_THROW(lemma4_count_divisor({0, 5, Rational(1), 2, 4, 1, 1}), domain_error);
    EXPECT_THROW(lemma4_count_divisor({0, 5, Rational(1), 0, 1, 6, 1}), domain_error);
}

TEST(Lemma4, CountersAgreeOnGrid) {
    for (i64 M : {-7, 0, 4})
        for (i64 N : {1, 2, 5, 9, 13})
            for (auto alpha : {Rational(1, 12), Rational(1, 2), Rational(1), Rational(3)})
                for (auto [a, b] : {std::pair<i64, i64>{0, 1}, {1, 2}, {-3, 4}})
                    for (i64 m = M + 1; m <= M + N; ++m)
                        for (i64 n = M + 1; n <= M + N; ++n) {
                            Lemma4Instance inst{M, N, alpha, a, b, m, n};
                            ASSERT_EQ(lemma4_count_bruteforce(inst), lemma4_count_divisor(inst))
                                << M << " " << N << " " << alpha << " " << a << "/" << b << " " << m << "," << n;
                        }
}

TEST(Lemma4, CountGrowsAsAlphaShrinks) {
    for (i64 m = 1; m <= 8; ++m)
        for (i64 n = 1; n <= 8; ++n) {
            i64 prev = -1;
            for (auto alpha : {Rational(3), Rational(1), Rational(1, 2), Rational(1, 5), Rational(1, 12)}) {
                i64 t = lemma4_count_divisor({0, 8, alpha, 1, 2, m, n});
                EXPECT_GE(t, prev);
                prev = t;
            }
        }
}

TEST(Lemma4, BoundForms) {
    EXPECT_NEAR(lemma4_bound(1, 0, 1, 0, 10, 1e-9), 2, 1e-7);
    EXPECT_NEAR(lemma4_bound(0.5, 1, 2, 0, 5, 0.5), 5 * std::sqrt(55.0), 1e-12);
    EXPECT_NEAR(lemma4_bound(1, 0, 1, 0, 10, 1), 202, 1e-12);
    // |a| inside the window: (4 + 1) (5 * 2 * (5 + 1) + 4)^(1/2)
    EXPECT_NEAR(lemma4_bound_proof_form(0.5, 1, 2, 0, 5, 0.5), 5 * std::sqrt(64.0), 1e-12);
    EXPECT_THROW(lemma4_bound(1, 0, 1, 0, 10, 0), domain_error);
}

TEST(QuadraticDLS, AggregatedBMatchesPlainDoubleSum) {
    auto seq = random_sequence(-2, 9, SeqDistribution::gaussian, 17);
    const double alpha = 0.5;
    const i64 a = 1, b = 2;
    auto farey = farey_sequence(6);
    auto bound = quadratic_dls_bound(seq, alpha, a, b, farey);

    DLSInstance inst;
    inst.X = 2 * alpha;
    inst.Y = bound.Y;
    for (const auto& x : farey) {
        inst.xs.push_back(alpha * x.to_double());
        inst.aw.emplace_back(1, 0);
    }
    for (i64 s = seq.first(); s <= seq.last(); ++s)
        for (i64 t = seq.first(); t <= seq.last(); ++t) {
            inst.ys.push_back(g_eval(s, t, a, b).to_double());
            inst.bw.push_back(seq.at(s) * std::conj(seq.at(t)));
        }
    auto c = dls_check(inst);
    EXPECT_NEAR(bound.B.real(), c.B.real(), 1e-9 * std::fabs(c.B.real()));
    EXPECT_NEAR(bound.A, c.A, 1e-12 * c.A);
    // the bilinear form is the square of the large sieve sum
    QuadraticAmplitude f(Rational(1, 2), Rational(1, 4), Rational(0));
    double lhs = ls_lhs(seq, f, farey);
    EXPECT_NEAR(c.lhs, lhs * lhs, 1e-9 * lhs * lhs);
    EXPECT_LE(lhs, bound.bound * (1 + 1e-9));
}
