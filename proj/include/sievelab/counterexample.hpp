// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>

#include "arith.hpp"
#include "bounds.hpp"
#include "compensated.hpp"
#include "expsum.hpp"
#include "farey.hpp"

namespace sievelab {

/// Q = p^2, M = 0, a_n = p when p | n and 0 otherwise, n = 1..N with p | N.
struct CounterexampleInstance {
    i64 p = 2;
    i64 Q = 4;
    i64 N = 2;
    CoeffSeq seq{0, {cplx{}}};

    /// Z = (N/p) p^2 = N p
    [[nodiscard]] i64 exact_power() const { return N * p; }
};

inline CounterexampleInstance build_counterexample(i64 p, i64 N) {
    if (!is_prime(p)) throw domain_error("counterexample: " + std::to_string(p) + " is not prime");
    if (N < 1 || N % p != 0) throw domain_error("counterexample: N must be a positive multiple of p");
    std::vector<cplx> v(static_cast<std::size_t>(N));
    for (i64 n = 1; n <= N; ++n)
        if (n % p == 0) v[static_cast<std::size_t>(n - 1)] = cplx(static_cast<double>(p), 0.0);
    return CounterexampleInstance{p, p * p, N, CoeffSeq(0, std::move(v))};
}

/// sum over reduced a mod q of |sum_n a_n e(a n^2 / q)|^2, with exact phases.
/// For q = 1 the single residue is a = 0.
inline double modulus_term(const CounterexampleInstance& inst, i64 q) {
    if (q < 1 || q > inst.Q) throw domain_error("modulus_term: need 1 <= q <= Q");
    const auto f = QuadraticAmplitude::square();
    compensated_sum<double> acc;
    if (q == 1) {
        acc += std::norm(exp_sum(inst.seq, f, Rational(0)));
    } else {
        for (i64 a = 1; a < q; ++a)
            if (gcd(a, q) == 1) acc += std::norm(exp_sum(inst.seq, f, Rational(a, q)));
    }
    return acc.value();
}

/// phi(p^2) N^2
inline double modulus_term_closed_form(const CounterexampleInstance& inst) {
    double n = static_cast<double>(inst.N);
    return static_cast<double>(euler_phi(inst.Q)) * n * n;
}

struct FailureReport {
    i64 p = 0, Q = 0, N = 0;
    double Z = 0;
    double full_lhs = 0;         ///< sum over all of F(Q)
    double modulus_term_Q = 0;   ///< the single q = Q contribution
    double closed_form = 0;      ///< phi(Q) N^2
    double naive_rhs = 0;        ///< (Q^2 + N) Z
    double naive_size = 0;       ///< Q^(5/2) N + Q^(1/2) N^2
    bool lower_bound_exceeds_naive = false;
};

/// Evaluates the p-sparse instance against the linear-amplitude bound (Q^2 + N) Z.
/// Failure is declared by the concrete inequality modulus_term(Q) > (Q^2 + N) Z.
inline FailureReport demonstrate_failure(const CounterexampleInstance& inst, unsigned threads = 1) {
    FailureReport r;
    r.p = inst.p;
    r.Q = inst.Q;
    r.N = inst.N;
    r.Z = static_cast<double>(inst.exact_power());
    r.full_lhs = ls_lhs(inst.seq, QuadraticAmplitude::square(), farey_sequence(inst.Q), threads);
    r.modulus_term_Q = modulus_term(inst, inst.Q);
    r.closed_form = modulus_term_closed_form(inst);
    r.naive_rhs = additive_rhs(inst.Q, inst.N, r.Z);
    r.naive_size = counterexample_naive_size(inst.Q, inst.N);
    r.lower_bound_exceeds_naive = r.modulus_term_Q > r.naive_rhs;
    return r;
}

}  // namespace sievelab
