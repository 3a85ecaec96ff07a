// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>

#include "arith.hpp"

// Right-hand sides of the large sieve bounds. Where an inequality only holds up
// to an unspecified implied constant, the formula is returned with constant 1
// and is meant for ratio reporting, not as a certified bound.

namespace sievelab {

struct BoundParams {
    i64 Q = 1;
    i64 M = 0;
    i64 N = 1;
    double alpha = 1.0;
    i64 a = 0;
    i64 b = 1;
    double eps = 0.1;
    double delta = 0.5;
    double Z = 0.0;
};

/// (1/delta + N) Z, valid with constant 1.
inline double classical_rhs(double delta, i64 N, double Z) {
    if (!(delta > 0)) throw domain_error("classical_rhs: delta must be > 0");
    return (1.0 / delta + static_cast<double>(N)) * Z;
}

/// (1/delta - 1 + N) Z, the sharp form.
inline double sharp_rhs(double delta, i64 N, double Z) {
    if (!(delta > 0)) throw domain_error("sharp_rhs: delta must be > 0");
    double factor = 1.0 / delta - 1.0 + static_cast<double>(N);
    if (!(factor > 0)) throw domain_error("sharp_rhs: 1/delta - 1 + N must be > 0");
    return factor * Z;
}

/// (Q^2 + N) Z, the additive-character corollary over F(Q).
inline double additive_rhs(i64 Q, i64 N, double Z) {
    if (Q < 1) throw domain_error("additive_rhs: Q must be >= 1");
    double q = static_cast<double>(Q);
    return (q * q + static_cast<double>(N)) * Z;
}

/// (1/delta + alpha (|M| + N)^2) Z, the Gallagher-style bound for quadratic f.
inline double trivial_rhs(double delta, double alpha, i64 M, i64 N, double Z) {
    if (!(delta > 0)) throw domain_error("trivial_rhs: delta must be > 0");
    double w = static_cast<double>(std::llabs(M) + N);
    return (1.0 / delta + std::fabs(alpha) * w * w) * Z;
}

/// (b/alpha + 1)^(1/2 + eps) [N b (|M| + N) + |a| + b/alpha]^eps
inline double pi_factor(double alpha, i64 a, i64 b, i64 M, i64 N, double eps) {
    if (!(alpha > 0)) throw domain_error("pi_factor: alpha must be > 0");
    if (b < 1) throw domain_error("pi_factor: b must be >= 1");
    if (!(eps > 0)) throw domain_error("pi_factor: eps must be > 0");
    if (N < 1) throw domain_error("pi_factor: N must be >= 1");
    double bd = static_cast<double>(b);
    double base = static_cast<double>(N) * bd * static_cast<double>(std::llabs(M) + N) +
                  static_cast<double>(std::llabs(a)) + bd / alpha;
    return std::pow(bd / alpha + 1.0, 0.5 + eps) * std::pow(base, eps);
}

/// The radicand alpha N (|M| + N + a/b) + 1 as written in the statement of the bound.
inline double theorem2_radicand(double alpha, i64 a, i64 b, i64 M, i64 N) {
    double ratio = static_cast<double>(a) / static_cast<double>(b);
    return alpha * static_cast<double>(N) * (static_cast<double>(std::llabs(M) + N) + ratio) + 1.0;
}

/// (Q^2 + Q sqrt(alpha N (|M| + N + a/b) + 1)) Pi Z with constant 1.
inline double theorem2_rhs(i64 Q, double alpha, i64 a, i64 b, i64 M, i64 N, double eps, double Z) {
    double rad = theorem2_radicand(alpha, a, b, M, N);
    if (rad < 0) throw domain_error("theorem2_rhs: negative radicand");
    double q = static_cast<double>(Q);
    return (q * q + q * std::sqrt(rad)) * pi_factor(alpha, a, b, M, N, eps) * Z;
}

/// (Q^2 + Q N) Z. A reference curve only; never treated as a bound.
inline double conjecture_rhs(i64 Q, i64 N, double Z) {
    double q = static_cast<double>(Q);
    return (q * q + q * static_cast<double>(N)) * Z;
}

/// Q^(5/2) N + Q^(1/2) N^2, the size of (Q^2 + N) Z for the p-sparse instance.
inline double counterexample_naive_size(i64 Q, i64 N) {
    double q = static_cast<double>(Q), n = static_cast<double>(N);
    return std::pow(q, 2.5) * n + std::sqrt(q) * n * n;
}

/// lhs / rhs, absent for 0/0.
inline std::optional<double> safe_ratio(double lhs, double rhs) {
    if (rhs == 0.0) {
        if (lhs == 0.0) return std::nullopt;
        return lhs > 0 ? HUGE_VAL : -HUGE_VAL;
    }
    return lhs / rhs;
}

}  // namespace sievelab
