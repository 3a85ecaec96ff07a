// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <vector>

#include "arith.hpp"
#include "compensated.hpp"
#include "expsum.hpp"

namespace sievelab {

/// Lambda(x) = max(1 - |x|, 0)
inline double triangle_kernel(double x) { return std::max(1.0 - std::fabs(x), 0.0); }

/// (pi/2)^4
inline constexpr double dls_constant =
    (std::numbers::pi / 2) * (std::numbers::pi / 2) * (std::numbers::pi / 2) * (std::numbers::pi / 2);

/// Point families for the double large sieve: xs in [-X/2, X/2], ys in [-Y/2, Y/2].
struct DLSInstance {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<cplx> aw;
    std::vector<cplx> bw;
    double X = 1;
    double Y = 1;

    /// delta = X / (XY + 1)
    [[nodiscard]] double delta() const { return X / (X * Y + 1); }
    /// epsilon = 1 / X
    [[nodiscard]] double epsilon() const { return 1 / X; }

    void validate() const {
        if (!(X > 0) || !(Y > 0)) throw domain_error("DLSInstance: X and Y must be > 0");
        if (xs.size() != aw.size() || ys.size() != bw.size())
            throw domain_error("DLSInstance: weight count differs from point count");
        for (double x : xs)
            if (std::fabs(x) > X / 2) throw domain_error("DLSInstance: x outside [-X/2, X/2]");
        for (double y : ys)
            if (std::fabs(y) > Y / 2) throw domain_error("DLSInstance: y outside [-Y/2, Y/2]");
    }
};

/// |sum_m sum_n a_m b_n e(x_m y_n)|^2
inline double bilinear_sum_sq(const DLSInstance& inst) {
    compensated_sum<cplx> outer;
    for (std::size_t m = 0; m < inst.xs.size(); ++m) {
        if (inst.aw[m] == cplx{}) continue;
        compensated_sum<cplx> inner;
        for (std::size_t n = 0; n < inst.ys.size(); ++n)
            inner += inst.bw[n] * detail::real_phase(inst.xs[m], inst.ys[n]);
        outer += inst.aw[m] * inner.value();
    }
    return std::norm(outer.value());
}

namespace detail {

// sum_i sum_j w_i conj(w_j) Lambda((p_i - p_j) / width), visiting only pairs
// closer than `width` after sorting by position.
inline cplx kernel_form(const std::vector<double>& pos, const std::vector<cplx>& w, double width) {
    std::vector<std::size_t> idx(pos.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return pos[i] < pos[j]; });
    compensated_sum<cplx> acc;
    for (std::size_t ii = 0; ii < idx.size(); ++ii) {
        std::size_t i = idx[ii];
        acc += std::norm(w[i]);
        for (std::size_t jj = ii + 1; jj < idx.size(); ++jj) {
            std::size_t j = idx[jj];
            double d = (pos[j] - pos[i]) / width;
            if (d >= 1) break;
            // the (i, j) and (j, i) terms together
            acc += 2.0 * (w[i] * std::conj(w[j])).real() * triangle_kernel(d);
        }
    }
    return acc.value();
}

}  // namespace detail

/// A(delta) = sum_m sum_r |a_m| |a_r| Lambda((x_m - x_r) / delta)
inline double a_delta(const DLSInstance& inst) {
    std::vector<cplx> mod;
    mod.reserve(inst.aw.size());
    for (const auto& a : inst.aw) mod.emplace_back(std::abs(a), 0.0);
    return detail::kernel_form(inst.xs, mod, inst.delta()).real();
}

/// B(epsilon) = sum_n sum_r b_n conj(b_r) Lambda((y_n - y_r) / epsilon), taken
/// with signed weights. Evaluated over every ordered pair so any imaginary
/// residue is visible to the caller.
inline cplx b_epsilon(const DLSInstance& inst) {
    const double eps = inst.epsilon();
    compensated_sum<cplx> acc;
    for (std::size_t n = 0; n < inst.ys.size(); ++n)
        for (std::size_t r = 0; r < inst.ys.size(); ++r) {
            double k = triangle_kernel((inst.ys[n] - inst.ys[r]) / eps);
            if (k != 0) acc += inst.bw[n] * std::conj(inst.bw[r]) * k;
        }
    return acc.value();
}

struct DLSCheck {
    double lhs = 0;
    double rhs = 0;
    double A = 0;
    cplx B{};
    bool holds = false;
    bool anomaly = false;  ///< B had a non-negligible imaginary part
};

inline constexpr double dls_slack = 1e-9;

namespace detail {

inline DLSCheck finish_check(double lhs, double A, cplx B, double X, double Y) {
    DLSCheck c;
    c.lhs = lhs;
    c.A = A;
    c.B = B;
    c.anomaly = std::fabs(B.imag()) > 1e-9 * std::max(std::fabs(B.real()), 1e-300) && B.imag() != 0;
    c.rhs = dls_constant * A * B.real() * (X * Y + 1);
    c.holds = !c.anomaly && c.lhs <= c.rhs * (1 + dls_slack);
    return c;
}

}  // namespace detail

/// Both sides of |sum a_m b_n e(x_m y_n)|^2 <= (pi/2)^4 A(delta) B(epsilon) (XY + 1).
inline DLSCheck dls_check(const DLSInstance& inst) {
    inst.validate();
    return detail::finish_check(bilinear_sum_sq(inst), a_delta(inst), b_epsilon(inst), inst.X, inst.Y);
}

/// b g(s, t) = (s - t)(b s + b t + a), an integer.
inline i64 g_scaled(i64 s, i64 t, i64 a, i64 b) {
    return detail::narrow(static_cast<i128>(s - t) * (static_cast<i128>(b) * (s + t) + a));
}

/// g(s, t) = (s - t)(s + t + a/b)
inline Rational g_eval(i64 s, i64 t, i64 a, i64 b) {
    if (b < 1) throw domain_error("g_eval: b must be >= 1");
    return Rational(g_scaled(s, t, a, b), b);
}

/// Fixed (m, n) in S = [M+1, M+N] together with the tolerance parameter alpha and a/b.
struct Lemma4Instance {
    i64 M = 0;
    i64 N = 1;
    Rational alpha{1};
    i64 a = 0;
    i64 b = 1;
    i64 m = 1;
    i64 n = 1;

    void validate(i64 cap) const {
        if (N < 1) throw domain_error("Lemma4Instance: N must be >= 1");
        if (N > cap)
            throw domain_error("Lemma4Instance: N = " + std::to_string(N) + " exceeds the cap of " +
                               std::to_string(cap));
        if (alpha <= Rational(0)) throw domain_error("Lemma4Instance: alpha must be > 0");
        if (b < 1 || gcd(a, b) != 1) throw domain_error("Lemma4Instance: need b >= 1 and gcd(a, b) = 1");
        if (m <= M || m > M + N || n <= M || n > M + N) throw domain_error("Lemma4Instance: m, n must lie in S");
    }
};

inline constexpr i64 lemma4_default_cap = 500;

/// T by scanning all (m', n') in S^2 and comparing g-values exactly:
/// g(m', n') != 0 and |g(m, n) - g(m', n')| <= 1/(2 alpha).
inline i64 lemma4_count_bruteforce(const Lemma4Instance& inst, i64 cap = lemma4_default_cap) {
    inst.validate(cap);
    const Rational g0 = g_eval(inst.m, inst.n, inst.a, inst.b);
    const Rational tol = Rational(1) / (Rational(2) * inst.alpha);
    i64 count = 0;
    for (i64 s = inst.M + 1; s <= inst.M + inst.N; ++s)
        for (i64 t = inst.M + 1; t <= inst.M + inst.N; ++t) {
            Rational g = g_eval(s, t, inst.a, inst.b);
            if (g != Rational(0) && abs(g0 - g) <= tol) ++count;
        }
    return count;
}

/// T by factoring: every admissible pair has b g(m', n') = k for an integer k
/// within b/(2 alpha) of b g(m, n), and k = u v with u = m' - n',
/// v = b m' + b n' + a. Each divisor pair of k gives at most one candidate
/// m' = (b u + v - a)/(2b), n' = (-b u + v - a)/(2b).
inline i64 lemma4_count_divisor(const Lemma4Instance& inst, i64 cap = lemma4_default_cap) {
    inst.validate(cap);
    const i128 g0 = g_scaled(inst.m, inst.n, inst.a, inst.b);
    // |k - g0| <= b / (2 alpha) = b q / (2 p) for alpha = p/q
    const i128 p = inst.alpha.num(), q = inst.alpha.den();
    const i128 reach_num = static_cast<i128>(inst.b) * q, reach_den = 2 * p;
    const i128 lo = -detail::floor_div(-(g0 * reach_den - reach_num), reach_den);
    const i128 hi = detail::floor_div(g0 * reach_den + reach_num, reach_den);
    const i64 first = inst.M + 1, last = inst.M + inst.N;
    const i128 two_b = 2 * static_cast<i128>(inst.b);

    i64 count = 0;
    for (i128 k = lo; k <= hi; ++k) {
        if (k == 0) continue;
        for (const auto& [u, v] : divisor_pairs(detail::narrow(k))) {
            i128 mn = static_cast<i128>(inst.b) * u + v - inst.a;
            i128 nn = -static_cast<i128>(inst.b) * u + v - inst.a;
            if (mn % two_b != 0 || nn % two_b != 0) continue;
            i128 m2 = mn / two_b, n2 = nn / two_b;
            if (m2 < first || m2 > last || n2 < first || n2 > last) continue;
            ++count;
        }
    }
    return count;
}

/// (b/alpha + 1) [N b (|M| + N) + |a| + b/alpha]^eps, constant 1.
inline double lemma4_bound(double alpha, i64 a, i64 b, i64 M, i64 N, double eps) {
    if (!(alpha > 0) || b < 1) throw domain_error("lemma4_bound: need alpha > 0 and b >= 1");
    if (!(eps > 0)) throw domain_error("lemma4_bound: eps must be > 0");
    double bd = static_cast<double>(b);
    double base = static_cast<double>(N) * bd * static_cast<double>(std::llabs(M) + N) +
                  static_cast<double>(std::llabs(a)) + bd / alpha;
    return (bd / alpha + 1) * std::pow(base, eps);
}

/// Variant with |a| inside the window factor: (b/alpha + 1) (N b (|M| + N + |a|) + b/alpha)^eps.
inline double lemma4_bound_proof_form(double alpha, i64 a, i64 b, i64 M, i64 N, double eps) {
    if (!(alpha > 0) || b < 1) throw domain_error("lemma4_bound: need alpha > 0 and b >= 1");
    if (!(eps > 0)) throw domain_error("lemma4_bound: eps must be > 0");
    double bd = static_cast<double>(b);
    double base = static_cast<double>(N) * bd * static_cast<double>(std::llabs(M) + N + std::llabs(a)) + bd / alpha;
    return (bd / alpha + 1) * std::pow(base, eps);
}

/// The double large sieve applied to sum_{x in F(Q)} |S(x)|^2 with f having
/// rational beta/alpha = a/b. Completing the square turns the sum into the
/// bilinear form with points alpha x (x in F(Q)), X = 2 alpha, ys = g(s, t),
/// a-weights 1 and b-weights c_s conj(c_t). Its left side is (ls_lhs)^2, so
/// sqrt(rhs) is an explicit-constant upper bound on ls_lhs.
struct QuadraticDLSBound {
    double A = 0;
    cplx B{};
    double X = 0;
    double Y = 0;        ///< 2 max |g(s,t)| over S^2, so every y is in range
    double Y_stated = 0; ///< 2|M|N + N^2 + N a/b, logged for comparison
    double rhs_sq = 0;   ///< (pi/2)^4 A B (XY + 1)
    double bound = 0;    ///< sqrt(rhs_sq)
    bool anomaly = false;
};

inline QuadraticDLSBound quadratic_dls_bound(const CoeffSeq& seq, double alpha, i64 a, i64 b, const FareySet& points) {
    if (!(alpha > 0) || b < 1) throw domain_error("quadratic_dls_bound: need alpha > 0 and b >= 1");
    QuadraticDLSBound r;
    r.X = 2 * alpha;
    const i64 first = seq.first(), last = seq.last();
    const auto Md = static_cast<double>(seq.M()), Nd = static_cast<double>(seq.N());
    r.Y_stated = 2 * std::fabs(Md) * Nd + Nd * Nd + Nd * static_cast<double>(a) / static_cast<double>(b);

    // Aggregate the weights c_s conj(c_t) per distinct value of b g(s, t).
    std::map<i64, compensated_sum<cplx>> agg;
    i64 max_abs = 0;
    for (i64 s = first; s <= last; ++s)
        for (i64 t = first; t <= last; ++t) {
            i64 k = g_scaled(s, t, a, b);
            max_abs = std::max(max_abs, k < 0 ? -k : k);
            cplx w = seq.at(s) * std::conj(seq.at(t));
            if (w != cplx{}) agg[k] += w;
        }
    r.Y = std::max(2.0 * static_cast<double>(max_abs) / static_cast<double>(b), 1e-300);

    std::vector<double> ys;
    std::vector<cplx> ws;
    ys.reserve(agg.size());
    ws.reserve(agg.size());
    for (const auto& [k, w] : agg) {
        ys.push_back(static_cast<double>(k) / static_cast<double>(b));
        ws.push_back(w.value());
    }
    // Full ordered-pair sum so an imaginary residue would show; the kernel
    // window keeps it near-linear in the number of distinct values.
    {
        const double eps = 1 / r.X;
        compensated_sum<cplx> acc;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            std::size_t j = i;
            while (j > 0 && ys[i] - ys[j - 1] < eps) --j;
            for (; j < ys.size() && ys[j] - ys[i] < eps; ++j) {
                double kern = triangle_kernel((ys[i] - ys[j]) / eps);
                if (kern != 0) acc += ws[i] * std::conj(ws[j]) * kern;
            }
        }
        r.B = acc.value();
    }

    std::vector<double> xs;
    xs.reserve(points.size());
    for (const auto& x : points) xs.push_back(alpha * x.to_double());
    std::vector<cplx> ones(xs.size(), cplx{1.0, 0.0});
    r.A = detail::kernel_form(xs, ones, r.X / (r.X * r.Y + 1)).real();

    auto c = detail::finish_check(0.0, r.A, r.B, r.X, r.Y);
    r.anomaly = c.anomaly;
    r.rhs_sq = c.rhs;
    r.bound = std::sqrt(std::max(r.rhs_sq, 0.0));
    return r;
}

}  // namespace sievelab
