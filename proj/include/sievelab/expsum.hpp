// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "arith.hpp"
#include "compensated.hpp"
#include "farey.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace sievelab {

using cplx = std::complex<double>;

/// e(t) = exp(2 pi i t). The argument is folded to [-1/2, 1/2] first so the
/// trig calls see a small angle.
inline cplx unit_circle(double t) {
    double r = t - std::nearbyint(t);
    double th = 2.0 * std::numbers::pi * r;
    return {std::cos(th), std::sin(th)};
}

/// e(p/q) for an already reduced phase numerator/denominator pair.
inline cplx unit_circle(i128 num, i128 den) {
    i128 r = detail::floor_mod(num, den);
    if (2 * r > den) r -= den;
    if (r == 0) return {1.0, 0.0};
    if (2 * r == den) return {-1.0, 0.0};
    if (4 * r == den) return {0.0, 1.0};
    if (4 * r == -den) return {0.0, -1.0};
    double th = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(den));
    return {std::cos(th), std::sin(th)};
}

/// Coefficients a_n on the window n = M+1 .. M+N.
class CoeffSeq {
public:
    CoeffSeq(i64 M, std::vector<cplx> values) : M_(M), values_(std::move(values)) {
        if (values_.empty()) throw domain_error("CoeffSeq: window length N must be >= 1");
    }

    [[nodiscard]] i64 M() const { return M_; }
    [[nodiscard]] i64 N() const { return static_cast<i64>(values_.size()); }
    [[nodiscard]] i64 first() const { return M_ + 1; }
    [[nodiscard]] i64 last() const { return M_ + N(); }
    [[nodiscard]] std::span<const cplx> values() const { return values_; }
    /// a_n for n in the window.
    [[nodiscard]] cplx at(i64 n) const { return values_.at(static_cast<std::size_t>(n - first())); }

    /// Z = sum |a_n|^2
    [[nodiscard]] double power() const {
        compensated_sum<double> z;
        for (const auto& v : values_) z += std::norm(v);
        return z.value();
    }

private:
    i64 M_;
    std::vector<cplx> values_;
};

enum class SeqDistribution { unit, gaussian, sparse };

/// Random coefficient sequence. `sparse` keeps each entry with probability
/// `density` and gives kept entries a random unit phase.
inline CoeffSeq random_sequence(i64 M, i64 N, SeqDistribution dist, std::uint64_t seed,
                                double density = 0.1) {
    Rng rng(seed);
    std::vector<cplx> v(static_cast<std::size_t>(N));
    for (auto& x : v) {
        switch (dist) {
            case SeqDistribution::unit: x = rng.unit_phase(); break;
            case SeqDistribution::gaussian: x = rng.complex_gaussian(); break;
            case SeqDistribution::sparse: {
                bool keep = rng.uniform() < density;
                cplx ph = rng.unit_phase();
                x = keep ? ph : cplx{0.0, 0.0};
                break;
            }
        }
    }
    return CoeffSeq(M, std::move(v));
}

/// f(x) = alpha x^2 + beta x + gamma with alpha > 0.
///
/// Built from rationals, it carries exact coefficients and the reduced ratio
/// beta/alpha. Built from reals, only the floating path is available unless
/// a ratio approximation is attached explicitly.
class QuadraticAmplitude {
public:
    struct Exact {
        Rational alpha, beta, gamma;
    };

    QuadraticAmplitude(Rational alpha, Rational beta, Rational gamma)
        : alpha_(alpha.to_double()), beta_(beta.to_double()), gamma_(gamma.to_double()),
          exact_(Exact{alpha, beta, gamma}), ratio_(beta / alpha) {
        if (alpha <= Rational(0)) throw domain_error("QuadraticAmplitude: alpha must be > 0");
    }

    QuadraticAmplitude(double alpha, double beta, double gamma,
                       std::optional<Rational> ratio = std::nullopt)
        : alpha_(alpha), beta_(beta), gamma_(gamma), ratio_(ratio) {
        if (!(alpha > 0)) throw domain_error("QuadraticAmplitude: alpha must be > 0");
    }

    /// f(n) = n^2
    static QuadraticAmplitude square() { return {Rational(1), Rational(0), Rational(0)}; }
    /// f(n) = n; alpha = 0 is outside the quadratic family, so this is built directly.
    static QuadraticAmplitude linear() {
        QuadraticAmplitude f(Rational(1), Rational(0), Rational(0));
        f.alpha_ = 0.0;
        f.beta_ = 1.0;
        f.exact_ = Exact{Rational(0), Rational(1), Rational(0)};
        f.ratio_.reset();
        return f;
    }

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] double gamma() const { return gamma_; }
    [[nodiscard]] const std::optional<Exact>& exact() const { return exact_; }
    [[nodiscard]] const std::optional<Rational>& ratio() const { return ratio_; }

    [[nodiscard]] double operator()(i64 n) const {
        long double x = static_cast<long double>(n);
        return static_cast<double>((alpha_ * x + beta_) * x + gamma_);
    }
    [[nodiscard]] std::optional<Rational> exact_at(i64 n) const {
        if (!exact_) return std::nullopt;
        Rational x(n);
        return (exact_->alpha * x + exact_->beta) * x + exact_->gamma;
    }

private:
    double alpha_, beta_, gamma_;
    std::optional<Exact> exact_;
    std::optional<Rational> ratio_;
};

inline double eval_amplitude(const QuadraticAmplitude& f, i64 n) { return f(n); }

namespace detail {

// Values of f on the window, exact when possible.
struct AmplitudeTable {
    std::vector<Rational> exact;
    std::vector<long double> real;
};

inline AmplitudeTable tabulate(const QuadraticAmplitude& f, i64 first, i64 count) {
    AmplitudeTable t;
    if (f.exact()) {
        t.exact.reserve(static_cast<std::size_t>(count));
        for (i64 i = 0; i < count; ++i) t.exact.push_back(*f.exact_at(first + i));
    } else {
        t.real.reserve(static_cast<std::size_t>(count));
        for (i64 i = 0; i < count; ++i) {
            long double n = static_cast<long double>(first + i);
            t.real.push_back((static_cast<long double>(f.alpha()) * n + f.beta()) * n + f.gamma());
        }
    }
    return t;
}

// e(x * v) with v = A/D and x = p/q: the phase is reduced modulo 1 as the
// integer (pA mod qD) before conversion.
inline cplx exact_phase(const Rational& x, const Rational& v) {
    i128 num = static_cast<i128>(x.num()) * v.num();
    i128 den = static_cast<i128>(x.den()) * v.den();
    return unit_circle(num, den);
}

inline cplx real_phase(long double x, long double v) {
    long double t = x * v;
    t -= std::floor(t);
    return unit_circle(static_cast<double>(t));
}

inline cplx sum_terms(std::span<const cplx> a, const AmplitudeTable& tab, const Rational* xr,
                      long double xf) {
    compensated_sum<cplx> acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == cplx{}) continue;
        cplx ph = (xr && !tab.exact.empty()) ? exact_phase(*xr, tab.exact[i])
                  : !tab.exact.empty()       ? real_phase(xf, tab.exact[i].to_long_double())
                                             : real_phase(xf, tab.real[i]);
        acc += a[i] * ph;
    }
    return acc.value();
}

}  // namespace detail

/// S(x) = sum_n a_n e(x f(n)) at a rational point, exact phase when f is rational.
inline cplx exp_sum(const CoeffSeq& seq, const QuadraticAmplitude& f, const Rational& x) {
    auto tab = detail::tabulate(f, seq.first(), seq.N());
    return detail::sum_terms(seq.values(), tab, &x, x.to_long_double());
}

/// S(x) at a real point; phases formed in extended precision.
inline cplx exp_sum(const CoeffSeq& seq, const QuadraticAmplitude& f, double x) {
    auto tab = detail::tabulate(f, seq.first(), seq.N());
    return detail::sum_terms(seq.values(), tab, nullptr, x);
}

/// Plain double evaluation with no phase reduction; the reference the exact path is compared against.
inline cplx exp_sum_naive(const CoeffSeq& seq, const QuadraticAmplitude& f, double x) {
    cplx s{};
    for (i64 n = seq.first(); n <= seq.last(); ++n) {
        double t = x * f(n);
        s += seq.at(n) * cplx{std::cos(2.0 * std::numbers::pi * t), std::sin(2.0 * std::numbers::pi * t)};
    }
    return s;
}

/// True if some phase x f(n) exceeds 2^52 in magnitude, where double phases lose the fractional part.
inline bool phase_precision_risk(const CoeffSeq& seq, const QuadraticAmplitude& f, double max_abs_x) {
    if (f.exact()) return false;
    double worst = std::max(std::fabs(f(seq.first())), std::fabs(f(seq.last())));
    return worst * max_abs_x > 0x1p52;
}

/// sum_k |S(x_k)|^2 over rational points. Points may be evaluated on several
/// threads; the reduction runs in point order.
inline double ls_lhs(const CoeffSeq& seq, const QuadraticAmplitude& f, std::span<const Rational> points,
                     unsigned threads = 1) {
    auto tab = detail::tabulate(f, seq.first(), seq.N());
    std::vector<double> terms(points.size());
    parallel_for(points.size(), threads, [&](std::size_t k) {
        terms[k] = std::norm(detail::sum_terms(seq.values(), tab, &points[k], points[k].to_long_double()));
    });
    compensated_sum<double> acc;
    for (double t : terms) acc += t;
    return acc.value();
}

inline double ls_lhs(const CoeffSeq& seq, const QuadraticAmplitude& f, const FareySet& points,
                     unsigned threads = 1) {
    return ls_lhs(seq, f, points.points(), threads);
}

inline double ls_lhs(const CoeffSeq& seq, const QuadraticAmplitude& f, std::span<const double> points,
                     unsigned threads = 1) {
    auto tab = detail::tabulate(f, seq.first(), seq.N());
    std::vector<double> terms(points.size());
    parallel_for(points.size(), threads, [&](std::size_t k) {
        terms[k] = std::norm(detail::sum_terms(seq.values(), tab, nullptr, points[k]));
    });
    compensated_sum<double> acc;
    for (double t : terms) acc += t;
    return acc.value();
}

inline double ls_lhs(const CoeffSeq& seq, const QuadraticAmplitude& f, const SpacedPoints& points,
                     unsigned threads = 1) {
    return ls_lhs(seq, f, std::span<const double>(points.points), threads);
}

/// Coefficients c_k attached to the points in the dual form.
using DualSeq = std::vector<cplx>;

/// sum_{n=M+1}^{M+N} |sum_k c_k e(x_k f(n))|^2
inline double dual_lhs(std::span<const cplx> dual, const QuadraticAmplitude& f, std::span<const Rational> points,
                       i64 M, i64 N) {
    if (dual.size() != points.size()) throw domain_error("dual_lhs: coefficient count differs from point count");
    if (N < 1) throw domain_error("dual_lhs: N must be >= 1");
    auto tab = detail::tabulate(f, M + 1, N);
    compensated_sum<double> outer;
    for (i64 i = 0; i < N; ++i) {
        compensated_sum<cplx> inner;
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (dual[k] == cplx{}) continue;
            auto ui = static_cast<std::size_t>(i);
            cplx ph = !tab.exact.empty() ? detail::exact_phase(points[k], tab.exact[ui])
                                         : detail::real_phase(points[k].to_long_double(), tab.real[ui]);
            inner += dual[k] * ph;
        }
        outer += std::norm(inner.value());
    }
    return outer.value();
}

inline double dual_lhs(std::span<const cplx> dual, const QuadraticAmplitude& f, std::span<const double> points,
                       i64 M, i64 N) {
    if (dual.size() != points.size()) throw domain_error("dual_lhs: coefficient count differs from point count");
    if (N < 1) throw domain_error("dual_lhs: N must be >= 1");
    auto tab = detail::tabulate(f, M + 1, N);
    compensated_sum<double> outer;
    for (i64 i = 0; i < N; ++i) {
        compensated_sum<cplx> inner;
        auto ui = static_cast<std::size_t>(i);
        long double v = tab.exact.empty() ? tab.real[ui] : tab.exact[ui].to_long_double();
        for (std::size_t k = 0; k < points.size(); ++k) inner += dual[k] * detail::real_phase(points[k], v);
        outer += std::norm(inner.value());
    }
    return outer.value();
}

/// Dense row-major matrix t_{kn} = e(x_k f(n)), K rows by N columns.
struct PhaseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<cplx> data;

    [[nodiscard]] cplx operator()(std::size_t k, std::size_t n) const { return data[k * cols + n]; }
};

inline PhaseMatrix phase_matrix(const QuadraticAmplitude& f, std::span<const double> points, i64 M, i64 N) {
    auto tab = detail::tabulate(f, M + 1, N);
    PhaseMatrix t{points.size(), static_cast<std::size_t>(N), {}};
    t.data.reserve(t.rows * t.cols);
    for (double x : points)
        for (std::size_t n = 0; n < t.cols; ++n)
            t.data.push_back(detail::real_phase(x, tab.exact.empty() ? tab.real[n] : tab.exact[n].to_long_double()));
    return t;
}

struct DualityResult {
    double norm_primal = 0;  ///< largest eigenvalue of T* T
    double norm_dual = 0;    ///< largest eigenvalue of T T*
    int iterations_primal = 0;
    int iterations_dual = 0;
    bool converged = false;  ///< both iterations settled and the two values agree within tol
};

namespace detail {

// Largest eigenvalue of T* T (on_columns) or T T*, by power iteration with the
// Rayleigh quotient. `settled` reports whether the quotient stopped moving.
inline std::pair<double, int> power_iterate(const PhaseMatrix& t, bool on_columns, int iterations,
                                            double settle, std::uint64_t seed, bool& settled) {
    const std::size_t dim = on_columns ? t.cols : t.rows;
    const std::size_t mid = on_columns ? t.rows : t.cols;
    Rng rng(seed);
    std::vector<cplx> v(dim), w(mid), u(dim);
    for (auto& x : v) x = rng.complex_gaussian();

    auto normalize = [](std::vector<cplx>& x) {
        double s = 0;
        for (const auto& e : x) s += std::norm(e);
        s = std::sqrt(s);
        if (s == 0) return 0.0;
        for (auto& e : x) e /= s;
        return s;
    };
    normalize(v);

    double lambda = 0;
    settled = false;
    int it = 0;
    for (; it < iterations; ++it) {
        // w = B v, u = B* w, where B = T on columns or B = T* on rows
        for (std::size_t i = 0; i < mid; ++i) {
            cplx s{};
            for (std::size_t j = 0; j < dim; ++j)
                s += (on_columns ? t(i, j) : std::conj(t(j, i))) * v[j];
            w[i] = s;
        }
        for (std::size_t j = 0; j < dim; ++j) {
            cplx s{};
            for (std::size_t i = 0; i < mid; ++i)
                s += (on_columns ? std::conj(t(i, j)) : t(j, i)) * w[i];
            u[j] = s;
        }
        double rq = 0;
        for (std::size_t j = 0; j < dim; ++j) rq += (std::conj(v[j]) * u[j]).real();
        v.swap(u);
        if (normalize(v) == 0) {
            settled = true;
            return {0.0, it + 1};
        }
        bool small_step = std::fabs(rq - lambda) <= settle * std::fabs(rq);
        lambda = rq;
        if (small_step && it > 2) {
            settled = true;
            return {lambda, it + 1};
        }
    }
    return {lambda, it};
}

}  // namespace detail

/// Estimates the best constant D of the primal form sum_k |sum_n a_n t_kn|^2 <= D Z
/// and of the dual form, for t_kn = e(x_k f(n)). Both are the squared spectral norm of T.
inline DualityResult duality_norm_check(const PhaseMatrix& t, int iterations, double tol, std::uint64_t seed = 1) {
    if (iterations < 1) throw domain_error("duality_norm_check: iterations must be >= 1");
    if (!(tol > 0)) throw domain_error("duality_norm_check: tol must be > 0");
    DualityResult r;
    bool ok_p = false, ok_d = false;
    constexpr double settle = 1e-14;
    std::tie(r.norm_primal, r.iterations_primal) = detail::power_iterate(t, true, iterations, settle, seed, ok_p);
    std::tie(r.norm_dual, r.iterations_dual) =
        detail::power_iterate(t, false, iterations, settle, derive_seed(seed, 1), ok_d);
    double scale = std::max({1.0, r.norm_primal, r.norm_dual});
    r.converged = ok_p && ok_d && std::fabs(r.norm_primal - r.norm_dual) <= tol * scale;
    return r;
}

inline DualityResult duality_norm_check(const QuadraticAmplitude& f, std::span<const double> points, i64 M, i64 N,
                                        int iterations, double tol, std::uint64_t seed = 1) {
    return duality_norm_check(phase_matrix(f, points, M, N), iterations, tol, seed);
}

}  // namespace sievelab
