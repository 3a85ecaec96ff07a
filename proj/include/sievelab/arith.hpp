// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sievelab {

/// Thrown when an operation is called outside its mathematical domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

using i64 = std::int64_t;
using i128 = __int128;

namespace detail {

inline i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw std::overflow_error("sievelab: integer result exceeds 64 bits");
    return static_cast<i64>(v);
}

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// floor(a / b) for b > 0
inline i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// a mod b in [0, b) for b > 0
inline i128 floor_mod(i128 a, i128 b) {
    i128 r = a % b;
    return r < 0 ? r + b : r;
}

}  // namespace detail

/// Exact reduced fraction num/den with den >= 1.
///
/// Storage is 64-bit; every product is formed in 128 bits and narrowed with
/// an overflow check, so results are either exact or an exception.
class Rational {
public:
    constexpr Rational() = default;
    Rational(i64 n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(i64 n, i64 d) { assign(n, d); }

    static Rational from_wide(i128 n, i128 d) {
        Rational r;
        r.assign(n, d);
        return r;
    }

    [[nodiscard]] i64 num() const { return num_; }
    [[nodiscard]] i64 den() const { return den_; }
    [[nodiscard]] double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    [[nodiscard]] long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }
    [[nodiscard]] bool is_integer() const { return den_ == 1; }

    /// Fractional part in [0, 1).
    [[nodiscard]] Rational frac() const {
        return from_wide(detail::floor_mod(num_, den_), den_);
    }
    [[nodiscard]] i64 floor() const { return detail::narrow(detail::floor_div(num_, den_)); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return from_wide(static_cast<i128>(x.num_) * y.den_ + static_cast<i128>(y.num_) * x.den_,
                         static_cast<i128>(x.den_) * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return from_wide(static_cast<i128>(x.num_) * y.den_ - static_cast<i128>(y.num_) * x.den_,
                         static_cast<i128>(x.den_) * y.den_);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return from_wide(static_cast<i128>(x.num_) * y.num_, static_cast<i128>(x.den_) * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw domain_error("Rational: division by zero");
        return from_wide(static_cast<i128>(x.num_) * y.den_, static_cast<i128>(x.den_) * y.num_);
    }
    Rational operator-() const { return from_wide(-static_cast<i128>(num_), den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        return static_cast<i128>(x.num_) * y.den_ <=> static_cast<i128>(y.num_) * x.den_;
    }

    [[nodiscard]] std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void assign(i128 n, i128 d) {
        if (d == 0) throw domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = detail::gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num_ = detail::narrow(n);
        den_ = detail::narrow(d);
    }

    i64 num_ = 0;
    i64 den_ = 1;
};

inline Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

/// Unique reduced representative of num/den with positive denominator.
inline Rational reduce(i64 num, i64 den) { return Rational(num, den); }

/// Parses "a/b", "a" or a decimal literal such as "0.25" into an exact Rational.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&] { return domain_error("cannot parse rational '" + text + "'"); };
    if (text.empty()) throw bad();
    try {
        if (auto slash = text.find('/'); slash != std::string::npos) {
            std::size_t used = 0;
            i64 n = std::stoll(text.substr(0, slash), &used);
            if (used != slash) throw bad();
            std::string rest = text.substr(slash + 1);
            i64 d = std::stoll(rest, &used);
            if (used != rest.size()) throw bad();
            return Rational(n, d);
        }
        if (auto dot = text.find('.'); dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            std::size_t frac_len = text.size() - dot - 1;
            if (frac_len > 17) throw bad();
            std::size_t used = 0;
            i64 n = std::stoll(digits, &used);
            if (used != digits.size()) throw bad();
            i64 d = 1;
            for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
            if (!text.empty() && text[0] == '-' && n > 0) n = -n;
            return Rational(n, d);
        }
        std::size_t used = 0;
        i64 n = std::stoll(text, &used);
        if (used != text.size()) throw bad();
        return Rational(n);
    } catch (const std::logic_error&) {
        throw bad();
    }
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Euler's totient by trial-division factorization.
inline i64 euler_phi(i64 q) {
    if (q <= 0) throw domain_error("euler_phi: q must be >= 1");
    i64 result = q;
    for (i64 p = 2; p * p <= q; ++p) {
        if (q % p != 0) continue;
        while (q % p == 0) q /= p;
        result -= result / p;
    }
    if (q > 1) result -= result / q;
    return result;
}

/// Positive divisors of |k| in ascending order.
inline std::vector<i64> divisors(i64 k) {
    if (k == 0) throw domain_error("divisors: k must be nonzero");
    i64 m = k < 0 ? -k : k;
    std::vector<i64> small, large;
    for (i64 d = 1; d * d <= m; ++d) {
        if (m % d != 0) continue;
        small.push_back(d);
        if (d != m / d) large.push_back(m / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// tau(|k|), the number of positive divisors.
inline i64 divisor_count(i64 k) {
    if (k == 0) throw domain_error("divisor_count: tau is undefined at 0");
    return static_cast<i64>(divisors(k).size());
}

struct DivisorPair {
    i64 u;
    i64 v;
    friend bool operator==(const DivisorPair&, const DivisorPair&) = default;
};

/// All ordered pairs (u, v) with u * v == k, sorted by u ascending.
/// There are exactly 2 * tau(|k|) of them.
inline std::vector<DivisorPair> divisor_pairs(i64 k) {
    if (k == 0) throw domain_error("divisor_pairs: k = 0 has infinitely many factorizations");
    auto pos = divisors(k);
    std::vector<DivisorPair> out;
    out.reserve(2 * pos.size());
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back({-*it, k / -*it});
    for (i64 d : pos) out.push_back({d, k / d});
    return out;
}

namespace detail {

// Exact sign of b*theta - a. fma rounds once, so the sign survives.
inline int side(double theta, i64 a, i64 b) {
    double r = std::fma(static_cast<double>(b), theta, -static_cast<double>(a));
    return (r > 0) - (r < 0);
}

}  // namespace detail

/// Rational a/b with 1 <= b <= bound and |theta - a/b| < 1/(b * bound).
///
/// Walks the Stern-Brocot tree toward theta, taking whole runs of same-side
/// steps at once (these runs are the continued-fraction partial quotients), until
/// the next mediant's denominator exceeds the bound. Of the two bracketing
/// fractions, the one on theta's side of that mediant satisfies the Dirichlet
/// inequality.
inline Rational dirichlet_approx(double theta, i64 bound) {
    if (bound < 1) throw domain_error("dirichlet_approx: bound must be >= 1");
    if (!std::isfinite(theta)) throw domain_error("dirichlet_approx: theta must be finite");
    if (bound > (i64{1} << 52)) throw domain_error("dirichlet_approx: bound too large for double input");

    double whole = std::floor(theta);
    if (std::fabs(whole) > 0x1p52) throw domain_error("dirichlet_approx: |theta| too large");
    const i64 shift = static_cast<i64>(whole);
    const double x = theta - whole;  // exact for |theta| < 2^52
    if (x == 0.0) return Rational(shift);

    i64 la = 0, lb = 1, ra = 1, rb = 1;
    for (;;) {
        i64 ma = la + ra, mb = lb + rb;
        if (mb > bound) {
            if (detail::side(x, ma, mb) < 0)
                return Rational(la + shift * lb, lb);
            return Rational(ra + shift * rb, rb);
        }
        int s = detail::side(x, ma, mb);
        if (s == 0) return Rational(ma + shift * mb, mb);
        if (s > 0) {
            // largest k >= 1 with (la + k ra)/(lb + k rb) < x and lb + k rb <= bound
            i64 hi = (bound - lb) / rb, lo = 1;
            while (lo < hi) {
                i64 mid = lo + (hi - lo + 1) / 2;
                if (detail::side(x, la + mid * ra, lb + mid * rb) > 0) lo = mid;
                else hi = mid - 1;
            }
            la += lo * ra;
            lb += lo * rb;
            if (detail::side(x, la, lb) == 0) return Rational(la + shift * lb, lb);
        } else {
            i64 hi = (bound - rb) / lb, lo = 1;
            while (lo < hi) {
                i64 mid = lo + (hi - lo + 1) / 2;
                if (detail::side(x, ra + mid * la, rb + mid * lb) < 0) lo = mid;
                else hi = mid - 1;
            }
            ra += lo * la;
            rb += lo * lb;
            if (detail::side(x, ra, rb) == 0) return Rational(ra + shift * rb, rb);
        }
    }
}

}  // namespace sievelab
