// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "arith.hpp"

namespace sievelab {

/// The Farey points of order Q: reduced p/q with 0 <= p < q <= Q, ascending.
class FareySet {
public:
    [[nodiscard]] i64 order() const { return order_; }
    [[nodiscard]] std::span<const Rational> points() const { return points_; }
    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] const Rational& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] auto begin() const { return points_.begin(); }
    [[nodiscard]] auto end() const { return points_.end(); }

    [[nodiscard]] std::vector<double> as_reals() const {
        std::vector<double> out;
        out.reserve(points_.size());
        for (const auto& r : points_) out.push_back(r.to_double());
        return out;
    }

private:
    friend FareySet farey_sequence(i64 Q);
    i64 order_ = 0;
    std::vector<Rational> points_;
};

/// Generates F(Q) with the neighbour recurrence: from consecutive a/b < c/d,
/// the next term is (k c - a)/(k d - b) with k = floor((Q + b) / d).
inline FareySet farey_sequence(i64 Q) {
    if (Q < 1) throw domain_error("farey_sequence: order must be >= 1");
    FareySet set;
    set.order_ = Q;
    i64 a = 0, b = 1, c = 1, d = Q;
    set.points_.emplace_back(a, b);
    while (c < d) {  // stop before reaching 1/1
        set.points_.emplace_back(c, d);
        i64 k = (Q + b) / d;
        i64 nc = k * c - a, nd = k * d - b;
        a = c;
        b = d;
        c = nc;
        d = nd;
    }
    return set;
}

/// Real points with their minimal spacing modulo 1.
struct SpacedPoints {
    std::vector<double> points;
    double min_gap = 0.0;
};

namespace detail {

inline double dist_mod1(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

}  // namespace detail

/// min over j != k of ||x_j - x_k||, where ||t|| is the distance to the nearest integer.
inline double min_gap_mod1(std::span<const double> pts) {
    if (pts.size() < 2) throw domain_error("min_gap_mod1: need at least 2 points");
    std::vector<double> r;
    r.reserve(pts.size());
    for (double x : pts) r.push_back(x - std::floor(x));
    std::sort(r.begin(), r.end());
    double best = detail::dist_mod1(r.front() + 1.0 - r.back());
    for (std::size_t i = 1; i < r.size(); ++i) best = std::min(best, detail::dist_mod1(r[i] - r[i - 1]));
    return best;
}

/// Exact minimal gap of a Farey set, including the wraparound from the last point to 1.
inline Rational min_gap_mod1(const FareySet& set) {
    if (set.size() < 2) throw domain_error("min_gap_mod1: need at least 2 points");
    auto pts = set.points();
    Rational best = Rational(1) - pts.back() + pts.front();
    for (std::size_t i = 1; i < pts.size(); ++i) best = std::min(best, pts[i] - pts[i - 1]);
    // ||.|| folds gaps above 1/2
    return std::min(best, Rational(1) - best);
}

inline SpacedPoints make_spaced(std::vector<double> pts) {
    double g = min_gap_mod1(pts);
    if (!(g > 0)) throw domain_error("make_spaced: points coincide modulo 1");
    return SpacedPoints{std::move(pts), g};
}

}  // namespace sievelab
