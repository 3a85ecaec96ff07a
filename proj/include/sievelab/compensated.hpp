// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>

namespace sievelab {

/// Neumaier's variant of Kahan summation. Order-dependent, so callers that
/// want reproducible output must feed terms in a fixed order.
template <class T>
class compensated_sum {
public:
    compensated_sum& operator+=(T x) {
        T t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            cor_ += (sum_ - t) + x;
        else
            cor_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    [[nodiscard]] T value() const { return sum_ + cor_; }

private:
    T sum_{0};
    T cor_{0};
};

template <class T>
class compensated_sum<std::complex<T>> {
public:
    compensated_sum& operator+=(std::complex<T> z) {
        re_ += z.real();
        im_ += z.imag();
        return *this;
    }
    [[nodiscard]] std::complex<T> value() const { return {re_.value(), im_.value()}; }

private:
    compensated_sum<T> re_;
    compensated_sum<T> im_;
};

}  // namespace sievelab
