#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "regsum/summation.hpp"

namespace regsum::fixtures {

// Taylor coefficients b_n of exp(-z/(1+z)) = e^{-1} e^{1/(1+z)}, from
//     (1+z)^2 g' = -g   =>   (n+1) b_{n+1} = -(2n+1) b_n - (n-1) b_{n-1}.
// Exact terms for small n, long double terms for the Abel engine.
inline SeriesSpec exp_inverse_one_plus(std::size_t float_terms = 20000) {
    auto table = std::make_shared<std::vector<long double>>(float_terms + 1);
    auto& b = *table;
    b[0] = 1.0L;
    if (float_terms >= 1) {
        b[1] = -1.0L;
    }
    for (std::size_t n = 1; n < float_terms; ++n) {
        const long double m = static_cast<long double>(n);
        b[n + 1] = -((2 * m + 1) * b[n] + (m - 1) * b[n - 1]) / (m + 1);
    }
    auto exact = [](std::size_t n) {
        Rational prev = 1;
        Rational cur = -1;
        if (n == 0) {
            return prev;
        }
        for (std::size_t k = 1; k < n; ++k) {
            const long m = static_cast<long>(k);
            Rational next = -(Rational(2 * m + 1) * cur + Rational(m - 1) * prev) / Rational(m + 1);
            prev = cur;
            cur = next;
        }
        return cur;
    };
    auto prefix = [](std::size_t count) {
        std::vector<Rational> out;
        Rational prev = 1;
        Rational cur = -1;
        for (std::size_t k = 0; k < count; ++k) {
            if (k == 0) {
                out.push_back(1);
                continue;
            }
            out.push_back(cur);
            const long m = static_cast<long>(k);
            Rational next = -(Rational(2 * m + 1) * cur + Rational(m - 1) * prev) / Rational(m + 1);
            prev = cur;
            cur = next;
        }
        return out;
    };
    auto fast = [table, exact](std::size_t n) {
        return n < table->size() ? static_cast<double>((*table)[n]) : exact(n).to_double();
    };
    return SeriesSpec::custom("exp(-z/(1+z))", exact, prefix, fast);
}

// Abel schedule kept where the terms b_n t^n (peak about e^{1/(1-t)}) stay
// well inside double precision.
inline AbelOptions exp_inverse_schedule() {
    AbelOptions o;
    o.schedule = {0.7, 0.75, 0.8, 0.85, 0.9, 0.925, 0.95};
    o.budget = [](double t) {
        const double eps = 1.0 - t;
        return static_cast<std::size_t>(std::ceil(60.0 / eps + 4.0 / (eps * eps)));
    };
    o.order = 4;
    return o;
}

} // namespace regsum::fixtures
