#pragma once

#include <cstddef>
#include <random>

#include "regsum/polynomial.hpp"
#include "regsum/power_series.hpp"

namespace regsum {

/// Random p/q with |p| <= max_num and 1 <= q <= max_den.
inline Rational random_rational(std::mt19937_64& rng, long max_num = 9, long max_den = 6) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(BigInt(num(rng)), BigInt(den(rng)));
}

/// Random p/q in [lo, hi] on a grid of denominators up to max_den.
inline Rational random_rational_in(std::mt19937_64& rng, long lo, long hi, long max_den = 8) {
    std::uniform_int_distribution<long> den(1, max_den);
    const long q = den(rng);
    std::uniform_int_distribution<long> num(lo * q, hi * q);
    return Rational(BigInt(num(rng)), BigInt(q));
}

/// Random polynomial of exact degree `degree` (nonzero leading coefficient).
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t degree) {
    std::vector<Rational> c(degree + 1);
    for (auto& v : c) {
        v = random_rational(rng);
    }
    while (c.back().is_zero()) {
        c.back() = random_rational(rng);
    }
    return Polynomial(std::move(c));
}

inline PowerSeries random_series(std::mt19937_64& rng, std::size_t order) {
    std::vector<Rational> c(order + 1);
    for (auto& v : c) {
        v = random_rational(rng);
    }
    return PowerSeries(std::move(c));
}

} // namespace regsum
