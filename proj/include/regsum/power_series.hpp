#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "regsum/rational.hpp"

namespace regsum {

/// Truncated formal power series c_0 + c_1 t + ... + c_N t^N + O(t^{N+1}).
///
/// The truncation order N is part of the value: binary operations return
/// min(N_lhs, N_rhs), so a result never claims coefficients its inputs did
/// not determine. Equality compares coefficients up to the common order.
class PowerSeries {
public:
    /// Zero series known through t^order.
    explicit PowerSeries(std::size_t order = 0);
    /// Coefficients c_0..c_N; order = coeffs.size() - 1 (an empty list is the zero series of order 0).
    explicit PowerSeries(std::vector<Rational> coeffs);
    /// Coefficients padded with zeros (or cut) to the given order.
    PowerSeries(std::vector<Rational> coeffs, std::size_t order);

    static PowerSeries constant(const Rational& c, std::size_t order);
    /// t^power.
    static PowerSeries monomial(std::size_t power, std::size_t order, const Rational& coeff = 1);
    /// 1/(1 - t) = sum t^n.
    static PowerSeries geometric(std::size_t order);

    std::size_t order() const { return coeffs_.size() - 1; }

    /// [t^n] f; throws OrderExceeded when n > order().
    const Rational& coeff(std::size_t n) const;
    std::span<const Rational> coeffs() const { return coeffs_; }

    /// Same series known through a lower order. Throws OrderExceeded when raising it.
    PowerSeries truncated(std::size_t order) const;

    PowerSeries& operator+=(const PowerSeries& rhs);
    PowerSeries& operator-=(const PowerSeries& rhs);
    PowerSeries& operator*=(const Rational& scalar);

    friend PowerSeries operator+(PowerSeries lhs, const PowerSeries& rhs) { return lhs += rhs; }
    friend PowerSeries operator-(PowerSeries lhs, const PowerSeries& rhs) { return lhs -= rhs; }
    friend PowerSeries operator*(PowerSeries lhs, const Rational& rhs) { return lhs *= rhs; }
    friend PowerSeries operator*(const Rational& lhs, PowerSeries rhs) { return rhs *= lhs; }
    friend PowerSeries operator*(const PowerSeries& lhs, const PowerSeries& rhs);
    PowerSeries operator-() const;

    friend bool operator==(const PowerSeries& lhs, const PowerSeries& rhs);

    /// `c0 + c1*t + c2*t^2 + O(t^3)`; zero coefficients are skipped.
    std::string to_string() const;

private:
    std::vector<Rational> coeffs_;
};

PowerSeries scale(const PowerSeries& f, const Rational& c);

/// g with f g = 1; throws NonUnitError when f(0) = 0.
PowerSeries inverse(const PowerSeries& f);

/// Formal d/dt; the order drops by one. Throws OrderExceeded for order-0 input.
PowerSeries derivative(const PowerSeries& f);

/// Formal exponential; requires f(0) = 0 (DomainError otherwise).
PowerSeries exp(const PowerSeries& f);
/// Formal logarithm; requires f(0) = 1 (DomainError otherwise).
PowerSeries log(const PowerSeries& f);

/// f(g(t)); requires g(0) = 0 (DomainError otherwise). Order is min of both.
PowerSeries compose(const PowerSeries& f, const PowerSeries& g);

/// Multiplication by 1/(1 - t): the generating series of the partial sums.
PowerSeries gen_partial_sums(const PowerSeries& f);

/// e^{h t} = sum (h t)^n / n!.
PowerSeries exp_linear(const Rational& h, std::size_t order);

} // namespace regsum
