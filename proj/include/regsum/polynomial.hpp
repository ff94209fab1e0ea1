#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regsum/rational.hpp"

namespace regsum {

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are indexed by power of x and trailing zeros are always
/// trimmed, so the zero polynomial has no stored coefficients and no degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(const Rational& constant);

    static Polynomial monomial(std::size_t power, const Rational& coeff = 1);
    static Polynomial x() { return monomial(1); }

    /// Grammar: sums of `c`, `c*x`, `c*x^k`, `x`, `x^k` with integer or
    /// `p/q` coefficients; whitespace is ignored. Throws ParseError.
    static Polynomial parse(std::string_view text);

    bool is_zero() const { return coeffs_.empty(); }
    /// Empty for the zero polynomial.
    std::optional<std::size_t> degree() const;

    /// Coefficient of x^power (zero beyond the degree).
    Rational coeff(std::size_t power) const;
    std::span<const Rational> coeffs() const { return coeffs_; }

    /// Horner evaluation.
    Rational operator()(const Rational& x) const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& scalar);

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(Polynomial lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Polynomial operator*(const Rational& lhs, Polynomial rhs) { return rhs *= lhs; }
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    Polynomial operator-() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Descending powers, e.g. `3*x^2 - 1/2`; the zero polynomial is `0`.
    std::string to_string() const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

Polynomial derivative(const Polynomial& p);
/// n-th derivative.
Polynomial derivative(const Polynomial& p, std::size_t n);

/// p(x + h) via the Taylor expansion sum_n h^n/n! p^(n)(x).
Polynomial translate(const Polynomial& p, const Rational& h);

/// [x]_k = x (x-1) ... (x-k+1), with [x]_0 = 1.
Polynomial falling_factorial(std::size_t k);
/// binom(x, k) = [x]_k / k!.
Polynomial binomial_polynomial(std::size_t k);

/// [n]_k for an integer argument.
BigInt falling_factorial_value(long n, std::size_t k);

} // namespace regsum
