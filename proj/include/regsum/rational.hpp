#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace regsum {

using BigInt = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class Rational {
public:
    Rational() = default;
    Rational(int value) : value_(value) {}
    Rational(long value) : value_(value) {}
    Rational(long long value);
    Rational(const BigInt& value) : value_(value) {}
    Rational(const BigInt& numerator, const BigInt& denominator);

    /// Exact binary value of a finite double.
    static Rational from_double(double value);

    /// Accepts `n`, `-n`, `p/q` with optional surrounding whitespace.
    static Rational parse(std::string_view text);

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    double to_double() const { return value_.get_d(); }

    /// Canonical text: `n` for integers, `p/q` otherwise.
    std::string to_string() const;
    /// Always `p/q`, also for integers (`3/1`).
    std::string to_pq_string() const;

    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

    const mpq_class& raw() const { return value_; }

private:
    explicit Rational(mpq_class value) : value_(std::move(value)) {}

    mpq_class value_;
};

/// Integer power; negative exponents invert (zero base with negative exponent throws DomainError).
Rational pow(const Rational& base, long exponent);
Rational abs(const Rational& value);

BigInt factorial(unsigned n);
BigInt binomial(long n, unsigned k);

std::ostream& operator<<(std::ostream& os, const Rational& value);

} // namespace regsum
