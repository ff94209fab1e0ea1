#include "regsum/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>

#include "regsum/errors.hpp"

namespace regsum {

static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");

Rational::Rational(long long value) : value_(static_cast<long>(value)) {}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) {
        throw DomainError("rational with zero denominator");
    }
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) {
        throw DomainError("cannot represent a non-finite double exactly");
    }
    return Rational(mpq_class(value));
}

namespace {

bool parse_integer(std::string_view text, std::size_t& pos, BigInt& out, bool allow_sign) {
    std::size_t start = pos;
    std::string digits;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        if (text[pos] == '-') {
            digits.push_back('-');
        }
        ++pos;
    }
    std::size_t digit_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        digits.push_back(text[pos]);
        ++pos;
    }
    if (pos == digit_start) {
        pos = start;
        return false;
    }
    out.set_str(digits, 10);
    return true;
}

void skip_space(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
}

} // namespace

Rational Rational::parse(std::string_view text) {
    std::size_t pos = 0;
    skip_space(text, pos);
    BigInt num;
    if (!parse_integer(text, pos, num, true)) {
        throw ParseError("expected an integer or p/q rational in '" + std::string(text) + "'", pos);
    }
    BigInt den = 1;
    skip_space(text, pos);
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        skip_space(text, pos);
        if (!parse_integer(text, pos, den, false)) {
            throw ParseError("expected a denominator in '" + std::string(text) + "'", pos);
        }
        if (den == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'", pos);
        }
        skip_space(text, pos);
    }
    if (pos != text.size()) {
        throw ParseError("trailing characters in '" + std::string(text) + "'", pos);
    }
    return Rational(num, den);
}

std::string Rational::to_string() const {
    if (is_integer()) {
        return value_.get_num().get_str();
    }
    return value_.get_str();
}

std::string Rational::to_pq_string() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw DomainError("division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const {
    return Rational(mpq_class(-value_));
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    int c = cmp(lhs.value_, rhs.value_);
    if (c < 0) {
        return std::strong_ordering::less;
    }
    if (c > 0) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base.is_zero()) {
            throw DomainError("zero raised to a negative power");
        }
        return Rational(1) / pow(base, -exponent);
    }
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(num, den);
}

Rational abs(const Rational& value) {
    return value.sign() < 0 ? -value : value;
}

BigInt factorial(unsigned n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

BigInt binomial(long n, unsigned k) {
    BigInt top = n;
    BigInt out;
    mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), k);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
    return os << value.to_string();
}

} // namespace regsum
