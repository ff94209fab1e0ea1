#include "regsum/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "regsum/errors.hpp"

namespace regsum {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

Polynomial::Polynomial(const Rational& constant) {
    if (!constant.is_zero()) {
        coeffs_.push_back(constant);
    }
}

Polynomial Polynomial::monomial(std::size_t power, const Rational& coeff) {
    std::vector<Rational> c(power + 1);
    c[power] = coeff;
    return Polynomial(std::move(c));
}

std::optional<std::size_t> Polynomial::degree() const {
    if (coeffs_.empty()) {
        return std::nullopt;
    }
    return coeffs_.size() - 1;
}

Rational Polynomial::coeff(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Rational{};
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] += rhs.coeffs_[i];
    }
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] -= rhs.coeffs_[i];
    }
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
    for (auto& c : coeffs_) {
        c *= scalar;
    }
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) {
        return {};
    }
    std::vector<Rational> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& c : out.coeffs_) {
        c = -c;
    }
    return out;
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

std::string Polynomial::to_string() const {
    if (coeffs_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Rational& c = coeffs_[i];
        if (c.is_zero()) {
            continue;
        }
        Rational magnitude = abs(c);
        if (first) {
            if (c.sign() < 0) {
                os << '-';
            }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << magnitude;
            continue;
        }
        if (magnitude != Rational(1)) {
            os << magnitude << '*';
        }
        os << 'x';
        if (i > 1) {
            os << '^' << i;
        }
    }
    return os.str();
}

// Recursive-descent parser over the term grammar.
namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    Polynomial parse() {
        skip();
        if (pos_ == text_.size()) {
            throw ParseError("empty polynomial", pos_);
        }
        Polynomial out;
        bool first = true;
        while (true) {
            skip();
            if (pos_ == text_.size()) {
                break;
            }
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                throw ParseError("expected '+' or '-' between terms", pos_);
            }
            out += term() * Rational(sign);
            first = false;
        }
        return out;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    BigInt integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            throw ParseError("expected digits", pos_);
        }
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    std::size_t exponent() {
        std::size_t at = pos_;
        BigInt e = integer();
        if (!e.fits_ulong_p() || e > 4096) {
            throw ParseError("exponent too large", at);
        }
        return e.get_ui();
    }

    Polynomial power_of_x(const Rational& coeff) {
        // at 'x'
        ++pos_;
        skip();
        std::size_t power = 1;
        if (peek() == '^') {
            ++pos_;
            power = exponent();
        }
        return Polynomial::monomial(power, coeff);
    }

    Polynomial term() {
        skip();
        if (peek() == 'x') {
            return power_of_x(1);
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            throw ParseError(peek() == '\0' ? std::string("unexpected end of input")
                                            : std::string("unexpected character '") + peek() + "'",
                             pos_);
        }
        BigInt num = integer();
        BigInt den = 1;
        skip();
        if (peek() == '/') {
            ++pos_;
            std::size_t at = pos_;
            den = integer();
            if (den == 0) {
                throw ParseError("zero denominator", at);
            }
            skip();
        }
        Rational coeff(num, den);
        if (peek() == '*') {
            ++pos_;
            skip();
            if (peek() != 'x') {
                throw ParseError("expected 'x' after '*'", pos_);
            }
            return power_of_x(coeff);
        }
        return Polynomial(coeff);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial Polynomial::parse(std::string_view text) {
    return PolyParser(text).parse();
}

Polynomial derivative(const Polynomial& p) {
    auto c = p.coeffs();
    if (c.size() <= 1) {
        return {};
    }
    std::vector<Rational> out(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) {
        out[i - 1] = c[i] * Rational(static_cast<long>(i));
    }
    return Polynomial(std::move(out));
}

Polynomial derivative(const Polynomial& p, std::size_t n) {
    Polynomial out = p;
    for (std::size_t i = 0; i < n && !out.is_zero(); ++i) {
        out = derivative(out);
    }
    return out;
}

Polynomial translate(const Polynomial& p, const Rational& h) {
    Polynomial out;
    Polynomial dn = p;
    Rational weight = 1; // h^n / n!
    for (std::size_t n = 0; !dn.is_zero(); ++n) {
        out += dn * weight;
        dn = derivative(dn);
        weight *= h / Rational(static_cast<long>(n + 1));
    }
    return out;
}

Polynomial falling_factorial(std::size_t k) {
    Polynomial out(Rational(1));
    for (std::size_t i = 0; i < k; ++i) {
        out = out * Polynomial(std::vector<Rational>{Rational(-static_cast<long>(i)), Rational(1)});
    }
    return out;
}

Polynomial binomial_polynomial(std::size_t k) {
    return falling_factorial(k) * Rational(1, factorial(static_cast<unsigned>(k)));
}

BigInt falling_factorial_value(long n, std::size_t k) {
    BigInt out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        out *= n - static_cast<long>(i);
    }
    return out;
}

} // namespace regsum
