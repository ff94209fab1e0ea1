#include "regsum/power_series.hpp"

#include <algorithm>
#include <sstream>

#include "regsum/errors.hpp"

namespace regsum {

PowerSeries::PowerSeries(std::size_t order) : coeffs_(order + 1) {}

PowerSeries::PowerSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        coeffs_.resize(1);
    }
}

PowerSeries::PowerSeries(std::vector<Rational> coeffs, std::size_t order) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
}

PowerSeries PowerSeries::constant(const Rational& c, std::size_t order) {
    PowerSeries out(order);
    out.coeffs_[0] = c;
    return out;
}

PowerSeries PowerSeries::monomial(std::size_t power, std::size_t order, const Rational& coeff) {
    PowerSeries out(order);
    if (power <= order) {
        out.coeffs_[power] = coeff;
    }
    return out;
}

PowerSeries PowerSeries::geometric(std::size_t order) {
    return PowerSeries(std::vector<Rational>(order + 1, Rational(1)));
}

const Rational& PowerSeries::coeff(std::size_t n) const {
    if (n > order()) {
        throw OrderExceeded("coefficient t^" + std::to_string(n) + " requested from a series known through t^" +
                            std::to_string(order()));
    }
    return coeffs_[n];
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
    if (order > this->order()) {
        throw OrderExceeded("cannot raise truncation order from " + std::to_string(this->order()) + " to " +
                            std::to_string(order));
    }
    return PowerSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(order) + 1));
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs) {
    coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += rhs.coeffs_[i];
    }
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs) {
    coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= rhs.coeffs_[i];
    }
    return *this;
}

PowerSeries& PowerSeries::operator*=(const Rational& scalar) {
    for (auto& c : coeffs_) {
        c *= scalar;
    }
    return *this;
}

PowerSeries operator*(const PowerSeries& lhs, const PowerSeries& rhs) {
    const std::size_t order = std::min(lhs.order(), rhs.order());
    std::vector<Rational> out(order + 1);
    for (std::size_t i = 0; i <= order; ++i) {
        if (lhs.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j <= order; ++j) {
            if (!rhs.coeffs_[j].is_zero()) {
                out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
            }
        }
    }
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator-() const {
    PowerSeries out = *this;
    for (auto& c : out.coeffs_) {
        c = -c;
    }
    return out;
}

bool operator==(const PowerSeries& lhs, const PowerSeries& rhs) {
    const std::size_t n = std::min(lhs.coeffs_.size(), rhs.coeffs_.size());
    return std::equal(lhs.coeffs_.begin(), lhs.coeffs_.begin() + static_cast<long>(n), rhs.coeffs_.begin());
}

std::string PowerSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
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
        os << 't';
        if (i > 1) {
            os << '^' << i;
        }
    }
    if (first) {
        os << '0';
    }
    os << " + O(t^" << order() + 1 << ')';
    return os.str();
}

PowerSeries scale(const PowerSeries& f, const Rational& c) {
    return f * c;
}

PowerSeries inverse(const PowerSeries& f) {
    const Rational& f0 = f.coeff(0);
    if (f0.is_zero()) {
        throw NonUnitError("power series with zero constant term has no inverse");
    }
    const std::size_t order = f.order();
    std::vector<Rational> g(order + 1);
    const Rational inv0 = Rational(1) / f0;
    g[0] = inv0;
    for (std::size_t n = 1; n <= order; ++n) {
        Rational acc;
        for (std::size_t k = 1; k <= n; ++k) {
            if (!f.coeff(k).is_zero()) {
                acc += f.coeff(k) * g[n - k];
            }
        }
        g[n] = -acc * inv0;
    }
    return PowerSeries(std::move(g));
}

PowerSeries derivative(const PowerSeries& f) {
    if (f.order() == 0) {
        throw OrderExceeded("derivative of a series known only through t^0");
    }
    std::vector<Rational> out(f.order());
    for (std::size_t n = 1; n <= f.order(); ++n) {
        out[n - 1] = f.coeff(n) * Rational(static_cast<long>(n));
    }
    return PowerSeries(std::move(out));
}

PowerSeries exp(const PowerSeries& f) {
    if (!f.coeff(0).is_zero()) {
        throw DomainError("exp of a series with nonzero constant term " + f.coeff(0).to_string() +
                          " is not representable over the rationals");
    }
    // n g_n = sum_{k=1}^n k f_k g_{n-k}
    const std::size_t order = f.order();
    std::vector<Rational> g(order + 1);
    g[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        Rational acc;
        for (std::size_t k = 1; k <= n; ++k) {
            if (!f.coeff(k).is_zero()) {
                acc += Rational(static_cast<long>(k)) * f.coeff(k) * g[n - k];
            }
        }
        g[n] = acc / Rational(static_cast<long>(n));
    }
    return PowerSeries(std::move(g));
}

PowerSeries log(const PowerSeries& f) {
    if (f.coeff(0) != Rational(1)) {
        throw DomainError("log of a series requires constant term 1, got " + f.coeff(0).to_string());
    }
    // f g' = f'  =>  n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k}
    const std::size_t order = f.order();
    std::vector<Rational> g(order + 1);
    for (std::size_t n = 1; n <= order; ++n) {
        Rational acc = Rational(static_cast<long>(n)) * f.coeff(n);
        for (std::size_t k = 1; k < n; ++k) {
            if (!f.coeff(n - k).is_zero()) {
                acc -= Rational(static_cast<long>(k)) * g[k] * f.coeff(n - k);
            }
        }
        g[n] = acc / Rational(static_cast<long>(n));
    }
    return PowerSeries(std::move(g));
}

PowerSeries compose(const PowerSeries& f, const PowerSeries& g) {
    if (!g.coeff(0).is_zero()) {
        throw DomainError("composition f(g) requires g(0) = 0");
    }
    const std::size_t order = std::min(f.order(), g.order());
    const PowerSeries inner = g.truncated(order);
    // Horner: f_0 + g (f_1 + g (f_2 + ...)).
    PowerSeries acc = PowerSeries::constant(f.coeff(order), order);
    for (std::size_t i = order; i-- > 0;) {
        acc = acc * inner + PowerSeries::constant(f.coeff(i), order);
    }
    return acc;
}

PowerSeries gen_partial_sums(const PowerSeries& f) {
    return f * PowerSeries::geometric(f.order());
}

PowerSeries exp_linear(const Rational& h, std::size_t order) {
    std::vector<Rational> out(order + 1);
    Rational term = 1;
    for (std::size_t n = 0; n <= order; ++n) {
        out[n] = term;
        term *= h / Rational(static_cast<long>(n + 1));
    }
    return PowerSeries(std::move(out));
}

} // namespace regsum
