#include "regsum/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "regsum/errors.hpp"

namespace regsum {

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::exact_closed_form:
        return "exact-closed-form";
    case Provenance::numeric_cesaro:
        return "numeric-cesaro";
    case Provenance::numeric_abel:
        return "numeric-abel";
    }
    return "unknown";
}

bool RegularizedDerivatives::all_exact() const {
    return std::all_of(values.begin(), values.end(),
                       [](const RegValue& v) { return std::holds_alternative<Rational>(v); });
}

unsigned RegularizedDerivatives::order_used() const {
    unsigned out = 0;
    for (const auto& r : reports) {
        if (r) {
            out = std::max(out, r->order_used);
        }
    }
    return out;
}

std::size_t RegularizedDerivatives::terms_used() const {
    std::size_t out = 0;
    for (const auto& r : reports) {
        if (r) {
            out = std::max(out, r->terms_used);
        }
    }
    return out;
}

SeriesSpec derived_series(const SeriesSpec& f, unsigned k, const Rational& c) {
    auto term = [f, k, c](std::size_t n) -> Rational {
        if (n < k) {
            return 0;
        }
        return f.term(n) * Rational(falling_factorial_value(static_cast<long>(n), k)) *
               pow(c, static_cast<long>(n - k));
    };
    auto prefix = [f, k, c](std::size_t count) {
        auto out = f.terms(count);
        Rational power = 1; // c^{n-k}
        for (std::size_t n = 0; n < count; ++n) {
            if (n < k) {
                out[n] = 0;
                continue;
            }
            if (!out[n].is_zero()) {
                out[n] *= Rational(falling_factorial_value(static_cast<long>(n), k));
                if (c != Rational(1)) {
                    out[n] *= power;
                }
            }
            power *= c;
        }
        return out;
    };
    const double cd = c.to_double();
    auto float_term = [f, k, cd](std::size_t n) {
        if (n < k) {
            return 0.0;
        }
        double ff = 1.0;
        for (unsigned i = 0; i < k; ++i) {
            ff *= static_cast<double>(n - i);
        }
        return f.term_value(n) * ff * std::pow(cd, static_cast<double>(n - k));
    };
    return SeriesSpec::custom(f.label() + "^(" + std::to_string(k) + ")@" + c.to_string(), term, prefix,
                              float_term);
}

namespace {

struct DerivativeEntry {
    RegValue value;
    Provenance provenance = Provenance::exact_closed_form;
    std::optional<ConvergenceReport> report;
};

ConvergenceReport sum_numeric(const SeriesSpec& derived, const Rational& c, const SummationMethod& method) {
    if (abs(c) < Rational(1) && method.tag != MethodTag::classical) {
        SummationMethod classical = method;
        classical.tag = MethodTag::classical;
        classical.cesaro_order.reset();
        auto report = sum_series(derived, classical);
        if (report.converged) {
            return report;
        }
    }
    return sum_series(derived, method);
}

// Closed form (or the c = 0 shortcut) when available; empty otherwise.
std::optional<DerivativeEntry> closed_form(const SeriesSpec& f, const Rational& c, const SummationMethod& method,
                                           unsigned k) {
    if (method.prefer_exact) {
        if (auto v = f.exact_derivative(k, c, method)) {
            return DerivativeEntry{*v, Provenance::exact_closed_form, std::nullopt};
        }
    }
    if (c.is_zero()) {
        return DerivativeEntry{Rational(factorial(k)) * f.term(k), Provenance::exact_closed_form, std::nullopt};
    }
    return std::nullopt;
}

DerivativeEntry numeric_entry(const SeriesSpec& f, const Rational& c, const SummationMethod& method, unsigned k) {
    if (method.require_exact) {
        throw ExactUnavailable("no closed-form derivative of order " + std::to_string(k) + " for '" + f.label() +
                               "' at " + c.to_string());
    }
    auto report = sum_numeric(derived_series(f, k, c), c, method);
    if (!report.converged) {
        throw NotRegular("derivative of order " + std::to_string(k) + " of '" + f.label() + "' at " + c.to_string() +
                             " did not converge under " + method.to_string() + " (residual " +
                             std::to_string(report.residual) + ")",
                         k);
    }
    const Provenance p =
        report.method_used.tag == MethodTag::abel ? Provenance::numeric_abel : Provenance::numeric_cesaro;
    return DerivativeEntry{report.value, p, report};
}

DerivativeEntry derivative_entry(const SeriesSpec& f, const Rational& c, const SummationMethod& method, unsigned k) {
    if (auto entry = closed_form(f, c, method, k)) {
        return *entry;
    }
    return numeric_entry(f, c, method, k);
}

} // namespace

RegularizedDerivatives reg_derivatives(const SeriesSpec& f, const Rational& c, const SummationMethod& method,
                                       unsigned k_max) {
    std::vector<std::optional<DerivativeEntry>> entries(k_max + 1);
    std::vector<std::pair<unsigned, std::future<DerivativeEntry>>> pending;
    for (unsigned k = 0; k <= k_max; ++k) {
        entries[k] = closed_form(f, c, method, k);
        if (!entries[k] && method.require_exact) {
            throw ExactUnavailable("no closed-form derivative of order " + std::to_string(k) + " for '" +
                                   f.label() + "' at " + c.to_string());
        }
        if (!entries[k]) {
            pending.emplace_back(k, std::async(std::launch::async, numeric_entry, f, c, method, k));
        }
    }
    // Collect every future before rethrowing, lowest order first.
    std::exception_ptr failure;
    for (auto& [k, fut] : pending) {
        try {
            entries[k] = fut.get();
        } catch (...) {
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    RegularizedDerivatives out;
    out.c = c;
    out.method = method;
    for (auto& e : entries) {
        out.values.push_back(e->value);
        out.provenance.push_back(e->provenance);
        out.reports.push_back(e->report);
    }
    return out;
}

OperatorSpec reg_operator(const RegularizedDerivatives& derivatives, const OperatorSpec& op) {
    if (derivatives.values.empty()) {
        throw DomainError("regularized operator needs at least the order-0 derivative");
    }
    auto [c, remainder] = op_remainder(op);
    if (c != derivatives.c) {
        throw DomainError("derivatives were taken at " + derivatives.c.to_string() + " but c_0(T) = " + c.to_string());
    }
    const std::size_t cap = derivatives.values.size() - 1;
    auto weights = std::make_shared<std::vector<Rational>>();
    for (std::size_t k = 0; k <= cap; ++k) {
        const RegValue& v = derivatives.values[k];
        Rational exact = std::holds_alternative<Rational>(v) ? std::get<Rational>(v)
                                                               : Rational::from_double(std::get<double>(v));
        weights->push_back(exact / Rational(factorial(static_cast<unsigned>(k))));
    }
    std::optional<std::size_t> bound = cap;
    if (op.max_order()) {
        bound = std::min(cap, *op.max_order());
    }
    auto symbol = [weights, r = remainder](std::size_t order) {
        const PowerSeries base = r.symbol(order);
        PowerSeries power = PowerSeries::constant(1, order);
        PowerSeries acc(order);
        // sigma_R has no constant term, so R^k only reaches t^k and beyond.
        for (std::size_t k = 0; k < weights->size() && k <= order; ++k) {
            acc += power * (*weights)[k];
            power = power * base;
        }
        return acc;
    };
    return OperatorSpec(symbol, bound, "f(" + op.label() + ")");
}

OperatorSpec reg_operator(const SeriesSpec& f, const OperatorSpec& op, const SummationMethod& method,
                          unsigned degree_cap) {
    return reg_operator(reg_derivatives(f, op.constant_term(), method, degree_cap), op);
}

namespace {

// P, R P, R^2 P, ... up to the last nonzero one.
std::vector<Polynomial> remainder_orbit(const OperatorSpec& remainder, const Polynomial& p) {
    std::vector<Polynomial> out;
    Polynomial current = p;
    while (!current.is_zero()) {
        out.push_back(current);
        current = op_apply(remainder, current);
    }
    return out;
}

} // namespace

RegSumResult reg_sum(const SeriesSpec& f, const OperatorSpec& op, const Polynomial& p, const Rational& x,
                     const SummationMethod& method) {
    auto [c, remainder] = op_remainder(op);
    const auto orbit = remainder_orbit(remainder, p);
    RegSumResult out;
    if (orbit.empty()) {
        out.exact = Rational(0);
        out.derivatives.c = c;
        out.derivatives.method = method;
        return out;
    }
    out.derivatives = reg_derivatives(f, c, method, static_cast<unsigned>(orbit.size() - 1));
    if (out.derivatives.all_exact()) {
        Rational acc;
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            acc += std::get<Rational>(out.derivatives.values[k]) * orbit[k](x) /
                   Rational(factorial(static_cast<unsigned>(k)));
        }
        out.value = acc.to_double();
        out.exact = acc;
        return out;
    }
    long double acc = 0.0L;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        const Rational weight = orbit[k](x) / Rational(factorial(static_cast<unsigned>(k)));
        acc += static_cast<long double>(to_double(out.derivatives.values[k])) * weight.to_double();
    }
    out.value = static_cast<double>(acc);
    return out;
}

Polynomial apply_derivative_expansion(const std::vector<Rational>& values, const OperatorSpec& op,
                                      const Polynomial& p) {
    auto [c, remainder] = op_remainder(op);
    const auto orbit = remainder_orbit(remainder, p);
    if (orbit.size() > values.size()) {
        throw DomainError("expansion needs " + std::to_string(orbit.size()) + " derivative values, got " +
                          std::to_string(values.size()));
    }
    Polynomial out;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        out += orbit[k] * (values[k] / Rational(factorial(static_cast<unsigned>(k))));
    }
    return out;
}

EulerTable euler_numbers(std::size_t n_max) {
    std::vector<Rational> cosh(n_max + 1);
    for (std::size_t n = 0; n <= n_max; n += 2) {
        cosh[n] = Rational(1, factorial(static_cast<unsigned>(n)));
    }
    const PowerSeries sech = inverse(PowerSeries(std::move(cosh)));
    EulerTable out;
    for (std::size_t k = 0; k <= n_max; ++k) {
        Rational e = sech.coeff(k) * Rational(factorial(static_cast<unsigned>(k)));
        out.values.push_back(e.numerator());
    }
    return out;
}

Rational euler_alt_sum(const Polynomial& p, const Rational& h, const Rational& x) {
    const auto degree = p.degree();
    if (!degree) {
        return 0;
    }
    const auto euler = euler_numbers(*degree);
    const Rational at = x - h / Rational(2);
    Rational acc;
    Polynomial dk = p;
    Rational scale = 1; // h^k / (2^k k!)
    for (std::size_t k = 0; k <= *degree; ++k) {
        if (euler.values[k] != 0) {
            acc += Rational(euler.values[k]) * scale * dk(at);
        }
        dk = derivative(dk);
        scale *= h / Rational(static_cast<long>(2 * (k + 1)));
    }
    return acc / Rational(2);
}

Rational alt_power_sum(unsigned m) {
    const auto euler = euler_numbers(m);
    Rational acc;
    for (unsigned k = 0; k <= m; ++k) {
        Rational term = Rational(BigInt(euler.values[k] * binomial(m, k)));
        acc += (m - k) % 2 ? -term : term;
    }
    return acc / Rational(BigInt(BigInt(1) << (m + 1)));
}

Rational alt_binom_sum(unsigned m) {
    Rational v(BigInt(1), BigInt(1) << (m + 1));
    return m % 2 ? -v : v;
}

Rational alt_binom_sum_telescoping(unsigned m) {
    Rational acc;
    for (unsigned k = 0; k <= m; ++k) {
        const BigInt b = binomial(0, m - k);
        if (b != 0) {
            Rational term(b, BigInt(1) << k);
            acc += k % 2 ? -term : term;
        }
    }
    return acc / Rational(2);
}

ProductRuleCheck product_rule_check(const SeriesSpec& f, const SeriesSpec& g, unsigned n,
                                    const SummationMethod& method) {
    const Rational one = 1;
    ProductRuleCheck out;

    auto lhs_future = std::async(std::launch::async, [&] { return derivative_entry(cauchy_product(f, g), one, method, n); });
    const auto df = reg_derivatives(f, one, method, n);
    const auto dg = reg_derivatives(g, one, method, n);
    const auto lhs = lhs_future.get();

    out.lhs = to_double(lhs.value);
    if (const auto* q = std::get_if<Rational>(&lhs.value)) {
        out.lhs_exact = *q;
    }
    if (df.all_exact() && dg.all_exact()) {
        Rational acc;
        for (unsigned k = 0; k <= n; ++k) {
            acc += Rational(binomial(n, k)) * std::get<Rational>(df.values[k]) * std::get<Rational>(dg.values[n - k]);
        }
        out.rhs_exact = acc;
        out.rhs = acc.to_double();
    } else {
        double acc = 0.0;
        for (unsigned k = 0; k <= n; ++k) {
            acc += binomial(n, k).get_d() * to_double(df.values[k]) * to_double(dg.values[n - k]);
        }
        out.rhs = acc;
    }
    return out;
}

} // namespace regsum
