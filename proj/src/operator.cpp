#include "regsum/operator.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <memory>

#include "regsum/errors.hpp"

namespace regsum {

namespace {

std::optional<std::size_t> min_order(std::optional<std::size_t> a, std::optional<std::size_t> b) {
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return std::min(*a, *b);
}

} // namespace

OperatorSpec::OperatorSpec(SymbolFn symbol, std::optional<std::size_t> max_order, std::string label)
    : symbol_(std::move(symbol)), max_order_(max_order), label_(std::move(label)) {}

PowerSeries OperatorSpec::symbol(std::size_t order) const {
    if (max_order_ && order > *max_order_) {
        throw OrderExceeded("operator '" + label_ + "' has a symbol known only through t^" +
                            std::to_string(*max_order_) + ", t^" + std::to_string(order) + " requested");
    }
    return symbol_(order);
}

OperatorSpec op_from_symbol(const PowerSeries& f, std::string label) {
    auto held = std::make_shared<const PowerSeries>(f);
    return OperatorSpec([held](std::size_t order) { return held->truncated(order); }, f.order(),
                        label.empty() ? "symbol" : std::move(label));
}

OperatorSpec op_from_symbol_coefficients(std::vector<Rational> coeffs, std::string label) {
    auto held = std::make_shared<const std::vector<Rational>>(std::move(coeffs));
    return OperatorSpec([held](std::size_t order) { return PowerSeries(*held, order); }, std::nullopt,
                        label.empty() ? "symbol" : std::move(label));
}

Polynomial op_apply(const OperatorSpec& op, const Polynomial& p) {
    const auto degree = p.degree();
    if (!degree) {
        return {};
    }
    const PowerSeries sigma = op.symbol(*degree);
    Polynomial out;
    Polynomial dn = p;
    for (std::size_t n = 0; n <= *degree; ++n) {
        if (!sigma.coeff(n).is_zero()) {
            out += dn * sigma.coeff(n);
        }
        dn = derivative(dn);
    }
    return out;
}

OperatorSpec op_compose(const OperatorSpec& lhs, const OperatorSpec& rhs) {
    return OperatorSpec([lhs, rhs](std::size_t order) { return lhs.symbol(order) * rhs.symbol(order); },
                        min_order(lhs.max_order(), rhs.max_order()), lhs.label() + " o " + rhs.label());
}

OperatorSpec op_power(const OperatorSpec& op, std::size_t k) {
    return OperatorSpec(
        [op, k](std::size_t order) {
            PowerSeries base = op.symbol(order);
            PowerSeries acc = PowerSeries::constant(1, order);
            for (std::size_t i = 0; i < k; ++i) {
                acc = acc * base;
            }
            return acc;
        },
        k == 0 ? std::nullopt : op.max_order(), "(" + op.label() + ")^" + std::to_string(k));
}

OperatorSpec op_shift(const Rational& h) {
    return OperatorSpec([h](std::size_t order) { return exp_linear(h, order); }, std::nullopt,
                        "shift:" + h.to_string());
}

OperatorSpec op_diff() {
    return OperatorSpec([](std::size_t order) { return PowerSeries::monomial(1, order); }, std::nullopt, "diff");
}

OperatorSpec op_delta(const Rational& h) {
    return OperatorSpec(
        [h](std::size_t order) { return exp_linear(h, order) - PowerSeries::constant(1, order); }, std::nullopt,
        "delta:" + h.to_string());
}

OperatorSpec op_identity() {
    return OperatorSpec([](std::size_t order) { return PowerSeries::constant(1, order); }, std::nullopt,
                        "identity");
}

OperatorSpec op_scaled_sum(const std::vector<std::pair<Rational, OperatorSpec>>& terms) {
    std::optional<std::size_t> bound;
    std::string label;
    for (const auto& [c, op] : terms) {
        bound = min_order(bound, op.max_order());
        if (!label.empty()) {
            label += " + ";
        }
        label += c.to_string() + "*" + op.label();
    }
    return OperatorSpec(
        [terms](std::size_t order) {
            PowerSeries acc(order);
            for (const auto& [c, op] : terms) {
                acc += op.symbol(order) * c;
            }
            return acc;
        },
        bound, label.empty() ? "0" : label);
}

Remainder op_remainder(const OperatorSpec& op) {
    Rational c = op.constant_term();
    OperatorSpec r(
        [op, c](std::size_t order) { return op.symbol(order) - PowerSeries::constant(c, order); },
        op.max_order(), op.label() + " - " + c.to_string());
    return {c, r};
}

bool op_equal(const OperatorSpec& lhs, const OperatorSpec& rhs, std::size_t order) {
    return lhs.symbol(order) == rhs.symbol(order);
}

namespace {

std::string trim(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) {
        --e;
    }
    return std::string(text.substr(b, e - b));
}

Rational parse_argument(const std::string& text, std::size_t offset) {
    try {
        return Rational::parse(text.substr(offset));
    } catch (const ParseError& e) {
        throw ParseError("bad operator argument in '" + text + "': " + e.what(), offset + e.position());
    }
}

std::vector<Rational> parse_symbol_list(const std::string& text, std::size_t open) {
    if (open >= text.size() || text[open] != '[') {
        throw ParseError("expected '[' in operator literal '" + text + "'", open);
    }
    const std::size_t close = text.find(']', open);
    if (close == std::string::npos) {
        throw ParseError("missing ']' in operator literal '" + text + "'", text.size());
    }
    if (close + 1 != text.size()) {
        throw ParseError("trailing characters in operator literal '" + text + "'", close + 1);
    }
    std::vector<Rational> out;
    std::size_t start = open + 1;
    const std::string body = text.substr(start, close - start);
    if (trim(body).empty()) {
        throw ParseError("empty symbol list", start);
    }
    std::size_t pos = start;
    while (pos <= close) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos || comma > close) {
            comma = close;
        }
        try {
            out.push_back(Rational::parse(std::string_view(text).substr(pos, comma - pos)));
        } catch (const ParseError& e) {
            throw ParseError("bad symbol coefficient in '" + text + "'", pos + e.position());
        }
        pos = comma + 1;
    }
    return out;
}

} // namespace

OperatorSpec parse_operator(std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "identity") {
        return op_identity();
    }
    if (text == "diff") {
        return op_diff();
    }
    if (text.rfind("shift:", 0) == 0) {
        return op_shift(parse_argument(text, 6));
    }
    if (text.rfind("delta:", 0) == 0) {
        return op_delta(parse_argument(text, 6));
    }
    if (text.rfind("symbol:", 0) == 0) {
        return op_from_symbol_coefficients(parse_symbol_list(text, 7), text);
    }
    throw ParseError("unknown operator literal '" + text +
                         "' (expected shift:h, diff, delta:h, identity or symbol:[c0,c1,...])",
                     0);
}

} // namespace regsum
