#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regsum/polynomial.hpp"
#include "regsum/power_series.hpp"

namespace regsum {

/// Translation-invariant operator on polynomials, represented by its symbol
///
///     sigma_T(t) = sum_n c_n(T) t^n / n!,   c_n(T) = (T x^n)|_{x=0},
///
/// so that T = sum_n c_n(T)/n! D^n. The symbol is produced on demand at the
/// requested truncation order. Operators built from a truncated series carry
/// a maximum order; asking for more throws OrderExceeded.
class OperatorSpec {
public:
    using SymbolFn = std::function<PowerSeries(std::size_t order)>;

    OperatorSpec(SymbolFn symbol, std::optional<std::size_t> max_order, std::string label);

    /// sigma_T through t^order.
    PowerSeries symbol(std::size_t order) const;

    /// Highest order at which the symbol is known; empty when unbounded.
    std::optional<std::size_t> max_order() const { return max_order_; }

    /// c_0(T) = T 1.
    Rational constant_term() const { return symbol(0).coeff(0); }

    const std::string& label() const { return label_; }

private:
    SymbolFn symbol_;
    std::optional<std::size_t> max_order_;
    std::string label_;
};

/// The map Q: wraps a truncated symbol. The operator is known to f.order().
OperatorSpec op_from_symbol(const PowerSeries& f, std::string label = {});

/// Operator with a polynomial symbol (all higher coefficients zero).
OperatorSpec op_from_symbol_coefficients(std::vector<Rational> coeffs, std::string label = {});

/// The inverse map sigma at the given order.
inline PowerSeries op_symbol(const OperatorSpec& op, std::size_t order) { return op.symbol(order); }

/// sum_{n <= deg P} c_n(T)/n! D^n P. Only deg P + 1 symbol coefficients are read.
Polynomial op_apply(const OperatorSpec& op, const Polynomial& p);

/// S o T; the symbol is the product of symbols.
OperatorSpec op_compose(const OperatorSpec& lhs, const OperatorSpec& rhs);

/// T^k by repeated symbol multiplication.
OperatorSpec op_power(const OperatorSpec& op, std::size_t k);

/// U^h, p(x) -> p(x + h); symbol e^{th}.
OperatorSpec op_shift(const Rational& h);
/// D = d/dx; symbol t.
OperatorSpec op_diff();
/// Delta_h = U^h - I; symbol e^{th} - 1.
OperatorSpec op_delta(const Rational& h);
OperatorSpec op_identity();
/// sum_i c_i T_i.
OperatorSpec op_scaled_sum(const std::vector<std::pair<Rational, OperatorSpec>>& terms);

struct Remainder {
    Rational c;
    OperatorSpec r;
};

/// Splits T = c + R with c = c_0(T); sigma_R has zero constant term.
Remainder op_remainder(const OperatorSpec& op);

/// Symbol equality through the given order.
bool op_equal(const OperatorSpec& lhs, const OperatorSpec& rhs, std::size_t order);

/// Literals: `shift:h`, `diff`, `delta:h`, `identity`, `symbol:[c0,c1,...]`.
OperatorSpec parse_operator(std::string_view text);

} // namespace regsum
