#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "regsum/operator.hpp"
#include "regsum/polynomial.hpp"
#include "regsum/summation.hpp"

namespace regsum {

enum class Provenance { exact_closed_form, numeric_cesaro, numeric_abel };

std::string to_string(Provenance p);

/// f^(k)(c)_mu = mu-sum of a_n [n]_k c^{n-k}, for k = 0..k_max.
struct RegularizedDerivatives {
    Rational c;
    std::vector<RegValue> values;
    std::vector<Provenance> provenance;
    /// One entry per k; empty for closed-form entries.
    std::vector<std::optional<ConvergenceReport>> reports;
    SummationMethod method;

    bool all_exact() const;
    /// Highest Cesaro/Abel order used by a numeric entry.
    unsigned order_used() const;
    std::size_t terms_used() const;
};

/// The derived sequence n -> a_n [n]_k c^{n-k} (zero for n < k, without forming
/// negative powers of c).
SeriesSpec derived_series(const SeriesSpec& f, unsigned k, const Rational& c);

/// Regularized derivatives of f at c.
///
/// Closed-form data from the series is used when available (and
/// method.prefer_exact); at c = 0 the value is k! a_k; otherwise each derived
/// series is summed numerically, classically first when |c| < 1. The
/// per-k computations run concurrently. Throws NotRegular when a derived
/// series does not converge within the budget.
RegularizedDerivatives reg_derivatives(const SeriesSpec& f, const Rational& c, const SummationMethod& method,
                                       unsigned k_max);

/// sum_{k <= degree_cap} f^(k)(c)/k! (T - c)^k, known through t^degree_cap.
/// Floating derivative values enter the symbol as their exact binary value.
OperatorSpec reg_operator(const SeriesSpec& f, const OperatorSpec& op, const SummationMethod& method,
                          unsigned degree_cap);
OperatorSpec reg_operator(const RegularizedDerivatives& derivatives, const OperatorSpec& op);

struct RegSumResult {
    double value = 0.0;
    std::optional<Rational> exact;
    RegularizedDerivatives derivatives;
};

/// mu-sum of  sum_n a_n (T^n P)(x) = f(T)_mu P(x).
///
/// Only the orders k with (T - c)^k P != 0 are evaluated. The value is exact
/// when every needed derivative is.
RegSumResult reg_sum(const SeriesSpec& f, const OperatorSpec& op, const Polynomial& p, const Rational& x,
                     const SummationMethod& method);

/// sum_k values[k]/k! (T - c)^k P with c = c_0(T), for explicitly given
/// derivative values (e.g. holomorphic derivatives f^(k)(1)).
Polynomial apply_derivative_expansion(const std::vector<Rational>& values, const OperatorSpec& op,
                                      const Polynomial& p);

/// E_0..E_{n_max}: the Taylor coefficients of 1/cosh t times k!.
struct EulerTable {
    std::vector<BigInt> values;
};

EulerTable euler_numbers(std::size_t n_max);

/// 1/2 sum_k E_k h^k / (2^k k!) P^(k)(x - h/2): the C-sum of (-1)^n P(x + nh).
Rational euler_alt_sum(const Polynomial& p, const Rational& h, const Rational& x);

/// C-sum of (-1)^n n^m: 2^{-(m+1)} sum_k (-1)^{m-k} E_k binom(m, k).
Rational alt_power_sum(unsigned m);

/// C-sum of (-1)^n binom(n, m) = (-1)^m / 2^{m+1}.
Rational alt_binom_sum(unsigned m);
/// The same value through the difference-operator expansion
/// 1/2 sum_{k=0}^m (-1)^k/2^k binom(0, m-k).
Rational alt_binom_sum_telescoping(unsigned m);

struct ProductRuleCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<Rational> lhs_exact;
    std::optional<Rational> rhs_exact;
};

/// (f g)^(n)(1)_mu against sum_k binom(n, k) f^(k)(1)_mu g^(n-k)(1)_mu, where
/// f g is the Cauchy product of the coefficient sequences.
ProductRuleCheck product_rule_check(const SeriesSpec& f, const SeriesSpec& g, unsigned n,
                                    const SummationMethod& method);

} // namespace regsum
