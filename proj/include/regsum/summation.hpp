#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "regsum/rational.hpp"

namespace regsum {

enum class MethodTag { classical, cesaro, abel };

/// Abel evaluation schedule: points t_j in (0, 1) and the number of terms
/// summed at each point.
struct AbelOptions {
    std::vector<double> schedule;                   ///< strictly increasing towards 1
    std::function<std::size_t(double t)> budget;    ///< terms summed at t
    unsigned order = 2;                             ///< polynomial degree of the extrapolation in (1 - t)

    /// t_j = 1 - 2^-j, j = 3..14, with ceil(60 / (1 - t_j)) terms per point.
    static AbelOptions defaults();
};

/// A regularization method together with its numeric budget.
struct SummationMethod {
    MethodTag tag = MethodTag::cesaro;
    std::optional<unsigned> cesaro_order;   ///< empty: escalate automatically
    std::size_t n_max = 4000;               ///< Cesaro term budget
    double tol = 1e-3;
    unsigned k_max = 12;                    ///< cap for automatic Cesaro escalation
    bool extrapolate = false;               ///< Richardson-accelerate Cesaro means in 1/n
    bool prefer_exact = true;               ///< use closed-form derivative data when a series provides it
    bool require_exact = false;             ///< fail with ExactUnavailable instead of summing numerically
    AbelOptions abel = AbelOptions::defaults();

    static SummationMethod classical();
    static SummationMethod cesaro(unsigned k);
    static SummationMethod cesaro_auto();
    static SummationMethod abel_method();

    /// `classical`, `cesaro:k`, `cesaro:auto` or `abel`.
    std::string to_string() const;
};

/// Result of a numeric summation.
struct ConvergenceReport {
    double value = 0.0;
    std::optional<Rational> exact;
    SummationMethod method_used;
    unsigned order_used = 0;
    std::size_t terms_used = 0;
    bool converged = false;
    double residual = 0.0;
};

/// A regularized value: exact when a closed form exists, floating otherwise.
using RegValue = std::variant<Rational, double>;

double to_double(const RegValue& value);

enum class SeriesKind { alt_geometric, alt_log, geometric, table, custom };

/// A coefficient sequence n -> a_n, total on the naturals.
///
/// Besides the exact term, a series can supply a bulk exact prefix (for
/// sequences whose terms are cheaper together), a fast floating-point term for
/// the Abel engine, and closed-form regularized derivatives f^(k)(c)_mu.
class SeriesSpec {
public:
    using Term = std::function<Rational(std::size_t n)>;
    using Prefix = std::function<std::vector<Rational>(std::size_t count)>;
    using FloatTerm = std::function<double(std::size_t n)>;
    using ExactDerivative =
        std::function<std::optional<RegValue>(unsigned k, const Rational& c, const SummationMethod& method)>;

    /// a_n = (-1)^n, the coefficients of 1/(1+t).
    static SeriesSpec alt_geometric();
    /// a_0 = 0, a_n = (-1)^{n+1}/n, the coefficients of log(1+t).
    static SeriesSpec alt_log();
    /// a_n = r^n.
    static SeriesSpec geometric(const Rational& r);
    /// Finite support; zero beyond the table.
    static SeriesSpec table(std::vector<Rational> values);
    static SeriesSpec custom(std::string label, Term term, Prefix prefix = {}, FloatTerm float_term = {});

    SeriesKind kind() const { return kind_; }
    const std::string& label() const { return label_; }

    Rational term(std::size_t n) const { return term_(n); }
    /// a_0 .. a_{count-1}.
    std::vector<Rational> terms(std::size_t count) const;
    double term_value(std::size_t n) const;

    /// Closed-form f^(k)(c)_mu when available for this method.
    std::optional<RegValue> exact_derivative(unsigned k, const Rational& c, const SummationMethod& method) const;
    bool has_exact_derivatives() const { return static_cast<bool>(exact_); }
    SeriesSpec with_exact_derivatives(ExactDerivative exact) const;

private:
    SeriesSpec(SeriesKind kind, std::string label, Term term);

    SeriesKind kind_;
    std::string label_;
    Term term_;
    Prefix prefix_;
    FloatTerm float_term_;
    ExactDerivative exact_;
};

/// Literals: `alt`, `altlog`, `geom:p/q`, `table:@file.json`, `table:["p/q",...]`.
SeriesSpec parse_series(std::string_view text);

/// Literals: `classical`, `cesaro`, `cesaro:k`, `cesaro:auto`, `abel`.
SummationMethod parse_method(std::string_view text);

/// n -> a_0 + ... + a_n.
SeriesSpec partial_sums(const SeriesSpec& a);

/// Applies the partial-sum operator `times` times, exactly.
std::vector<Rational> iterated_partial_sums(std::vector<Rational> terms, unsigned times);

/// n -> sum_{i <= n} a(n - i) b(i).
SeriesSpec cauchy_product(const SeriesSpec& a, const SeriesSpec& b);

/// n -> a(n + 1).
SeriesSpec shifted(const SeriesSpec& a);

/// C_k sum of the series sum a(n): the limit of sigma^{k+1}[a](n) / binom(n+k, k).
///
/// The iterated partial sums are exact; the ratio is formed at checkpoints
/// N/4, N/2 and N (and N-1, to expose parity oscillation). Without
/// extrapolation the value is the estimate at N. With extrapolation the
/// same-parity checkpoints N, N/2, ..., N/16 are extrapolated to 1/n -> 0.
/// Non-convergence within the budget is reported, never thrown.
ConvergenceReport cesaro_limit(const SeriesSpec& a, unsigned k, std::size_t n_max, double tol,
                               bool extrapolate = false);

/// Tries k = 0, 1, ..., k_max and returns the first converged report.
ConvergenceReport cesaro_auto(const SeriesSpec& a, unsigned k_max, std::size_t n_max, double tol,
                              bool extrapolate = false);

/// Abel sum lim_{t -> 1-} sum a_n t^n, by polynomial extrapolation in (1 - t).
ConvergenceReport abel_limit(const SeriesSpec& a, const AbelOptions& options, double tol);

/// Dispatches on the method tag.
ConvergenceReport sum_series(const SeriesSpec& a, const SummationMethod& method);

/// Both sides of  sum_{n>=0} a(n) = a(0) + sum_{n>=1} a(n). Throws NotRegular
/// when either side does not converge.
std::pair<double, double> shift_check(const SeriesSpec& a, const SummationMethod& method);

/// Value of the interpolating polynomial through (x_i, y_i) at x = 0.
double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys);

} // namespace regsum
