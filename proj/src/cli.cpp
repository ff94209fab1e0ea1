#include "regsum/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>

#include <CLI11.hpp>

#include "regsum/errors.hpp"
#include "regsum/io.hpp"
#include "regsum/operator.hpp"
#include "regsum/regularize.hpp"
#include "regsum/sampling.hpp"
#include "regsum/summation.hpp"

namespace regsum::cli {

namespace {

// A parse failure attributed to one command-line argument.
class ArgumentError : public Error {
public:
    ArgumentError(const std::string& argument, const std::string& what) : Error(argument + ": " + what) {}
};

template <class F>
auto parse_argument(const std::string& name, F&& parse) {
    try {
        return parse();
    } catch (const ParseError& e) {
        throw ArgumentError(name, e.what());
    } catch (const DomainError& e) {
        throw ArgumentError(name, e.what());
    }
}

struct Budget {
    std::size_t n_max = 4000;
    double tol = 1e-3;
    unsigned k_max = 12;
    bool extrapolate = false;
};

// REGSUM_N and REGSUM_TOL override the default Cesaro budget.
Budget default_budget() {
    Budget b;
    if (const char* n = std::getenv("REGSUM_N")) {
        b.n_max = parse_argument("REGSUM_N", [&] {
            char* end = nullptr;
            const unsigned long v = std::strtoul(n, &end, 10);
            if (end == n || *end != '\0' || v < 16) {
                throw ParseError("expected an integer >= 16", 0);
            }
            return static_cast<std::size_t>(v);
        });
    }
    if (const char* t = std::getenv("REGSUM_TOL")) {
        b.tol = parse_argument("REGSUM_TOL", [&] {
            char* end = nullptr;
            const double v = std::strtod(t, &end);
            if (end == t || *end != '\0' || !(v > 0.0)) {
                throw ParseError("expected a positive number", 0);
            }
            return v;
        });
    }
    return b;
}

void add_budget_options(CLI::App* cmd, Budget& budget) {
    cmd->add_option("--N", budget.n_max, "Cesaro term budget")->check(CLI::Range(std::size_t{16}, std::size_t{1} << 24));
    cmd->add_option("--tol", budget.tol, "convergence tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--kmax", budget.k_max, "cap for automatic Cesaro escalation")->check(CLI::Range(0u, 12u));
    cmd->add_flag("--extrapolate", budget.extrapolate, "Richardson-accelerate Cesaro means in 1/n");
}

void apply_budget(SummationMethod& method, const Budget& budget) {
    method.n_max = budget.n_max;
    method.tol = budget.tol;
    method.k_max = budget.k_max;
    method.extrapolate = budget.extrapolate;
}

void print_report_text(std::ostream& out, const ConvergenceReport& r) {
    out << format_double(r.value) << (r.converged ? "" : " (not converged)") << '\n';
    out << "method: " << r.method_used.to_string() << "  order_used: " << r.order_used
        << "  terms_used: " << r.terms_used << "  residual: " << format_double(r.residual)
        << "  converged: " << (r.converged ? "true" : "false") << '\n';
}

// ---------------------------------------------------------------------------
// check suites

struct CheckOutcome {
    bool passed = true;
    std::string detail;
};

CheckOutcome check_functional_equation() {
    std::mt19937_64 rng(20240601);
    const auto alt = SeriesSpec::alt_geometric();
    for (int i = 0; i < 25; ++i) {
        const Polynomial p = random_polynomial(rng, std::uniform_int_distribution<std::size_t>(0, 8)(rng));
        Rational h = random_rational_in(rng, -2, 2);
        if (h.is_zero()) {
            h = 1;
        }
        const auto s = op_apply(reg_operator(alt, op_shift(h), SummationMethod::cesaro_auto(), *p.degree()), p);
        if (!(translate(s, h) + s - p).is_zero()) {
            return {false, "S(x+h) + S(x) != P(x) for P = " + p.to_string() + ", h = " + h.to_string()};
        }
    }
    return {true, "25 random (P, h): S(x+h) + S(x) - P(x) = 0"};
}

CheckOutcome check_inverse_identity() {
    const auto alt = SeriesSpec::alt_geometric();
    for (const Rational& h : {Rational(1), Rational(-1, 2), Rational(3, 2)}) {
        const std::size_t order = 10;
        const auto f_of_shift = reg_operator(alt, op_shift(h), SummationMethod::cesaro_auto(), order);
        const auto one_plus_shift = op_scaled_sum({{1, op_identity()}, {1, op_shift(h)}});
        if (!op_equal(op_compose(f_of_shift, one_plus_shift), op_identity(), order)) {
            return {false, "(1 + U^h) f(U^h) != I for h = " + h.to_string()};
        }
    }
    return {true, "f(U^h) (1 + U^h) = I through t^10 for h in {1, -1/2, 3/2}"};
}

CheckOutcome check_product_rule(const Budget& budget) {
    SummationMethod method = SummationMethod::cesaro_auto();
    apply_budget(method, budget);
    const auto alt = SeriesSpec::alt_geometric();
    std::string detail;
    for (unsigned n = 0; n <= 2; ++n) {
        const auto r = product_rule_check(alt, alt, n, method);
        detail += "n=" + std::to_string(n) + ": lhs " + format_double(r.lhs) + " rhs " + format_double(r.rhs) + "; ";
        if (std::abs(r.lhs - r.rhs) > 2.0 * budget.tol) {
            return {false, detail};
        }
    }
    return {true, detail};
}

CheckOutcome check_three_way(const Budget& budget) {
    std::mt19937_64 rng(7);
    const auto alt = SeriesSpec::alt_geometric();
    for (int i = 0; i < 5; ++i) {
        const Polynomial p = random_polynomial(rng, std::uniform_int_distribution<std::size_t>(0, 4)(rng));
        const Rational h = random_rational_in(rng, -2, 2);
        const Rational x = random_rational(rng);
        const auto exact = reg_sum(alt, op_shift(h), p, x, SummationMethod::cesaro_auto());
        const Rational euler = euler_alt_sum(p, h, x);
        auto terms = SeriesSpec::custom("(-1)^n P(x+nh)", [p, h, x](std::size_t n) {
            Rational v = p(x + Rational(static_cast<long>(n)) * h);
            return n % 2 ? -v : v;
        });
        const auto numeric =
            cesaro_limit(terms, static_cast<unsigned>(*p.degree() + 2), budget.n_max, budget.tol, true);
        if (!exact.exact || *exact.exact != euler) {
            return {false, "exact and Euler-number routes disagree for P = " + p.to_string()};
        }
        if (!numeric.converged || std::abs(numeric.value - euler.to_double()) > budget.tol) {
            return {false, "numeric Cesaro " + format_double(numeric.value) + " vs " + euler.to_string() +
                               " for P = " + p.to_string() + ", h = " + h.to_string()};
        }
    }
    return {true, "5 random (P, h, x): exact = Euler-number formula, numeric Cesaro within tol"};
}

CheckOutcome check_euler_table() {
    const std::vector<std::string> expected{"1",       "0", "-1",         "0", "5",          "0",
                                            "-61",     "0", "1385",       "0", "-50521",     "0",
                                            "2702765", "0", "-199360981", "0", "19391512145"};
    const auto table = euler_numbers(16);
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (table.values[k].get_str() != expected[k]) {
            return {false, "E" + std::to_string(k) + " = " + table.values[k].get_str()};
        }
    }
    return {true, "E0..E16 match"};
}

CheckOutcome check_binomial_sums() {
    const auto alt = SeriesSpec::alt_geometric();
    for (unsigned m = 0; m <= 10; ++m) {
        const auto r = reg_sum(alt, op_shift(1), binomial_polynomial(m), 0, SummationMethod::cesaro_auto());
        if (!r.exact || *r.exact != alt_binom_sum(m)) {
            return {false, "m = " + std::to_string(m)};
        }
    }
    return {true, "C-sum of (-1)^n binom(n, m) = (-1)^m / 2^{m+1} for m = 0..10"};
}

CheckOutcome check_operator_ring() {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        const std::size_t deg = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
        const auto s = op_from_symbol(random_series(rng, deg));
        const auto t = op_from_symbol(random_series(rng, deg));
        const Polynomial p = random_polynomial(rng, deg);
        const Rational h = random_rational(rng);
        if (op_apply(op_compose(s, t), p) != op_apply(s, op_apply(t, p))) {
            return {false, "symbol product differs from composition for P = " + p.to_string()};
        }
        if (op_apply(s, translate(p, h)) != translate(op_apply(s, p), h)) {
            return {false, "translation invariance fails for P = " + p.to_string()};
        }
        if (op_apply(s, derivative(p)) != derivative(op_apply(s, p))) {
            return {false, "D-commutation fails for P = " + p.to_string()};
        }
        const auto r = op_remainder(s).r;
        if (!op_apply(op_power(r, deg + 1), p).is_zero()) {
            return {false, "(T - c)^{deg P + 1} P != 0 for P = " + p.to_string()};
        }
    }
    return {true, "50 random (S, T, P): composition, translation invariance, D-commutation, nilpotence"};
}

} // namespace

std::vector<std::string> check_suites() {
    return {"functional-equation", "inverse-identity", "product-rule",  "three-way",
            "euler-table",         "binomial-sums",    "operator-ring"};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized sums of divergent series  sum_n a_n T^n P(x)", "regsum"};
    app.require_subcommand(1);

    std::string output = "text";
    const auto output_check = CLI::IsMember({"text", "json"});

    Budget budget;
    try {
        budget = default_budget();
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    }

    // sum
    std::string series_text;
    std::string op_text;
    std::string poly_text;
    std::string x_text = "0";
    std::string method_text;
    auto* sum = app.add_subcommand("sum", "regularized sum of a_n (T^n P)(x)");
    sum->add_option("--series", series_text, "alt | altlog | geom:p/q | table:@file.json")->required();
    sum->add_option("--op", op_text, "shift:h | diff | delta:h | identity | symbol:[c0,c1,...]")->required();
    sum->add_option("--poly", poly_text, "polynomial, e.g. \"3*x^2 - 1/2\"")->required();
    sum->add_option("--x", x_text, "evaluation point (rational)");
    sum->add_option("--method", method_text, "exact | cesaro[:k|:auto] | abel | classical");
    sum->add_option("--output", output, "text | json")->check(output_check);
    add_budget_options(sum, budget);

    // euler
    std::size_t euler_max = 16;
    auto* euler = app.add_subcommand("euler", "Euler numbers E_0..E_n");
    euler->add_option("n_max", euler_max, "largest index")->required()->check(CLI::Range(std::size_t{0}, std::size_t{2000}));
    euler->add_option("--output", output, "text | json")->check(output_check);

    // symbol
    std::string symbol_op;
    std::size_t symbol_order = 8;
    auto* symbol = app.add_subcommand("symbol", "symbol sigma_T of an operator");
    symbol->add_option("op", symbol_op, "operator literal")->required();
    symbol->add_option("--order", symbol_order, "truncation order")->check(CLI::Range(std::size_t{0}, std::size_t{200}));
    symbol->add_option("--output", output, "text | json")->check(output_check);

    // cesaro
    std::string cesaro_series;
    std::string cesaro_k = "auto";
    auto* cesaro = app.add_subcommand("cesaro", "Cesaro sum of a series");
    cesaro->add_option("--series", cesaro_series, "series literal")->required();
    cesaro->add_option("--k", cesaro_k, "Cesaro order or 'auto'");
    cesaro->add_option("--output", output, "text | json")->check(output_check);
    add_budget_options(cesaro, budget);

    // abel
    std::string abel_series;
    auto* abel = app.add_subcommand("abel", "Abel sum of a series");
    abel->add_option("--series", abel_series, "series literal")->required();
    abel->add_option("--tol", budget.tol, "convergence tolerance")->check(CLI::PositiveNumber);
    abel->add_option("--output", output, "text | json")->check(output_check);

    // check
    std::string suite;
    auto* check = app.add_subcommand("check", "run a named invariant suite");
    check->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(check_suites()));
    check->add_option("--output", output, "text | json")->check(output_check);
    add_budget_options(check, budget);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    }
    const bool json = output == "json";

    try {
        if (sum->parsed()) {
            const auto series = parse_argument("--series", [&] { return parse_series(series_text); });
            const auto op = parse_argument("--op", [&] { return parse_operator(op_text); });
            const auto p = parse_argument("--poly", [&] { return Polynomial::parse(poly_text); });
            const auto x = parse_argument("--x", [&] { return Rational::parse(x_text); });
            SummationMethod method = SummationMethod::cesaro_auto();
            if (method_text == "exact") {
                method.require_exact = true;
            } else if (!method_text.empty()) {
                method = parse_argument("--method", [&] { return parse_method(method_text); });
            }
            apply_budget(method, budget);

            const auto result = reg_sum(series, op, p, x, method);
            if (json) {
                nlohmann::json doc = to_json(result);
                doc["request"] = {{"series", series_text}, {"op", op_text},     {"poly", poly_text},
                                  {"x", x_text},           {"method", method_text.empty() ? "default" : method_text}};
                out << doc.dump() << '\n';
            } else {
                out << format_double(result.value);
                if (result.exact) {
                    out << " (exact " << result.exact->to_pq_string() << ")";
                }
                out << '\n';
                out << "method: " << method_label(result) << "  order_used: " << result.derivatives.order_used()
                    << "  terms_used: " << result.derivatives.terms_used() << '\n';
                out << "provenance:";
                for (auto prov : result.derivatives.provenance) {
                    out << ' ' << to_string(prov);
                }
                out << '\n';
            }
            return ok;
        }

        if (euler->parsed()) {
            const auto table = euler_numbers(euler_max);
            if (json) {
                out << to_json(table).dump() << '\n';
            } else {
                for (std::size_t k = 0; k < table.values.size(); ++k) {
                    out << 'E' << k << " = " << table.values[k].get_str() << '\n';
                }
            }
            return ok;
        }

        if (symbol->parsed()) {
            const auto op = parse_argument("op", [&] { return parse_operator(symbol_op); });
            const auto sigma = op.symbol(symbol_order);
            out << (json ? to_json(sigma).dump() : sigma.to_string()) << '\n';
            return ok;
        }

        if (cesaro->parsed()) {
            const auto series = parse_argument("--series", [&] { return parse_series(cesaro_series); });
            ConvergenceReport report;
            if (cesaro_k == "auto") {
                report = cesaro_auto(series, budget.k_max, budget.n_max, budget.tol, budget.extrapolate);
            } else {
                const unsigned k = parse_argument("--k", [&] {
                    if (cesaro_k.empty() || cesaro_k.size() > 3 ||
                        !std::all_of(cesaro_k.begin(), cesaro_k.end(), [](unsigned char c) { return std::isdigit(c); })) {
                        throw ParseError("expected a nonnegative integer or 'auto', got '" + cesaro_k + "'", 0);
                    }
                    return static_cast<unsigned>(std::stoul(cesaro_k));
                });
                report = cesaro_limit(series, k, budget.n_max, budget.tol, budget.extrapolate);
            }
            if (json) {
                out << to_json(report).dump() << '\n';
            } else {
                print_report_text(out, report);
            }
            return report.converged ? ok : not_regular;
        }

        if (abel->parsed()) {
            const auto series = parse_argument("--series", [&] { return parse_series(abel_series); });
            const auto report = abel_limit(series, AbelOptions::defaults(), budget.tol);
            if (json) {
                out << to_json(report).dump() << '\n';
            } else {
                print_report_text(out, report);
            }
            return report.converged ? ok : not_regular;
        }

        if (check->parsed()) {
            CheckOutcome outcome;
            if (suite == "functional-equation") {
                outcome = check_functional_equation();
            } else if (suite == "inverse-identity") {
                outcome = check_inverse_identity();
            } else if (suite == "product-rule") {
                outcome = check_product_rule(budget);
            } else if (suite == "three-way") {
                outcome = check_three_way(budget);
            } else if (suite == "euler-table") {
                outcome = check_euler_table();
            } else if (suite == "operator-ring") {
                outcome = check_operator_ring();
            } else {
                outcome = check_binomial_sums();
            }
            if (json) {
                out << nlohmann::json{{"suite", suite}, {"passed", outcome.passed}, {"detail", outcome.detail}}.dump()
                    << '\n';
            } else {
                out << (outcome.passed ? "PASS " : "FAIL ") << suite << ": " << outcome.detail << '\n';
            }
            return outcome.passed ? ok : check_failed;
        }
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    } catch (const NotRegular& e) {
        err << "not regular: " << e.what() << '\n';
        return not_regular;
    } catch (const ExactUnavailable& e) {
        err << "exact evaluation unavailable: " << e.what() << '\n';
        return not_regular;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return not_regular;
    }
    return parse_error;
}

} // namespace regsum::cli
