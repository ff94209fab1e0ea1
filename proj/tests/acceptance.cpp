// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "regsum/io.hpp"
#include "regsum/regularize.hpp"
#include "regsum/sampling.hpp"

using namespace regsum;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

Outcome euler_table() {
    const std::vector<std::string> expected{"1",       "0", "-1",         "0", "5",          "0",
                                            "-61",     "0", "1385",       "0", "-50521",     "0",
                                            "2702765", "0", "-199360981", "0", "19391512145"};
    const auto t = euler_numbers(16);
    for (std::size_t k = 0; k <= 16; ++k) {
        if (t.values[k].get_str() != expected[k]) {
            return {false, "E" + std::to_string(k) + " = " + t.values[k].get_str()};
        }
    }
    return {true, "E0..E16 exact"};
}

Outcome closed_form_vs_cesaro() {
    std::string detail;
    bool ok = true;
    for (unsigned k = 0; k <= 4; ++k) {
        const auto terms = SeriesSpec::custom("(-1)^n [n]_k", [k](std::size_t n) {
            Rational v(falling_factorial_value(static_cast<long>(n), k));
            return n % 2 ? -v : v;
        });
        const auto r = cesaro_limit(terms, k + 1, 4000, 1e-3);
        const Rational expected = Rational(factorial(k)) / pow(Rational(2), static_cast<long>(k) + 1) * (k % 2 ? -1 : 1);
        const double err = std::abs(r.value - expected.to_double());
        ok = ok && r.converged && err <= 1e-3;
        detail += "k=" + std::to_string(k) + " err " + format_double(err) + (k < 4 ? ", " : "");
    }
    return {ok, detail};
}

Outcome three_way() {
    std::mt19937_64 rng(2024);
    const auto alt = SeriesSpec::alt_geometric();
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto p = random_polynomial(rng, std::uniform_int_distribution<std::size_t>(0, 6)(rng));
        const auto h = random_rational_in(rng, -2, 2);
        const auto x = random_rational(rng);
        const auto exact = reg_sum(alt, op_shift(h), p, x, SummationMethod::cesaro_auto());
        const auto euler = euler_alt_sum(p, h, x);
        if (!exact.exact || *exact.exact != euler) {
            return {false, "exact/Euler mismatch for P = " + p.to_string() + ", h = " + h.to_string()};
        }
        const auto terms = SeriesSpec::custom("(-1)^n P(x+nh)", [p, h, x](std::size_t n) {
            Rational v = p(x + Rational(static_cast<long>(n)) * h);
            return n % 2 ? -v : v;
        });
        const auto numeric = cesaro_limit(terms, static_cast<unsigned>(*p.degree() + 2), 4000, 1e-3, true);
        const double err = std::abs(numeric.value - euler.to_double());
        worst = std::max(worst, err);
        if (!numeric.converged || err > 1e-3) {
            return {false, "numeric Cesaro off by " + format_double(err) + " for P = " + p.to_string() +
                               ", h = " + h.to_string() + ", x = " + x.to_string()};
        }
    }
    return {true, "50 cases, exact = Euler formula, worst numeric error " + format_double(worst)};
}

Outcome functional_equation() {
    std::mt19937_64 rng(77);
    const auto alt = SeriesSpec::alt_geometric();
    for (int i = 0; i < 100; ++i) {
        const auto p = random_polynomial(rng, std::uniform_int_distribution<std::size_t>(0, 8)(rng));
        auto h = random_rational_in(rng, -2, 2);
        const auto s = op_apply(reg_operator(alt, op_shift(h), SummationMethod::cesaro_auto(), *p.degree()), p);
        if (!(translate(s, h) + s - p).is_zero()) {
            return {false, "P = " + p.to_string() + ", h = " + h.to_string()};
        }
    }
    return {true, "100 cases, S(x+h) + S(x) - P(x) = 0 exactly"};
}

Outcome binomial_sums() {
    const auto alt = SeriesSpec::alt_geometric();
    for (unsigned m = 0; m <= 10; ++m) {
        const auto r = reg_sum(alt, op_shift(1), binomial_polynomial(m), 0, SummationMethod::cesaro_auto());
        const Rational expected = Rational(BigInt(m % 2 ? -1 : 1), BigInt(BigInt(1) << (m + 1)));
        if (!r.exact || *r.exact != expected) {
            return {false, "m = " + std::to_string(m)};
        }
    }
    return {true, "m = 0..10 exact"};
}

Outcome operator_ring() {
    std::mt19937_64 rng(91);
    const int cases = 100;
    for (int i = 0; i < cases; ++i) {
        const std::size_t deg = std::uniform_int_distribution<std::size_t>(0, 8)(rng);
        const auto s = op_from_symbol(random_series(rng, deg));
        const auto t = op_from_symbol(random_series(rng, deg));
        const auto p = random_polynomial(rng, deg);
        const auto h = random_rational(rng);
        if (op_apply(op_compose(s, t), p) != op_apply(s, op_apply(t, p))) {
            return {false, "symbol product vs composition, P = " + p.to_string()};
        }
        if (op_apply(s, translate(p, h)) != translate(op_apply(s, p), h)) {
            return {false, "translation invariance, P = " + p.to_string()};
        }
        if (op_apply(s, derivative(p)) != derivative(op_apply(s, p))) {
            return {false, "commutation with D, P = " + p.to_string()};
        }
        if (!op_apply(op_power(op_remainder(s).r, deg + 1), p).is_zero()) {
            return {false, "nilpotence, P = " + p.to_string()};
        }
    }
    return {true, std::to_string(cases) + " instances of each property, exact"};
}

Outcome abel() {
    const auto opts = AbelOptions::defaults();
    const auto alt = abel_limit(SeriesSpec::alt_geometric(), opts, 1e-4);
    const auto log = abel_limit(SeriesSpec::alt_log(), opts, 1e-4);
    const auto e = abel_limit(fixtures::exp_inverse_one_plus(), fixtures::exp_inverse_schedule(), 1e-3);
    const double e_value = std::exp(1.0) * e.value;
    const double err_alt = std::abs(alt.value - 0.5);
    const double err_log = std::abs(log.value - std::log(2.0));
    const double err_e = std::abs(e_value - std::exp(0.5));
    const bool ok = alt.converged && log.converged && e.converged && err_alt <= 1e-4 && err_log <= 1e-4 &&
                    err_e <= 1e-3;
    return {ok, "alt err " + format_double(err_alt) + ", altlog err " + format_double(err_log) +
                    ", e^{1/(1+z)} err " + format_double(err_e)};
}

Outcome product_rule() {
    const auto alt = SeriesSpec::alt_geometric();
    std::string detail;
    bool ok = true;
    for (unsigned n = 0; n <= 2; ++n) {
        const auto r = product_rule_check(alt, alt, n, SummationMethod::cesaro_auto());
        const double gap = std::abs(r.lhs - r.rhs);
        ok = ok && gap <= 2e-3;
        detail += "n=" + std::to_string(n) + " gap " + format_double(gap) + (n < 2 ? ", " : "");
    }
    return {ok, detail};
}

Outcome shift_invariance() {
    const auto [l1, r1] = shift_check(SeriesSpec::alt_geometric(), SummationMethod::cesaro(1));
    const auto weighted = SeriesSpec::custom("(-1)^n (n+1)", [](std::size_t n) {
        Rational v(static_cast<long>(n + 1));
        return n % 2 ? -v : v;
    });
    const auto [l2, r2] = shift_check(weighted, SummationMethod::cesaro(2));
    const bool ok = std::abs(l1 - r1) <= 1e-3 && std::abs(l2 - r2) <= 1e-3;
    return {ok, "alt " + format_double(l1) + " vs " + format_double(r1) + ", (-1)^n(n+1) " + format_double(l2) +
                    " vs " + format_double(r2)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"euler table", euler_table},
        {"closed-form derivatives vs numeric Cesaro", closed_form_vs_cesaro},
        {"three-way agreement", three_way},
        {"functional equation", functional_equation},
        {"alternating binomial sums", binomial_sums},
        {"operator ring isomorphism", operator_ring},
        {"Abel engine", abel},
        {"product rule", product_rule},
        {"shift invariance", shift_invariance},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += o.passed ? 0 : 1;
        std::printf("%s %zu %s: %s (%.2fs)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
    }
    return failures == 0 ? 0 : 1;
}
