#include <doctest.h>

#include <cmath>
#include <random>

#include "regsum/errors.hpp"
#include "regsum/regularize.hpp"
#include "regsum/sampling.hpp"

using namespace regsum;

namespace {

Rational q(long p, long d) { return Rational(BigInt(p), BigInt(d)); }

Rational exact_value(const RegValue& v) {
    REQUIRE(std::holds_alternative<Rational>(v));
    return std::get<Rational>(v);
}

SeriesSpec alternating_values(const Polynomial& p, const Rational& h, const Rational& x) {
    return SeriesSpec::custom("(-1)^n P(x+nh)", [p, h, x](std::size_t n) {
        Rational v = p(x + Rational(static_cast<long>(n)) * h);
        return n % 2 ? -v : v;
    });
}

} // namespace

TEST_CASE("derived series") {
    const auto d = derived_series(SeriesSpec::alt_geometric(), 2, q(1, 2));
    CHECK(d.term(0) == 0);
    CHECK(d.term(1) == 0);
    CHECK(d.term(2) == 2);
    CHECK(d.term(4) == Rational(12) * q(1, 4));
    CHECK(d.terms(5)[3] == Rational(-6) * q(1, 2));
    const auto z = derived_series(SeriesSpec::alt_geometric(), 1, 0);
    CHECK(z.terms(4) == std::vector<Rational>{0, -1, 0, 0});
}

TEST_CASE("closed-form derivatives of the alternating geometric series") {
    const auto d = reg_derivatives(SeriesSpec::alt_geometric(), 1, SummationMethod::cesaro_auto(), 6);
    REQUIRE(d.values.size() == 7);
    CHECK(d.all_exact());
    for (unsigned k = 0; k <= 6; ++k) {
        const Rational expected =
            Rational(factorial(k)) / pow(Rational(2), static_cast<long>(k) + 1) * (k % 2 ? -1 : 1);
        CHECK(exact_value(d.values[k]) == expected);
        CHECK(d.provenance[k] == Provenance::exact_closed_form);
    }
    CHECK(exact_value(d.values[2]) == q(1, 4));
}

TEST_CASE("closed forms agree with numeric cesaro sums") {
    for (unsigned k = 0; k <= 4; ++k) {
        const auto r = cesaro_limit(derived_series(SeriesSpec::alt_geometric(), k, 1), k + 1, 4000, 1e-3);
        const Rational expected =
            Rational(factorial(k)) / pow(Rational(2), static_cast<long>(k) + 1) * (k % 2 ? -1 : 1);
        CHECK(r.converged);
        CHECK(std::abs(r.value - expected.to_double()) <= 1e-3);
    }
}

TEST_CASE("numeric derivatives when closed forms are declined") {
    SummationMethod method = SummationMethod::cesaro_auto();
    method.prefer_exact = false;
    const auto d = reg_derivatives(SeriesSpec::alt_geometric(), 1, method, 2);
    CHECK_FALSE(d.all_exact());
    CHECK(d.provenance[1] == Provenance::numeric_cesaro);
    CHECK(std::abs(to_double(d.values[0]) - 0.5) <= 1e-3);
    CHECK(std::abs(to_double(d.values[1]) + 0.25) <= 1e-3);
    CHECK(std::abs(to_double(d.values[2]) - 0.25) <= 1e-3);
    CHECK(d.order_used() >= 3);
    CHECK(d.terms_used() > 0);
}

TEST_CASE("a fixed cesaro order too low for the derivative is not regular") {
    CHECK_THROWS_AS(reg_derivatives(SeriesSpec::alt_geometric(), 1, SummationMethod::cesaro(1), 1), NotRegular);
}

TEST_CASE("derivatives of the alternating log series") {
    const auto d = reg_derivatives(SeriesSpec::alt_log(), 1, SummationMethod::cesaro_auto(), 4);
    CHECK(to_double(d.values[0]) == doctest::Approx(std::log(2.0)));
    CHECK(exact_value(d.values[1]) == q(1, 2));
    CHECK(exact_value(d.values[2]) == q(-1, 4));
    CHECK(exact_value(d.values[3]) == q(2, 8));
    CHECK(exact_value(d.values[4]) == q(-6, 16));
}

TEST_CASE("derivatives inside the disc of convergence") {
    const auto d = reg_derivatives(SeriesSpec::alt_geometric(), q(1, 2), SummationMethod::cesaro_auto(), 2);
    CHECK(to_double(d.values[0]) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(to_double(d.values[1]) == doctest::Approx(-4.0 / 9.0).epsilon(1e-6));
    CHECK(to_double(d.values[2]) == doctest::Approx(16.0 / 27.0).epsilon(1e-6));
    const auto z = reg_derivatives(SeriesSpec::alt_geometric(), 0, SummationMethod::cesaro_auto(), 3);
    CHECK(exact_value(z.values[3]) == -6);
}

TEST_CASE("require_exact") {
    SummationMethod method = SummationMethod::cesaro_auto();
    method.require_exact = true;
    CHECK_THROWS_AS(reg_derivatives(SeriesSpec::table({1, 2}), 1, method, 1), ExactUnavailable);
    CHECK_NOTHROW(reg_derivatives(SeriesSpec::alt_geometric(), 1, method, 3));
}

TEST_CASE("finite tables sum numerically") {
    const auto d = reg_derivatives(SeriesSpec::table({1, 2, 3}), 1, SummationMethod::cesaro_auto(), 2);
    CHECK(to_double(d.values[0]) == doctest::Approx(6.0));
    CHECK(to_double(d.values[1]) == doctest::Approx(8.0));
    CHECK(to_double(d.values[2]) == doctest::Approx(6.0));
}

TEST_CASE("regularized operators") {
    const auto alt = SeriesSpec::alt_geometric();
    for (const Rational& h : {Rational(1), q(-3, 2), q(1, 3)}) {
        const auto f = reg_operator(alt, op_shift(h), SummationMethod::cesaro_auto(), 10);
        const auto one_plus = op_scaled_sum({{1, op_identity()}, {1, op_shift(h)}});
        CHECK(op_equal(op_compose(f, one_plus), op_identity(), 10));
        CHECK(f.max_order() == 10u);
    }
    const auto half = reg_operator(alt, op_identity(), SummationMethod::cesaro_auto(), 6);
    CHECK(op_equal(half, op_scaled_sum({{q(1, 2), op_identity()}}), 6));
}

TEST_CASE("reg_sum examples") {
    const auto alt = SeriesSpec::alt_geometric();
    const auto m = SummationMethod::cesaro_auto();
    CHECK(reg_sum(alt, op_shift(1), Polynomial::monomial(2), 0, m).exact == Rational(0));
    CHECK(reg_sum(alt, op_shift(1), Polynomial(1), 0, m).exact == q(1, 2));
    CHECK(reg_sum(alt, op_shift(1), binomial_polynomial(3), 0, m).exact == q(-1, 16));
    CHECK(reg_sum(alt, op_identity(), Polynomial::monomial(5), 2, m).exact == Rational(16));
    const auto zero = reg_sum(alt, op_shift(1), Polynomial(), 3, m);
    CHECK(zero.exact == Rational(0));
    CHECK(zero.value == 0.0);
}

TEST_CASE("reg_sum evaluates only the orders it needs") {
    const auto r = reg_sum(SeriesSpec::alt_geometric(), op_shift(1), Polynomial::monomial(3), 0,
                           SummationMethod::cesaro_auto());
    CHECK(r.derivatives.values.size() == 4);
    const auto d = reg_sum(SeriesSpec::alt_geometric(), op_diff(), Polynomial::monomial(3), 1,
                           SummationMethod::cesaro_auto());
    // T = D has c = 0, so only k! a_k enter: sum (-1)^n D^n x^3 at 1 = 1 - 3 + 6 - 6
    CHECK(d.exact == Rational(-2));
}

TEST_CASE("numeric reg_sum agrees with the exact route") {
    SummationMethod method = SummationMethod::cesaro_auto();
    method.prefer_exact = false;
    const auto p = Polynomial(std::vector<Rational>{1, -2, 1});
    const auto numeric = reg_sum(SeriesSpec::alt_geometric(), op_shift(1), p, q(1, 2), method);
    const auto exact = reg_sum(SeriesSpec::alt_geometric(), op_shift(1), p, q(1, 2), SummationMethod::cesaro_auto());
    CHECK_FALSE(numeric.exact.has_value());
    REQUIRE(exact.exact.has_value());
    CHECK(std::abs(numeric.value - exact.exact->to_double()) <= 5e-3);
}

TEST_CASE("euler numbers") {
    const auto t = euler_numbers(16);
    CHECK(t.values[0] == 1);
    CHECK(t.values[2] == -1);
    CHECK(t.values[4] == 5);
    CHECK(t.values[10] == -50521);
    CHECK(t.values[16] == BigInt("19391512145"));
    for (std::size_t k = 1; k <= 16; k += 2) {
        CHECK(t.values[k] == 0);
    }
}

TEST_CASE("alternating power and binomial sums") {
    CHECK(alt_power_sum(0) == q(1, 2));
    CHECK(alt_power_sum(1) == q(-1, 4));
    CHECK(alt_power_sum(2) == 0);
    CHECK(alt_power_sum(3) == q(1, 8));
    CHECK(alt_binom_sum(0) == q(1, 2));
    CHECK(alt_binom_sum(2) == q(1, 8));
    CHECK(alt_binom_sum(5) == q(-1, 64));
    const auto alt = SeriesSpec::alt_geometric();
    for (unsigned m = 0; m <= 10; ++m) {
        CHECK(alt_binom_sum_telescoping(m) == alt_binom_sum(m));
        CHECK(reg_sum(alt, op_shift(1), binomial_polynomial(m), 0, SummationMethod::cesaro_auto()).exact ==
              alt_binom_sum(m));
        CHECK(reg_sum(alt, op_shift(1), Polynomial::monomial(m), 0, SummationMethod::cesaro_auto()).exact ==
              alt_power_sum(m));
    }
    for (unsigned m = 0; m <= 3; ++m) {
        const auto r = cesaro_limit(alternating_values(Polynomial::monomial(m), 1, 0), m + 1, 4000, 1e-3);
        CHECK(std::abs(r.value - alt_power_sum(m).to_double()) <= 1e-3);
    }
}

TEST_CASE("euler-number formula") {
    std::mt19937_64 rng(31);
    CHECK(euler_alt_sum(Polynomial(1), q(7, 3), q(-5, 2)) == q(1, 2));
    CHECK(euler_alt_sum(Polynomial::x(), 1, 0) == q(-1, 4));
    for (int i = 0; i < 40; ++i) {
        const auto p = random_polynomial(rng, std::uniform_int_distribution<std::size_t>(0, 8)(rng));
        const auto h = random_rational_in(rng, -2, 2);
        const auto x = random_rational(rng);
        const auto r = reg_sum(SeriesSpec::alt_geometric(), op_shift(h), p, x, SummationMethod::cesaro_auto());
        CHECK(r.exact == euler_alt_sum(p, h, x));
    }
}

TEST_CASE("functional equation") {
    std::mt19937_64 rng(41);
    const auto alt = SeriesSpec::alt_geometric();
    for (int i = 0; i < 100; ++i) {
        const auto p = random_polynomial(rng, std::uniform_int_distribution<std::size_t>(0, 8)(rng));
        const auto h = random_rational_in(rng, -2, 2);
        const auto s = op_apply(reg_operator(alt, op_shift(h), SummationMethod::cesaro_auto(), *p.degree()), p);
        CHECK((translate(s, h) + s - p).is_zero());
    }
}

TEST_CASE("derivative expansion") {
    // f(t) = 1/(1+t) with holomorphic derivatives at 1 equal to the closed forms.
    std::vector<Rational> values;
    for (unsigned k = 0; k <= 5; ++k) {
        values.push_back(Rational(factorial(k)) / pow(Rational(2), static_cast<long>(k) + 1) * (k % 2 ? -1 : 1));
    }
    std::mt19937_64 rng(43);
    const auto p = random_polynomial(rng, 5);
    const auto s = apply_derivative_expansion(values, op_shift(1), p);
    CHECK(s(0) == euler_alt_sum(p, 1, 0));
}

TEST_CASE("product rule") {
    const auto alt = SeriesSpec::alt_geometric();
    const auto m = SummationMethod::cesaro_auto();
    const auto r0 = product_rule_check(alt, alt, 0, m);
    CHECK(std::abs(r0.lhs - 0.25) <= 2e-3);
    CHECK(r0.rhs == doctest::Approx(0.25));
    const auto r1 = product_rule_check(alt, alt, 1, m);
    CHECK(std::abs(r1.lhs - r1.rhs) <= 2e-3);
    CHECK(r1.rhs == doctest::Approx(-0.25));
    const auto unit = product_rule_check(alt, SeriesSpec::table({1}), 1, m);
    CHECK(std::abs(unit.lhs - unit.rhs) <= 2e-3);
    CHECK(unit.rhs == doctest::Approx(-0.25).epsilon(1e-3));
}
