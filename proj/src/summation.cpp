#include "regsum/summation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>

#include <json.hpp>

#include "regsum/errors.hpp"

namespace regsum {

AbelOptions AbelOptions::defaults() {
    AbelOptions out;
    for (int j = 3; j <= 14; ++j) {
        out.schedule.push_back(1.0 - std::ldexp(1.0, -j));
    }
    out.budget = [](double t) { return static_cast<std::size_t>(std::ceil(60.0 / (1.0 - t))); };
    return out;
}

SummationMethod SummationMethod::classical() {
    SummationMethod m;
    m.tag = MethodTag::classical;
    return m;
}

SummationMethod SummationMethod::cesaro(unsigned k) {
    SummationMethod m;
    m.cesaro_order = k;
    return m;
}

SummationMethod SummationMethod::cesaro_auto() {
    return SummationMethod{};
}

SummationMethod SummationMethod::abel_method() {
    SummationMethod m;
    m.tag = MethodTag::abel;
    return m;
}

std::string SummationMethod::to_string() const {
    switch (tag) {
    case MethodTag::classical:
        return "classical";
    case MethodTag::abel:
        return "abel";
    case MethodTag::cesaro:
        return cesaro_order ? "cesaro:" + std::to_string(*cesaro_order) : std::string("cesaro:auto");
    }
    return "unknown";
}

double to_double(const RegValue& value) {
    if (const auto* q = std::get_if<Rational>(&value)) {
        return q->to_double();
    }
    return std::get<double>(value);
}

// ---------------------------------------------------------------------------
// SeriesSpec

SeriesSpec::SeriesSpec(SeriesKind kind, std::string label, Term term)
    : kind_(kind), label_(std::move(label)), term_(std::move(term)) {}

std::vector<Rational> SeriesSpec::terms(std::size_t count) const {
    if (prefix_) {
        return prefix_(count);
    }
    std::vector<Rational> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        out.push_back(term_(n));
    }
    return out;
}

double SeriesSpec::term_value(std::size_t n) const {
    return float_term_ ? float_term_(n) : term_(n).to_double();
}

std::optional<RegValue> SeriesSpec::exact_derivative(unsigned k, const Rational& c,
                                                     const SummationMethod& method) const {
    if (!exact_) {
        return std::nullopt;
    }
    return exact_(k, c, method);
}

SeriesSpec SeriesSpec::with_exact_derivatives(ExactDerivative exact) const {
    SeriesSpec out = *this;
    out.exact_ = std::move(exact);
    return out;
}

namespace {

// Is a derived series that needs Cesaro order `required_order` within reach of the method?
bool cesaro_covers(const SummationMethod& method, unsigned required_order) {
    switch (method.tag) {
    case MethodTag::abel:
        return true;
    case MethodTag::classical:
        return required_order == 0;
    case MethodTag::cesaro:
        return method.cesaro_order ? *method.cesaro_order >= required_order : required_order <= method.k_max;
    }
    return false;
}

} // namespace

SeriesSpec SeriesSpec::alt_geometric() {
    SeriesSpec s(SeriesKind::alt_geometric, "alt", [](std::size_t n) { return Rational(n % 2 ? -1 : 1); });
    s.float_term_ = [](std::size_t n) { return n % 2 ? -1.0 : 1.0; };
    // (1+t)^{-1} at t = 1: (-1)^k k! / 2^{k+1}. The derived series
    // (-1)^n [n]_k needs Cesaro order k + 1.
    s.exact_ = [](unsigned k, const Rational& c, const SummationMethod& method) -> std::optional<RegValue> {
        if (c != Rational(1) || !cesaro_covers(method, k + 1)) {
            return std::nullopt;
        }
        Rational v(factorial(k), BigInt(1) << (k + 1));
        return k % 2 ? -v : v;
    };
    return s;
}

SeriesSpec SeriesSpec::alt_log() {
    SeriesSpec s(SeriesKind::alt_log, "altlog", [](std::size_t n) {
        if (n == 0) {
            return Rational(0);
        }
        return Rational(BigInt(n % 2 ? 1 : -1), BigInt(static_cast<unsigned long>(n)));
    });
    s.float_term_ = [](std::size_t n) {
        if (n == 0) {
            return 0.0;
        }
        return (n % 2 ? 1.0 : -1.0) / static_cast<double>(n);
    };
    // log(1+t) at t = 1: derivatives of log(2 + r) at r = 0. The derived
    // series (-1)^{n+1} [n]_k / n needs Cesaro order k.
    s.exact_ = [](unsigned k, const Rational& c, const SummationMethod& method) -> std::optional<RegValue> {
        if (c != Rational(1) || !cesaro_covers(method, k)) {
            return std::nullopt;
        }
        if (k == 0) {
            return RegValue(std::numbers::ln2);
        }
        Rational v(factorial(k - 1), BigInt(1) << k);
        return (k - 1) % 2 ? -v : v;
    };
    return s;
}

SeriesSpec SeriesSpec::geometric(const Rational& r) {
    SeriesSpec s(SeriesKind::geometric, "geom:" + r.to_string(),
                 [r](std::size_t n) { return pow(r, static_cast<long>(n)); });
    const double rd = r.to_double();
    s.float_term_ = [rd](std::size_t n) { return std::pow(rd, static_cast<double>(n)); };
    s.prefix_ = [r](std::size_t count) {
        std::vector<Rational> out;
        out.reserve(count);
        Rational p = 1;
        for (std::size_t n = 0; n < count; ++n) {
            out.push_back(p);
            p *= r;
        }
        return out;
    };
    return s;
}

SeriesSpec SeriesSpec::table(std::vector<Rational> values) {
    auto held = std::make_shared<const std::vector<Rational>>(std::move(values));
    SeriesSpec s(SeriesKind::table, "table[" + std::to_string(held->size()) + "]",
                 [held](std::size_t n) { return n < held->size() ? (*held)[n] : Rational(0); });
    auto as_double = std::make_shared<std::vector<double>>();
    as_double->reserve(held->size());
    for (const auto& v : *held) {
        as_double->push_back(v.to_double());
    }
    s.float_term_ = [as_double](std::size_t n) { return n < as_double->size() ? (*as_double)[n] : 0.0; };
    return s;
}

SeriesSpec SeriesSpec::custom(std::string label, Term term, Prefix prefix, FloatTerm float_term) {
    SeriesSpec s(SeriesKind::custom, std::move(label), std::move(term));
    s.prefix_ = std::move(prefix);
    s.float_term_ = std::move(float_term);
    return s;
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

std::vector<Rational> rationals_from_json(const nlohmann::json& doc, const std::string& where) {
    if (!doc.is_array()) {
        throw ParseError("series table " + where + " must be a JSON array of \"p/q\" strings", 0);
    }
    std::vector<Rational> out;
    out.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        if (item.is_string()) {
            out.push_back(Rational::parse(item.get<std::string>()));
        } else if (item.is_number_integer()) {
            out.emplace_back(item.get<long long>());
        } else {
            throw ParseError("series table " + where + ": entry " + std::to_string(i) + " is not a \"p/q\" string", i);
        }
    }
    return out;
}

} // namespace

SeriesSpec parse_series(std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "alt") {
        return SeriesSpec::alt_geometric();
    }
    if (text == "altlog") {
        return SeriesSpec::alt_log();
    }
    if (text.rfind("geom:", 0) == 0) {
        try {
            return SeriesSpec::geometric(Rational::parse(std::string_view(text).substr(5)));
        } catch (const ParseError& e) {
            throw ParseError("bad ratio in series literal '" + text + "': " + e.what(), 5 + e.position());
        }
    }
    if (text.rfind("table:", 0) == 0) {
        const std::string body = text.substr(6);
        nlohmann::json doc;
        std::string where;
        if (!body.empty() && body[0] == '@') {
            where = body.substr(1);
            std::ifstream in(where);
            if (!in) {
                throw ParseError("cannot open series table file '" + where + "'", 7);
            }
            try {
                doc = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError("invalid JSON in '" + where + "': " + e.what(), e.byte);
            }
        } else {
            where = "literal";
            try {
                doc = nlohmann::json::parse(body);
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError("invalid inline table '" + body + "': " + e.what(), 6 + e.byte);
            }
        }
        return SeriesSpec::table(rationals_from_json(doc, where));
    }
    throw ParseError("unknown series literal '" + text + "' (expected alt, altlog, geom:p/q or table:@file.json)",
                     0);
}

SummationMethod parse_method(std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "classical") {
        return SummationMethod::classical();
    }
    if (text == "abel") {
        return SummationMethod::abel_method();
    }
    if (text == "cesaro" || text == "cesaro:auto") {
        return SummationMethod::cesaro_auto();
    }
    if (text.rfind("cesaro:", 0) == 0) {
        const std::string order = text.substr(7);
        if (order.empty() || order.size() > 3 ||
            !std::all_of(order.begin(), order.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
            throw ParseError("bad Cesaro order in '" + text + "'", 7);
        }
        return SummationMethod::cesaro(static_cast<unsigned>(std::stoul(order)));
    }
    throw ParseError("unknown method '" + text + "' (expected classical, cesaro[:k|:auto] or abel)", 0);
}

// ---------------------------------------------------------------------------
// Sequence transforms

std::vector<Rational> iterated_partial_sums(std::vector<Rational> terms, unsigned times) {
    for (unsigned i = 0; i < times; ++i) {
        for (std::size_t n = 1; n < terms.size(); ++n) {
            terms[n] += terms[n - 1];
        }
    }
    return terms;
}

SeriesSpec partial_sums(const SeriesSpec& a) {
    return SeriesSpec::custom(
        "sigma[" + a.label() + "]",
        [a](std::size_t n) {
            Rational acc;
            for (std::size_t i = 0; i <= n; ++i) {
                acc += a.term(i);
            }
            return acc;
        },
        [a](std::size_t count) { return iterated_partial_sums(a.terms(count), 1); });
}

SeriesSpec cauchy_product(const SeriesSpec& a, const SeriesSpec& b) {
    // Shared, lazily grown prefix; the convolution is quadratic so it is
    // computed once per length and reused by every caller.
    struct Cache {
        std::mutex mutex;
        std::vector<Rational> values;
    };
    auto cache = std::make_shared<Cache>();
    auto prefix = [a, b, cache](std::size_t count) {
        std::lock_guard lock(cache->mutex);
        if (cache->values.size() < count) {
            const auto av = a.terms(count);
            const auto bv = b.terms(count);
            std::vector<Rational> out(count);
            for (std::size_t n = 0; n < count; ++n) {
                Rational acc;
                for (std::size_t i = 0; i <= n; ++i) {
                    if (!av[n - i].is_zero() && !bv[i].is_zero()) {
                        acc += av[n - i] * bv[i];
                    }
                }
                out[n] = std::move(acc);
            }
            cache->values = std::move(out);
        }
        return std::vector<Rational>(cache->values.begin(), cache->values.begin() + static_cast<long>(count));
    };
    auto term = [a, b](std::size_t n) {
        Rational acc;
        for (std::size_t i = 0; i <= n; ++i) {
            acc += a.term(n - i) * b.term(i);
        }
        return acc;
    };
    auto float_term = [a, b](std::size_t n) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            acc += a.term_value(n - i) * b.term_value(i);
        }
        return acc;
    };
    return SeriesSpec::custom(a.label() + "*" + b.label(), term, prefix, float_term);
}

SeriesSpec shifted(const SeriesSpec& a) {
    return SeriesSpec::custom(
        a.label() + "[n+1]", [a](std::size_t n) { return a.term(n + 1); },
        [a](std::size_t count) {
            auto v = a.terms(count + 1);
            v.erase(v.begin());
            return v;
        },
        [a](std::size_t n) { return a.term_value(n + 1); });
}

// ---------------------------------------------------------------------------
// Numeric limits

double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty()) {
        throw DomainError("extrapolation needs matching, nonempty node and value lists");
    }
    // Neville's scheme evaluated at 0.
    std::vector<double> p(ys.begin(), ys.end());
    const std::size_t m = xs.size();
    for (std::size_t level = 1; level < m; ++level) {
        for (std::size_t i = 0; i + level < m; ++i) {
            const double xi = xs[i];
            const double xj = xs[i + level];
            p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
        }
    }
    return p[0];
}

namespace {

// sigma^{k+1}[a](n) / binom(n+k, k) for the checkpoint n.
double cesaro_mean(const std::vector<Rational>& sums, std::size_t n, unsigned k) {
    Rational r = sums[n] / Rational(binomial(static_cast<long>(n + k), k));
    return r.to_double();
}

std::size_t same_parity_at_most(std::size_t n, std::size_t parity_of) {
    return (n % 2 == parity_of % 2) ? n : n - 1;
}

} // namespace

ConvergenceReport cesaro_limit(const SeriesSpec& a, unsigned k, std::size_t n_max, double tol, bool extrapolate) {
    if (n_max < 16) {
        throw DomainError("Cesaro budget must be at least 16 terms");
    }
    if (!(tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    const std::size_t N = n_max;
    const auto sums = iterated_partial_sums(a.terms(N + 1), k + 1);

    ConvergenceReport report;
    report.method_used = SummationMethod::cesaro(k);
    report.method_used.n_max = N;
    report.method_used.tol = tol;
    report.method_used.extrapolate = extrapolate;
    report.order_used = k;
    report.terms_used = N + 1;

    if (!extrapolate) {
        const double e1 = cesaro_mean(sums, N / 4, k);
        const double e2 = cesaro_mean(sums, N / 2, k);
        const double e3 = cesaro_mean(sums, N, k);
        const double e3_odd = cesaro_mean(sums, N - 1, k);
        const double last_gap = std::abs(e3 - e2);
        const double first_gap = std::abs(e2 - e1);
        const double parity_gap = std::abs(e3 - e3_odd);
        report.value = e3;
        report.residual = std::max(last_gap, parity_gap);
        // An O(1/n) approach halves the gap per doubling, so the N/4 -> N/2 gap may be twice the last one.
        report.converged = std::isfinite(e3) && std::isfinite(report.residual) && last_gap <= tol &&
                           parity_gap <= tol && first_gap <= 2.0 * tol;
        return report;
    }

    // Same-parity nodes N, N/2, ..., N/16 (as many as stay >= 4), extrapolated
    // to 1/n -> 0. The residual compares against the fit without the coarsest
    // node and against the fit on the opposite parity.
    std::vector<double> xs;
    std::vector<double> even;
    std::vector<double> xs_odd;
    std::vector<double> odd;
    for (std::size_t j = 0; j <= 4 && (N >> j) >= 4; ++j) {
        const std::size_t n = same_parity_at_most(N >> j, N);
        xs.insert(xs.begin(), 1.0 / static_cast<double>(n));
        even.insert(even.begin(), cesaro_mean(sums, n, k));
        xs_odd.insert(xs_odd.begin(), 1.0 / static_cast<double>(n - 1));
        odd.insert(odd.begin(), cesaro_mean(sums, n - 1, k));
    }
    const double full = extrapolate_to_zero(xs, even);
    const double reduced = extrapolate_to_zero(std::span(xs).subspan(1), std::span(even).subspan(1));
    const double full_odd = extrapolate_to_zero(xs_odd, odd);
    report.value = full;
    report.residual = std::max(std::abs(full - reduced), std::abs(full - full_odd));
    report.converged = std::isfinite(full) && std::isfinite(report.residual) && report.residual <= tol;
    return report;
}

ConvergenceReport cesaro_auto(const SeriesSpec& a, unsigned k_max, std::size_t n_max, double tol, bool extrapolate) {
    if (k_max > 12) {
        throw DomainError("automatic Cesaro escalation is capped at order 12");
    }
    ConvergenceReport last;
    for (unsigned k = 0; k <= k_max; ++k) {
        last = cesaro_limit(a, k, n_max, tol, extrapolate);
        if (last.converged) {
            break;
        }
    }
    last.method_used.cesaro_order.reset();
    last.method_used.k_max = k_max;
    return last;
}

ConvergenceReport abel_limit(const SeriesSpec& a, const AbelOptions& options, double tol) {
    const auto& schedule = options.schedule;
    if (schedule.size() < options.order + 2) {
        throw DomainError("Abel schedule needs at least order + 2 points");
    }
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        if (!(schedule[j] > 0.0 && schedule[j] < 1.0) || (j > 0 && !(schedule[j] > schedule[j - 1]))) {
            throw DomainError("Abel schedule must be strictly increasing inside (0, 1)");
        }
    }
    if (!(tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    const auto budget = options.budget ? options.budget : AbelOptions::defaults().budget;

    std::vector<std::size_t> counts;
    std::size_t longest = 0;
    for (double t : schedule) {
        counts.push_back(budget(t));
        longest = std::max(longest, counts.back());
    }
    std::vector<double> values(longest + 1);
    for (std::size_t n = 0; n <= longest; ++n) {
        values[n] = a.term_value(n);
    }

    std::vector<double> eps;
    std::vector<double> g;
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        const long double t = schedule[j];
        long double acc = 0.0L;
        long double power = 1.0L;
        for (std::size_t n = 0; n <= counts[j]; ++n) {
            acc += values[n] * power;
            power *= t;
        }
        eps.push_back(1.0 - schedule[j]);
        g.push_back(static_cast<double>(acc));
    }

    const std::size_t window = options.order + 1;
    std::vector<double> extrapolants;
    for (std::size_t i = 0; i + window <= g.size(); ++i) {
        extrapolants.push_back(extrapolate_to_zero(std::span(eps).subspan(i, window), std::span(g).subspan(i, window)));
    }

    ConvergenceReport report;
    report.method_used = SummationMethod::abel_method();
    report.method_used.abel = options;
    report.method_used.tol = tol;
    report.order_used = options.order;
    report.terms_used = longest + 1;
    report.value = extrapolants.back();
    report.residual = std::abs(extrapolants.back() - extrapolants[extrapolants.size() - 2]);
    report.converged = std::isfinite(report.value) && std::isfinite(report.residual) && report.residual <= tol;
    return report;
}

ConvergenceReport sum_series(const SeriesSpec& a, const SummationMethod& method) {
    ConvergenceReport report;
    switch (method.tag) {
    case MethodTag::classical:
        report = cesaro_limit(a, 0, method.n_max, method.tol, method.extrapolate);
        report.method_used = method;
        return report;
    case MethodTag::cesaro:
        if (method.cesaro_order) {
            report = cesaro_limit(a, *method.cesaro_order, method.n_max, method.tol, method.extrapolate);
        } else {
            report = cesaro_auto(a, method.k_max, method.n_max, method.tol, method.extrapolate);
        }
        report.method_used = method;
        return report;
    case MethodTag::abel:
        report = abel_limit(a, method.abel, method.tol);
        report.method_used = method;
        return report;
    }
    throw DomainError("unknown summation method");
}

std::pair<double, double> shift_check(const SeriesSpec& a, const SummationMethod& method) {
    const auto whole = sum_series(a, method);
    if (!whole.converged) {
        throw NotRegular("series '" + a.label() + "' is not " + method.to_string() + "-summable within budget", 0);
    }
    const auto tail = sum_series(shifted(a), method);
    if (!tail.converged) {
        throw NotRegular("shifted series '" + a.label() + "' is not " + method.to_string() + "-summable within budget",
                         0);
    }
    return {whole.value, a.term(0).to_double() + tail.value};
}

} // namespace regsum
