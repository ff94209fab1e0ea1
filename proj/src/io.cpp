#include "regsum/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "regsum/errors.hpp"

namespace regsum {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

double round_to_printed(double value) {
    if (!std::isfinite(value)) {
        return value;
    }
    return std::stod(format_double(value));
}

namespace {

nlohmann::json printed(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return round_to_printed(value);
}

} // namespace

std::string method_label(const RegSumResult& result) {
    const auto& p = result.derivatives.provenance;
    const bool closed = std::all_of(p.begin(), p.end(), [](Provenance x) { return x == Provenance::exact_closed_form; });
    return closed ? std::string("exact") : result.derivatives.method.to_string();
}

nlohmann::json to_json(const ConvergenceReport& report) {
    return {
        {"value", printed(report.value)},
        {"exact", report.exact ? nlohmann::json(report.exact->to_pq_string()) : nlohmann::json(nullptr)},
        {"method_used", report.method_used.to_string()},
        {"order_used", report.order_used},
        {"terms_used", report.terms_used},
        {"converged", report.converged},
        {"residual", printed(report.residual)},
    };
}

nlohmann::json to_json(const RegSumResult& result) {
    nlohmann::json provenance = nlohmann::json::array();
    for (auto p : result.derivatives.provenance) {
        provenance.push_back(to_string(p));
    }
    return {
        {"value_exact", result.exact ? nlohmann::json(result.exact->to_pq_string()) : nlohmann::json(nullptr)},
        {"value_float", printed(result.value)},
        {"method", method_label(result)},
        {"order_used", result.derivatives.order_used()},
        {"terms_used", result.derivatives.terms_used()},
        {"provenance", provenance},
    };
}

nlohmann::json to_json(const PowerSeries& series) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : series.coeffs()) {
        out.push_back(c.to_pq_string());
    }
    return out;
}

PowerSeries power_series_from_json(const nlohmann::json& doc) {
    if (!doc.is_array() || doc.empty()) {
        throw ParseError("power series JSON must be a nonempty array of \"p/q\" strings", 0);
    }
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_string()) {
            throw ParseError("power series entry " + std::to_string(i) + " is not a string", i);
        }
        coeffs.push_back(Rational::parse(doc[i].get<std::string>()));
    }
    return PowerSeries(std::move(coeffs));
}

nlohmann::json to_json(const EulerTable& table) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : table.values) {
        out.push_back(e.get_str());
    }
    return out;
}

} // namespace regsum
